// Copyright 2026 The ectx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string_view>

#include "ectx/vec4.hpp"

namespace ectx {

enum class FamilyKind { kEntangled, kProduct, kCustom };

// Two-parameter state families over the four-level system. Angles are
// radians throughout.
//   Entangled: (sin a, -sin b, cos b, cos a) / sqrt(2)
//   Product:   (sin a, sin a, cos b, cos b), normalized; as a 2x2 amplitude
//              matrix this has rank 1 for every (a, b).
struct StateFamily {
  FamilyKind kind = FamilyKind::kEntangled;
  double alpha = 0.0;
  double beta = 0.0;
};

// Throws DegenerateStateError when the Product amplitudes vanish
// (sin^2 a + cos^2 b <= 1e-14, i.e. a = k*pi and b = pi/2 + k*pi together).
StateVector make_state(const StateFamily& family);

const char* to_string(FamilyKind kind);
FamilyKind family_from_string(std::string_view name);

}  // namespace ectx
