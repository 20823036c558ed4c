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

#include "ectx/state_family.hpp"

#include <cmath>
#include <string>

namespace ectx {

inline constexpr double kDegenerateTol = 1e-14;

StateVector make_state(const StateFamily& family) {
  switch (family.kind) {
    case FamilyKind::kEntangled: {
      const double sa = std::sin(family.alpha);
      const double ca = std::cos(family.alpha);
      const double sb = std::sin(family.beta);
      const double cb = std::cos(family.beta);
      // Squared norm is sin^2 a + cos^2 a + sin^2 b + cos^2 b = 2; the
      // normalization constant is always 1/sqrt(2).
      return normalize(Vec4::real(sa, -sb, cb, ca));
    }
    case FamilyKind::kProduct: {
      const double sa = std::sin(family.alpha);
      const double cb = std::cos(family.beta);
      if (sa * sa + cb * cb <= kDegenerateTol)
        throw DegenerateStateError("product state vanishes at alpha = " +
                                   std::to_string(family.alpha) + ", beta = " +
                                   std::to_string(family.beta));
      return normalize(Vec4::real(sa, sa, cb, cb));
    }
    case FamilyKind::kCustom:
      break;
  }
  throw Error("make_state: the custom family has no parametric construction");
}

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kEntangled:
      return "entangled";
    case FamilyKind::kProduct:
      return "product";
    case FamilyKind::kCustom:
      return "custom";
  }
  return "?";
}

FamilyKind family_from_string(std::string_view name) {
  if (name == "entangled") return FamilyKind::kEntangled;
  if (name == "product") return FamilyKind::kProduct;
  if (name == "custom") return FamilyKind::kCustom;
  throw Error("unknown state family '" + std::string(name) + "'");
}

}  // namespace ectx
