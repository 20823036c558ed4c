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

#include <array>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "ectx/vec4.hpp"

namespace ectx {

// |<v_i|v_{i+1}>| above this fails validation. Looser than the unit-norm
// tolerance because user configs may carry decimal approximations of exact
// rationals; the built-in set is constructed from exact rationals and lands
// far below it.
inline constexpr double kCyclicOrthTol = 1e-10;

// Five rank-1 projector directions |v_1>..|v_5| with cyclic orthogonality:
// <v_i|v_{i+1}> = 0, indices modulo 5. Each direction defines the dichotomic
// observable X_i = 2|v_i><v_i| - I; adjacent observables commute and their
// (+1,+1) joint outcome is forbidden.
//
// Observables are 1-based X1..X5 in the API, I/O, and error messages.
class CyclicObservableSet {
 public:
  static constexpr int kCycle = 5;

  // Normalizes each vector and validates cyclic orthogonality.
  // Throws ZeroVectorError or CyclicityViolationError (naming the first
  // offending adjacent pair).
  static CyclicObservableSet build(const std::array<Vec4, 5>& vectors, std::string label);

  // The built-in configuration: directions constructed from exact rationals,
  // then converted once to binary floating point and normalized.
  static CyclicObservableSet builtin();

  // Structured text config: {"label": str, "vectors": [[4 numbers] x5]}.
  // Each number is a JSON float or a fraction string "p/q" parsed exactly
  // (the stored component is the nearest double of p/q).
  static CyclicObservableSet from_json(const nlohmann::json& j);
  static CyclicObservableSet from_file(const std::filesystem::path& path);

  // Skips validation. Test hook for exercising downstream exclusivity guards;
  // not part of the supported construction surface.
  static CyclicObservableSet unchecked(std::array<StateVector, 5> directions, std::string label);

  // i in 1..5.
  const StateVector& direction(int i) const;

  const std::string& label() const { return label_; }

  // Full Gram matrix <v_i|v_j>, 0-based storage.
  std::array<std::array<Complex, 5>, 5> gram() const;

  // max over i of |<v_i|v_{i+1 mod 5}>|.
  double max_adjacent_overlap() const;

 private:
  CyclicObservableSet(std::array<StateVector, 5> directions, std::string label);

  std::array<StateVector, 5> directions_;
  std::string label_;
};

// Parses a config component: JSON number, or string "p/q" / "p" with integer
// p, q resolved to the nearest double of the exact rational.
double parse_component(const nlohmann::json& value);

}  // namespace ectx
