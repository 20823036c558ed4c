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

#include <span>

#include "ectx/error.hpp"

namespace ectx {

// Probabilities this far outside [0,1] are treated as floating-point spill
// and clamped; anything worse is a logic error, not roundoff.
inline constexpr double kProbClampTol = 1e-12;
inline constexpr double kProbSumTol = 1e-9;

// Allowed mass on the exclusivity-forbidden (+1,+1) outcome of an adjacent
// pair; more than this means the inputs are not cyclically exclusive.
inline constexpr double kExclusivityTol = 1e-9;

// Shannon entropy in bits, -sum p log2 p with 0 log2 0 = 0.
// Validates that entries lie in [-1e-12, 1+1e-12] (clamped to [0,1]) and sum
// to 1 within 1e-9; throws InvalidDistributionError otherwise.
double shannon_entropy(std::span<const double> probs);

// Entropy of a dichotomic variable with p(+1) = p, in bits.
// p may spill outside [0,1] by at most 1e-12; throws OutOfRangeError beyond.
double binary_entropy(double p);

// Joint distribution of two cyclically adjacent dichotomic observables
// (X_i, X_{i+1}), i and i+1 taken modulo 5, 1-based. Cyclic exclusivity
// forbids the (+1,+1) outcome, so only three cells carry mass:
//   p_mm = p(-1,-1), p_mp = p(-1,+1), p_pm = p(+1,-1).
struct PairDistribution {
  double p_mm;
  double p_mp;
  double p_pm;
  int pair_index;  // 1..5; the pair is (X_i, X_{i+1 mod 5})

  PairDistribution(double mm, double mp, double pm, int index);
};

// H(X_i, X_{i+1}) over the three admissible outcomes, in bits.
double pair_entropy(const PairDistribution& pd);

}  // namespace ectx
