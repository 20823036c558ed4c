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
#include <cstdint>

#include <json.hpp>

#include "ectx/entropy.hpp"
#include "ectx/observables.hpp"
#include "ectx/vec4.hpp"

namespace ectx {

// Evaluation of the entropic non-contextuality functional
//   M = H(X5,X1) - H(X1,X2) - H(X2,X3) - H(X3,X4) - H(X4,X5)
//       + H(X2) + H(X3) + H(X4)
// in bits. Any global joint distribution over the five dichotomic variables
// gives M <= 0; M > 0 certifies contextuality.
struct InequalityReport {
  double m_bits = 0.0;
  // pair_entropies[k] = H(X_{k+1}, X_{k+2 mod 5}), k = 0..4.
  std::array<double, 5> pair_entropies{};
  // H(X2), H(X3), H(X4) -- the three singles picked out by the chain-rule
  // expansion order behind the functional.
  std::array<double, 3> single_entropies{};
  // p(1|X_i), i = 1..5.
  std::array<double, 5> single_probabilities{};
  bool violated = false;

  // Re-assembles M from the stored entropies; equals m_bits within 1e-12.
  double recompute_m() const {
    return pair_entropies[4] - pair_entropies[0] - pair_entropies[1] - pair_entropies[2] -
           pair_entropies[3] + single_entropies[0] + single_entropies[1] + single_entropies[2];
  }

  nlohmann::json to_json() const;
};

// p(1|X_i) = |<v_i|psi>|^2, i in 1..5.
double outcome_probability(const CyclicObservableSet& set, int i, const StateVector& state);

// Joint distribution of (X_i, X_{i+1 mod 5}):
//   p_mp = p(1|X_{i+1}), p_pm = p(1|X_i), p_mm = 1 - p_mp - p_pm.
// Throws ExclusivityViolationError when p(1|X_i) + p(1|X_{i+1}) > 1 + 1e-9,
// which signals a non-cyclic set that slipped past validation.
PairDistribution pair_distribution(const CyclicObservableSet& set, int i, const StateVector& state);

// Exact quantum evaluation of M for the given state.
InequalityReport evaluate_m(const CyclicObservableSet& set, const StateVector& state);

// Finite-statistics estimate: each commuting pair is sampled as its own
// experiment with shots_per_pair draws, plug-in frequencies replace the
// exact probabilities, and p(1|X_i) is estimated from the (+1,-1) frequency
// of the pair-(X_i, X_{i+1}) experiment. Deterministic for a fixed seed
// (mt19937_64 stream; see rng.hpp for the draw identity).
InequalityReport estimate_m_sampled(const CyclicObservableSet& set, const StateVector& state,
                                    std::uint64_t shots_per_pair, std::uint64_t seed);

}  // namespace ectx
