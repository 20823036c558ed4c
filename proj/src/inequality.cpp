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

#include "ectx/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ectx/rng.hpp"

namespace ectx {

nlohmann::json InequalityReport::to_json() const {
  nlohmann::json j;
  j["m_bits"] = m_bits;
  j["pair_entropies"] = pair_entropies;
  j["single_entropies"] = single_entropies;
  j["single_probabilities"] = single_probabilities;
  j["violated"] = violated;
  return j;
}

double outcome_probability(const CyclicObservableSet& set, int i, const StateVector& state) {
  const Complex amp = inner(set.direction(i).amplitudes(), state.amplitudes());
  // Unit inputs keep this in [0, 1] up to a few ulps of spill.
  return std::clamp(std::norm(amp), 0.0, 1.0);
}

PairDistribution pair_distribution(const CyclicObservableSet& set, int i, const StateVector& state) {
  const double p_pm = outcome_probability(set, i, state);
  const double p_mp = outcome_probability(set, i % 5 + 1, state);
  if (p_pm + p_mp > 1.0 + kExclusivityTol)
    throw ExclusivityViolationError("pair (" + std::to_string(i) + "," + std::to_string(i % 5 + 1) +
                                    "): p(1|X_i) + p(1|X_{i+1}) = " + std::to_string(p_pm + p_mp) +
                                    " exceeds 1; the set is not cyclically exclusive");
  const double p_mm = std::max(0.0, 1.0 - p_mp - p_pm);
  return PairDistribution(p_mm, p_mp, p_pm, i);
}

namespace {

InequalityReport assemble_report(const std::array<PairDistribution, 5>& pairs,
                                 const std::array<double, 5>& p_plus) {
  InequalityReport report;
  for (int k = 0; k < 5; ++k)
    report.pair_entropies[static_cast<std::size_t>(k)] =
        pair_entropy(pairs[static_cast<std::size_t>(k)]);
  for (int k = 0; k < 3; ++k)
    report.single_entropies[static_cast<std::size_t>(k)] =
        binary_entropy(p_plus[static_cast<std::size_t>(k + 1)]);
  report.single_probabilities = p_plus;
  report.m_bits = report.recompute_m();
  report.violated = report.m_bits > 0.0;
  return report;
}

}  // namespace

InequalityReport evaluate_m(const CyclicObservableSet& set, const StateVector& state) {
  std::array<PairDistribution, 5> pairs{
      pair_distribution(set, 1, state), pair_distribution(set, 2, state),
      pair_distribution(set, 3, state), pair_distribution(set, 4, state),
      pair_distribution(set, 5, state)};
  std::array<double, 5> p_plus;
  for (int i = 0; i < 5; ++i)
    p_plus[static_cast<std::size_t>(i)] = pairs[static_cast<std::size_t>(i)].p_pm;
  return assemble_report(pairs, p_plus);
}

InequalityReport estimate_m_sampled(const CyclicObservableSet& set, const StateVector& state,
                                    std::uint64_t shots_per_pair, std::uint64_t seed) {
  if (shots_per_pair < 1) throw OutOfRangeError("estimate_m_sampled: shots_per_pair must be >= 1");
  Rng rng(seed);
  std::array<double, 5> freq_mm{}, freq_mp{}, freq_pm{};
  for (int i = 1; i <= 5; ++i) {
    const PairDistribution exact = pair_distribution(set, i, state);
    std::uint64_t c_mm = 0, c_mp = 0;
    for (std::uint64_t s = 0; s < shots_per_pair; ++s) {
      const double u = rng.uniform();
      if (u < exact.p_mm)
        ++c_mm;
      else if (u < exact.p_mm + exact.p_mp)
        ++c_mp;
    }
    const double n = static_cast<double>(shots_per_pair);
    freq_mm[static_cast<std::size_t>(i - 1)] = static_cast<double>(c_mm) / n;
    freq_mp[static_cast<std::size_t>(i - 1)] = static_cast<double>(c_mp) / n;
    freq_pm[static_cast<std::size_t>(i - 1)] =
        static_cast<double>(shots_per_pair - c_mm - c_mp) / n;
  }
  std::array<PairDistribution, 5> pairs{
      PairDistribution(freq_mm[0], freq_mp[0], freq_pm[0], 1),
      PairDistribution(freq_mm[1], freq_mp[1], freq_pm[1], 2),
      PairDistribution(freq_mm[2], freq_mp[2], freq_pm[2], 3),
      PairDistribution(freq_mm[3], freq_mp[3], freq_pm[3], 4),
      PairDistribution(freq_mm[4], freq_mp[4], freq_pm[4], 5)};
  return assemble_report(pairs, freq_pm);
}

}  // namespace ectx
