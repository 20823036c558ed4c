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

#include "ectx/entropy.hpp"

#include <cmath>
#include <string>

namespace ectx {

namespace {

double clamp_probability(double p, const char* what) {
  if (!std::isfinite(p) || p < -kProbClampTol || p > 1.0 + kProbClampTol)
    throw InvalidDistributionError(std::string(what) + ": probability " + std::to_string(p) +
                                   " outside [0,1] beyond tolerance");
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

inline double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double shannon_entropy(std::span<const double> probs) {
  if (probs.empty()) throw InvalidDistributionError("shannon_entropy: empty distribution");
  double sum = 0.0;
  double h = 0.0;
  for (double p : probs) {
    const double q = clamp_probability(p, "shannon_entropy");
    sum += q;
    h += plogp(q);
  }
  if (std::abs(sum - 1.0) > kProbSumTol)
    throw InvalidDistributionError("shannon_entropy: probabilities sum to " + std::to_string(sum));
  return h;
}

double binary_entropy(double p) {
  if (!std::isfinite(p) || p < -kProbClampTol || p > 1.0 + kProbClampTol)
    throw OutOfRangeError("binary_entropy: p = " + std::to_string(p) + " outside [0,1] beyond tolerance");
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return plogp(p) + plogp(1.0 - p);
}

PairDistribution::PairDistribution(double mm, double mp, double pm, int index)
    : p_mm(0.0), p_mp(0.0), p_pm(0.0), pair_index(index) {
  if (index < 1 || index > 5)
    throw InvalidDistributionError("PairDistribution: pair index " + std::to_string(index) +
                                   " outside 1..5");
  p_mm = clamp_probability(mm, "PairDistribution");
  p_mp = clamp_probability(mp, "PairDistribution");
  p_pm = clamp_probability(pm, "PairDistribution");
  const double sum = p_mm + p_mp + p_pm;
  if (std::abs(sum - 1.0) > kProbSumTol)
    throw InvalidDistributionError("PairDistribution: cells sum to " + std::to_string(sum));
}

double pair_entropy(const PairDistribution& pd) {
  const double cells[3] = {pd.p_mm, pd.p_mp, pd.p_pm};
  return shannon_entropy(cells);
}

}  // namespace ectx
