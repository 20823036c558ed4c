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

#include "ectx/joint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ectx {

JointDistribution5::JointDistribution5(const std::array<double, kAtoms>& atoms) : atoms_(atoms) {
  double total = 0.0;
  for (double& a : atoms_) {
    if (!std::isfinite(a) || a < -kProbClampTol || a > 1.0 + kProbClampTol)
      throw InvalidDistributionError("JointDistribution5: atom " + std::to_string(a) +
                                     " outside [0,1] beyond tolerance");
    a = std::clamp(a, 0.0, 1.0);
    total += a;
  }
  if (std::abs(total - 1.0) > kProbSumTol)
    throw InvalidDistributionError("JointDistribution5: atoms sum to " + std::to_string(total));
}

JointDistribution5 JointDistribution5::point_mass(int atom_index) {
  if (atom_index < 0 || atom_index >= kAtoms)
    throw OutOfRangeError("point_mass: atom index " + std::to_string(atom_index) + " outside 0..31");
  std::array<double, kAtoms> atoms{};
  atoms[static_cast<std::size_t>(atom_index)] = 1.0;
  return JointDistribution5(atoms);
}

JointDistribution5 JointDistribution5::uniform() {
  std::array<double, kAtoms> atoms;
  atoms.fill(1.0 / kAtoms);
  return JointDistribution5(atoms);
}

namespace {

void check_pair_index(int i) {
  if (i < 1 || i > 5) throw OutOfRangeError("pair index " + std::to_string(i) + " outside 1..5");
}

}  // namespace

std::array<double, 4> pair_marginal_table(const JointDistribution5& jd, int i) {
  check_pair_index(i);
  const int j = i % 5 + 1;
  std::array<double, 4> cells{};  // mm, mp, pm, pp
  for (int t = 0; t < JointDistribution5::kAtoms; ++t) {
    const int cell = (JointDistribution5::outcome_plus(t, i) ? 2 : 0) +
                     (JointDistribution5::outcome_plus(t, j) ? 1 : 0);
    cells[static_cast<std::size_t>(cell)] += jd.atom(t);
  }
  return cells;
}

PairDistribution marginalize_pair(const JointDistribution5& jd, int i) {
  const auto cells = pair_marginal_table(jd, i);
  if (cells[3] > kExclusivityTol)
    throw ExclusivityViolationError("pair (" + std::to_string(i) + "," + std::to_string(i % 5 + 1) +
                                    "): (+1,+1) marginal mass " + std::to_string(cells[3]) +
                                    " exceeds 1e-9");
  // Fold the residual (+1,+1) mass into p_mm so the three cells keep the
  // table's full weight.
  return PairDistribution(cells[0] + cells[3], cells[1], cells[2], i);
}

double single_marginal(const JointDistribution5& jd, int i) {
  check_pair_index(i);
  double p = 0.0;
  for (int t = 0; t < JointDistribution5::kAtoms; ++t)
    if (JointDistribution5::outcome_plus(t, i)) p += jd.atom(t);
  return p;
}

double classical_m(const JointDistribution5& jd) {
  double pair_h[5];
  for (int i = 1; i <= 5; ++i) {
    const auto cells = pair_marginal_table(jd, i);
    pair_h[i - 1] = shannon_entropy(cells);
  }
  double singles = 0.0;
  for (int i = 2; i <= 4; ++i) singles += binary_entropy(single_marginal(jd, i));
  return pair_h[4] - pair_h[0] - pair_h[1] - pair_h[2] - pair_h[3] + singles;
}

const std::vector<int>& exclusive_support() {
  static const std::vector<int> support = [] {
    std::vector<int> s;
    s.reserve(exclusive_support_size());
    for (int t = 0; t < JointDistribution5::kAtoms; ++t) {
      bool admissible = true;
      for (int i = 0; i < 5; ++i)
        if (((t >> i) & 1) != 0 && ((t >> ((i + 1) % 5)) & 1) != 0) admissible = false;
      if (admissible) s.push_back(t);
    }
    return s;
  }();
  return support;
}

JointDistribution5 sample_dirichlet(Rng& rng, double concentration) {
  std::array<double, JointDistribution5::kAtoms> atoms{};
  rng.dirichlet(concentration, atoms);
  return JointDistribution5(atoms);
}

JointDistribution5 sample_exclusive(Rng& rng, double concentration) {
  const auto& support = exclusive_support();
  std::vector<double> weights(support.size());
  rng.dirichlet(concentration, weights);
  std::array<double, JointDistribution5::kAtoms> atoms{};
  for (std::size_t k = 0; k < support.size(); ++k)
    atoms[static_cast<std::size_t>(support[k])] = weights[k];
  return JointDistribution5(atoms);
}

nlohmann::json OracleSummary::to_json() const {
  nlohmann::json j;
  j["samples"] = samples;
  j["max_m_observed"] = max_m_observed;
  j["max_m_sampled"] = max_m_sampled;
  j["violations_found"] = violations_found;
  j["seed"] = seed;
  return j;
}

namespace {

constexpr double kConcentrations[3] = {0.1, 1.0, 10.0};

// Sample `index` of a run: stratum fixed by the index alone so that the
// sweep is identical no matter how samples are assigned to workers.
double sample_m(std::uint64_t seed, std::uint64_t index) {
  Rng rng(derive_seed(seed, index));
  const double conc = kConcentrations[index % 3];
  const bool exclusive = (index / 3) % 2 == 1;
  const JointDistribution5 jd =
      exclusive ? sample_exclusive(rng, conc) : sample_dirichlet(rng, conc);
  return classical_m(jd);
}

}  // namespace

OracleSummary oracle_run_serial(std::uint64_t samples, std::uint64_t seed) {
  OracleSummary summary;
  summary.samples = samples;
  summary.seed = seed;
  double max_sampled = -std::numeric_limits<double>::infinity();
  std::uint64_t violations = 0;
  for (std::uint64_t idx = 0; idx < samples; ++idx) {
    const double m = sample_m(seed, idx);
    max_sampled = std::max(max_sampled, m);
    if (m > kClassicalViolationTol) ++violations;
  }
  double max_all = max_sampled;
  for (int t = 0; t < JointDistribution5::kAtoms; ++t) {
    const double m = classical_m(JointDistribution5::point_mass(t));
    max_all = std::max(max_all, m);
    if (m > kClassicalViolationTol) ++violations;
  }
  summary.max_m_sampled = max_sampled;
  summary.max_m_observed = max_all;
  summary.violations_found = violations;
  return summary;
}

OracleSummary oracle_run(std::uint64_t samples, std::uint64_t seed, int workers) {
#ifdef _OPENMP
  if (workers > 1) {
    OracleSummary summary;
    summary.samples = samples;
    summary.seed = seed;
    double max_sampled = -std::numeric_limits<double>::infinity();
    std::uint64_t violations = 0;
    const std::int64_t n = static_cast<std::int64_t>(samples);
#pragma omp parallel for num_threads(workers) schedule(static) \
    reduction(max : max_sampled) reduction(+ : violations)
    for (std::int64_t idx = 0; idx < n; ++idx) {
      const double m = sample_m(seed, static_cast<std::uint64_t>(idx));
      max_sampled = std::max(max_sampled, m);
      if (m > kClassicalViolationTol) ++violations;
    }
    double max_all = max_sampled;
    for (int t = 0; t < JointDistribution5::kAtoms; ++t) {
      const double m = classical_m(JointDistribution5::point_mass(t));
      max_all = std::max(max_all, m);
      if (m > kClassicalViolationTol) ++violations;
    }
    summary.max_m_sampled = max_sampled;
    summary.max_m_observed = max_all;
    summary.violations_found = violations;
    return summary;
  }
#else
  (void)workers;
#endif
  return oracle_run_serial(samples, seed);
}

}  // namespace ectx
