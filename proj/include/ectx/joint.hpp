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
#include <vector>

#include <json.hpp>

#include "ectx/entropy.hpp"
#include "ectx/rng.hpp"

namespace ectx {

// A classical M value above this counts as a violation of the M <= 0 bound
// (which would falsify the derivation or reveal a bug).
inline constexpr double kClassicalViolationTol = 1e-12;

// A global joint distribution over the five dichotomic outcomes
// (x_1..x_5) in {-1,+1}^5 -- the object whose existence non-contextuality
// presumes. Atom indices encode outcomes bitwise: bit (i-1) of the index is
// set iff x_i = +1.
class JointDistribution5 {
 public:
  static constexpr int kVariables = 5;
  static constexpr int kAtoms = 32;

  // Validates: each atom in [0,1] (entries within 1e-12 below 0 are clamped),
  // total mass 1 within 1e-9.
  explicit JointDistribution5(const std::array<double, kAtoms>& atoms);

  static JointDistribution5 point_mass(int atom_index);
  static JointDistribution5 uniform();

  const std::array<double, kAtoms>& atoms() const { return atoms_; }
  double atom(int index) const { return atoms_[static_cast<std::size_t>(index)]; }

  // Outcome of X_i (1-based) encoded in atom_index; true means +1.
  static bool outcome_plus(int atom_index, int i) { return (atom_index >> (i - 1)) & 1; }

 private:
  std::array<double, kAtoms> atoms_;
};

// Full 2x2 marginal of (X_i, X_{i+1 mod 5}): {p_mm, p_mp, p_pm, p_pp}.
std::array<double, 4> pair_marginal_table(const JointDistribution5& jd, int i);

// Cyclic-exclusive marginal form: requires the (+1,+1) mass to be at most
// 1e-9 (folded into p_mm), otherwise throws ExclusivityViolationError.
PairDistribution marginalize_pair(const JointDistribution5& jd, int i);

// p(x_i = +1) single marginal.
double single_marginal(const JointDistribution5& jd, int i);

// M evaluated from the joint distribution's own pair and single marginals,
// using the full 2x2 pair tables (no exclusivity assumed). M <= 0 for every
// joint distribution.
double classical_m(const JointDistribution5& jd);

// Outcome tuples with no cyclically adjacent (+1,+1) pair -- the support
// cyclic exclusivity permits. The count is computed, not hard-coded.
constexpr int exclusive_support_size() {
  int count = 0;
  for (int t = 0; t < JointDistribution5::kAtoms; ++t) {
    bool admissible = true;
    for (int i = 0; i < 5; ++i)
      if (((t >> i) & 1) != 0 && ((t >> ((i + 1) % 5)) & 1) != 0) admissible = false;
    count += admissible ? 1 : 0;
  }
  return count;
}
const std::vector<int>& exclusive_support();

// Dirichlet(concentration) over the full 32-atom simplex.
JointDistribution5 sample_dirichlet(Rng& rng, double concentration);
// Dirichlet over the exclusivity-permitted support only.
JointDistribution5 sample_exclusive(Rng& rng, double concentration);

// Brute-force falsification harness for the classical bound: random joint
// distributions (interior, boundary, and corner cases) through classical_m.
struct OracleSummary {
  std::uint64_t samples = 0;
  double max_m_observed = 0.0;
  double max_m_sampled = 0.0;
  std::uint64_t violations_found = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

// `samples` random joint distributions (cycling through Dirichlet
// concentrations 0.1/1/10 on both the full simplex and the exclusive
// support) plus the 32 point masses. Per-sample generator streams are
// derived from (seed, index), so the result is independent of the worker
// count; workers <= 1 runs the serial reference.
OracleSummary oracle_run(std::uint64_t samples, std::uint64_t seed, int workers = 1);
OracleSummary oracle_run_serial(std::uint64_t samples, std::uint64_t seed);

}  // namespace ectx
