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

#include "ectx/feasibility.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ectx {

namespace {

constexpr int kVars = JointDistribution5::kAtoms;  // 32 structural variables
constexpr int kRows = 4 * 5 + 1;                   // 20 marginal cells + total mass
constexpr double kCostTol = 1e-11;
constexpr double kPivotTol = 1e-10;
constexpr int kMaxPivots = 5000;

void validate_targets(const std::array<PairDistribution, 5>& targets) {
  for (int k = 0; k < 5; ++k) {
    const PairDistribution& t = targets[static_cast<std::size_t>(k)];
    if (t.pair_index != k + 1)
      throw MalformedTargetsError("target " + std::to_string(k) + " carries pair index " +
                                  std::to_string(t.pair_index) + ", expected " +
                                  std::to_string(k + 1));
    const double cells[3] = {t.p_mm, t.p_mp, t.p_pm};
    double sum = 0.0;
    for (double c : cells) {
      if (!std::isfinite(c) || c < 0.0 || c > 1.0)
        throw MalformedTargetsError("target pair " + std::to_string(k + 1) +
                                    " has a cell outside [0,1]");
      sum += c;
    }
    if (std::abs(sum - 1.0) > kProbSumTol)
      throw MalformedTargetsError("target pair " + std::to_string(k + 1) + " cells sum to " +
                                  std::to_string(sum));
  }
}

// Rows of the constraint system A x = b over the 32 atoms.
struct System {
  std::vector<std::array<double, kVars>> a;
  std::vector<double> b;
};

System build_system(const std::array<PairDistribution, 5>& targets) {
  System sys;
  sys.a.assign(kRows, {});
  sys.b.assign(kRows, 0.0);
  for (int pair = 0; pair < 5; ++pair) {
    const PairDistribution& t = targets[static_cast<std::size_t>(pair)];
    const int i = pair + 1;
    const int j = i % 5 + 1;
    const double cell_targets[4] = {t.p_mm, t.p_mp, t.p_pm, 0.0};
    for (int cell = 0; cell < 4; ++cell) {
      const int r = 4 * pair + cell;
      sys.b[static_cast<std::size_t>(r)] = cell_targets[cell];
      for (int atom = 0; atom < kVars; ++atom) {
        const int got = (JointDistribution5::outcome_plus(atom, i) ? 2 : 0) +
                        (JointDistribution5::outcome_plus(atom, j) ? 1 : 0);
        if (got == cell) sys.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(atom)] = 1.0;
      }
    }
  }
  sys.a[kRows - 1].fill(1.0);
  sys.b[kRows - 1] = 1.0;
  return sys;
}

double max_violation(const System& sys, const std::array<double, kVars>& x) {
  double worst = 0.0;
  for (int r = 0; r < kRows; ++r) {
    double lhs = 0.0;
    for (int j = 0; j < kVars; ++j)
      lhs += sys.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *
             x[static_cast<std::size_t>(j)];
    worst = std::max(worst, std::abs(lhs - sys.b[static_cast<std::size_t>(r)]));
  }
  return worst;
}

}  // namespace

FeasibilityVerdict check_joint_extension(const std::array<PairDistribution, 5>& targets) {
  validate_targets(targets);
  const System sys = build_system(targets);

  // Phase-1 tableau: 32 structural + 21 artificial columns, artificials
  // basic at b >= 0. Minimize the artificial mass; optimum 0 means feasible.
  constexpr int kCols = kVars + kRows;
  std::vector<std::vector<double>> t(kRows, std::vector<double>(kCols + 1, 0.0));
  std::vector<int> basis(kRows);
  for (int r = 0; r < kRows; ++r) {
    for (int j = 0; j < kVars; ++j)
      t[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
          sys.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    t[static_cast<std::size_t>(r)][static_cast<std::size_t>(kVars + r)] = 1.0;
    t[static_cast<std::size_t>(r)][kCols] = sys.b[static_cast<std::size_t>(r)];
    basis[static_cast<std::size_t>(r)] = kVars + r;
  }
  // Reduced-cost row, priced out for the artificial basis.
  std::vector<double> z(kCols + 1, 0.0);
  for (int j = 0; j < kVars; ++j) {
    double s = 0.0;
    for (int r = 0; r < kRows; ++r) s += t[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    z[static_cast<std::size_t>(j)] = -s;
  }
  {
    double s = 0.0;
    for (int r = 0; r < kRows; ++r) s += t[static_cast<std::size_t>(r)][kCols];
    z[kCols] = -s;  // minus the current objective value
  }

  for (int pivot = 0; pivot < kMaxPivots; ++pivot) {
    // Bland: smallest improving column.
    int enter = -1;
    for (int j = 0; j < kCols; ++j) {
      if (z[static_cast<std::size_t>(j)] < -kCostTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    // Ratio test; ties go to the smallest basis index (Bland).
    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < kRows; ++r) {
      const double coef = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(enter)];
      if (coef <= kPivotTol) continue;
      const double ratio = t[static_cast<std::size_t>(r)][kCols] / coef;
      if (leave < 0 || ratio < best_ratio - kPivotTol ||
          (std::abs(ratio - best_ratio) <= kPivotTol &&
           basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0)
      throw Error("check_joint_extension: phase-1 column unbounded; constraint matrix corrupt");
    // Pivot.
    auto& prow = t[static_cast<std::size_t>(leave)];
    const double pv = prow[static_cast<std::size_t>(enter)];
    for (double& v : prow) v /= pv;
    for (int r = 0; r < kRows; ++r) {
      if (r == leave) continue;
      auto& row = t[static_cast<std::size_t>(r)];
      const double f = row[static_cast<std::size_t>(enter)];
      if (f == 0.0) continue;
      for (int j = 0; j <= kCols; ++j)
        row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
    }
    const double zf = z[static_cast<std::size_t>(enter)];
    if (zf != 0.0)
      for (int j = 0; j <= kCols; ++j)
        z[static_cast<std::size_t>(j)] -= zf * prow[static_cast<std::size_t>(j)];
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  // Extract the structural point (artificials drop to zero when feasible).
  std::array<double, kVars> x{};
  for (int r = 0; r < kRows; ++r)
    if (basis[static_cast<std::size_t>(r)] < kVars)
      x[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])] =
          std::max(0.0, t[static_cast<std::size_t>(r)][kCols]);

  double total = 0.0;
  for (double v : x) total += v;
  if (total > 0.5)
    for (double& v : x) v /= total;

  FeasibilityVerdict verdict;
  verdict.residual = max_violation(sys, x);
  verdict.feasible = verdict.residual <= kMarginalMatchTol;
  if (verdict.feasible) verdict.witness = JointDistribution5(x);
  return verdict;
}

}  // namespace ectx
