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
//
// Acceptance suite: one self-contained check per criterion, one PASS/FAIL
// line each, exit code = number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "ectx/feasibility.hpp"
#include "ectx/inequality.hpp"
#include "ectx/joint.hpp"
#include "ectx/observables.hpp"
#include "ectx/scan.hpp"
#include "ectx/state_family.hpp"

using namespace ectx;

namespace {

constexpr double kAlphaEnt = 3.4899, kBetaEnt = 2.9012;
constexpr double kAlphaProd = 2.9306, kBetaProd = -5.7112;
constexpr int kWorkers = 4;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& message) {
    if (!condition) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED: " + message;
    }
  }
  void note(const std::string& message) {
    if (!detail.empty()) detail += "; ";
    detail += message;
  }
};

int run_cli(const std::string& args, std::string* output) {
  const std::string cmd = std::string(ECTX_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) output->append(buf, n);
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::array<PairDistribution, 5> quantum_targets(const CyclicObservableSet& set,
                                                const StateVector& psi) {
  return {pair_distribution(set, 1, psi), pair_distribution(set, 2, psi),
          pair_distribution(set, 3, psi), pair_distribution(set, 4, psi),
          pair_distribution(set, 5, psi)};
}

// --------------------------------------------------------------------------

Check criterion_1_cyclic_orthogonality() {
  Check c;
  std::string out;
  const int exit_code = run_cli("verify", &out);
  c.require(exit_code == 0, "cmd_verify exited " + std::to_string(exit_code));
  const auto j = nlohmann::json::parse(out, nullptr, false);
  c.require(!j.is_discarded(), "cmd_verify output is not JSON");
  if (j.is_discarded()) return c;
  double worst = 0.0;
  for (const auto& overlap : j.at("adjacent_overlaps"))
    worst = std::max(worst, overlap.get<double>());
  c.require(worst <= 1e-12, "adjacent Gram entry " + fmt(worst) + " > 1e-12");
  c.note("max adjacent |<v_i|v_{i+1}>| = " + fmt(worst));
  return c;
}

Check criterion_optimum(FamilyKind family, double alpha, double beta, double reported,
                        double opt_floor) {
  Check c;
  const auto set = CyclicObservableSet::builtin();
  const double m = evaluate_m(set, make_state({family, alpha, beta})).m_bits;
  c.require(std::abs(m - reported) <= 2e-3,
            "M = " + fmt(m) + " not within 2e-3 of " + fmt(reported));
  const ScanOptimum best = optimize(family, set, 60, 6, 1, kWorkers);
  c.require(best.m_bits >= opt_floor,
            "optimize M* = " + fmt(best.m_bits) + " < " + fmt(opt_floor));
  c.note("M = " + fmt(m) + ", M* = " + fmt(best.m_bits));
  return c;
}

Check criterion_4_classical_bound() {
  Check c;
  const OracleSummary summary = oracle_run(100000, 4, kWorkers);
  c.require(summary.violations_found == 0,
            std::to_string(summary.violations_found) + " classical violations");
  c.require(summary.max_m_observed <= 1e-12,
            "max classical M " + fmt(summary.max_m_observed) + " > 1e-12");
  for (int t = 0; t < JointDistribution5::kAtoms; ++t) {
    const double m = classical_m(JointDistribution5::point_mass(t));
    if (m != 0.0) {
      c.require(false, "point mass " + std::to_string(t) + " gives M = " + fmt(m) + ", not 0");
      break;
    }
  }
  c.note("10^5 samples + 32 point masses, max M = " + fmt(summary.max_m_observed) +
         " (sampled " + fmt(summary.max_m_sampled) + ")");
  return c;
}

Check criterion_5_joint_extension() {
  Check c;
  const auto set = CyclicObservableSet::builtin();
  const StateVector psi = make_state({FamilyKind::kEntangled, kAlphaEnt, kBetaEnt});
  const FeasibilityVerdict quantum = check_joint_extension(quantum_targets(set, psi));
  c.require(!quantum.feasible, "violating quantum statistics admitted a joint extension");
  c.note("quantum residual = " + fmt(quantum.residual));

  Rng rng(5);
  double worst_error = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const JointDistribution5 jd = sample_exclusive(rng, trial % 2 ? 0.7 : 3.0);
    const std::array<PairDistribution, 5> targets{
        marginalize_pair(jd, 1), marginalize_pair(jd, 2), marginalize_pair(jd, 3),
        marginalize_pair(jd, 4), marginalize_pair(jd, 5)};
    const FeasibilityVerdict verdict = check_joint_extension(targets);
    if (!verdict.feasible) {
      c.require(false, "explicit-jd marginals #" + std::to_string(trial) + " declared infeasible");
      return c;
    }
    for (int i = 1; i <= 5; ++i) {
      const auto cells = pair_marginal_table(*verdict.witness, i);
      const PairDistribution& t = targets[static_cast<std::size_t>(i - 1)];
      worst_error = std::max({worst_error, std::abs(cells[0] - t.p_mm),
                              std::abs(cells[1] - t.p_mp), std::abs(cells[2] - t.p_pm),
                              std::abs(cells[3])});
    }
  }
  c.require(worst_error <= 1e-7, "witness marginal error " + fmt(worst_error) + " > 1e-7");
  c.note("100 witnesses, worst marginal error = " + fmt(worst_error));
  return c;
}

Check criterion_6_entropy_axioms() {
  Check c;
  std::mt19937_64 gen(6);
  std::uniform_int_distribution<int> dim(2, 4);
  std::exponential_distribution<double> cell(1.0);
  const auto h = [](const std::vector<double>& p) {
    double s = 0.0;
    for (double v : p)
      if (v > 0.0) s -= v * std::log2(v);
    return s;
  };
  double worst_gap = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int rows = dim(gen), cols = dim(gen);
    std::vector<double> joint(static_cast<std::size_t>(rows * cols));
    double total = 0.0;
    for (double& v : joint) total += (v = cell(gen));
    for (double& v : joint) v /= total;

    std::vector<double> px(static_cast<std::size_t>(rows), 0.0);
    std::vector<double> py(static_cast<std::size_t>(cols), 0.0);
    for (int r = 0; r < rows; ++r)
      for (int col = 0; col < cols; ++col) {
        px[static_cast<std::size_t>(r)] += joint[static_cast<std::size_t>(r * cols + col)];
        py[static_cast<std::size_t>(col)] += joint[static_cast<std::size_t>(r * cols + col)];
      }
    const double hxy = h(joint), hx = h(px), hy = h(py);
    double hx_given_y = 0.0;
    for (int col = 0; col < cols; ++col) {
      if (py[static_cast<std::size_t>(col)] <= 0.0) continue;
      std::vector<double> cond(static_cast<std::size_t>(rows));
      for (int r = 0; r < rows; ++r)
        cond[static_cast<std::size_t>(r)] =
            joint[static_cast<std::size_t>(r * cols + col)] / py[static_cast<std::size_t>(col)];
      hx_given_y += py[static_cast<std::size_t>(col)] * h(cond);
    }
    const double chain_gap = std::abs(hxy - (hy + hx_given_y));
    worst_gap = std::max({worst_gap, chain_gap, hxy - (hx + hy), hx_given_y - hx, hx - hxy,
                          hy - hxy});
    if (chain_gap > 1e-10 || hxy > hx + hy + 1e-10 || hx_given_y > hx + 1e-10 ||
        hx > hxy + 1e-10 || hy > hxy + 1e-10) {
      c.require(false, "axiom violated at trial " + std::to_string(trial));
      return c;
    }
  }
  c.note("10^4 joint tables, worst slack = " + fmt(worst_gap));
  return c;
}

Check criterion_7_figure_regions() {
  Check c;
  const auto set = CyclicObservableSet::builtin();
  const struct {
    FamilyKind family;
    double opt_alpha, opt_beta;
  } cases[2] = {{FamilyKind::kEntangled, kAlphaEnt, kBetaEnt},
                {FamilyKind::kProduct, kAlphaProd, kBetaProd}};
  for (const auto& cs : cases) {
    const ScanGrid grid = default_grid(cs.family, 200, set.label());
    const ScanResult result = scan(grid, set, kWorkers);
    int positive = 0;
    for (double m : result.m_values) positive += (!std::isnan(m) && m > 0.0) ? 1 : 0;
    c.require(positive > 0, std::string(to_string(cs.family)) + ": no positive region");

    // The cell containing the reference optimum must sit inside a connected
    // positive component (4-neighbor flood fill).
    const int ia = static_cast<int>(std::floor((cs.opt_alpha - grid.alpha.start) / grid.alpha.step()));
    const int ib = static_cast<int>(std::floor((cs.opt_beta - grid.beta.start) / grid.beta.step()));
    const auto positive_at = [&](int x, int y) {
      if (x < 0 || x >= grid.alpha.steps || y < 0 || y >= grid.beta.steps) return false;
      const double m = result.value(x, y);
      return !std::isnan(m) && m > 0.0;
    };
    c.require(positive_at(ia, ib), std::string(to_string(cs.family)) +
                                       ": reference-optimum cell is not in the violation region");
    int component = 0;
    if (positive_at(ia, ib)) {
      std::vector<char> seen(result.m_values.size(), 0);
      std::deque<std::pair<int, int>> queue{{ia, ib}};
      seen[static_cast<std::size_t>(ia) * static_cast<std::size_t>(grid.beta.steps) +
           static_cast<std::size_t>(ib)] = 1;
      while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        ++component;
        const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int u = x + dx[k], v = y + dy[k];
          if (!positive_at(u, v)) continue;
          const std::size_t idx = static_cast<std::size_t>(u) *
                                      static_cast<std::size_t>(grid.beta.steps) +
                                  static_cast<std::size_t>(v);
          if (seen[idx]) continue;
          seen[idx] = 1;
          queue.emplace_back(u, v);
        }
      }
    }
    c.require(component >= 10, std::string(to_string(cs.family)) + ": component size " +
                                   std::to_string(component) + " < 10");

    // Export and re-parse the CSV.
    const auto path = std::filesystem::temp_directory_path() /
                      (std::string("ectx_acceptance_") + to_string(cs.family) + ".csv");
    export_scan_csv(result, path);
    std::ifstream in(path);
    std::string line;
    int rows = 0, holes = 0;
    bool header_ok = false;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (line == "alpha,beta,m_bits") {
        header_ok = true;
        continue;
      }
      if (std::count(line.begin(), line.end(), ',') != 2) {
        c.require(false, "malformed CSV row: " + line);
        return c;
      }
      if (line.back() == ',') ++holes;
      ++rows;
    }
    int expected_holes = 0;
    for (double m : result.m_values) expected_holes += std::isnan(m) ? 1 : 0;
    c.require(header_ok, "CSV header missing");
    c.require(rows == 200 * 200, "CSV has " + std::to_string(rows) + " rows");
    c.require(holes == expected_holes, "CSV holes " + std::to_string(holes) + " != " +
                                           std::to_string(expected_holes));
    c.note(std::string(to_string(cs.family)) + ": " + std::to_string(positive) +
           " positive cells, component " + std::to_string(component) + ", " +
           std::to_string(holes) + " holes");
    std::filesystem::remove(path);
  }
  return c;
}

Check criterion_8_sampling_convergence() {
  Check c;
  const auto set = CyclicObservableSet::builtin();
  const StateVector psi = make_state({FamilyKind::kEntangled, kAlphaEnt, kBetaEnt});
  const double exact = evaluate_m(set, psi).m_bits;
  const InequalityReport first = estimate_m_sampled(set, psi, 1000000, 20260810);
  const InequalityReport second = estimate_m_sampled(set, psi, 1000000, 20260810);
  c.require(std::abs(first.m_bits - exact) <= 5e-3,
            "estimate off by " + fmt(std::abs(first.m_bits - exact)));
  c.require(first.m_bits == second.m_bits, "same seed gave different estimates");
  c.note("10^6 shots/pair: |estimate - exact| = " + fmt(std::abs(first.m_bits - exact)));
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Check()> fn;
  };
  const Criterion criteria[] = {
      {1, "cyclic orthogonality of the built-in directions", criterion_1_cyclic_orthogonality},
      {2, "entangled optimum reproduction",
       [] { return criterion_optimum(FamilyKind::kEntangled, kAlphaEnt, kBetaEnt, 0.0772, 0.0762); }},
      {3, "product optimum reproduction",
       [] { return criterion_optimum(FamilyKind::kProduct, kAlphaProd, kBetaProd, 0.0502, 0.0492); }},
      {4, "classical bound over random joint distributions", criterion_4_classical_bound},
      {5, "no-joint-extension certification", criterion_5_joint_extension},
      {6, "entropy axiom property suite", criterion_6_entropy_axioms},
      {7, "figure-region reproduction and CSV export", criterion_7_figure_regions},
      {8, "sampling convergence at 10^6 shots", criterion_8_sampling_convergence},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = criterion.fn();
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%s) [%.2fs]\n", check.ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, check.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!check.ok) ++failures;
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", std::size(criteria));
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
