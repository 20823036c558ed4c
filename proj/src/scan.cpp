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

#include "ectx/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include "ectx/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ectx {

namespace {

constexpr double kSimplexShrinkTol = 1e-8;
constexpr int kMaxNelderMeadIters = 2000;

void validate_grid(const ScanGrid& grid) {
  for (const AxisRange* axis : {&grid.alpha, &grid.beta}) {
    if (axis->steps < 2) throw Error("scan grid needs at least 2 steps per axis");
    if (!(axis->start < axis->stop)) throw Error("scan grid needs start < stop");
  }
  if (grid.family == FamilyKind::kCustom) throw Error("scan grids need a parametric family");
}

// One lattice cell. Serial and parallel paths both call this, which keeps
// their results bit-identical. Degenerate family points become NaN holes.
double eval_cell(const ScanGrid& grid, const CyclicObservableSet& set, int ia, int ib) {
  const double a = grid.alpha.point(ia);
  const double b = grid.beta.point(ib);
  try {
    return evaluate_m(set, make_state({grid.family, a, b})).m_bits;
  } catch (const DegenerateStateError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

// M at a free (alpha, beta) point; degenerate points count as -inf so the
// optimizer walks away from them.
double eval_point(FamilyKind family, const CyclicObservableSet& set, double a, double b) {
  try {
    return evaluate_m(set, make_state({family, a, b})).m_bits;
  } catch (const DegenerateStateError&) {
    return -std::numeric_limits<double>::infinity();
  }
}

void finish_result(ScanResult& result) {
  const ScanGrid& grid = result.grid;
  double best = -std::numeric_limits<double>::infinity();
  int best_ia = 0, best_ib = 0;
  std::size_t evaluated = 0, positive = 0;
  for (int ia = 0; ia < grid.alpha.steps; ++ia) {
    for (int ib = 0; ib < grid.beta.steps; ++ib) {
      const double m = result.value(ia, ib);
      if (std::isnan(m)) continue;
      ++evaluated;
      if (m > 0.0) ++positive;
      // Strict > keeps the first (lexicographically smallest) argmax.
      if (m > best) {
        best = m;
        best_ia = ia;
        best_ib = ib;
      }
    }
  }
  if (evaluated == 0) throw Error("scan: every lattice point was degenerate");
  result.max_point = {grid.alpha.point(best_ia), grid.beta.point(best_ib), best};
  result.violation_fraction = static_cast<double>(positive) / static_cast<double>(evaluated);
}

struct NelderMeadStart {
  double alpha, beta;
  double h_alpha, h_beta;  // initial simplex edge lengths
};

// Minimal 2-D Nelder-Mead on f = -M. Tracks the best evaluation ever made,
// so best-so-far M never decreases; stops when the simplex diameter falls
// below kSimplexShrinkTol radians.
ScanOptimum nelder_mead(FamilyKind family, const CyclicObservableSet& set,
                        const NelderMeadStart& start) {
  struct Vertex {
    double a, b, f;
  };
  auto f = [&](double a, double b) { return -eval_point(family, set, a, b); };

  Vertex best_ever{start.alpha, start.beta,
                   std::numeric_limits<double>::infinity()};
  auto eval = [&](double a, double b) {
    const double v = f(a, b);
    if (v < best_ever.f) best_ever = {a, b, v};
    return Vertex{a, b, v};
  };

  Vertex simplex[3] = {eval(start.alpha, start.beta),
                       eval(start.alpha + start.h_alpha, start.beta),
                       eval(start.alpha, start.beta + start.h_beta)};

  for (int iter = 0; iter < kMaxNelderMeadIters; ++iter) {
    std::sort(std::begin(simplex), std::end(simplex), [](const Vertex& x, const Vertex& y) {
      if (x.f != y.f) return x.f < y.f;
      if (x.a != y.a) return x.a < y.a;
      return x.b < y.b;
    });
    const double diameter =
        std::max({std::abs(simplex[1].a - simplex[0].a), std::abs(simplex[2].a - simplex[0].a),
                  std::abs(simplex[1].b - simplex[0].b), std::abs(simplex[2].b - simplex[0].b)});
    if (diameter < kSimplexShrinkTol) break;

    const double ca = 0.5 * (simplex[0].a + simplex[1].a);
    const double cb = 0.5 * (simplex[0].b + simplex[1].b);
    const Vertex reflected = eval(2.0 * ca - simplex[2].a, 2.0 * cb - simplex[2].b);
    if (reflected.f < simplex[0].f) {
      const Vertex expanded = eval(3.0 * ca - 2.0 * simplex[2].a, 3.0 * cb - 2.0 * simplex[2].b);
      simplex[2] = expanded.f < reflected.f ? expanded : reflected;
      continue;
    }
    if (reflected.f < simplex[1].f) {
      simplex[2] = reflected;
      continue;
    }
    const bool outside = reflected.f < simplex[2].f;
    const Vertex contracted =
        outside ? eval(1.5 * ca - 0.5 * simplex[2].a, 1.5 * cb - 0.5 * simplex[2].b)
                : eval(0.5 * (ca + simplex[2].a), 0.5 * (cb + simplex[2].b));
    if (contracted.f < (outside ? reflected.f : simplex[2].f)) {
      simplex[2] = contracted;
      continue;
    }
    // Shrink toward the best vertex.
    for (int k = 1; k < 3; ++k)
      simplex[k] = eval(0.5 * (simplex[0].a + simplex[k].a), 0.5 * (simplex[0].b + simplex[k].b));
  }
  return ScanOptimum{best_ever.a, best_ever.b, -best_ever.f};
}

ScanOptimum refine_from(const ScanGrid& grid, const CyclicObservableSet& set,
                        const ScanOptimum& seed_point) {
  NelderMeadStart start{seed_point.alpha, seed_point.beta, 0.5 * grid.alpha.step(),
                        0.5 * grid.beta.step()};
  return nelder_mead(grid.family, set, start);
}

}  // namespace

ScanGrid default_grid(FamilyKind family, int steps, std::string observables_label) {
  const double two_pi = 2.0 * std::numbers::pi;
  ScanGrid grid;
  grid.family = family;
  grid.observables_label = std::move(observables_label);
  if (family == FamilyKind::kProduct) {
    grid.alpha = {-two_pi, two_pi, steps};
    grid.beta = {-two_pi, two_pi, steps};
  } else {
    grid.alpha = {0.0, two_pi, steps};
    grid.beta = {0.0, two_pi, steps};
  }
  return grid;
}

ScanResult scan_serial(const ScanGrid& grid, const CyclicObservableSet& set, bool refine) {
  validate_grid(grid);
  ScanResult result;
  result.grid = grid;
  result.m_values.resize(static_cast<std::size_t>(grid.alpha.steps) *
                         static_cast<std::size_t>(grid.beta.steps));
  for (int ia = 0; ia < grid.alpha.steps; ++ia)
    for (int ib = 0; ib < grid.beta.steps; ++ib)
      result.m_values[static_cast<std::size_t>(ia) * static_cast<std::size_t>(grid.beta.steps) +
                      static_cast<std::size_t>(ib)] = eval_cell(grid, set, ia, ib);
  finish_result(result);
  if (refine) result.refined = refine_from(grid, set, result.max_point);
  return result;
}

ScanResult scan(const ScanGrid& grid, const CyclicObservableSet& set, int workers, bool refine) {
#ifdef _OPENMP
  if (workers > 1) {
    validate_grid(grid);
    ScanResult result;
    result.grid = grid;
    const std::size_t total = static_cast<std::size_t>(grid.alpha.steps) *
                              static_cast<std::size_t>(grid.beta.steps);
    result.m_values.resize(total);
    const std::int64_t n = static_cast<std::int64_t>(total);
#pragma omp parallel for num_threads(workers) schedule(static)
    for (std::int64_t idx = 0; idx < n; ++idx) {
      const int ia = static_cast<int>(idx / grid.beta.steps);
      const int ib = static_cast<int>(idx % grid.beta.steps);
      result.m_values[static_cast<std::size_t>(idx)] = eval_cell(grid, set, ia, ib);
    }
    finish_result(result);
    if (refine) result.refined = refine_from(grid, set, result.max_point);
    return result;
  }
#else
  (void)workers;
#endif
  return scan_serial(grid, set, refine);
}

ScanOptimum optimize(FamilyKind family, const CyclicObservableSet& set, int coarse_steps,
                     int restarts, std::uint64_t seed, int workers) {
  if (coarse_steps < 10) throw Error("optimize: coarse_steps must be >= 10");
  if (restarts < 1) throw Error("optimize: restarts must be >= 1");

  const ScanGrid grid = default_grid(family, coarse_steps, set.label());
  const ScanResult coarse = scan(grid, set, workers);

  // Top cells of the coarse pass, stably ordered (M desc, index asc).
  struct Cell {
    double m;
    std::size_t idx;
  };
  std::vector<Cell> cells;
  cells.reserve(coarse.m_values.size());
  for (std::size_t idx = 0; idx < coarse.m_values.size(); ++idx)
    if (!std::isnan(coarse.m_values[idx])) cells.push_back({coarse.m_values[idx], idx});
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(restarts), cells.size());
  std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(k), cells.end(),
                    [](const Cell& x, const Cell& y) {
                      if (x.m != y.m) return x.m > y.m;
                      return x.idx < y.idx;
                    });

  std::vector<ScanOptimum> results(k);
  const auto run_restart = [&](std::size_t r) {
    const std::size_t idx = cells[r].idx;
    const int ia = static_cast<int>(idx / static_cast<std::size_t>(grid.beta.steps));
    const int ib = static_cast<int>(idx % static_cast<std::size_t>(grid.beta.steps));
    // Seed-derived jitter on the simplex scale keeps restarts from retracing
    // each other while staying deterministic per seed.
    Rng rng(derive_seed(seed, r));
    const double scale = 0.75 + 0.5 * rng.uniform();
    NelderMeadStart start{grid.alpha.point(ia), grid.beta.point(ib),
                          scale * 0.5 * grid.alpha.step(), scale * 0.5 * grid.beta.step()};
    results[r] = nelder_mead(family, set, start);
  };
#ifdef _OPENMP
  if (workers > 1) {
    const std::int64_t n = static_cast<std::int64_t>(k);
#pragma omp parallel for num_threads(workers) schedule(dynamic)
    for (std::int64_t r = 0; r < n; ++r) run_restart(static_cast<std::size_t>(r));
  } else
#endif
  {
    for (std::size_t r = 0; r < k; ++r) run_restart(r);
  }

  // Deterministic reduction: best M, ties to lexicographically smallest
  // (alpha, beta).
  ScanOptimum best = results[0];
  for (std::size_t r = 1; r < k; ++r) {
    const ScanOptimum& c = results[r];
    if (c.m_bits > best.m_bits ||
        (c.m_bits == best.m_bits && (c.alpha < best.alpha ||
                                     (c.alpha == best.alpha && c.beta < best.beta))))
      best = c;
  }
  return best;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const ScanResult& result, std::ostream& out) {
  const ScanGrid& g = result.grid;
  out << "# family: " << to_string(g.family) << "\n";
  out << "# observables: " << g.observables_label << "\n";
  out << "# alpha: start=" << format_double(g.alpha.start) << " stop=" << format_double(g.alpha.stop)
      << " steps=" << g.alpha.steps << "\n";
  out << "# beta: start=" << format_double(g.beta.start) << " stop=" << format_double(g.beta.stop)
      << " steps=" << g.beta.steps << "\n";
  out << "# max: alpha=" << format_double(result.max_point.alpha)
      << " beta=" << format_double(result.max_point.beta)
      << " m_bits=" << format_double(result.max_point.m_bits) << "\n";
  if (result.refined)
    out << "# refined: alpha=" << format_double(result.refined->alpha)
        << " beta=" << format_double(result.refined->beta)
        << " m_bits=" << format_double(result.refined->m_bits) << "\n";
  out << "# violation_fraction: " << format_double(result.violation_fraction) << "\n";
  out << "alpha,beta,m_bits\n";
  for (int ia = 0; ia < g.alpha.steps; ++ia) {
    for (int ib = 0; ib < g.beta.steps; ++ib) {
      const double m = result.value(ia, ib);
      out << format_double(g.alpha.point(ia)) << ',' << format_double(g.beta.point(ib)) << ',';
      if (!std::isnan(m)) out << format_double(m);
      out << '\n';
    }
  }
}

nlohmann::json optimum_to_json(const ScanOptimum& o) {
  return nlohmann::json{{"alpha", o.alpha}, {"beta", o.beta}, {"m_bits", o.m_bits}};
}

ScanOptimum optimum_from_json(const nlohmann::json& j) {
  return ScanOptimum{j.at("alpha").get<double>(), j.at("beta").get<double>(),
                     j.at("m_bits").get<double>()};
}

}  // namespace

void export_scan_csv(const ScanResult& result, std::ostream& out) { write_csv(result, out); }

void export_scan_csv(const ScanResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(result, out);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

nlohmann::json scan_to_json(const ScanResult& result) {
  const ScanGrid& g = result.grid;
  nlohmann::json j;
  j["grid"] = {{"family", to_string(g.family)},
               {"observables", g.observables_label},
               {"alpha", {{"start", g.alpha.start}, {"stop", g.alpha.stop}, {"steps", g.alpha.steps}}},
               {"beta", {{"start", g.beta.start}, {"stop", g.beta.stop}, {"steps", g.beta.steps}}}};
  // NaN holes serialize as null.
  j["m_values"] = result.m_values;
  j["max_point"] = optimum_to_json(result.max_point);
  j["refined"] = result.refined ? optimum_to_json(*result.refined) : nlohmann::json(nullptr);
  j["violation_fraction"] = result.violation_fraction;
  return j;
}

void export_scan_json(const ScanResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << scan_to_json(result).dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

ScanResult scan_from_json(const nlohmann::json& j) {
  ScanResult result;
  const auto& grid = j.at("grid");
  result.grid.family = family_from_string(grid.at("family").get<std::string>());
  result.grid.observables_label = grid.at("observables").get<std::string>();
  const auto read_axis = [&grid](const char* name, AxisRange& axis) {
    const auto& a = grid.at(name);
    axis.start = a.at("start").get<double>();
    axis.stop = a.at("stop").get<double>();
    axis.steps = a.at("steps").get<int>();
  };
  read_axis("alpha", result.grid.alpha);
  read_axis("beta", result.grid.beta);
  result.m_values.reserve(j.at("m_values").size());
  for (const auto& v : j.at("m_values"))
    result.m_values.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                          : v.get<double>());
  const std::size_t expected = static_cast<std::size_t>(result.grid.alpha.steps) *
                               static_cast<std::size_t>(result.grid.beta.steps);
  if (result.m_values.size() != expected)
    throw Error("scan_from_json: m_values size does not match the grid");
  result.max_point = optimum_from_json(j.at("max_point"));
  if (!j.at("refined").is_null()) result.refined = optimum_from_json(j.at("refined"));
  result.violation_fraction = j.at("violation_fraction").get<double>();
  return result;
}

ScanResult import_scan_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  return scan_from_json(j);
}

}  // namespace ectx
