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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ectx/inequality.hpp"
#include "ectx/state_family.hpp"

namespace ectx {

// Half-open lattice: point k = start + k * (stop - start) / steps,
// k = 0..steps-1.
struct AxisRange {
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;

  double step() const { return (stop - start) / steps; }
  double point(int k) const { return start + k * step(); }
};

struct ScanGrid {
  AxisRange alpha;
  AxisRange beta;
  FamilyKind family = FamilyKind::kEntangled;
  std::string observables_label;
};

// Default windows: the entangled family covers one full period, the product
// window is doubled so negative beta optima stay in frame.
ScanGrid default_grid(FamilyKind family, int steps, std::string observables_label);

struct ScanOptimum {
  double alpha = 0.0;
  double beta = 0.0;
  double m_bits = 0.0;
};

struct ScanResult {
  ScanGrid grid;
  // Alpha-major: m_values[ia * beta.steps + ib]. Degenerate family points
  // are NaN holes (missing data, not zeros).
  std::vector<double> m_values;
  // Lattice argmax, selected before any refinement; ties broken by
  // lexicographic (alpha, beta).
  ScanOptimum max_point;
  // Local refinement from max_point, when requested.
  std::optional<ScanOptimum> refined;
  // Fraction of evaluated (non-hole) lattice points with M > 0.
  double violation_fraction = 0.0;

  double value(int ia, int ib) const {
    return m_values[static_cast<std::size_t>(ia) * static_cast<std::size_t>(grid.beta.steps) +
                    static_cast<std::size_t>(ib)];
  }
};

// Serial reference implementation.
ScanResult scan_serial(const ScanGrid& grid, const CyclicObservableSet& set, bool refine = false);

// OpenMP kernel over lattice points (disjoint writes, deterministic
// reduction); bit-identical to scan_serial for any worker count.
// workers <= 1 runs the serial reference.
ScanResult scan(const ScanGrid& grid, const CyclicObservableSet& set, int workers = 1,
                bool refine = false);

// Coarse grid pass over the family's default window followed by
// derivative-free (Nelder-Mead) refinement from the top `restarts` cells.
// Best-so-far M is monotone non-decreasing; a run terminates once its
// simplex shrinks below 1e-8 radians. The seed jitters the initial simplex
// scales; identical seeds give identical triples. The reported m_bits is the
// evaluate_m value at the reported (alpha, beta).
ScanOptimum optimize(FamilyKind family, const CyclicObservableSet& set, int coarse_steps,
                     int restarts, std::uint64_t seed, int workers = 1);

// CSV schema: "# key: value" metadata comments, a header row
// `alpha,beta,m_bits`, one row per lattice point in storage order;
// degenerate points leave the m_bits field empty.
void export_scan_csv(const ScanResult& result, std::ostream& out);
void export_scan_csv(const ScanResult& result, const std::filesystem::path& path);

nlohmann::json scan_to_json(const ScanResult& result);
void export_scan_json(const ScanResult& result, const std::filesystem::path& path);

// Inverse of scan_to_json; finite m_values round-trip bit-exactly, holes
// come back as NaN.
ScanResult scan_from_json(const nlohmann::json& j);
ScanResult import_scan_json(const std::filesystem::path& path);

}  // namespace ectx
