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
// Serial reference vs OpenMP kernels. Run: ./benchmarks/bench_kernels

#include <benchmark/benchmark.h>

#include "ectx/feasibility.hpp"
#include "ectx/inequality.hpp"
#include "ectx/joint.hpp"
#include "ectx/scan.hpp"
#include "ectx/state_family.hpp"

namespace {

using namespace ectx;

const CyclicObservableSet& set() {
  static const CyclicObservableSet s = CyclicObservableSet::builtin();
  return s;
}

void BM_evaluate_m(benchmark::State& state) {
  const StateVector psi = make_state({FamilyKind::kEntangled, 3.4899, 2.9012});
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_m(set(), psi).m_bits);
}
BENCHMARK(BM_evaluate_m);

void BM_scan_serial(benchmark::State& state) {
  const ScanGrid grid = default_grid(FamilyKind::kEntangled, static_cast<int>(state.range(0)),
                                     set().label());
  for (auto _ : state) benchmark::DoNotOptimize(scan_serial(grid, set()).max_point.m_bits);
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_scan_serial)->Arg(120)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_scan_parallel(benchmark::State& state) {
  const ScanGrid grid = default_grid(FamilyKind::kEntangled, static_cast<int>(state.range(0)),
                                     set().label());
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(scan(grid, set(), workers).max_point.m_bits);
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_scan_parallel)
    ->Args({120, 2})
    ->Args({120, 4})
    ->Args({200, 2})
    ->Args({200, 4})
    ->Unit(benchmark::kMillisecond);

void BM_oracle_serial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle_run_serial(static_cast<std::uint64_t>(state.range(0)), 7)
                                 .max_m_sampled);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_oracle_serial)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_oracle_parallel(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        oracle_run(static_cast<std::uint64_t>(state.range(0)), 7, workers).max_m_sampled);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_oracle_parallel)->Args({20000, 2})->Args({20000, 4})->Unit(benchmark::kMillisecond);

void BM_check_joint_extension(benchmark::State& state) {
  const StateVector psi = make_state({FamilyKind::kEntangled, 3.4899, 2.9012});
  const std::array<PairDistribution, 5> targets{
      pair_distribution(set(), 1, psi), pair_distribution(set(), 2, psi),
      pair_distribution(set(), 3, psi), pair_distribution(set(), 4, psi),
      pair_distribution(set(), 5, psi)};
  for (auto _ : state) benchmark::DoNotOptimize(check_joint_extension(targets).residual);
}
BENCHMARK(BM_check_joint_extension);

}  // namespace

BENCHMARK_MAIN();
