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
#include <random>
#include <span>

namespace ectx {

// SplitMix64 finalizer. Used to derive independent per-task seeds so that
// parallel runs are invariant under the worker count.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// Seedable generator with a fully specified identity, so that outputs are
// reproducible across toolchains (the <random> distribution classes are
// implementation-defined and are deliberately not used):
//   - engine:   std::mt19937_64
//   - uniform:  top 53 bits, (x >> 11) * 2^-53
//   - normal:   Box-Muller, sqrt(-2 ln u1) * cos(2 pi u2)
//   - gamma:    Marsaglia-Tsang; shapes below 1 are boosted via
//               gamma(shape+1) * u^(1/shape)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log argument.
  double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  double normal();

  // Gamma(shape, 1), shape > 0.
  double gamma(double shape);

  // Symmetric Dirichlet(concentration) over out.size() cells.
  void dirichlet(double concentration, std::span<double> out);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ectx
