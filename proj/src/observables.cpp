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

#include "ectx/observables.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>

namespace ectx {

CyclicityViolationError::CyclicityViolationError(int first, double overlap)
    : Error("cyclic orthogonality violated at pair (" + std::to_string(first) + "," +
            std::to_string(first % 5 + 1) + "): |<v" + std::to_string(first) + "|v" +
            std::to_string(first % 5 + 1) + ">| = " + std::to_string(overlap) +
            " exceeds 1e-10"),
      first_(first),
      overlap_(overlap) {}

CyclicObservableSet::CyclicObservableSet(std::array<StateVector, 5> directions, std::string label)
    : directions_(std::move(directions)), label_(std::move(label)) {}

CyclicObservableSet CyclicObservableSet::build(const std::array<Vec4, 5>& vectors,
                                               std::string label) {
  std::array<StateVector, 5> dirs{normalize(vectors[0]), normalize(vectors[1]),
                                  normalize(vectors[2]), normalize(vectors[3]),
                                  normalize(vectors[4])};
  for (int i = 0; i < kCycle; ++i) {
    const double overlap =
        std::abs(inner(dirs[static_cast<std::size_t>(i)].amplitudes(),
                       dirs[static_cast<std::size_t>((i + 1) % kCycle)].amplitudes()));
    if (overlap > kCyclicOrthTol) throw CyclicityViolationError(i + 1, overlap);
  }
  return CyclicObservableSet(std::move(dirs), std::move(label));
}

CyclicObservableSet CyclicObservableSet::builtin() {
  // Exact rational components {numerator, denominator}.
  struct Frac {
    std::int64_t p, q;
  };
  static constexpr Frac kTable[5][4] = {
      {{3, 1}, {1, 1}, {0, 1}, {-3, 1}},
      {{1, 1}, {1, 2}, {3, 2}, {7, 6}},
      {{4, 1}, {1, 1}, {-2, 1}, {-9, 7}},
      {{1, 1}, {1, 2}, {1, 1}, {35, 18}},
      {{2, 1}, {0, 1}, {-53, 9}, {2, 1}},
  };
  std::array<Vec4, 5> raw;
  for (int i = 0; i < 5; ++i) {
    for (int k = 0; k < 4; ++k) {
      const Frac f = kTable[i][k];
      raw[static_cast<std::size_t>(i)][k] =
          Complex{static_cast<double>(f.p) / static_cast<double>(f.q), 0.0};
    }
  }
  return build(raw, "builtin");
}

CyclicObservableSet CyclicObservableSet::unchecked(std::array<StateVector, 5> directions,
                                                   std::string label) {
  return CyclicObservableSet(std::move(directions), std::move(label));
}

const StateVector& CyclicObservableSet::direction(int i) const {
  if (i < 1 || i > kCycle) throw OutOfRangeError("observable index " + std::to_string(i) + " outside 1..5");
  return directions_[static_cast<std::size_t>(i - 1)];
}

std::array<std::array<Complex, 5>, 5> CyclicObservableSet::gram() const {
  std::array<std::array<Complex, 5>, 5> g;
  for (int i = 0; i < kCycle; ++i)
    for (int j = 0; j < kCycle; ++j)
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          inner(directions_[static_cast<std::size_t>(i)].amplitudes(),
                directions_[static_cast<std::size_t>(j)].amplitudes());
  return g;
}

double CyclicObservableSet::max_adjacent_overlap() const {
  double worst = 0.0;
  for (int i = 0; i < kCycle; ++i) {
    const double overlap =
        std::abs(inner(directions_[static_cast<std::size_t>(i)].amplitudes(),
                       directions_[static_cast<std::size_t>((i + 1) % kCycle)].amplitudes()));
    worst = std::max(worst, overlap);
  }
  return worst;
}

namespace {

std::int64_t parse_integer(std::string_view text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("bad integer in fraction: '" + std::string(text) + "'");
  // Beyond 2^53 the numerator/denominator are no longer exact doubles and
  // the correctly-rounded-quotient guarantee breaks down.
  if (std::abs(value) > (std::int64_t{1} << 53))
    throw ConfigError("fraction part " + std::string(text) + " exceeds 2^53");
  return value;
}

}  // namespace

double parse_component(const nlohmann::json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    const auto slash = s.find('/');
    const std::int64_t p = parse_integer(slash == std::string::npos ? s : s.substr(0, slash));
    std::int64_t q = 1;
    if (slash != std::string::npos) q = parse_integer(s.substr(slash + 1));
    if (q == 0) throw ConfigError("fraction '" + s + "' has zero denominator");
    // IEEE division of two exact integers is correctly rounded, so this is
    // the nearest double of p/q.
    return static_cast<double>(p) / static_cast<double>(q);
  }
  throw ConfigError("vector component must be a number or a \"p/q\" string");
}

CyclicObservableSet CyclicObservableSet::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("observable config must be a JSON object");
  if (!j.contains("label") || !j.at("label").is_string())
    throw ConfigError("observable config needs a string \"label\"");
  if (!j.contains("vectors") || !j.at("vectors").is_array() || j.at("vectors").size() != 5)
    throw ConfigError("observable config needs \"vectors\": an array of 5 vectors");
  std::array<Vec4, 5> raw;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& row = j.at("vectors").at(i);
    if (!row.is_array() || row.size() != 4)
      throw ConfigError("vector " + std::to_string(i + 1) + " must have 4 components");
    for (int k = 0; k < 4; ++k) {
      const double x = parse_component(row.at(static_cast<std::size_t>(k)));
      if (!std::isfinite(x))
        throw ConfigError("vector " + std::to_string(i + 1) + " has a non-finite component");
      raw[i][k] = Complex{x, 0.0};
    }
  }
  return build(raw, j.at("label").get<std::string>());
}

CyclicObservableSet CyclicObservableSet::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open observable config: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace ectx
