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
#include <cmath>
#include <complex>

#include "ectx/error.hpp"

namespace ectx {

using Complex = std::complex<double>;

inline constexpr double kZeroNormTol = 1e-14;  // ||v|| at or below this is unnormalizable
inline constexpr double kUnitNormTol = 1e-12;  // allowed |  ||v|| - 1  | for unit vectors

// A 4-component complex amplitude vector, not necessarily normalized.
struct Vec4 {
  std::array<Complex, 4> c{};

  Vec4() = default;
  Vec4(Complex a0, Complex a1, Complex a2, Complex a3) : c{a0, a1, a2, a3} {}

  static Vec4 real(double a0, double a1, double a2, double a3) {
    return Vec4{Complex{a0, 0.0}, Complex{a1, 0.0}, Complex{a2, 0.0}, Complex{a3, 0.0}};
  }

  Complex& operator[](int k) { return c[static_cast<std::size_t>(k)]; }
  const Complex& operator[](int k) const { return c[static_cast<std::size_t>(k)]; }

  bool is_finite() const {
    for (const Complex& z : c) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
  }
};

// <a|b> = sum_k conj(a_k) b_k
inline Complex inner(const Vec4& a, const Vec4& b) {
  Complex s{0.0, 0.0};
  for (int k = 0; k < 4; ++k) s += std::conj(a.c[static_cast<std::size_t>(k)]) * b.c[static_cast<std::size_t>(k)];
  return s;
}

inline double squared_norm(const Vec4& v) {
  double s = 0.0;
  for (const Complex& z : v.c) s += std::norm(z);
  return s;
}

inline double norm(const Vec4& v) { return std::sqrt(squared_norm(v)); }

// A unit-norm amplitude vector. The constructor enforces the invariant.
class StateVector {
 public:
  explicit StateVector(const Vec4& v) : v_(v) {
    if (!v.is_finite()) throw Error("StateVector: non-finite component");
    const double n = norm(v);
    if (std::abs(n - 1.0) > kUnitNormTol)
      throw Error("StateVector: norm " + std::to_string(n) + " is not 1 within 1e-12");
  }

  const Vec4& amplitudes() const { return v_; }
  Complex operator[](int k) const { return v_[k]; }

 private:
  Vec4 v_;
};

// v / ||v||. Throws ZeroVectorError when ||v|| <= 1e-14.
inline StateVector normalize(const Vec4& v) {
  if (!v.is_finite()) throw Error("normalize: non-finite component");
  const double n = norm(v);
  if (n <= kZeroNormTol) throw ZeroVectorError("normalize: vector norm is at most 1e-14");
  Vec4 u = v;
  for (Complex& z : u.c) z /= n;
  return StateVector(u);
}

}  // namespace ectx
