// Copyright 2026 The ngtmsv Authors
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

// Forward-mode dual numbers: a value together with its first derivative with
// respect to a single designated parameter.

#include <cmath>
#include <complex>
#include <ostream>

namespace ngtmsv {

template <class T>
struct Dual {
  T value{};
  T deriv{};

  constexpr Dual() = default;
  constexpr Dual(T v) : value(v) {}  // NOLINT: constants promote implicitly
  constexpr Dual(T v, T d) : value(v), deriv(d) {}

  static constexpr Dual variable(T v) { return {v, T{1}}; }

  constexpr Dual& operator+=(const Dual& o) {
    value += o.value;
    deriv += o.deriv;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    value -= o.value;
    deriv -= o.deriv;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    deriv = deriv * o.value + value * o.deriv;
    value *= o.value;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    deriv = (deriv * o.value - value * o.deriv) / (o.value * o.value);
    value /= o.value;
    return *this;
  }
  constexpr Dual& operator*=(const T& s) {
    value *= s;
    deriv *= s;
    return *this;
  }

  constexpr Dual operator-() const { return {-value, -deriv}; }

  friend constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend constexpr Dual operator*(Dual a, const T& s) { return a *= s; }
  friend constexpr Dual operator*(const T& s, Dual a) { return a *= s; }

  friend constexpr bool operator==(const Dual&, const Dual&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Dual& d) {
    return os << "(" << d.value << " + " << d.deriv << "ε)";
  }
};

using DualReal = Dual<double>;
using DualComplex = Dual<std::complex<double>>;

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  const T root = sqrt(x.value);
  return {root, x.deriv / (T{2} * root)};
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  const T e = exp(x.value);
  return {e, e * x.deriv};
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {sin(x.value), cos(x.value) * x.deriv};
}

template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {cos(x.value), -sin(x.value) * x.deriv};
}

inline DualReal abs(const DualReal& x) { return x.value < 0 ? -x : x; }

// Lifts a real dual into the complex dual ring.
inline DualComplex to_complex(const DualReal& x) {
  return {std::complex<double>(x.value, 0.0), std::complex<double>(x.deriv, 0.0)};
}

inline DualReal real_part(const DualComplex& x) { return {x.value.real(), x.deriv.real()}; }
inline DualReal imag_part(const DualComplex& x) { return {x.value.imag(), x.deriv.imag()}; }

}  // namespace ngtmsv
