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

// Sparse multivariate truncated power series over a commutative coefficient
// ring, plus the ring plumbing shared by the generating-function engine.

#include <algorithm>
#include <complex>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ngtmsv/dual.hpp"
#include "ngtmsv/errors.hpp"

namespace ngtmsv {

using Complex = std::complex<double>;

// Exponent multi-indices are packed into one 64-bit word, five bits per
// variable. Keeping every series at total degree ≤ 31 guarantees that no
// field can overflow during multiplication.
inline constexpr int kMaxVariables = 12;
inline constexpr int kBitsPerVariable = 5;
inline constexpr int kMaxTotalDegree = 31;

using PackedExponent = std::uint64_t;

constexpr PackedExponent unit_exponent(int var) {
  return PackedExponent{1} << (kBitsPerVariable * var);
}

constexpr int exponent_of(PackedExponent key, int var) {
  return static_cast<int>((key >> (kBitsPerVariable * var)) & 0x1Fu);
}

constexpr int total_degree(PackedExponent key) {
  int degree = 0;
  while (key != 0) {
    degree += static_cast<int>(key & 0x1Fu);
    key >>= kBitsPerVariable;
  }
  return degree;
}

inline PackedExponent pack_exponents(std::span<const int> exponents) {
  if (exponents.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw ConstructionError("too many variables for packed exponent");
  }
  PackedExponent key = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0 || exponents[i] > kMaxTotalDegree) {
      throw ConstructionError("exponent out of packable range");
    }
    key |= static_cast<PackedExponent>(exponents[i]) << (kBitsPerVariable * i);
  }
  return key;
}

inline std::vector<int> unpack_exponents(PackedExponent key, int dim) {
  std::vector<int> out(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) out[static_cast<std::size_t>(i)] = exponent_of(key, i);
  return out;
}

template <class R>
class TruncatedSeries;

// Operations the engine needs from a coefficient ring beyond + and *.
// zero_like/one_like take a sample so that rings with run-time shape (the
// polynomial ring) can build compatible identities.
template <class R>
struct RingTraits;

template <>
struct RingTraits<Complex> {
  static Complex zero_like(const Complex&) { return {}; }
  static Complex one_like(const Complex&) { return {1.0, 0.0}; }
  static bool is_zero(const Complex& x) { return x == Complex{}; }
  static Complex scale(const Complex& x, Complex s) { return x * s; }
  static Complex exp(const Complex& x) { return std::exp(x); }
};

template <>
struct RingTraits<DualComplex> {
  static DualComplex zero_like(const DualComplex&) { return {}; }
  static DualComplex one_like(const DualComplex&) { return DualComplex{Complex{1.0, 0.0}}; }
  static bool is_zero(const DualComplex& x) { return x.value == Complex{} && x.deriv == Complex{}; }
  static DualComplex scale(const DualComplex& x, Complex s) { return x * s; }
  static DualComplex exp(const DualComplex& x) { return ngtmsv::exp(x); }
};

template <class R>
concept CoefficientRing = requires(R a, const R b, Complex s) {
  { a + b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { a += b };
  { RingTraits<R>::zero_like(b) } -> std::same_as<R>;
  { RingTraits<R>::one_like(b) } -> std::same_as<R>;
  { RingTraits<R>::is_zero(b) } -> std::same_as<bool>;
  { RingTraits<R>::scale(b, s) } -> std::same_as<R>;
  { RingTraits<R>::exp(b) } -> std::same_as<R>;
};

template <class R>
class TruncatedSeries {
 public:
  using Terms = std::unordered_map<PackedExponent, R>;

  TruncatedSeries() = default;

  TruncatedSeries(int dim, int max_degree, R zero = R{}) : dim_(dim), max_degree_(max_degree), zero_(std::move(zero)) {
    if (dim < 0 || dim > kMaxVariables) {
      throw ConstructionError("series dimension must be in [0, " + std::to_string(kMaxVariables) + "]");
    }
    if (max_degree < 0 || max_degree > kMaxTotalDegree) {
      throw ConstructionError("series truncation degree must be in [0, " + std::to_string(kMaxTotalDegree) + "]");
    }
  }

  static TruncatedSeries constant(int dim, int max_degree, R value, R zero = R{}) {
    TruncatedSeries s(dim, max_degree, std::move(zero));
    s.add_term(PackedExponent{0}, std::move(value));
    return s;
  }

  static TruncatedSeries variable(int dim, int max_degree, int var, R one, R zero = R{}) {
    TruncatedSeries s(dim, max_degree, std::move(zero));
    if (var < 0 || var >= dim) throw ConstructionError("variable index out of range");
    s.add_term(unit_exponent(var), std::move(one));
    return s;
  }

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  std::size_t term_count() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  const R& zero() const { return zero_; }

  const R& coefficient(PackedExponent key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? zero_ : it->second;
  }

  const R& coefficient(std::span<const int> exponents) const {
    check_exponent_count(exponents.size());
    return coefficient(pack_exponents(exponents));
  }

  const R& coefficient(std::initializer_list<int> exponents) const {
    return coefficient(std::span<const int>(exponents.begin(), exponents.size()));
  }

  // Terms of total degree above the truncation order are silently dropped.
  void add_term(PackedExponent key, const R& value) {
    if (total_degree(key) > max_degree_) return;
    auto [it, inserted] = terms_.try_emplace(key, value);
    if (!inserted) it->second += value;
  }

  void add_term(std::span<const int> exponents, const R& value) {
    check_exponent_count(exponents.size());
    add_term(pack_exponents(exponents), value);
  }

  TruncatedSeries& operator+=(const TruncatedSeries& other) {
    check_compatible(other);
    for (const auto& [key, value] : other.terms_) add_term(key, value);
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b);
    TruncatedSeries out(a.dim_, std::min(a.max_degree_, b.max_degree_), a.zero_);
    for (const auto& [ka, ca] : a.terms_) {
      const int da = total_degree(ka);
      for (const auto& [kb, cb] : b.terms_) {
        if (da + total_degree(kb) > out.max_degree_) continue;
        out.add_term(ka + kb, ca * cb);
      }
    }
    return out;
  }

  TruncatedSeries& operator*=(const TruncatedSeries& other) { return *this = *this * other; }

  TruncatedSeries scaled(Complex s) const
    requires CoefficientRing<R>
  {
    TruncatedSeries out(dim_, max_degree_, zero_);
    for (const auto& [key, value] : terms_) out.terms_.emplace(key, RingTraits<R>::scale(value, s));
    return out;
  }

  // Terms ordered by packed key; used wherever output must be deterministic.
  std::vector<std::pair<PackedExponent, R>> sorted_terms() const {
    std::vector<std::pair<PackedExponent, R>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

  // Direct evaluation of a scalar-coefficient series at a point.
  Complex evaluate(std::span<const Complex> point) const
    requires std::same_as<R, Complex>
  {
    check_exponent_count(point.size());
    Complex sum{};
    for (const auto& [key, value] : sorted_terms()) {
      Complex term = value;
      for (int i = 0; i < dim_; ++i) {
        const int e = exponent_of(key, i);
        for (int k = 0; k < e; ++k) term *= point[static_cast<std::size_t>(i)];
      }
      sum += term;
    }
    return sum;
  }

 private:
  void check_exponent_count(std::size_t n) const {
    if (n != static_cast<std::size_t>(dim_)) throw ConstructionError("exponent vector length does not match dimension");
  }
  void check_compatible(const TruncatedSeries& other) const {
    if (dim_ != other.dim_) throw ConstructionError("series dimension mismatch");
  }

  int dim_ = 0;
  int max_degree_ = 0;
  R zero_{};
  Terms terms_;
};

// Polynomials in the phase-space variables are truncated series whose
// truncation order is at least their degree; they form the ring used for
// Wigner-function coefficients.
using Polynomial = TruncatedSeries<Complex>;

template <>
struct RingTraits<Polynomial> {
  static Polynomial zero_like(const Polynomial& x) { return Polynomial(x.dim(), x.max_degree()); }
  static Polynomial one_like(const Polynomial& x) { return Polynomial::constant(x.dim(), x.max_degree(), Complex{1.0, 0.0}); }
  static bool is_zero(const Polynomial& x) {
    return std::all_of(x.terms().begin(), x.terms().end(), [](const auto& t) { return t.second == Complex{}; });
  }
  static Polynomial scale(const Polynomial& x, Complex s) { return x.scaled(s); }
  static Polynomial exp(const Polynomial& x) {
    for (const auto& [key, value] : x.terms()) {
      if (key != 0 && value != Complex{}) throw ConstructionError("exp of a non-constant polynomial is not a polynomial");
    }
    return Polynomial::constant(x.dim(), x.max_degree(), std::exp(x.coefficient(PackedExponent{0})));
  }
};

static_assert(CoefficientRing<Complex>);
static_assert(CoefficientRing<DualComplex>);
static_assert(CoefficientRing<Polynomial>);

}  // namespace ngtmsv
