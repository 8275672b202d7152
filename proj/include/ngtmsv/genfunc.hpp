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

// Mixed partial derivatives at the origin of exp(uᵀQu + bᵀu + c).
//
// The exponential is expanded as a truncated power series through the Euler
// recurrence: with E = exp(P), P = P₁ + P₂ split into its linear and
// quadratic parts, applying Σ uᵢ∂ᵢ to both sides gives
//
//     d·E_d = P₁·E_{d-1} + 2·P₂·E_{d-2}
//
// for the homogeneous components E_d. Each layer costs one pass over the
// previous layers, and when only one coefficient is wanted every term whose
// exponent exceeds the target in any variable can be discarded, since
// exponents only ever grow.

#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ngtmsv/errors.hpp"
#include "ngtmsv/series.hpp"

namespace ngtmsv {

// Quadratic form plus linear couplings plus a constant, over a coefficient
// ring R. The quadratic matrix is stored symmetrised; uᵀQu is unchanged by
// symmetrisation so any square input is accepted.
template <CoefficientRing R>
class GeneratingExponent {
 public:
  GeneratingExponent(int dim, std::vector<R> quad, std::vector<R> lin, R const_term)
      : dim_(dim), quad_(std::move(quad)), lin_(std::move(lin)), const_term_(std::move(const_term)) {
    if (dim < 0 || dim > kMaxVariables) {
      throw ConstructionError("generating exponent dimension must be in [0, " + std::to_string(kMaxVariables) + "]");
    }
    const auto n = static_cast<std::size_t>(dim);
    if (quad_.size() != n * n) throw ConstructionError("quadratic form must be dim×dim");
    if (lin_.size() != n) throw ConstructionError("linear coefficients must have length dim");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        R avg = RingTraits<R>::scale(quad_[i * n + j] + quad_[j * n + i], Complex{0.5, 0.0});
        quad_[i * n + j] = avg;
        quad_[j * n + i] = std::move(avg);
      }
    }
  }

  // Pure quadratic form with zero linear part and zero constant; `zero` fixes
  // the shape of ring elements that need one.
  GeneratingExponent(int dim, std::vector<R> quad, const R& zero = R{})
      : GeneratingExponent(dim, std::move(quad), std::vector<R>(static_cast<std::size_t>(std::max(dim, 0)), zero),
                           RingTraits<R>::zero_like(zero)) {}

  int dim() const { return dim_; }
  const R& quad(int i, int j) const { return quad_[static_cast<std::size_t>(i * dim_ + j)]; }
  const R& lin(int i) const { return lin_[static_cast<std::size_t>(i)]; }
  const R& const_term() const { return const_term_; }

  // The exponent itself (not its exponential) at a numeric point.
  R value_at(std::span<const Complex> point) const {
    if (point.size() != static_cast<std::size_t>(dim_)) throw ConstructionError("point dimension mismatch");
    R sum = const_term_;
    for (int i = 0; i < dim_; ++i) {
      const Complex ui = point[static_cast<std::size_t>(i)];
      sum += RingTraits<R>::scale(lin(i), ui);
      for (int j = 0; j < dim_; ++j) {
        sum += RingTraits<R>::scale(quad(i, j), ui * point[static_cast<std::size_t>(j)]);
      }
    }
    return sum;
  }

 private:
  int dim_;
  std::vector<R> quad_;
  std::vector<R> lin_;
  R const_term_;
};

// Orders of differentiation per variable, with a scalar prefactor.
struct DerivativeSpec {
  std::vector<std::pair<int, int>> orders;  // (variable index, order)
  Complex prefactor{1.0, 0.0};

  int total_order() const {
    return std::accumulate(orders.begin(), orders.end(), 0, [](int acc, const auto& o) { return acc + o.second; });
  }

  // Per-variable orders as a dense vector; validates indices and orders.
  std::vector<int> dense_orders(int dim) const {
    std::vector<int> dense(static_cast<std::size_t>(dim), 0);
    std::vector<bool> seen(static_cast<std::size_t>(dim), false);
    for (const auto& [var, order] : orders) {
      if (var < 0 || var >= dim) throw ConstructionError("derivative variable index out of range");
      if (order < 0) throw ConstructionError("derivative order must be non-negative");
      if (seen[static_cast<std::size_t>(var)]) throw ConstructionError("derivative variable listed twice");
      seen[static_cast<std::size_t>(var)] = true;
      dense[static_cast<std::size_t>(var)] = order;
    }
    return dense;
  }
};

namespace detail {

template <class R>
struct ExponentTerms {
  std::vector<std::pair<int, R>> linear;        // bᵢ
  std::vector<std::tuple<int, int, R>> quadratic;  // 2·(coefficient of uᵢuⱼ)
};

template <CoefficientRing R>
ExponentTerms<R> collect_terms(const GeneratingExponent<R>& e) {
  ExponentTerms<R> t;
  for (int i = 0; i < e.dim(); ++i) {
    if (!RingTraits<R>::is_zero(e.lin(i))) t.linear.emplace_back(i, e.lin(i));
    for (int j = i; j < e.dim(); ++j) {
      const R& q = e.quad(i, j);
      if (RingTraits<R>::is_zero(q)) continue;
      t.quadratic.emplace_back(i, j, RingTraits<R>::scale(q, Complex{i == j ? 2.0 : 4.0, 0.0}));
    }
  }
  return t;
}

// Homogeneous layers E_0..E_{max_degree} of exp(P) with P the exponent minus
// its constant. caps[i] bounds the exponent of variable i.
template <CoefficientRing R>
class ExpLayers {
 public:
  using Layer = std::unordered_map<PackedExponent, R>;

  ExpLayers(const GeneratingExponent<R>& e, std::vector<int> caps)
      : terms_(collect_terms(e)), caps_(std::move(caps)), one_(RingTraits<R>::one_like(e.const_term())) {}

  // Runs the recurrence up to `degree`; visit(d, layer) sees every layer.
  template <class Visit>
  void run(int degree, Visit&& visit) const {
    Layer older;  // E_{d-2}
    Layer prev;   // E_{d-1}
    prev.emplace(PackedExponent{0}, one_);
    visit(0, prev);
    for (int d = 1; d <= degree; ++d) {
      Layer cur;
      for (const auto& [key, value] : prev) {
        for (const auto& [i, b] : terms_.linear) {
          if (exponent_of(key, i) + 1 > caps_[static_cast<std::size_t>(i)]) continue;
          accumulate(cur, key + unit_exponent(i), b * value);
        }
      }
      for (const auto& [key, value] : older) {
        for (const auto& [i, j, c] : terms_.quadratic) {
          const int need_i = exponent_of(key, i) + (i == j ? 2 : 1);
          if (need_i > caps_[static_cast<std::size_t>(i)]) continue;
          if (i != j && exponent_of(key, j) + 1 > caps_[static_cast<std::size_t>(j)]) continue;
          accumulate(cur, key + unit_exponent(i) + unit_exponent(j), c * value);
        }
      }
      const Complex inv_d{1.0 / d, 0.0};
      for (auto& [key, value] : cur) value = RingTraits<R>::scale(value, inv_d);
      visit(d, cur);
      older = std::move(prev);
      prev = std::move(cur);
    }
  }

 private:
  static void accumulate(Layer& layer, PackedExponent key, R value) {
    auto [it, inserted] = layer.try_emplace(key, value);
    if (!inserted) it->second += value;
  }

  ExponentTerms<R> terms_;
  std::vector<int> caps_;
  R one_;
};

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace detail

// Taylor expansion of exp(exponent) about the origin, truncated at total
// degree max_degree.
template <CoefficientRing R>
TruncatedSeries<R> series_exp(const GeneratingExponent<R>& exponent, int max_degree) {
  const R zero = RingTraits<R>::zero_like(exponent.const_term());
  TruncatedSeries<R> out(exponent.dim(), max_degree, zero);
  detail::ExpLayers<R> layers(exponent, std::vector<int>(static_cast<std::size_t>(exponent.dim()), max_degree));
  layers.run(max_degree, [&](int, const auto& layer) {
    for (const auto& [key, value] : layer) out.add_term(key, value);
  });
  const R scale = RingTraits<R>::exp(exponent.const_term());
  TruncatedSeries<R> result(exponent.dim(), max_degree, zero);
  for (const auto& [key, value] : out.terms()) result.add_term(key, value * scale);
  return result;
}

// spec.prefactor × ∂^{k₁}…∂^{k_n} exp(exponent) evaluated at the origin.
template <CoefficientRing R>
R mixed_partial_at_zero(const GeneratingExponent<R>& exponent, const DerivativeSpec& spec) {
  std::vector<int> caps = spec.dense_orders(exponent.dim());
  const int total = spec.total_order();
  if (total > kMaxTotalDegree) throw ConstructionError("total derivative order exceeds engine limit");

  const PackedExponent target = pack_exponents(caps);
  R coefficient = RingTraits<R>::zero_like(exponent.const_term());
  detail::ExpLayers<R> layers(exponent, caps);
  layers.run(total, [&](int d, const auto& layer) {
    if (d != total) return;
    auto it = layer.find(target);
    if (it != layer.end()) coefficient = it->second;
  });

  double factorials = 1.0;
  for (int k : caps) factorials *= detail::factorial(k);
  return RingTraits<R>::scale(coefficient * RingTraits<R>::exp(exponent.const_term()), spec.prefactor * factorials);
}

}  // namespace ngtmsv
