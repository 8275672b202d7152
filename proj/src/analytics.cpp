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

#include "ngtmsv/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace ngtmsv {

namespace {

using C = std::complex<double>;

constexpr int kHeraldingVariables = 8;
constexpr int kMomentVariables = 12;

std::vector<C> flatten(const ComplexMatrix& m) { return m.data(); }

double factorial(int n) { return detail::factorial(n); }

void check_probability(double p) {
  if (!(p >= kDegenerateProbability)) {
    std::ostringstream os;
    os << "success probability " << p << " is too small to normalise the heralded state";
    throw DegenerateStateError(os.str());
  }
}

double checked_scalar(const C& z, const char* what) { return checked_real(z, what); }

DualReal checked_scalar(const DualComplex& z, const char* what) {
  return {checked_real(z.value, what), checked_real(z.deriv, what)};
}

// Heralding value over the probability form; shared by every normalised quantity.
double checked_heralding_value(const ModelParams& params, const NGOperationSpec& spec) {
  return checked_real(heralding_value(params, spec), "heralding value");
}

template <class S>
double scalar_value(const S& x) {
  if constexpr (std::is_same_v<S, DualReal>) {
    return x.value;
  } else {
    return x;
  }
}

template <class Ring, class S>
S parity_impl(const ModelParams& params, const NGOperationSpec& spec, S phi) {
  const ParityForm<S> form = build_parity_form(params, phi);
  std::vector<Ring> quad(64);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if constexpr (std::is_same_v<Ring, DualComplex>) {
        quad[static_cast<std::size_t>(i * 8 + j)] = to_complex(form.m7(i, j));
      } else {
        quad[static_cast<std::size_t>(i * 8 + j)] = C{form.m7(i, j), 0.0};
      }
    }
  }
  const GeneratingExponent<Ring> exponent(kHeraldingVariables, std::move(quad));
  const S numerator = checked_scalar(mixed_partial_at_zero(exponent, heralding_derivative(spec)), "parity numerator");

  const double denominator = checked_heralding_value(params, spec);
  check_probability(denominator / params.a0);
  const S f = numerator * S{params.a0} / (form.aux.b0 * S{denominator});
  if (std::abs(scalar_value(f)) > 1.0 + kParityBoundSlack) {
    std::ostringstream os;
    os << "parity expectation " << scalar_value(f) << " outside [-1, 1]";
    throw NumericalConsistencyError(os.str());
  }
  return f;
}

}  // namespace

double checked_real(std::complex<double> z, const char* what) {
  const double scale = std::max(1.0, std::abs(z.real()));
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NumericalConsistencyError(std::string(what) + " is not finite");
  }
  if (std::abs(z.imag()) > kImaginaryResidueTolerance * scale) {
    std::ostringstream os;
    os << what << " has imaginary residue " << z.imag() << " (real part " << z.real() << ")";
    throw NumericalConsistencyError(os.str());
  }
  return z.real();
}

DerivativeSpec heralding_derivative(const NGOperationSpec& spec) {
  DerivativeSpec d;
  const int counts[4] = {spec.m1, spec.m2, spec.n1, spec.n2};
  for (int k = 0; k < 4; ++k) {
    d.orders.emplace_back(2 * k, counts[k]);
    d.orders.emplace_back(2 * k + 1, counts[k]);
  }
  const double num = std::pow(-2.0, spec.total_photons());
  const double den = factorial(spec.m1) * factorial(spec.m2) * factorial(spec.n1) * factorial(spec.n2);
  d.prefactor = C{num / den, 0.0};
  return d;
}

std::complex<double> heralding_value(const ModelParams& params, const NGOperationSpec& spec) {
  const GeneratingExponent<C> exponent(kHeraldingVariables, flatten(build_probability_form(params)));
  return mixed_partial_at_zero(exponent, heralding_derivative(spec));
}

double success_probability(const ModelParams& params, const NGOperationSpec& spec) {
  const double p = checked_heralding_value(params, spec) / params.a0;
  if (p < -kImaginaryResidueTolerance || p > 1.0 + kImaginaryResidueTolerance) {
    std::ostringstream os;
    os << "success probability " << p << " outside [0, 1]";
    throw NumericalConsistencyError(os.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

WignerFunction::WignerFunction(const ModelParams& params, const NGOperationSpec& spec)
    : a0_(params.a0), probability_(success_probability(params, spec)) {
  check_probability(probability_);
  const WignerForms forms = build_wigner_forms(params);
  m1_ = forms.m1;

  const DerivativeSpec derivative = heralding_derivative(spec);
  const int degree = derivative.total_order();
  const Polynomial zero(4, degree);

  std::vector<Polynomial> quad;
  quad.reserve(64);
  for (const C& q : forms.m3.data()) quad.push_back(Polynomial::constant(4, degree, q));

  std::vector<Polynomial> lin;
  lin.reserve(kHeraldingVariables);
  for (int i = 0; i < kHeraldingVariables; ++i) {
    Polynomial b(4, degree);
    for (int j = 0; j < 4; ++j) {
      const int e[4] = {j == 0, j == 1, j == 2, j == 3};
      b.add_term(std::span<const int>(e, 4), forms.m2(i, j));
    }
    lin.push_back(std::move(b));
  }

  const GeneratingExponent<Polynomial> exponent(kHeraldingVariables, std::move(quad), std::move(lin), zero);
  poly_ = mixed_partial_at_zero(exponent, derivative);
}

std::complex<double> WignerFunction::evaluate_complex(const PhaseSpacePoint& point) const {
  const C xi[4] = {point.q1, point.p1, point.q2, point.p2};
  C quadratic{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) quadratic += xi[i] * m1_(i, j) * xi[j];
  }
  const C poly = poly_.evaluate(std::span<const C>(xi, 4));
  return std::exp(quadratic) * poly / (a0_ * std::numbers::pi * std::numbers::pi * probability_);
}

double WignerFunction::operator()(const PhaseSpacePoint& point) const {
  return checked_real(evaluate_complex(point), "Wigner function");
}

double wigner(const ModelParams& params, const NGOperationSpec& spec, const PhaseSpacePoint& point) {
  return WignerFunction(params, spec)(point);
}

std::pair<std::complex<double>, std::complex<double>> moment_parts(const ModelParams& params,
                                                                   const NGOperationSpec& spec,
                                                                   const MomentIndex& idx) {
  if (idx.a1 < 0 || idx.b1 < 0 || idx.a2 < 0 || idx.b2 < 0) throw ParameterError("moment exponents must be non-negative");
  const ComplexMatrix m4 = build_probability_form(params);
  const MomentForms mf = build_moment_forms(params);

  // [[M₄, M₅/2], [M₅ᵀ/2, M₆]] over (u, x).
  std::vector<C> quad(static_cast<std::size_t>(kMomentVariables * kMomentVariables));
  auto at = [&](int i, int j) -> C& { return quad[static_cast<std::size_t>(i * kMomentVariables + j)]; };
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) at(i, j) = m4(i, j);
    for (int j = 0; j < 4; ++j) {
      at(i, 8 + j) = 0.5 * mf.m5(i, j);
      at(8 + j, i) = 0.5 * mf.m5(i, j);
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) at(8 + i, 8 + j) = mf.m6(i, j);
  }
  const GeneratingExponent<C> exponent(kMomentVariables, std::move(quad));

  DerivativeSpec numerator = heralding_derivative(spec);
  const DerivativeSpec denominator = numerator;
  numerator.orders.emplace_back(8, idx.a1);
  numerator.orders.emplace_back(9, idx.b1);
  numerator.orders.emplace_back(10, idx.a2);
  numerator.orders.emplace_back(11, idx.b2);
  return {mixed_partial_at_zero(exponent, numerator), mixed_partial_at_zero(exponent, denominator)};
}

double moment(const ModelParams& params, const NGOperationSpec& spec, const MomentIndex& idx, int order_cap) {
  if (idx.total() > order_cap) {
    std::ostringstream os;
    os << "moment order " << idx.total() << " exceeds cap " << order_cap;
    throw ParameterError(os.str());
  }
  const auto [num, den] = moment_parts(params, spec, idx);
  const double denominator = checked_real(den, "moment normalisation");
  check_probability(denominator / params.a0);
  return checked_real(num, "moment numerator") / denominator;
}

double qfi_bracket(const ModelParams& params, const NGOperationSpec& spec) {
  const double q1sq_p2sq = moment(params, spec, {2, 0, 0, 2});
  const double p1sq_q2sq = moment(params, spec, {0, 2, 2, 0});
  const double mixed = moment(params, spec, {1, 1, 1, 1});
  return -0.125 + 0.25 * q1sq_p2sq + 0.25 * p1sq_q2sq - 0.5 * mixed;
}

double qfi(const ModelParams& params, const NGOperationSpec& spec) {
  const double fq = 4.0 * qfi_bracket(params, spec);
  // Vacuum gives zero up to rounding; anything this small carries no phase information.
  if (!(fq > 1e-12)) {
    std::ostringstream os;
    os << "quantum Fisher information " << fq << " is not positive";
    throw DegenerateStateError(os.str());
  }
  return fq;
}

double qcrb(const ModelParams& params, const NGOperationSpec& spec) { return 1.0 / std::sqrt(qfi(params, spec)); }

std::complex<double> parity_numerator(const ModelParams& params, const NGOperationSpec& spec, double phi) {
  const ParityForm<double> form = build_parity_form(params, phi);
  std::vector<C> quad;
  quad.reserve(64);
  for (double x : form.m7.data()) quad.emplace_back(x, 0.0);
  const GeneratingExponent<C> exponent(kHeraldingVariables, std::move(quad));
  return mixed_partial_at_zero(exponent, heralding_derivative(spec));
}

double parity_expectation(const ModelParams& params, const NGOperationSpec& spec, double phi) {
  return parity_impl<C, double>(params, spec, phi);
}

DualReal parity_expectation(const ModelParams& params, const NGOperationSpec& spec, DualReal phi) {
  return parity_impl<DualComplex, DualReal>(params, spec, phi);
}

double phase_sensitivity(const ModelParams& params, const NGOperationSpec& spec, double phi) {
  const DualReal f = parity_expectation(params, spec, DualReal::variable(phi + std::numbers::pi / 2.0));
  const double slope = std::abs(f.deriv);
  if (!(slope >= kStationaryDerivative)) {
    std::ostringstream os;
    os << "parity signal is stationary at phi=" << phi << " (|df/dphi| = " << slope << ")";
    throw StationaryPointError(os.str());
  }
  const double variance = std::max(0.0, 1.0 - f.value * f.value);
  return std::sqrt(variance) / slope;
}

double merit(const ModelParams& params, const NGOperationSpec& spec, double phi) {
  const NGOperationSpec reference = NGOperationSpec::tmsv();
  const ModelParams reference_params = derive_params(params.lambda, reference);
  return phase_sensitivity(reference_params, reference, phi) - phase_sensitivity(params, spec, phi);
}

double weighted_merit(const ModelParams& params, const NGOperationSpec& spec, double phi) {
  return success_probability(params, spec) * merit(params, spec, phi);
}

SensitivityReport sensitivity_report(const ModelParams& params, const NGOperationSpec& spec, double phi) {
  SensitivityReport r;
  r.p_success = success_probability(params, spec);
  r.f_parity = parity_expectation(params, spec, phi);
  r.delta_phi = phase_sensitivity(params, spec, phi);
  r.delta_phi_min = qcrb(params, spec);
  r.merit = merit(params, spec, phi);
  r.weighted_merit = r.p_success * r.merit;
  return r;
}

}  // namespace ngtmsv
