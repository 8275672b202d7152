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

// Physical quantities of heralded non-Gaussian TMSV states: success
// probability, Wigner function, Weyl-ordered moments, quantum Fisher
// information, parity signal in a balanced Mach-Zehnder interferometer and
// the derived phase sensitivities.
//
// Every quantity is a ratio of heralding derivatives D̂₁ applied to
// exponentials of the quadratic forms built in model.hpp.

#include <complex>

#include "ngtmsv/dual.hpp"
#include "ngtmsv/genfunc.hpp"
#include "ngtmsv/model.hpp"
#include "ngtmsv/series.hpp"

namespace ngtmsv {

inline constexpr double kImaginaryResidueTolerance = 1e-10;
inline constexpr double kDegenerateProbability = 1e-300;
inline constexpr double kStationaryDerivative = 1e-14;
inline constexpr double kParityBoundSlack = 1e-9;
inline constexpr int kDefaultMomentOrderCap = 4;

struct PhaseSpacePoint {
  double q1 = 0.0;
  double p1 = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
};

// Exponents of the Weyl-ordered moment ⟨q₁^a₁ p₁^b₁ q₂^a₂ p₂^b₂⟩.
struct MomentIndex {
  int a1 = 0;
  int b1 = 0;
  int a2 = 0;
  int b2 = 0;
  int total() const { return a1 + b1 + a2 + b2; }
};

struct SensitivityReport {
  double p_success = 0.0;
  double f_parity = 0.0;       // f(φ)
  double delta_phi = 0.0;      // error-propagation sensitivity
  double delta_phi_min = 0.0;  // quantum Cramér-Rao bound
  double merit = 0.0;          // Δφ_TMSV − Δφ
  double weighted_merit = 0.0; // P × merit
};

// Real part of z after checking |Im z| ≤ tol·max(1, |Re z|).
double checked_real(std::complex<double> z, const char* what);

// The heralding derivative D̂₁ on u = (u₁,v₁,u₂,v₂,u₁′,v₁′,u₂′,v₂′).
DerivativeSpec heralding_derivative(const NGOperationSpec& spec);

// D̂₁ exp(uᵀM₄u) before any residue check.
std::complex<double> heralding_value(const ModelParams& params, const NGOperationSpec& spec);

double success_probability(const ModelParams& params, const NGOperationSpec& spec);

// Normalised Wigner function of the heralded state. The heralding derivative
// is taken once over the ring of polynomials in ξ; evaluation at a point is
// then a polynomial evaluation times the Gaussian envelope exp(ξᵀM₁ξ).
class WignerFunction {
 public:
  WignerFunction(const ModelParams& params, const NGOperationSpec& spec);

  std::complex<double> evaluate_complex(const PhaseSpacePoint& point) const;
  double operator()(const PhaseSpacePoint& point) const;

  // D̂₁ exp(uᵀM₃u + uᵀM₂ξ) as a polynomial in (q₁,p₁,q₂,p₂).
  const Polynomial& polynomial() const { return poly_; }
  double probability() const { return probability_; }

 private:
  ComplexMatrix m1_;
  Polynomial poly_;
  double a0_;
  double probability_;
};

double wigner(const ModelParams& params, const NGOperationSpec& spec, const PhaseSpacePoint& point);

double moment(const ModelParams& params, const NGOperationSpec& spec, const MomentIndex& idx,
              int order_cap = kDefaultMomentOrderCap);

// Unchecked numerator and denominator of the moment ratio.
std::pair<std::complex<double>, std::complex<double>> moment_parts(const ModelParams& params,
                                                                   const NGOperationSpec& spec,
                                                                   const MomentIndex& idx);

// ⟨Ĵ₂²⟩ = −1/8 + ¼M₂₀⁰² + ¼M₀₂²⁰ − ½M₁₁¹¹ (⟨Ĵ₂⟩ vanishes for these states).
double qfi_bracket(const ModelParams& params, const NGOperationSpec& spec);

// F_Q = 4⟨Ĵ₂²⟩. Throws DegenerateStateError when F_Q is not positive.
double qfi(const ModelParams& params, const NGOperationSpec& spec);

// Δφ_min = 1/√F_Q.
double qcrb(const ModelParams& params, const NGOperationSpec& spec);

// Unchecked D̂₁ exp(uᵀM₇u) at phase φ.
std::complex<double> parity_numerator(const ModelParams& params, const NGOperationSpec& spec, double phi);

// Parity of output mode 2 after the interferometer, f(φ).
double parity_expectation(const ModelParams& params, const NGOperationSpec& spec, double phi);
DualReal parity_expectation(const ModelParams& params, const NGOperationSpec& spec, DualReal phi);

// Δφ = √(1 − f²)/|∂f/∂φ| at the operating point φ + π/2.
double phase_sensitivity(const ModelParams& params, const NGOperationSpec& spec, double phi);

// Δφ of the bare TMSV at the same λ minus Δφ of the heralded state.
double merit(const ModelParams& params, const NGOperationSpec& spec, double phi);
double weighted_merit(const ModelParams& params, const NGOperationSpec& spec, double phi);

SensitivityReport sensitivity_report(const ModelParams& params, const NGOperationSpec& spec, double phi);

}  // namespace ngtmsv
