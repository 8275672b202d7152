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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ngtmsv/analytics.hpp"
#include "ngtmsv/errors.hpp"
#include "ngtmsv/model.hpp"

namespace ngtmsv {
namespace {

constexpr double kPi = std::numbers::pi;

struct Point {
  ModelParams params;
  NGOperationSpec spec;
};

Point at(double lambda, const NGOperationSpec& spec) { return {derive_params(lambda, spec), spec}; }
Point tmsv(double lambda) { return at(lambda, NGOperationSpec::tmsv()); }

double tmsv_parity(double lambda, double phi) {
  const double l2 = lambda * lambda;
  return (1 - l2) / std::sqrt(1 + 2 * l2 * std::cos(2 * phi) + l2 * l2);
}

TEST(Probability, ZeroPhotonsIsInverseA0) {
  for (double lam : {0.0, 0.3, 0.8}) {
    for (double t1 : {0.2, 1.0}) {
      const auto p = at(lam, NGOperationSpec::custom(0, 0, 0, 0, t1, 0.6));
      EXPECT_NEAR(success_probability(p.params, p.spec), 1.0 / p.params.a0, 1e-14);
    }
  }
  EXPECT_EQ(success_probability(tmsv(0.7).params, NGOperationSpec::tmsv()), 1.0);
}

TEST(Probability, AsymSingleSubtractionClosedForm) {
  // Geometric heralding sum: (1−λ²)(1−τ)λ²/(1−τλ²)².
  const double lam = 0.5;
  const double tau = 0.5;
  const auto p = at(lam, operation_from_table(OperationKind::kAsymPS, 1, tau));
  const double want = (1 - lam * lam) * (1 - tau) * lam * lam / std::pow(1 - tau * lam * lam, 2);
  EXPECT_NEAR(success_probability(p.params, p.spec), want, 1e-14);
  EXPECT_NEAR(want, 0.12245, 1e-5);
}

TEST(Probability, CatalysisApproachesUnity) {
  const auto p = at(0.5, operation_from_table(OperationKind::kAsymPC, 1, 0.99999));
  EXPECT_GT(success_probability(p.params, p.spec), 0.9999);
}

TEST(Probability, HeraldingSpecLayout) {
  const auto d = heralding_derivative(NGOperationSpec::custom(1, 2, 0, 3, 0.5, 0.5));
  ASSERT_EQ(d.orders.size(), 8u);
  const int want[8] = {1, 1, 2, 2, 0, 0, 3, 3};
  for (int k = 0; k < 8; ++k) {
    EXPECT_EQ(d.orders[static_cast<std::size_t>(k)].first, k);
    EXPECT_EQ(d.orders[static_cast<std::size_t>(k)].second, want[k]);
  }
  EXPECT_DOUBLE_EQ(d.prefactor.real(), 64.0 / (1 * 2 * 1 * 6));
}

TEST(Wigner, TmsvMatchesGaussianForm) {
  for (double lam : {0.0, 0.3, 0.7}) {
    const auto p = tmsv(lam);
    const WignerFunction w(p.params, p.spec);
    EXPECT_NEAR(w({0, 0, 0, 0}), 1.0 / (kPi * kPi), 1e-15);
    const double ch = std::cosh(2 * p.params.r);
    const double sh = std::sinh(2 * p.params.r);
    for (const PhaseSpacePoint& x : {PhaseSpacePoint{0.2, 0.1, -0.3, 0.4}, PhaseSpacePoint{-1.0, 0.5, 0.7, 0.2}}) {
      const double r2 = x.q1 * x.q1 + x.p1 * x.p1 + x.q2 * x.q2 + x.p2 * x.p2;
      const double want = std::exp(-r2 * ch + 2 * (x.q1 * x.q2 - x.p1 * x.p2) * sh) / (kPi * kPi);
      EXPECT_NEAR(w(x), want, 1e-13);
    }
  }
}

TEST(Wigner, NormalisedStatesAreBoundedByInversePiSquared) {
  const auto p = at(0.5, operation_from_table(OperationKind::kSymPA, 2, 0.7));
  const WignerFunction w(p.params, p.spec);
  for (double q : {-1.0, 0.0, 0.6}) {
    for (double pp : {-0.4, 0.3}) EXPECT_LE(std::abs(w({q, pp, -q, pp})), 1.0 / (kPi * kPi) + 1e-12);
  }
  EXPECT_NEAR(w.probability(), success_probability(p.params, p.spec), 0.0);
}

TEST(Wigner, ImpossibleHeraldIsDegenerate) {
  const auto p = at(0.0, operation_from_table(OperationKind::kAsymPS, 1, 0.5));
  EXPECT_EQ(success_probability(p.params, p.spec), 0.0);
  EXPECT_THROW(WignerFunction(p.params, p.spec), DegenerateStateError);
  EXPECT_THROW(parity_expectation(p.params, p.spec, 0.3), DegenerateStateError);
  EXPECT_THROW(moment(p.params, p.spec, {2, 0, 0, 0}), DegenerateStateError);
}

TEST(Moments, NormalisationIsExact) {
  const NGOperationSpec specs[] = {NGOperationSpec::tmsv(), NGOperationSpec::custom(1, 2, 1, 2, 0.3, 0.8),
                                   operation_from_table(OperationKind::kSymPS, 3, 0.6)};
  for (const auto& s : specs) {
    for (double lam : {0.1, 0.55, 0.9}) {
      const auto p = at(lam, s);
      EXPECT_EQ(moment(p.params, s, {0, 0, 0, 0}), 1.0);
    }
  }
}

TEST(Moments, TmsvGaussianMoments) {
  const auto p = tmsv(0.5);
  EXPECT_NEAR(moment(p.params, p.spec, {2, 0, 0, 0}), 5.0 / 6.0, 1e-14);
  for (double lam : {0.2, 0.6}) {
    const auto q = tmsv(lam);
    const double r = q.params.r;
    EXPECT_NEAR(moment(q.params, q.spec, {2, 0, 0, 0}), std::cosh(2 * r) / 2, 1e-13);
    EXPECT_NEAR(moment(q.params, q.spec, {0, 2, 0, 0}), std::cosh(2 * r) / 2, 1e-13);
    EXPECT_NEAR(moment(q.params, q.spec, {1, 0, 1, 0}), std::sinh(2 * r) / 2, 1e-13);
    EXPECT_NEAR(moment(q.params, q.spec, {0, 1, 0, 1}), -std::sinh(2 * r) / 2, 1e-13);
    EXPECT_NEAR(moment(q.params, q.spec, {1, 0, 0, 0}), 0.0, 1e-15);
  }
}

TEST(Moments, OrderCapAndSignChecks) {
  const auto p = tmsv(0.3);
  EXPECT_THROW(moment(p.params, p.spec, {2, 2, 1, 0}), ParameterError);
  EXPECT_NO_THROW(moment(p.params, p.spec, {2, 2, 1, 0}, 6));
  EXPECT_THROW(moment(p.params, p.spec, {-1, 0, 0, 0}), ParameterError);
}

TEST(Qfi, TmsvClosedForm) {
  for (double lam : {0.1, 0.5, 0.8}) {
    const auto p = tmsv(lam);
    const double want = 4 * lam * lam / std::pow(1 - lam * lam, 2);
    EXPECT_NEAR(qfi(p.params, p.spec), want, 1e-10 * want);
    EXPECT_NEAR(qfi_bracket(p.params, p.spec), want / 4, 1e-10 * want);
  }
  EXPECT_NEAR(qcrb(tmsv(0.5).params, NGOperationSpec::tmsv()), 0.75, 1e-12);
}

TEST(Qfi, VacuumIsDegenerate) {
  const auto p = tmsv(0.0);
  EXPECT_THROW(qfi(p.params, p.spec), DegenerateStateError);
  EXPECT_THROW(qcrb(p.params, p.spec), DegenerateStateError);
}

TEST(Qfi, AsymSubtractionEqualsAddition) {
  for (double lam : {0.2, 0.7}) {
    for (double tau : {0.3, 0.9}) {
      const auto ps = at(lam, operation_from_table(OperationKind::kAsymPS, 1, tau));
      const auto pa = at(lam, operation_from_table(OperationKind::kAsymPA, 1, tau));
      EXPECT_NEAR(qfi(ps.params, ps.spec), qfi(pa.params, pa.spec), 1e-10);
    }
  }
}

TEST(Qfi, SymmetricAdditionBeatsTmsv) {
  const auto pa = at(0.4, operation_from_table(OperationKind::kSymPA, 1, 0.9));
  EXPECT_LT(qcrb(pa.params, pa.spec), qcrb(tmsv(0.4).params, NGOperationSpec::tmsv()));
}

TEST(Parity, TmsvClosedForm) {
  for (double lam : {0.0, 0.25, 0.6, 0.95}) {
    for (double phi : {-0.7, 0.0, 0.01, 1.0, kPi / 2}) {
      const auto p = tmsv(lam);
      EXPECT_NEAR(parity_expectation(p.params, p.spec, phi), tmsv_parity(lam, phi), 1e-12);
    }
  }
  EXPECT_NEAR(parity_expectation(tmsv(0.6).params, NGOperationSpec::tmsv(), kPi / 2), 1.0, 1e-12);
}

TEST(Parity, VacuumIsEven) {
  const auto p = at(0.0, NGOperationSpec::custom(0, 0, 0, 0, 0.4, 0.9));
  for (double phi : {0.0, 0.5, 2.0}) EXPECT_NEAR(parity_expectation(p.params, p.spec, phi), 1.0, 1e-15);
}

TEST(Parity, DualDerivativeMatchesFiniteDifference) {
  const auto p = at(0.45, NGOperationSpec::custom(1, 0, 0, 2, 0.6, 0.8));
  const double phi = 0.9;
  const double h = 1e-5;
  const DualReal f = parity_expectation(p.params, p.spec, DualReal::variable(phi));
  const double fd =
      (parity_expectation(p.params, p.spec, phi + h) - parity_expectation(p.params, p.spec, phi - h)) / (2 * h);
  EXPECT_NEAR(f.value, parity_expectation(p.params, p.spec, phi), 1e-15);
  EXPECT_NEAR(f.deriv, fd, 1e-8);
}

TEST(Sensitivity, TmsvSaturatesBoundNearZeroPhase) {
  for (double lam : {0.2, 0.5, 0.8}) {
    const auto p = tmsv(lam);
    EXPECT_NEAR(phase_sensitivity(p.params, p.spec, 1e-4), (1 - lam * lam) / (2 * lam), 1e-4);
  }
}

TEST(Sensitivity, ZeroPhaseIsStationary) {
  const auto p = tmsv(0.5);
  EXPECT_THROW(phase_sensitivity(p.params, p.spec, 0.0), StationaryPointError);
}

TEST(Sensitivity, BoundedByQcrb) {
  const NGOperationSpec specs[] = {operation_from_table(OperationKind::kSymPS, 1, 0.7),
                                   operation_from_table(OperationKind::kAsymPC, 2, 0.4),
                                   NGOperationSpec::custom(0, 2, 1, 0, 0.9, 0.5)};
  for (const auto& s : specs) {
    for (double lam : {0.15, 0.5, 0.85}) {
      const auto p = at(lam, s);
      for (double phi : {0.01, 0.3, 1.2}) {
        EXPECT_GE(phase_sensitivity(p.params, s, phi), qcrb(p.params, s) - 1e-9);
      }
    }
  }
}

TEST(Merit, TmsvAgainstItselfIsZero) {
  const auto p = tmsv(0.4);
  EXPECT_EQ(merit(p.params, p.spec, 0.01), 0.0);
  EXPECT_EQ(weighted_merit(p.params, p.spec, 0.01), 0.0);
}

TEST(Merit, CatalysisAtUnitTransmissivityReducesToTmsv) {
  const auto p = at(0.5, operation_from_table(OperationKind::kAsymPC, 1, 1.0));
  EXPECT_NEAR(merit(p.params, p.spec, 0.01), 0.0, 1e-12);
  EXPECT_NEAR(success_probability(p.params, p.spec), 1.0, 1e-14);
}

TEST(Merit, AsymDoubleSubtractionNeverHelps) {
  for (double lam : {0.1, 0.5, 0.9}) {
    for (double tau : {0.2, 0.9}) {
      const auto p = at(lam, operation_from_table(OperationKind::kAsymPS, 2, tau));
      EXPECT_LT(merit(p.params, p.spec, 0.01), 0.0);
    }
  }
}

TEST(Report, FieldsAreConsistent) {
  const auto p = at(0.4, operation_from_table(OperationKind::kSymPA, 1, 0.9));
  const auto r = sensitivity_report(p.params, p.spec, 0.01);
  EXPECT_EQ(r.p_success, success_probability(p.params, p.spec));
  EXPECT_EQ(r.delta_phi, phase_sensitivity(p.params, p.spec, 0.01));
  EXPECT_EQ(r.weighted_merit, r.p_success * r.merit);
  EXPECT_GE(r.delta_phi, r.delta_phi_min - 1e-9);
  EXPECT_LE(std::abs(r.f_parity), 1.0 + 1e-9);
}

TEST(Residue, RelativeTolerance) {
  EXPECT_EQ(checked_real({2.0, 1e-11}, "x"), 2.0);
  EXPECT_THROW(checked_real({0.5, 2e-10}, "x"), NumericalConsistencyError);
  EXPECT_NO_THROW(checked_real({1e6, 1e-5}, "x"));
  EXPECT_THROW(checked_real({std::nan(""), 0.0}, "x"), NumericalConsistencyError);
}

}  // namespace
}  // namespace ngtmsv
