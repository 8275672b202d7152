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

#include "ngtmsv/errors.hpp"
#include "ngtmsv/fock.hpp"

namespace ngtmsv::fock {
namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST(Tmsv, VacuumAtZeroSqueezing) {
  const auto s = tmsv_state(0.0, 5);
  EXPECT_EQ(s.at({0, 0}), C(1.0));
  EXPECT_EQ(s.squared_norm(), 1.0);
}

TEST(Tmsv, NormAndReducedParity) {
  const double lam = 0.5;
  const auto s = tmsv_state(lam, 40);
  EXPECT_NEAR(s.squared_norm(), 1.0, 1e-14);
  EXPECT_NEAR(parity_expect(s, 1), (1 - lam * lam) / (1 + lam * lam), 1e-14);
  EXPECT_NEAR(parity_expect(s, 0), (1 - lam * lam) / (1 + lam * lam), 1e-14);
}

TEST(Tmsv, RejectsShortCutoff) {
  EXPECT_THROW(tmsv_state(0.9, 20), TruncationError);
  EXPECT_THROW(tmsv_state(1.0, 20), ParameterError);
  EXPECT_EQ(default_cutoff(0.0), 12);
  EXPECT_EQ(default_cutoff(0.5), 24);
  EXPECT_NO_THROW(tmsv_state(0.9, default_cutoff(0.9)));
}

TEST(BeamSplitter, UnitTransmissivityIsIdentity) {
  auto s = tensor(fock_state(2, 4), fock_state(1, 4));
  const auto out = beamsplitter_apply(s, 0, 1, 1.0);
  EXPECT_NEAR((out.amps - s.amps).norm(), 0.0, 1e-15);
}

TEST(BeamSplitter, SinglePhotonBalanced) {
  const auto s = tensor(fock_state(1, 2), fock_state(0, 2));
  const auto out = beamsplitter_apply(s, 0, 1, 0.5);
  EXPECT_NEAR(std::abs(out.at({1, 0}) - C(1 / std::sqrt(2.0))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.at({0, 1}) - C(-1 / std::sqrt(2.0))), 0.0, 1e-15);
}

TEST(BeamSplitter, HeisenbergActionOnCoherentLikeState) {
  // ⟨a₁′⟩ = √τ⟨a₁⟩ + √(1−τ)⟨a₂⟩ for a product of small superpositions.
  const int d = 6;
  FockStateVector a({d});
  FockStateVector b({d});
  a.amps << 0.8, 0.6, 0, 0, 0, 0;
  b.amps << 0.6, C(0, 0.8), 0, 0, 0, 0;
  const auto s = tensor(a, b);
  const double tau = 0.3;
  const auto out = beamsplitter_apply(s, 0, 1, tau);
  auto mean_a = [&](const FockStateVector& st, int mode) {
    C sum{};
    for (int n1 = 0; n1 < d; ++n1) {
      for (int n2 = 0; n2 < d; ++n2) {
        const int m1 = n1 + (mode == 0);
        const int m2 = n2 + (mode == 1);
        if (m1 >= d || m2 >= d) continue;
        sum += std::conj(st.at({n1, n2})) * std::sqrt(static_cast<double>(mode == 0 ? m1 : m2)) * st.at({m1, m2});
      }
    }
    return sum;
  };
  const C a1 = mean_a(s, 0);
  const C a2 = mean_a(s, 1);
  EXPECT_NEAR(std::abs(mean_a(out, 0) - (std::sqrt(tau) * a1 + std::sqrt(1 - tau) * a2)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(mean_a(out, 1) - (-std::sqrt(1 - tau) * a1 + std::sqrt(tau) * a2)), 0.0, 1e-14);
}

TEST(BeamSplitter, PreservesNormAndRejectsOverflow) {
  const auto s = tmsv_state(0.4, 20);
  const auto out = beamsplitter_apply(pad(s, {41, 41}), 0, 1, 0.37);
  EXPECT_NEAR(out.squared_norm(), s.squared_norm(), 1e-12);
  EXPECT_THROW(beamsplitter_apply(s, 0, 1, 0.5), TruncationError);
  EXPECT_THROW(beamsplitter_apply(s, 0, 0, 0.5), ParameterError);
}

TEST(Herald, Trivial) {
  const auto vac = tensor(fock_state(0, 3), fock_state(0, 3));
  const auto kept = herald(vac, 1, 0);
  EXPECT_EQ(kept.modes(), 1);
  EXPECT_EQ(kept.squared_norm(), 1.0);
  EXPECT_EQ(herald(vac, 1, 1).squared_norm(), 0.0);
  EXPECT_THROW(herald(vac, 1, 3), TruncationError);
}

TEST(Herald, OutcomesSumToOne) {
  const double lam = 0.5;
  const int n_cut = default_cutoff(lam);
  auto joint = tensor(pad(tmsv_state(lam, n_cut), {n_cut + 2, n_cut + 1}), fock_state(1, n_cut + 2));
  joint = beamsplitter_apply(joint, 0, 2, 0.6);
  double total = 0.0;
  for (int n = 0; n < n_cut + 2; ++n) total += herald(joint, 2, n).squared_norm();
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(Mzi, ZeroPhaseIsIdentityAndPhotonNumberIsConserved) {
  const auto s = tmsv_state(0.3, 20);
  const auto same = mzi_apply(s, 0.0);
  EXPECT_NEAR((same.amps - pad(s, same.dims).amps).norm(), 0.0, 1e-14);

  const auto out = mzi_apply(s, 0.8);
  EXPECT_NEAR(out.squared_norm(), 1.0, 1e-12);
  std::vector<double> before(60, 0.0);
  std::vector<double> after(60, 0.0);
  for (int a = 0; a < s.dims[0]; ++a) {
    for (int b = 0; b < s.dims[1]; ++b) before[static_cast<std::size_t>(a + b)] += std::norm(s.at({a, b}));
  }
  for (int a = 0; a < out.dims[0]; ++a) {
    for (int b = 0; b < out.dims[1]; ++b) after[static_cast<std::size_t>(a + b)] += std::norm(out.at({a, b}));
  }
  for (std::size_t n = 0; n < before.size(); ++n) EXPECT_NEAR(before[n], after[n], 1e-14) << n;
}

TEST(Mzi, TmsvParityClosedForm) {
  for (double lam : {0.2, 0.6}) {
    const auto s = tmsv_state(lam, default_cutoff(lam));
    for (double phi : {0.01, 0.5, 1.3}) {
      const double l2 = lam * lam;
      const double want = (1 - l2) / std::sqrt(1 + 2 * l2 * std::cos(2 * phi) + l2 * l2);
      EXPECT_NEAR(parity_expect(mzi_apply(s, phi), 1), want, 1e-12);
    }
  }
}

TEST(Parity, Vacuum) { EXPECT_EQ(parity_expect(tensor(fock_state(0, 2), fock_state(0, 2)), 1), 1.0); }

TEST(Parity, RequiresNormalisedState) {
  FockStateVector s({2, 2});
  s.amps(0) = 0.5;
  EXPECT_THROW(parity_expect(s, 0), NormalizationError);
  EXPECT_THROW(j2_moments(s), NormalizationError);
}

TEST(J2, TmsvSecondMoment) {
  const double lam = 0.5;
  // ⟨J2²⟩ weights the tail by n², so go deeper than the default cutoff.
  const auto m = j2_moments(tmsv_state(lam, 40));
  EXPECT_NEAR(4 * m.second, 4 * lam * lam / std::pow(1 - lam * lam, 2), 1e-12);
  EXPECT_NEAR(4 * m.second, 16.0 / 9.0, 1e-12);
  EXPECT_NEAR(std::abs(m.mean), 0.0, 1e-15);
}

TEST(WignerKernel, FockStates) {
  const auto vac = tensor(fock_state(0, 3), fock_state(0, 3));
  EXPECT_NEAR(wigner_point(vac, {0, 0, 0, 0}), 1 / (kPi * kPi), 1e-15);
  // |1⟩⊗|0⟩ at the origin: (−1/π)(1/π).
  const auto one = tensor(fock_state(1, 3), fock_state(0, 3));
  EXPECT_NEAR(wigner_point(one, {0, 0, 0, 0}), -1 / (kPi * kPi), 1e-15);
  // Away from the origin: W₁(q,p) = (2(q²+p²) − 1)e^{−(q²+p²)}/π.
  const double q = 0.4;
  const double p = -0.3;
  const double r2 = q * q + p * p;
  EXPECT_NEAR(wigner_point(one, {q, p, 0, 0}), (2 * r2 - 1) * std::exp(-r2) / (kPi * kPi), 1e-15);
}

TEST(WignerKernel, TmsvMatchesGaussianForm) {
  const double lam = 0.3;
  const auto s = tmsv_state(lam, default_cutoff(lam));
  const double r = std::atanh(lam);
  const PhaseSpacePoint x{0.2, 0.1, -0.3, 0.4};
  const double r2 = x.q1 * x.q1 + x.p1 * x.p1 + x.q2 * x.q2 + x.p2 * x.p2;
  const double want =
      std::exp(-r2 * std::cosh(2 * r) + 2 * (x.q1 * x.q2 - x.p1 * x.p2) * std::sinh(2 * r)) / (kPi * kPi);
  EXPECT_NEAR(wigner_point(s, x), want, 1e-10);
}

TEST(Prepare, ZeroPhotonSpecGivesTmsvWhenIdeal) {
  const auto prep = prepare_ng_tmsv(0.4, NGOperationSpec::tmsv());
  EXPECT_NEAR(prep.probability, 1.0, 1e-14);
  EXPECT_NEAR(std::abs(prep.state.at({3, 3}) - C(std::sqrt(1 - 0.16) * std::pow(0.4, 3))), 0.0, 1e-15);
}

TEST(Prepare, ImpossibleOutcomeIsDegenerate) {
  EXPECT_THROW(prepare_ng_tmsv(0.0, operation_from_table(OperationKind::kAsymPS, 1, 0.5)), DegenerateStateError);
}

}  // namespace
}  // namespace ngtmsv::fock
