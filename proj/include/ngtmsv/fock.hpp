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

// Brute-force Fock-space simulation of the heralded states, used as an
// independent reference for the closed-form quantities in analytics.hpp.
//
// States are dense tensors over a truncated number basis, flattened row-major
// (last mode fastest). Two-mode unitaries conserve total photon number, so
// they act block by block on the fixed-N subspaces of the two modes involved.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ngtmsv/analytics.hpp"
#include "ngtmsv/model.hpp"

namespace ngtmsv::fock {

struct FockStateVector {
  std::vector<int> dims;
  Eigen::VectorXcd amps;

  FockStateVector() = default;
  explicit FockStateVector(std::vector<int> dims_in);

  int modes() const { return static_cast<int>(dims.size()); }
  Eigen::Index flat_index(const std::vector<int>& occupation) const;
  std::complex<double>& at(const std::vector<int>& occupation) { return amps(flat_index(occupation)); }
  std::complex<double> at(const std::vector<int>& occupation) const { return amps(flat_index(occupation)); }
  double squared_norm() const { return amps.squaredNorm(); }
};

// Σ √(1−λ²) λⁿ |n,n⟩ for n ≤ cutoff.
FockStateVector tmsv_state(double lambda, int cutoff);
FockStateVector fock_state(int n, int dim);
FockStateVector tensor(const FockStateVector& a, const FockStateVector& b);

// Zero-extends each mode to new_dims; shrinking is not allowed.
FockStateVector pad(const FockStateVector& state, const std::vector<int>& new_dims);

// exp(θ(aᵢ†aⱼ − aᵢaⱼ†)) with cos²θ = τ. Every photon-number block that
// carries amplitude must fit inside both modes, else TruncationError.
FockStateVector beamsplitter_apply(const FockStateVector& state, int mode_i, int mode_j, double tau);

// Projects `mode` onto |n⟩ and drops it. The result is unnormalised; its
// squared norm is the heralding probability.
FockStateVector herald(const FockStateVector& state, int mode, int n);

// exp(−iφĴ₂) on a two-mode state, padding both modes as needed.
FockStateVector mzi_apply(const FockStateVector& state, double phi);

// ⟨(−1)^{n̂}⟩ of one mode; the state must be normalised to 1e-9.
double parity_expect(const FockStateVector& state, int mode);

struct J2Moments {
  std::complex<double> mean;
  double second = 0.0;
};

// ⟨Ĵ₂⟩ and ⟨Ĵ₂²⟩ of a normalised two-mode state.
J2Moments j2_moments(const FockStateVector& state);

// Wigner function of a normalised two-mode pure state.
double wigner_point(const FockStateVector& state, const PhaseSpacePoint& point);

// Smallest photon cutoff with λ^{2N} below 1e-14, at least 12.
int default_cutoff(double lambda);

struct PreparedState {
  FockStateVector state;  // normalised, modes (A₁, A₂)
  double probability = 0.0;
};

// Mixes |m_k⟩ into mode k of a truncated TMSV and heralds |n_k⟩, mode 1 first.
// cutoff < 0 selects default_cutoff(λ).
PreparedState prepare_ng_tmsv(double lambda, const NGOperationSpec& spec, int cutoff = -1);

}  // namespace ngtmsv::fock
