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

#include "ngtmsv/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "ngtmsv/errors.hpp"

namespace ngtmsv::fock {

namespace {

using C = std::complex<double>;

std::vector<Eigen::Index> strides_of(const std::vector<int>& dims) {
  std::vector<Eigen::Index> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

Eigen::Index total_size(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), Eigen::Index{1}, [](Eigen::Index a, int d) { return a * d; });
}

std::vector<int> occupation_of(Eigen::Index flat, const std::vector<int>& dims) {
  std::vector<int> occ(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    occ[k] = static_cast<int>(flat % dims[k]);
    flat /= dims[k];
  }
  return occ;
}

// Ĵ₂ = (a₁†a₂ − a₁a₂†)/(2i) restricted to N photons, basis |k, N−k⟩.
Eigen::MatrixXcd j2_block(int n) {
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  const C inv_2i{0.0, -0.5};
  for (int k = 0; k <= n; ++k) {
    if (k < n) j(k + 1, k) = inv_2i * std::sqrt(static_cast<double>(k + 1) * (n - k));
    if (k > 0) j(k - 1, k) = -inv_2i * std::sqrt(static_cast<double>(k) * (n - k + 1));
  }
  return j;
}

// exp(−i s Ĵ₂) on the N-photon block. With D = diag(iᵏ), D†Ĵ₂D is real
// symmetric tridiagonal, so the exponential is assembled from a real
// eigendecomposition; the result is real because Ĵ₂ is i times a real
// antisymmetric generator.
Eigen::MatrixXd rotation_block(int n, double s) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n + 1);
  Eigen::VectorXd sub(std::max(n, 1));
  for (int k = 0; k < n; ++k) sub(k) = -0.5 * std::sqrt(static_cast<double>(k + 1) * (n - k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub.head(n), Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw NumericalConsistencyError("eigendecomposition of J2 block failed");
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const Eigen::ArrayXd angle = s * eig.eigenvalues().array();
  const Eigen::MatrixXd cos_part = v * angle.cos().matrix().asDiagonal() * v.transpose();
  const Eigen::MatrixXd sin_part = v * angle.sin().matrix().asDiagonal() * v.transpose();
  Eigen::MatrixXd u(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= n; ++l) {
      // Re(i^{k−l}(C − iS)).
      switch (((k - l) % 4 + 4) % 4) {
        case 0: u(k, l) = cos_part(k, l); break;
        case 1: u(k, l) = sin_part(k, l); break;
        case 2: u(k, l) = -cos_part(k, l); break;
        default: u(k, l) = -sin_part(k, l); break;
      }
    }
  }
  return u;
}

int digit(Eigen::Index flat, Eigen::Index stride, int dim) { return static_cast<int>((flat / stride) % dim); }

int max_pair_photons(const FockStateVector& state, int mode_i, int mode_j) {
  const auto strides = strides_of(state.dims);
  const auto si = strides[static_cast<std::size_t>(mode_i)];
  const auto sj = strides[static_cast<std::size_t>(mode_j)];
  const int di = state.dims[static_cast<std::size_t>(mode_i)];
  const int dj = state.dims[static_cast<std::size_t>(mode_j)];
  int best = -1;
  for (Eigen::Index f = 0; f < state.amps.size(); ++f) {
    if (state.amps(f) == C{}) continue;
    best = std::max(best, digit(f, si, di) + digit(f, sj, dj));
  }
  return best;
}

void check_mode(const FockStateVector& state, int mode) {
  if (mode < 0 || mode >= state.modes()) throw ParameterError("mode index out of range");
}

// Applies exp(−i s Ĵ₂) on modes (i, j); all occupied blocks must be complete.
FockStateVector rotate(const FockStateVector& state, int mode_i, int mode_j, double s) {
  check_mode(state, mode_i);
  check_mode(state, mode_j);
  if (mode_i == mode_j) throw ParameterError("two-mode unitary needs distinct modes");
  const int top = max_pair_photons(state, mode_i, mode_j);
  const int di = state.dims[static_cast<std::size_t>(mode_i)];
  const int dj = state.dims[static_cast<std::size_t>(mode_j)];
  if (top >= std::min(di, dj)) {
    std::ostringstream os;
    os << "photon-number block " << top << " does not fit modes of dimension " << di << " and " << dj;
    throw TruncationError(os.str());
  }

  const auto strides = strides_of(state.dims);
  const Eigen::Index si = strides[static_cast<std::size_t>(mode_i)];
  const Eigen::Index sj = strides[static_cast<std::size_t>(mode_j)];
  std::vector<Eigen::MatrixXd> blocks(static_cast<std::size_t>(top + 1));

  FockStateVector out(state.dims);
  for (Eigen::Index f = 0; f < state.amps.size(); ++f) {
    if (digit(f, si, di) != 0 || digit(f, sj, dj) != 0) continue;
    // f is the base offset of one (i, j) slice.
    for (int n = 0; n <= top; ++n) {
      Eigen::VectorXcd v(n + 1);
      for (int k = 0; k <= n; ++k) v(k) = state.amps(f + k * si + (n - k) * sj);
      if (v.isZero(0.0)) continue;
      auto& block = blocks[static_cast<std::size_t>(n)];
      if (block.size() == 0) block = rotation_block(n, s);
      const Eigen::VectorXd re = block * v.real();
      const Eigen::VectorXd im = block * v.imag();
      for (int k = 0; k <= n; ++k) out.amps(f + k * si + (n - k) * sj) = C{re(k), im(k)};
    }
  }
  return out;
}

double laguerre(int n, int alpha, double x) { return std::assoc_laguerre(static_cast<unsigned>(n), static_cast<unsigned>(alpha), x); }

// Single-mode Wigner kernel of |m⟩⟨n|, m, n < dim.
Eigen::MatrixXcd wigner_kernel(int dim, double q, double p) {
  Eigen::MatrixXcd k(dim, dim);
  const double r2 = q * q + p * p;
  const C z = std::sqrt(2.0) * C{q, -p};
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n <= m; ++n) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      const double ratio = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
      const C v = sign / std::numbers::pi * ratio * std::pow(z, m - n) * std::exp(-r2) * laguerre(n, m - n, 2.0 * r2);
      k(m, n) = v;
      k(n, m) = std::conj(v);
    }
  }
  return k;
}

void require_normalised(const FockStateVector& state) {
  const double norm = state.squared_norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "state norm " << norm << " differs from 1";
    throw NormalizationError(os.str());
  }
}

void require_two_modes(const FockStateVector& state) {
  if (state.modes() != 2) throw ParameterError("expected a two-mode state");
}

}  // namespace

FockStateVector::FockStateVector(std::vector<int> dims_in) : dims(std::move(dims_in)) {
  for (int d : dims) {
    if (d < 1) throw ParameterError("mode dimension must be positive");
  }
  amps = Eigen::VectorXcd::Zero(total_size(dims));
}

Eigen::Index FockStateVector::flat_index(const std::vector<int>& occupation) const {
  if (occupation.size() != dims.size()) throw ParameterError("occupation has wrong number of modes");
  Eigen::Index flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (occupation[k] < 0 || occupation[k] >= dims[k]) throw TruncationError("occupation outside truncated basis");
    flat = flat * dims[k] + occupation[k];
  }
  return flat;
}

FockStateVector tmsv_state(double lambda, int cutoff) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw ParameterError("lambda must be in [0,1)");
  if (cutoff < 0) throw ParameterError("cutoff must be non-negative");
  // Norm deficit of the truncated state is λ^{2(cutoff+1)}.
  if (lambda > 0.0 && 2.0 * (cutoff + 1) * std::log(lambda) > std::log(1e-14)) {
    std::ostringstream os;
    os << "cutoff " << cutoff << " leaves more than 1e-14 of the TMSV norm at lambda=" << lambda;
    throw TruncationError(os.str());
  }
  FockStateVector s({cutoff + 1, cutoff + 1});
  const double norm = std::sqrt(1.0 - lambda * lambda);
  double power = 1.0;
  for (int n = 0; n <= cutoff; ++n) {
    s.at({n, n}) = norm * power;
    power *= lambda;
  }
  return s;
}

FockStateVector fock_state(int n, int dim) {
  if (n < 0 || n >= dim) throw TruncationError("Fock state outside truncated basis");
  FockStateVector s({dim});
  s.amps(n) = 1.0;
  return s;
}

FockStateVector tensor(const FockStateVector& a, const FockStateVector& b) {
  std::vector<int> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  FockStateVector out(dims);
  const Eigen::Index nb = b.amps.size();
  for (Eigen::Index i = 0; i < a.amps.size(); ++i) out.amps.segment(i * nb, nb) = a.amps(i) * b.amps;
  return out;
}

FockStateVector pad(const FockStateVector& state, const std::vector<int>& new_dims) {
  if (new_dims.size() != state.dims.size()) throw ParameterError("pad needs one dimension per mode");
  for (std::size_t k = 0; k < new_dims.size(); ++k) {
    if (new_dims[k] < state.dims[k]) throw TruncationError("pad cannot shrink a mode");
  }
  FockStateVector out(new_dims);
  for (Eigen::Index f = 0; f < state.amps.size(); ++f) {
    if (state.amps(f) == C{}) continue;
    out.amps(out.flat_index(occupation_of(f, state.dims))) = state.amps(f);
  }
  return out;
}

FockStateVector beamsplitter_apply(const FockStateVector& state, int mode_i, int mode_j, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw ParameterError("beam-splitter transmissivity must be in [0,1]");
  const double theta = std::acos(std::sqrt(tau));
  return rotate(state, mode_i, mode_j, -2.0 * theta);
}

FockStateVector herald(const FockStateVector& state, int mode, int n) {
  check_mode(state, mode);
  if (state.modes() < 2) throw ParameterError("cannot herald the only mode");
  if (n < 0 || n >= state.dims[static_cast<std::size_t>(mode)]) throw TruncationError("herald outcome outside truncated basis");
  std::vector<int> dims = state.dims;
  dims.erase(dims.begin() + mode);
  FockStateVector out(dims);
  // Split the flat index around the heralded mode: f = (outer·d + n)·inner + rest.
  const auto inner = strides_of(state.dims)[static_cast<std::size_t>(mode)];
  const int d = state.dims[static_cast<std::size_t>(mode)];
  const Eigen::Index outer = state.amps.size() / (inner * d);
  for (Eigen::Index o = 0; o < outer; ++o) {
    out.amps.segment(o * inner, inner) = state.amps.segment((o * d + n) * inner, inner);
  }
  return out;
}

FockStateVector mzi_apply(const FockStateVector& state, double phi) {
  require_two_modes(state);
  const int top = std::max(0, max_pair_photons(state, 0, 1));
  const int d0 = std::max(state.dims[0], top + 1);
  const int d1 = std::max(state.dims[1], top + 1);
  return rotate(pad(state, {d0, d1}), 0, 1, phi);
}

double parity_expect(const FockStateVector& state, int mode) {
  check_mode(state, mode);
  require_normalised(state);
  const auto stride = strides_of(state.dims)[static_cast<std::size_t>(mode)];
  const int dim = state.dims[static_cast<std::size_t>(mode)];
  double sum = 0.0;
  for (Eigen::Index f = 0; f < state.amps.size(); ++f) {
    const int n = digit(f, stride, dim);
    sum += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(state.amps(f));
  }
  return sum;
}

J2Moments j2_moments(const FockStateVector& state) {
  require_two_modes(state);
  require_normalised(state);
  const int top = std::max(0, max_pair_photons(state, 0, 1));
  const FockStateVector padded = pad(state, {std::max(state.dims[0], top + 1), std::max(state.dims[1], top + 1)});
  const Eigen::Index stride = padded.dims[1];
  J2Moments out;
  for (int n = 0; n <= top; ++n) {
    Eigen::VectorXcd v(n + 1);
    for (int k = 0; k <= n; ++k) v(k) = padded.amps(k * stride + (n - k));
    const Eigen::VectorXcd w = j2_block(n) * v;
    out.mean += v.dot(w);
    out.second += w.squaredNorm();
  }
  return out;
}

double wigner_point(const FockStateVector& state, const PhaseSpacePoint& point) {
  require_two_modes(state);
  require_normalised(state);
  const int d0 = state.dims[0];
  const int d1 = state.dims[1];
  const Eigen::Map<const Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> c(state.amps.data(), d0, d1);
  const Eigen::MatrixXcd k1 = wigner_kernel(d0, point.q1, point.p1);
  const Eigen::MatrixXcd k2 = wigner_kernel(d1, point.q2, point.p2);
  const Eigen::MatrixXcd x = c * k2 * c.adjoint();
  return k1.cwiseProduct(x).sum().real();
}

int default_cutoff(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw ParameterError("lambda must be in [0,1)");
  if (lambda == 0.0) return 12;
  const double needed = std::ceil(std::log(1e-14) / (2.0 * std::log(lambda)));
  return std::max(12, static_cast<int>(needed));
}

PreparedState prepare_ng_tmsv(double lambda, const NGOperationSpec& spec, int cutoff) {
  const int n_cut = cutoff < 0 ? default_cutoff(lambda) : cutoff;
  FockStateVector state = tmsv_state(lambda, n_cut);
  double probability = 1.0;
  const int sizes = n_cut + 1;
  for (int mode = 0; mode < 2; ++mode) {
    const int m = mode == 0 ? spec.m1 : spec.m2;
    const int n = mode == 0 ? spec.n1 : spec.n2;
    const double tau = mode == 0 ? spec.tau1 : spec.tau2;
    const int dim = std::max(state.dims[static_cast<std::size_t>(mode)], sizes + m);
    std::vector<int> dims = state.dims;
    dims[static_cast<std::size_t>(mode)] = dim;
    FockStateVector joint = tensor(pad(state, dims), fock_state(m, dim));
    joint = beamsplitter_apply(joint, mode, 2, tau);
    state = herald(joint, 2, n);
    const double p = state.squared_norm();
    if (!(p > 0.0)) throw DegenerateStateError("heralding outcome has zero probability");
    probability *= p;
    state.amps /= std::sqrt(p);
  }
  return {std::move(state), probability};
}

}  // namespace ngtmsv::fock
