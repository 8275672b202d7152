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

// Heralded-operation taxonomy, derived squeezing/transmissivity scalars and
// the quadratic forms that enter every analytic quantity.
//
// Variable orderings are fixed throughout:
//   u = (u₁, v₁, u₂, v₂, u₁′, v₁′, u₂′, v₂′)   heralding variables
//   ξ = (q₁, p₁, q₂, p₂)                        phase-space point
//   x = (x₁, y₁, x₂, y₂)                        moment sources

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "ngtmsv/dual.hpp"
#include "ngtmsv/errors.hpp"

namespace ngtmsv {

// Small dense row-major matrix. Only what the form builders need.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const std::vector<T>& data() const { return data_; }

  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<std::complex<double>>;

enum class OperationKind { kAsymPS, kAsymPA, kAsymPC, kSymPS, kSymPA, kSymPC };

enum class ModeOperation { kSubtraction, kAddition, kCatalysis };

std::string to_string(OperationKind kind);
std::string to_string(ModeOperation op);

// Photon numbers injected (m) and detected (n) at each heralding beam
// splitter, with the splitters' transmissivities.
struct NGOperationSpec {
  int m1 = 0;
  int m2 = 0;
  int n1 = 0;
  int n2 = 0;
  double tau1 = 1.0;
  double tau2 = 1.0;

  // Validating constructor for arbitrary per-mode operations.
  static NGOperationSpec custom(int m1, int m2, int n1, int n2, double tau1, double tau2);

  // No operation at all: the bare two-mode squeezed vacuum.
  static NGOperationSpec tmsv() { return {}; }

  ModeOperation mode_operation(int mode) const;

  // (m₁,n₁,τ₁) ↔ (m₂,n₂,τ₂).
  NGOperationSpec swapped() const { return {m2, m1, n2, n1, tau2, tau1}; }

  int total_photons() const { return m1 + m2 + n1 + n2; }

  friend bool operator==(const NGOperationSpec&, const NGOperationSpec&) = default;
};

NGOperationSpec operation_from_table(OperationKind kind, int n, double tau);

struct ModelParams {
  double lambda = 0.0;  // tanh r
  double r = 0.0;
  double alpha = 0.0;   // sinh r
  double beta = 1.0;    // cosh r
  double t1 = 1.0;      // √τ₁
  double t2 = 1.0;
  double rr1 = 0.0;     // √(1−τ₁)
  double rr2 = 0.0;
  double a0 = 1.0;      // 1 + α²(1−τ₁τ₂)
};

ModelParams derive_params(double lambda, const NGOperationSpec& spec);

struct WignerForms {
  ComplexMatrix m1;  // 4×4, ξᵀM₁ξ
  ComplexMatrix m2;  // 8×4, uᵀM₂ξ
  ComplexMatrix m3;  // 8×8, uᵀM₃u
};

struct MomentForms {
  ComplexMatrix m5;  // 8×4, uᵀM₅x
  ComplexMatrix m6;  // 4×4, xᵀM₆x
};

WignerForms build_wigner_forms(const ModelParams& p);
ComplexMatrix build_probability_form(const ModelParams& p);
MomentForms build_moment_forms(const ModelParams& p);

// φ-dependent scalars of the parity signal. S is double for plain
// evaluation or DualReal to carry ∂/∂φ.
template <class S>
struct ParityAux {
  S b0{};
  std::array<S, 21> w{};
  S phi{};
  S c1{}, s1{}, c2{}, s2{};
};

template <class S>
struct ParityForm {
  ParityAux<S> aux;
  Matrix<S> m7;  // 8×8, real entries
};

ParityForm<double> build_parity_form(const ModelParams& p, double phi);
ParityForm<DualReal> build_parity_form(const ModelParams& p, DualReal phi);

// Throws NumericalConsistencyError unless m is square and symmetric to tol.
template <class T>
void check_symmetric(const Matrix<T>& m, const char* name, double tol = 0.0);

}  // namespace ngtmsv
