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

#include "ngtmsv/model.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

namespace ngtmsv {

namespace {

using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

void check_tau(double tau, const char* name) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    std::ostringstream os;
    os << name << " must be in (0,1], got " << tau;
    throw ParameterError(os.str());
  }
}

double magnitude(double x) { return std::abs(x); }
double magnitude(const C& x) { return std::abs(x); }
double magnitude(const DualReal& x) { return std::abs(x.value) + std::abs(x.deriv); }

double value_of(double x) { return x; }
double value_of(const DualReal& x) { return x.value; }

template <class S>
S sq(const S& x) {
  return x * x;
}

template <class S>
ParityForm<S> parity_form_impl(const ModelParams& p, S phi) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  ParityForm<S> out;
  auto& a = out.aux;
  a.phi = phi;
  a.c1 = cos(phi);
  a.s1 = sin(phi);
  a.c2 = cos(phi * S{2.0});
  a.s2 = sin(phi * S{2.0});

  const S L{p.lambda};
  const S t1{p.t1}, t2{p.t2}, r1{p.rr1}, r2{p.rr2};
  const S one{1.0}, two{2.0};
  const S& c1 = a.c1;
  const S& s1 = a.s1;
  const S& c2 = a.c2;
  const S& s2 = a.s2;
  const S L2 = L * L;
  const S T = L2 * sq(t1) * sq(t2);  // λ²t₁²t₂²

  auto& w = a.w;
  w[0] = two * c2 * T + T * T + one;
  w[1] = L * sq(r1) * s2 * t1 * t2;
  w[2] = c1 * sq(r1) * (T + one);
  w[3] = L * r1 * r2 * t1 * t2 * (c2 + T);
  w[4] = r1 * r2 * s1 * (T - one);
  w[5] = L * sq(r1) * s1 * t2 * (T - one);
  w[6] = L2 * sq(t2) * t1 * sq(t1) * (c2 + L2 * sq(t2)) + c2 * L2 * sq(t2) * t1 + t1;
  w[7] = c1 * L * r1 * r2 * t1 * (T + one);
  w[8] = two * c1 * L2 * r1 * r2 * s1 * sq(t1) * t2;
  w[9] = -(two * c1 * L * sq(r2) * s1 * t1 * t2);
  w[10] = -(c1 * sq(r2) * (T + one));
  w[11] = -(c1 * L * r1 * r2 * t2 * (T + one));
  w[12] = -(two * c1 * L2 * r1 * r2 * s1 * t1 * sq(t2));
  w[13] = L * sq(r2) * s1 * t1 * (T - one);
  w[14] = L2 * sq(t1) * t2 * sq(t2) * (c2 + L2 * sq(t1)) + c2 * L2 * sq(t1) * t2 + t2;
  w[15] = -(L * L2 * sq(r1) * s2 * t1 * t2 * sq(t2));
  w[16] = -(c1 * L2 * sq(r1) * sq(t2) * (T + one));
  w[17] = -(L * r1 * r2 * (c2 * T + one));
  w[18] = L2 * r1 * r2 * s1 * t1 * t2 * (T - one);
  w[19] = L * L2 * sq(r2) * s2 * t1 * sq(t1) * t2;
  w[20] = c1 * L2 * sq(r2) * sq(t1) * (T + one);

  if (!(value_of(w[0]) > 0.0)) throw NumericalConsistencyError("parity normalisation w0 must be positive");

  // Symmetric block pattern: each 2×2 block is [[a, b], [b, a]].
  static constexpr int kPattern[8][8] = {
      {1, 2, 3, 4, 5, 6, 7, 8},          {2, 1, 4, 3, 6, 5, 8, 7},
      {3, 4, 9, 10, 11, 12, 13, 14},     {4, 3, 10, 9, 12, 11, 14, 13},
      {5, 6, 11, 12, 15, 16, 17, 18},    {6, 5, 12, 11, 16, 15, 18, 17},
      {7, 8, 13, 14, 17, 18, 19, 20},    {8, 7, 14, 13, 18, 17, 20, 19},
  };
  const S scale = S{-1.0} / (S{4.0} * w[0]);
  out.m7 = Matrix<S>(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) out.m7(i, j) = w[static_cast<std::size_t>(kPattern[i][j])] * scale;
  }
  check_symmetric(out.m7, "M7");

  const S l2tt = L2 * p.t1 * p.t1 * p.t2 * p.t2;  // λ²τ₁τ₂
  a.b0 = sqrt(one + l2tt * (l2tt + two * c2)) / S{1.0 - p.lambda * p.lambda};
  return out;
}

}  // namespace

std::string to_string(OperationKind kind) {
  switch (kind) {
    case OperationKind::kAsymPS: return "asym-ps";
    case OperationKind::kAsymPA: return "asym-pa";
    case OperationKind::kAsymPC: return "asym-pc";
    case OperationKind::kSymPS: return "sym-ps";
    case OperationKind::kSymPA: return "sym-pa";
    case OperationKind::kSymPC: return "sym-pc";
  }
  return "unknown";
}

std::string to_string(ModeOperation op) {
  switch (op) {
    case ModeOperation::kSubtraction: return "subtraction";
    case ModeOperation::kAddition: return "addition";
    case ModeOperation::kCatalysis: return "catalysis";
  }
  return "unknown";
}

NGOperationSpec NGOperationSpec::custom(int m1, int m2, int n1, int n2, double tau1, double tau2) {
  if (m1 < 0 || m2 < 0 || n1 < 0 || n2 < 0) throw ParameterError("photon numbers must be non-negative");
  check_tau(tau1, "tau1");
  check_tau(tau2, "tau2");
  return {m1, m2, n1, n2, tau1, tau2};
}

ModeOperation NGOperationSpec::mode_operation(int mode) const {
  if (mode != 1 && mode != 2) throw ParameterError("mode must be 1 or 2");
  const int m = mode == 1 ? m1 : m2;
  const int n = mode == 1 ? n1 : n2;
  if (m < n) return ModeOperation::kSubtraction;
  if (m > n) return ModeOperation::kAddition;
  return ModeOperation::kCatalysis;
}

NGOperationSpec operation_from_table(OperationKind kind, int n, double tau) {
  if (n < 1) throw ParameterError("photon number n must be >= 1");
  check_tau(tau, "tau");
  switch (kind) {
    case OperationKind::kAsymPS: return {0, 0, 0, n, 1.0, tau};
    case OperationKind::kAsymPA: return {0, n, 0, 0, 1.0, tau};
    case OperationKind::kAsymPC: return {0, n, 0, n, 1.0, tau};
    case OperationKind::kSymPS: return {0, 0, n, n, tau, tau};
    case OperationKind::kSymPA: return {n, n, 0, 0, tau, tau};
    case OperationKind::kSymPC: return {n, n, n, n, tau, tau};
  }
  throw ParameterError("unknown operation kind");
}

ModelParams derive_params(double lambda, const NGOperationSpec& spec) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    std::ostringstream os;
    os << "lambda must be in [0,1), got " << lambda;
    throw ParameterError(os.str());
  }
  check_tau(spec.tau1, "tau1");
  check_tau(spec.tau2, "tau2");
  ModelParams p;
  p.lambda = lambda;
  p.r = std::atanh(lambda);
  const double norm = std::sqrt(1.0 - lambda * lambda);
  p.alpha = lambda / norm;
  p.beta = 1.0 / norm;
  p.t1 = std::sqrt(spec.tau1);
  p.t2 = std::sqrt(spec.tau2);
  p.rr1 = std::sqrt(1.0 - spec.tau1);
  p.rr2 = std::sqrt(1.0 - spec.tau2);
  p.a0 = 1.0 + p.alpha * p.alpha * (1.0 - spec.tau1 * spec.tau2);
  return p;
}

WignerForms build_wigner_forms(const ModelParams& p) {
  const double al = p.alpha, be = p.beta, t1 = p.t1, t2 = p.t2, r1 = p.rr1, r2 = p.rr2;
  const double g = al * al * (t1 * t1 * t2 * t2 + 1.0) + 1.0;
  const double h = 2.0 * al * be * t1 * t2;

  WignerForms f;
  f.m1 = ComplexMatrix(4, 4);
  auto& m1 = f.m1;
  m1(0, 0) = g;  m1(0, 2) = -h;
  m1(1, 1) = g;  m1(1, 3) = h;
  m1(2, 0) = -h; m1(2, 2) = g;
  m1(3, 1) = h;  m1(3, 3) = g;
  m1 *= C{-1.0 / p.a0};

  const double b2 = be * be, ab = al * be, a2 = al * al;
  const C rows2[8][4] = {
      {-b2 * r1, -kI * b2 * r1, ab * r1 * t1 * t2, -kI * ab * r1 * t1 * t2},
      {b2 * r1, -kI * b2 * r1, -ab * r1 * t1 * t2, -kI * ab * r1 * t1 * t2},
      {ab * r2 * t1 * t2, -kI * ab * r2 * t1 * t2, -b2 * r2, -kI * b2 * r2},
      {-ab * r2 * t1 * t2, -kI * ab * r2 * t1 * t2, b2 * r2, -kI * b2 * r2},
      {-a2 * r1 * t1 * t2 * t2, -kI * a2 * r1 * t1 * t2 * t2, ab * r1 * t2, -kI * ab * r1 * t2},
      {a2 * r1 * t1 * t2 * t2, -kI * a2 * r1 * t1 * t2 * t2, -ab * r1 * t2, -kI * ab * r1 * t2},
      {ab * r2 * t1, -kI * ab * r2 * t1, -a2 * r2 * t1 * t1 * t2, -kI * a2 * r2 * t1 * t1 * t2},
      {-ab * r2 * t1, -kI * ab * r2 * t1, a2 * r2 * t1 * t1 * t2, -kI * a2 * r2 * t1 * t1 * t2},
  };
  f.m2 = ComplexMatrix(8, 4);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 4; ++j) f.m2(i, j) = rows2[i][j];
  }
  f.m2 *= C{-1.0 / p.a0};

  const double A = ab * r1 * r2;
  const double X1 = a2 * r2 * r2 * t1 + t1;
  const double X2 = a2 * r1 * r1 * t2 + t2;
  const double rows3[8][8] = {
      {0, -b2 * r1 * r1, -A * t1 * t2, 0, 0, X1, -A * t1, 0},
      {-b2 * r1 * r1, 0, 0, -A * t1 * t2, X1, 0, 0, -A * t1},
      {-A * t1 * t2, 0, 0, -b2 * r2 * r2, -A * t2, 0, 0, X2},
      {0, -A * t1 * t2, -b2 * r2 * r2, 0, 0, -A * t2, X2, 0},
      {0, X1, -A * t2, 0, 0, -a2 * r1 * r1 * t2 * t2, -A, 0},
      {X1, 0, 0, -A * t2, -a2 * r1 * r1 * t2 * t2, 0, 0, -A},
      {-A * t1, 0, 0, X2, -A, 0, 0, -a2 * r2 * r2 * t1 * t1},
      {0, -A * t1, X2, 0, 0, -A, -a2 * r2 * r2 * t1 * t1, 0},
  };
  f.m3 = ComplexMatrix(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) f.m3(i, j) = rows3[i][j];
  }
  f.m3 *= C{-1.0 / (4.0 * p.a0)};

  check_symmetric(f.m1, "M1");
  check_symmetric(f.m3, "M3");
  return f;
}

ComplexMatrix build_probability_form(const ModelParams& p) {
  const double al = p.alpha, be = p.beta, t1 = p.t1, t2 = p.t2, r1 = p.rr1, r2 = p.rr2;
  const double b2 = be * be, a2 = al * al;
  const double A = al * be * r1 * r2;
  const double X1 = a2 * r2 * r2 * t1 + t1;
  const double X2 = a2 * r1 * r1 * t2 + t2;
  const double rows[8][8] = {
      {0, b2 * r1 * r1, -A * t1 * t2, 0, 0, X1, A * t1, 0},
      {b2 * r1 * r1, 0, 0, -A * t1 * t2, X1, 0, 0, A * t1},
      {-A * t1 * t2, 0, 0, b2 * r2 * r2, A * t2, 0, 0, X2},
      {0, -A * t1 * t2, b2 * r2 * r2, 0, 0, A * t2, X2, 0},
      {0, X1, A * t2, 0, 0, a2 * r1 * r1 * t2 * t2, -A, 0},
      {X1, 0, 0, A * t2, a2 * r1 * r1 * t2 * t2, 0, 0, -A},
      {A * t1, 0, 0, X2, -A, 0, 0, a2 * r2 * r2 * t1 * t1},
      {0, A * t1, X2, 0, 0, -A, a2 * r2 * r2 * t1 * t1, 0},
  };
  ComplexMatrix m4(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) m4(i, j) = rows[i][j];
  }
  m4 *= C{-1.0 / (4.0 * p.a0)};
  check_symmetric(m4, "M4");
  return m4;
}

MomentForms build_moment_forms(const ModelParams& p) {
  const double al = p.alpha, be = p.beta, t1 = p.t1, t2 = p.t2, r1 = p.rr1, r2 = p.rr2;
  const double b2 = be * be, ab = al * be, a2 = al * al;
  const C rows5[8][4] = {
      {-b2 * r1, -kI * b2 * r1, -ab * r1 * t1 * t2, kI * ab * r1 * t1 * t2},
      {b2 * r1, -kI * b2 * r1, ab * r1 * t1 * t2, kI * ab * r1 * t1 * t2},
      {-ab * r2 * t1 * t2, kI * ab * r2 * t1 * t2, -b2 * r2, -kI * b2 * r2},
      {ab * r2 * t1 * t2, kI * ab * r2 * t1 * t2, b2 * r2, -kI * b2 * r2},
      {a2 * r1 * t1 * t2 * t2, kI * a2 * r1 * t1 * t2 * t2, ab * r1 * t2, -kI * ab * r1 * t2},
      {-a2 * r1 * t1 * t2 * t2, kI * a2 * r1 * t1 * t2 * t2, -ab * r1 * t2, -kI * ab * r1 * t2},
      {ab * r2 * t1, -kI * ab * r2 * t1, a2 * r2 * t1 * t1 * t2, kI * a2 * r2 * t1 * t1 * t2},
      {-ab * r2 * t1, -kI * ab * r2 * t1, -a2 * r2 * t1 * t1 * t2, kI * a2 * r2 * t1 * t1 * t2},
  };
  MomentForms f;
  f.m5 = ComplexMatrix(8, 4);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 4; ++j) f.m5(i, j) = rows5[i][j];
  }
  f.m5 *= C{-1.0 / (2.0 * p.a0)};

  const double g = a2 * (t1 * t1 * t2 * t2 + 1.0) + 1.0;
  const double h = 2.0 * ab * t1 * t2;
  f.m6 = ComplexMatrix(4, 4);
  auto& m6 = f.m6;
  m6(0, 0) = g;  m6(0, 2) = h;
  m6(1, 1) = g;  m6(1, 3) = -h;
  m6(2, 0) = h;  m6(2, 2) = g;
  m6(3, 1) = -h; m6(3, 3) = g;
  m6 *= C{1.0 / (4.0 * p.a0)};
  check_symmetric(f.m6, "M6");
  return f;
}

ParityForm<double> build_parity_form(const ModelParams& p, double phi) { return parity_form_impl<double>(p, phi); }

ParityForm<DualReal> build_parity_form(const ModelParams& p, DualReal phi) {
  return parity_form_impl<DualReal>(p, phi);
}

template <class T>
void check_symmetric(const Matrix<T>& m, const char* name, double tol) {
  if (m.rows() != m.cols()) throw NumericalConsistencyError(std::string(name) + " is not square");
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i + 1; j < m.cols(); ++j) {
      if (magnitude(m(i, j) - m(j, i)) > tol) throw NumericalConsistencyError(std::string(name) + " is not symmetric");
    }
  }
}

template void check_symmetric(const Matrix<double>&, const char*, double);
template void check_symmetric(const Matrix<C>&, const char*, double);
template void check_symmetric(const Matrix<DualReal>&, const char*, double);

}  // namespace ngtmsv
