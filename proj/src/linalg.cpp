// Copyright 2026 The entgames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entgames/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace entgames {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonNormalizedMu: return "NonNormalizedMu";
    case ErrorCode::kNegativeProbability: return "NegativeProbability";
    case ErrorCode::kNotProjection: return "NotProjection";
    case ErrorCode::kSearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::kSizeOverflow: return "SizeOverflow";
    case ErrorCode::kInvalidPsd: return "InvalidPsd";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kDegenerateState: return "DegenerateState";
    case ErrorCode::kZeroInput: return "ZeroInput";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

NotProjectionError::NotProjectionError(int u, int v, int b)
    : Error(ErrorCode::kNotProjection,
            "answer b=" + std::to_string(b) + " at edge (u=" + std::to_string(u) +
                ", v=" + std::to_string(v) + ") is accepted with two different a"),
      u_(u), v_(v), b_(b) {}

Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

HermitianMatrix::HermitianMatrix(const CMatrix& m) : m_(hermitian_part(m)) {}

UnitVector::UnitVector(const CVector& v) {
  double n = v.norm();
  if (n == 0.0) throw Error(ErrorCode::kZeroInput, "cannot normalize the zero vector");
  v_ = v / n;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix partial_trace(const CMatrix& m, Keep keep, Index d1, Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw Error(ErrorCode::kDimensionMismatch, "partial_trace: matrix is not (d1*d2)-square");
  }
  if (keep == Keep::kFirst) {
    CMatrix out = CMatrix::Zero(d1, d1);
    for (Index i = 0; i < d1; ++i) {
      for (Index j = 0; j < d1; ++j) {
        Complex s = 0.0;
        for (Index k = 0; k < d2; ++k) s += m(i * d2 + k, j * d2 + k);
        out(i, j) = s;
      }
    }
    return out;
  }
  CMatrix out = CMatrix::Zero(d2, d2);
  for (Index k = 0; k < d1; ++k) out += m.block(k * d2, k * d2, d2, d2);
  return out;
}

CMatrix hermitian_part(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");
  return 0.5 * (m + m.adjoint());
}

EigenDecomposition eig_hermitian(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalFailure, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector eigvals_hermitian(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalFailure, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

SvdResult svd(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalFailure, "SVD did not converge");
  }
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> solver(m);
  return solver.singularValues()(0);
}

double hermitian_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  RVector w = eigvals_hermitian(m);
  return std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
}

double max_eigenvalue(const CMatrix& m) {
  RVector w = eigvals_hermitian(m);
  return w(w.size() - 1);
}

namespace {

// Clamped spectrum of a PSD matrix; throws on significantly negative eigenvalues.
EigenDecomposition psd_eig(const CMatrix& m) {
  EigenDecomposition e = eig_hermitian(m);
  const Tolerances& tol = tolerances();
  double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  for (Index i = 0; i < e.values.size(); ++i) {
    double w = e.values(i);
    if (w < -tol.invalid_psd * scale) {
      throw Error(ErrorCode::kInvalidPsd,
                  "eigenvalue " + std::to_string(w) + " is significantly negative");
    }
    if (w < 0.0) e.values(i) = 0.0;
  }
  return e;
}

}  // namespace

CMatrix psd_power(const CMatrix& m, double p, double rank_rel) {
  EigenDecomposition e = psd_eig(m);
  double top = e.values.size() > 0 ? e.values.maxCoeff() : 0.0;
  double cutoff = p < 0.0 ? rank_rel * top : tolerances().clamp * std::max(top, 1.0);
  RVector f(e.values.size());
  for (Index i = 0; i < e.values.size(); ++i) {
    double w = e.values(i);
    f(i) = (top > 0.0 && w > cutoff) ? std::pow(w, p) : 0.0;
  }
  return e.vectors * f.asDiagonal() * e.vectors.adjoint();
}

CMatrix psd_sqrt(const CMatrix& m) {
  EigenDecomposition e = psd_eig(m);
  RVector f = e.values.cwiseSqrt();
  return e.vectors * f.asDiagonal() * e.vectors.adjoint();
}

CMatrix psd_pinv_sqrt(const CMatrix& m, double rank_rel) { return psd_power(m, -0.5, rank_rel); }

CMatrix psd_pinv_sqrt(const CMatrix& m) { return psd_pinv_sqrt(m, tolerances().rank_rel); }

CMatrix range_projector(const CMatrix& m, double rank_rel) {
  EigenDecomposition e = psd_eig(m);
  double top = e.values.size() > 0 ? e.values.maxCoeff() : 0.0;
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  if (top <= 0.0) return out;
  for (Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) > rank_rel * top) out += e.vectors.col(i) * e.vectors.col(i).adjoint();
  }
  return out;
}

CMatrix nonnegative_projector(const CMatrix& m) {
  EigenDecomposition e = eig_hermitian(m);
  CMatrix out = CMatrix::Zero(m.rows(), m.cols());
  for (Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) >= 0.0) out += e.vectors.col(i) * e.vectors.col(i).adjoint();
  }
  return out;
}

bool is_psd(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  return eigvals_hermitian(m)(0) >= -tol;
}

CMatrix coefficient_matrix(const CVector& v, Index d1, Index d2) {
  if (v.size() != d1 * d2) {
    throw Error(ErrorCode::kDimensionMismatch, "vector length is not d1*d2");
  }
  CMatrix k(d1, d2);
  for (Index i = 0; i < d1; ++i) {
    for (Index j = 0; j < d2; ++j) k(i, j) = v(i * d2 + j);
  }
  return k;
}

CVector vectorize(const CMatrix& m) {
  CVector v(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

SchmidtDecomposition schmidt(const CVector& v, Index d1, Index d2) {
  CMatrix k = coefficient_matrix(v, d1, d2);
  Eigen::JacobiSVD<CMatrix> solver(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Index r = std::min(d1, d2);
  SchmidtDecomposition out;
  out.coeffs = solver.singularValues().head(r);
  out.left = solver.matrixU().leftCols(r);
  out.right = solver.matrixV().leftCols(r).conjugate();
  return out;
}

namespace {

// Orthonormal basis of the orthogonal complement of the first r columns of a unitary.
CMatrix complement(const CMatrix& unitary, Index r) {
  return unitary.rightCols(unitary.cols() - r);
}

}  // namespace

CMatrix polar_unitary(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kDimensionMismatch, "polar_unitary: not square");
  const Index n = m.rows();
  SvdResult s = svd(m);  // m = W S Z^dag
  double top = n > 0 ? s.s(0) : 0.0;
  Index r = 0;
  while (r < n && s.s(r) > tolerances().polar_rel * top && top > 0.0) ++r;
  const CMatrix& w = s.u;
  const CMatrix& z = s.v;
  CMatrix u = z.leftCols(r) * w.leftCols(r).adjoint();
  if (r < n) {
    // Map range(W_r)^perp onto range(Z_r)^perp by the unitary closest to the identity.
    CMatrix wp = complement(w, r);
    CMatrix zp = complement(z, r);
    CMatrix overlap = zp.adjoint() * wp;
    SvdResult o = svd(overlap);
    CMatrix q = o.u * o.v.adjoint();
    u += zp * q * wp.adjoint();
  }
  return u;
}

Complex bipartite_expectation(const CVector& psi, const CMatrix& x, const CMatrix& y) {
  if (psi.size() != x.rows() * y.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "state size does not match operator dimensions");
  }
  CMatrix k = coefficient_matrix(psi, x.rows(), y.rows());
  return (x * k * y.transpose() * k.adjoint()).trace();
}

Index exact_sqrt(Index n) {
  if (n < 0) return -1;
  auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  for (Index c = std::max<Index>(0, r - 1); c <= r + 1; ++c) {
    if (c * c == n) return c;
  }
  return -1;
}

}  // namespace entgames
