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

#ifndef ENTGAMES_LINALG_HPP_
#define ENTGAMES_LINALG_HPP_

#include <complex>

#include <Eigen/Dense>

#include "entgames/errors.hpp"

namespace entgames {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct Tolerances {
  // Eigenvalues in [-clamp, 0) are treated as 0 before taking roots.
  double clamp = 1e-10;
  // Eigenvalues below -invalid_psd reject the input as not PSD.
  double invalid_psd = 1e-6;
  // Relative cutoff (to the largest eigenvalue) for pseudo-inverses.
  double rank_rel = 1e-9;
  // Relative cutoff for the support of a polar factor.
  double polar_rel = 1e-12;
};

// Process-wide defaults. Adjust before starting computations.
Tolerances& tolerances();

// Hermitian matrix, symmetrized on construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m);

  const CMatrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

// Unit vector, normalized on construction.
class UnitVector {
 public:
  UnitVector() = default;
  explicit UnitVector(const CVector& v);

  const CVector& vector() const { return v_; }
  Index dim() const { return v_.size(); }

 private:
  CVector v_;
};

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // orthonormal columns
};

struct SvdResult {
  CMatrix u;
  RVector s;  // descending
  CMatrix v;
};

struct SchmidtDecomposition {
  RVector coeffs;  // descending, nonnegative
  CMatrix left;    // columns u_i
  CMatrix right;   // columns u'_i
};

enum class Keep { kFirst, kSecond };

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

CMatrix partial_trace(const CMatrix& m, Keep keep, Index d1, Index d2);

CMatrix hermitian_part(const CMatrix& m);

EigenDecomposition eig_hermitian(const CMatrix& m);
RVector eigvals_hermitian(const CMatrix& m);

SvdResult svd(const CMatrix& m);

double operator_norm(const CMatrix& m);
// Largest |eigenvalue|; cheaper than operator_norm for Hermitian input.
double hermitian_norm(const CMatrix& m);
double max_eigenvalue(const CMatrix& m);

// m^p on the support of a PSD matrix (p may be negative: pseudo-inverse power).
CMatrix psd_power(const CMatrix& m, double p, double rank_rel);
CMatrix psd_sqrt(const CMatrix& m);
CMatrix psd_pinv_sqrt(const CMatrix& m, double rank_rel);
CMatrix psd_pinv_sqrt(const CMatrix& m);
CMatrix range_projector(const CMatrix& m, double rank_rel);
// Projector onto the span of eigenvectors with eigenvalue >= 0.
CMatrix nonnegative_projector(const CMatrix& m);

bool is_psd(const CMatrix& m, double tol);

// v[i * d2 + j] <-> M(i, j).
CMatrix coefficient_matrix(const CVector& v, Index d1, Index d2);
CVector vectorize(const CMatrix& m);

SchmidtDecomposition schmidt(const CVector& v, Index d1, Index d2);

CMatrix polar_unitary(const CMatrix& m);

// <psi| X (x) Y |psi> via the coefficient matrix K of psi: Tr(X K Y^T K^dag).
Complex bipartite_expectation(const CVector& psi, const CMatrix& x,
                              const CMatrix& y);

// Integer square root of a dimension d^2, or -1.
Index exact_sqrt(Index n);

}  // namespace entgames

#endif  // ENTGAMES_LINALG_HPP_
