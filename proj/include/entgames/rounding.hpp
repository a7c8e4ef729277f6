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

#ifndef ENTGAMES_ROUNDING_HPP_
#define ENTGAMES_ROUNDING_HPP_

#include <cstdint>
#include <vector>

#include "entgames/game.hpp"
#include "entgames/linalg.hpp"
#include "entgames/norms.hpp"
#include "entgames/quantum.hpp"
#include "entgames/rng.hpp"

namespace entgames {

// Symmetric bipartite state sum_i lambda_i |u_i>|conj u_i> described by a PSD
// matrix K with Tr(K^2) = 1. For Hermitian X, Y:
//   <Psi| X (x) Y |Psi> = Tr(conj(X) K Y K),
// so K plays the role of rho^{1/2} with rho = K^2.
class SymmetricState {
 public:
  SymmetricState() = default;
  // Throws Error(kInvalidPsd) unless k is PSD and Tr(k^2) = 1 within 1e-10.
  static SymmetricState from_k(const CMatrix& k);
  // Rescales k to Tr(k^2) = 1 after the PSD check.
  static SymmetricState normalized(const CMatrix& k);
  static SymmetricState maximally_entangled(Index d);

  Index dim() const { return k_.rows(); }
  const CMatrix& k() const { return k_; }
  CMatrix rho() const { return k_ * k_; }
  // Coefficient matrix conj(K), vectorized as index i * d + j.
  CVector vector() const;
  // Tr(conj(X) K Y K).
  Complex expectation(const CMatrix& x, const CMatrix& y) const;

 private:
  CMatrix k_;
};

// Full rank unless rank is in [1, d).
SymmetricState random_symmetric_state(Index d, Rng& rng, Index rank = 0);

// U with U Av^{1/2} rho^{1/4} = (rho^{1/4} Av rho^{1/4})^{1/2}. Kernel directions
// are completed by the identity on the common kernel.
CMatrix rounding_unitary(const CMatrix& av, const CMatrix& rho);

// (conj(Uv) conj(Av)^{1/2} (x) Uv' Av'^{1/2}) |Psi>, unnormalized.
CVector post_measurement_state(const CMatrix& av, const CMatrix& av2, const SymmetricState& state,
                               const CMatrix& uv, const CMatrix& uv2);

// U Ahat^{-1/2} Ahat^b Ahat^{-1/2} U^dag with Ahat = sum_b Ahat^b; sub-normalized.
Povm renormalized_measurement(const FractionalStrategy& fs, int v, const CMatrix& uv);

struct RoundedStrategy {
  std::vector<CMatrix> unitaries;  // U_v
  QuantumStrategy measurements;    // sub-normalized POVMs
  CMatrix sigma;                   // density matrix on C^d (x) C^d
};

// Both sides of the expanding-case hypothesis for one fractional strategy:
// consistent = E_{v~v'} sum_{b<->b'} <Psi|conj(A_v^b) (x) A_v'^b'|Psi>,
// diagonal = E_v <Psi|conj(A_v) (x) A_v|Psi>.
struct ExpansionTerms {
  double consistent = 0.0;
  double diagonal = 0.0;
  double ratio() const { return diagonal > 0.0 ? consistent / diagonal : 0.0; }
};
ExpansionTerms expansion_terms(const Game& g, const ProjectionMap& pm, const FractionalStrategy& fs,
                               const SymmetricState& state);

struct ExpandRoundOptions {
  // Index into the vector strategy; -1 picks the part with the largest ratio.
  int omega = -1;
  double tol = 1e-8;
};

struct ExpandRoundResult {
  RoundedStrategy strategy;
  int omega = 0;
  double eps = 0.0;            // failure probability of (A~, sigma) in the square game
  double eta = 0.0;            // 1 - ratio for the chosen omega
  double eta_average = 0.0;    // 1 - E_w consistent / E_w diagonal over all parts
  double lambda = 0.0;         // spectral gap of the square-game graph
  double square_value = 0.0;   // 1 - eps
  double square_sup = 0.0;     // sqnorm^2 of the rounded strategy (sup over states)
  double psi_weight = 0.0;     // E_w ||Psi_ww||^2
  // Expansion bound: E_{v,v'} n(v,v') >= (1 - 2 eta / lambda) E_v n(v,v).
  double independent_overlap = 0.0;
  double diagonal_overlap = 0.0;
  bool laplacian_bound_ok = true;
};

// Throws NotProjectionError, or Error(kDegenerateState) when every Psi_ww is zero.
ExpandRoundResult expand_round(const Game& g, const ProjectionMap& pm, const VectorStrategy& a,
                               const SymmetricState& state, const ExpandRoundOptions& options = {});

// Largest |<Psi_vv'| conj(A~_v^b) (x) A~_v'^b' |Psi_vv'> - <Psi| conj(A_v^b) (x) A_v'^b' |Psi>|
// over all (v, v', b, b'). With project_supports, the right side uses P_v A_v^b P_v
// where P_v is the support projector of A_v.
double reproduction_gap(const FractionalStrategy& fs, const SymmetricState& state,
                        bool project_supports = false);

struct PsiCloseBlock {
  std::vector<int> vertices;
  double eta = 0.0;            // measured from the closeness hypothesis
  double mean_norm_sq = 0.0;   // E_v ||Phi_vv||^2
  std::vector<double> lhs1;    // per v'': E_{v~v'} ||Phi_vv'' - Phi_v'v''||^2
  std::vector<double> rhs1;    // (2 eta E_v ||Phi_vv||^2)^{1/2} ||Phi_v''v''||
  double lhs2 = 0.0;           // E_{v~v'} ||Phi_vv - Phi_v'v||^2
  double rhs2 = 0.0;           // (2 eta) ^{1/2} E_v ||Phi_vv||^2
};

struct PsiCloseReport {
  std::vector<PsiCloseBlock> blocks;  // connected components of supp(nu)
  double xu_diag_error = 0.0;         // max |Tr(X_v^4) - <Phi|conj(A_v) (x) A_v|Phi>|
  double xu_cross_error = 0.0;        // max |Tr(X_v^2 X_v'^2) - <Phi|conj(A_v) (x) A_v'|Phi>|
  double x_psd_error = 0.0;           // max distance of X_v from its PSD part
  bool ok = true;                     // every lhs <= rhs + tol
};

// nu: symmetric nonnegative nV x nV matrix summing to 1.
PsiCloseReport psi_close_diagnostic(const std::vector<CMatrix>& a, const SymmetricState& state,
                                    const RMatrix& nu, double tol = 1e-8);

// Planted projection game with an exact deterministic strategy, perturbed so
// that the measured eta of the resulting fractional strategy hits a target.
struct PlantedRoundingOptions {
  int nU = 4, nV = 4, nA = 2, nB = 2;
  Index dim = 2;
  double density = 1.0;
};

struct PlantedRounding {
  Game game;
  ProjectionMap pm;
  std::vector<int> bob;     // planted labels
  CMatrix common;           // R, shared by every question
  OperatorTable noise;      // N_v^b, sub-normalized
  SymmetricState state;
  double rate = 0.0;        // mixing rate t found by calibration
  double eta = 0.0;         // measured at that rate
  FractionalStrategy strategy;
};

// A_v^b = (1 - t) [b = bob(v)] R + t N_v^b.
FractionalStrategy planted_strategy(const PlantedRounding& p, double t);

// Tunes t by bisection so that eta matches target_eta within 1e-3 relative.
// Throws Error(kInvalidArgument) if the target exceeds eta at t = 1.
PlantedRounding planted_rounding_instance(double target_eta, std::uint64_t seed,
                                          const PlantedRoundingOptions& options = {});

}  // namespace entgames

#endif  // ENTGAMES_ROUNDING_HPP_
