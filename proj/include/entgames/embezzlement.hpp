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

#ifndef ENTGAMES_EMBEZZLEMENT_HPP_
#define ENTGAMES_EMBEZZLEMENT_HPP_

#include <optional>
#include <vector>

#include "entgames/linalg.hpp"
#include "entgames/rng.hpp"

namespace entgames {

// Normalized coefficients proportional to i^{-1/2}, i = 1..d.
RVector gamma_coefficients(Index d);
// sum_i gamma_i |i, i> on C^d (x) C^d.
CVector gamma(Index d);

struct EmbezzleResult {
  CMatrix u;  // Alice, on C^{d d'}
  CMatrix v;  // Bob, on C^{d d'}
  double fidelity = 0.0;  // |<psi (x) Gamma_d'| (U (x) V) Gamma_{d d'}>|
};

// Unitaries that pair the j-th largest coefficient of Gamma_{d d'} with the
// j-th largest Schmidt coefficient of psi (x) Gamma_d' (stable by index on
// ties). Registers of psi (x) Gamma_d' are ordered i * d' + i'.
EmbezzleResult embezzle(const CVector& psi, Index d, Index dprime);

// Coefficient matrix U diag(gamma) V^T of (U (x) V) Gamma, and of psi (x) Gamma_d'.
CMatrix embezzled_coefficients(const CMatrix& u, const CMatrix& v);
CMatrix target_coefficients(const CVector& psi, Index d, Index dprime);

struct TauSequence {
  Index d = 0;
  double delta = 0.0;
  double eta = 0.0;
  int k = 0;                 // K
  std::vector<double> taus;  // tau_0 = 1, ..., tau_{K+1} = 0

  double sum_squares() const;  // sum_{k=0}^{K} tau_k^2
};

int tau_count(Index d, double delta, double eta);
TauSequence tau_sequence(Index d, double delta, double eta, Rng& rng);

// sum_k tau_k |k,k> |Phi_d>, normalized; registers ordered k * d + i.
CVector xi0(const TauSequence& tau);

// Band k with tau_{k+1} <= lambda < tau_k (band 0 also contains lambda = 1), or
// -1 for lambda <= 0.
int band_of(double lambda, const TauSequence& tau);

struct BandSets {
  std::vector<std::vector<int>> sets;  // S_0..S_K
  std::vector<CMatrix> projectors;     // P_0..P_K on C^d
};
// basis columns are the Schmidt vectors matching coeffs.
BandSets band_sets(const RVector& coeffs, const CMatrix& basis, const TauSequence& tau);

struct RoundedState {
  CVector state;          // C sum_k tau_k sum_{i in S_k} |u_i>|u'_i>
  double c = 0.0;
  double distance_sq = 0.0;  // ||psi - Psi||^2
};
RoundedState rounded_states(const CVector& psi, Index d, const TauSequence& tau);

struct SamplingOptions {
  double max_copies = 1e4;
  // <= 0 selects eta = delta^{1/4}.
  double eta = 0.0;
};

struct SamplingTranscript {
  TauSequence tau;
  double copies_required = 0.0;  // N from the protocol, possibly huge
  long long budget = 0;          // min(N, max_copies)
  long long copies_used = 0;
  bool exhausted = false;
  bool synchronous = false;      // both succeeded on the same copy
  bool success = false;          // synchronous and within budget
  bool delta_warning = false;    // delta < ||psi - phi||^2
  double p_alice = 0.0;          // per-copy success probabilities
  double p_bob = 0.0;
  double p_sync = 0.0;
  BandSets alice;                // S_k, P_k
  BandSets bob;                  // T_k, Q_k
  double c = 0.0, c_prime = 0.0, c_second = 0.0;  // C, C', C''
  std::optional<CVector> joint_state;  // xi when success
};

// Simulates the protocol for Alice holding psi and Bob holding phi on
// C^d (x) C^d. Bob measures conj(Q_k) on his half of Phi_d, so the joint
// outcome probability is sum_k tau_k^2 Tr(P_k Q_k) / (d sum tau^2).
SamplingTranscript correlated_sample(const CVector& psi, const CVector& phi, Index d, double delta,
                                     Rng& rng, const SamplingOptions& options = {});
// Same with a pre-drawn tau sequence.
SamplingTranscript correlated_sample(const CVector& psi, const CVector& phi, const TauSequence& tau,
                                     Rng& rng, const SamplingOptions& options = {});

// sum_k tau_k^2 Tr(P_k Q_k).
double pq_overlap(const SamplingTranscript& t);

// Per-copy outcome probabilities computed on the explicit xi_0 vector.
struct CopyProbabilities {
  double alice = 0.0, bob = 0.0, both = 0.0;
};
CopyProbabilities copy_probabilities_direct(const SamplingTranscript& t);
double sync_probability_closed_form(const SamplingTranscript& t);

// The +/- epsilon pair sqrt((1 +- eps)/2)|00> + sqrt((1 -+ eps)/2)|11>.
CVector epsilon_state(double eps, bool flip);

// ||(U_psi (x) V_phi) Gamma_{2 d'} - psi (x) Gamma_d'|| with each side using its
// own sorted matching.
double naive_embezzle_failure(double eps, Index dprime = 64);

struct ClassicalSample {
  int u = -1;
  int v = -1;
  bool agreed = false;
};
// Shared stream of (x_i, t_i); each side keeps the first i with
// t_i < p(x_i) / max p.
ClassicalSample classical_correlated_sample(const std::vector<double>& p,
                                            const std::vector<double>& q, Rng& rng);

}  // namespace entgames

#endif  // ENTGAMES_EMBEZZLEMENT_HPP_
