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

#ifndef ENTGAMES_QUANTUM_HPP_
#define ENTGAMES_QUANTUM_HPP_

#include <cstdint>
#include <vector>

#include "entgames/game.hpp"
#include "entgames/linalg.hpp"
#include "entgames/rng.hpp"

namespace entgames {

// Outcome operators indexed by answer. A sub-normalized POVM (sum <= Id) has an
// implicit dummy outcome Id - sum that no predicate accepts.
struct Povm {
  std::vector<CMatrix> outcomes;
  bool subnormalized = false;

  Index dim() const { return outcomes.empty() ? 0 : outcomes.front().rows(); }
  int size() const { return static_cast<int>(outcomes.size()); }
  CMatrix total() const;
  CMatrix deficit() const;
  Povm with_dummy() const;
};

// Throws Error(kInvalidPsd) unless every outcome is PSD and the sum is Id
// (or <= Id when sub-normalized), within tol.
void validate_povm(const Povm& p, double tol = 1e-8);

struct QuantumStrategy {
  Index dim = 0;
  std::vector<Povm> povms;  // one per question
};

// Checks shape against (questions, answers) and every POVM. Outcome lists may
// carry one extra (dummy) entry.
void validate_strategy(const QuantumStrategy& s, int questions, int answers, double tol = 1e-8);

// Per-(question, answer) operator table.
using OperatorTable = std::vector<std::vector<CMatrix>>;

// sum_{u,v} mu(u,v) sum_{V(a,b,u,v)=1} <psi| conj(A_u^a) (x) B_v^b |psi>.
double value(const Game& g, const QuantumStrategy& alice, const QuantumStrategy& bob,
             const CVector& psi);
// Unclamped version of value(), for diagnostics.
double raw_value(const Game& g, const QuantumStrategy& alice, const QuantumStrategy& bob,
                 const CVector& psi);

// M = sum mu(u,v) sum_V conj(A_u^a) (x) B_v^b on C^d (x) C^d.
CMatrix game_matrix(const Game& g, const QuantumStrategy& alice, const QuantumStrategy& bob);

struct StateResult {
  CVector state;
  double value = 0.0;
};
StateResult best_state(const Game& g, const QuantumStrategy& alice, const QuantumStrategy& bob);

// rho_u^a = sum_v mu(v|u) sum_{b: V(a,b,u,v)} Tr_2[(Id (x) sqrt B)|psi><psi|(Id (x) sqrt B)].
OperatorTable alice_effective_ops(const Game& g, const QuantumStrategy& bob, const CVector& psi);
// sigma_v^b, so that the value equals sum_v mu_R(v) sum_b Tr(B_v^b sigma_v^b).
OperatorTable bob_effective_ops(const Game& g, const QuantumStrategy& alice, const CVector& psi);

double discrimination_objective(const Povm& p, const std::vector<CMatrix>& ops);

Povm pgm(const std::vector<CMatrix>& ops);
Povm helstrom(const CMatrix& k0, const CMatrix& k1);

struct DiscriminationResult {
  Povm povm;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // objective after each iteration
};

// Maximizes sum_a Tr(E_a ops_a). Starts from the better of the PGM and
// `start`, then alternates a rescaled fixed-point step (kept only when it
// improves) with exact pairwise Helstrom re-splits of E_a + E_b.
DiscriminationResult discrimination_fixed_point(const std::vector<CMatrix>& ops, int iters = 500,
                                                double tol = 1e-12, const Povm* start = nullptr);

QuantumStrategy bob_to_alice_response(const Game& g, const ProjectionMap& pm,
                                      const QuantumStrategy& bob);

struct SeesawOptions {
  int restarts = 10;
  int iters = 200;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct SeesawResult {
  double value = 0.0;
  QuantumStrategy alice;
  QuantumStrategy bob;
  CVector state;
  int best_restart = 0;
  std::vector<double> restart_values;
  std::vector<double> history;  // objective per sweep of the best restart
  // Largest decrease observed between consecutive sweeps over all restarts.
  double worst_decrease = 0.0;
};

SeesawResult seesaw(const Game& g, Index d, const SeesawOptions& options = {});

CMatrix random_unitary(Index d, Rng& rng);
CVector random_state(Index dim, Rng& rng);
CMatrix random_psd(Index d, Rng& rng);
Povm random_povm(Index d, int outcomes, Rng& rng);
// Random unitary conjugate of the projective POVM that assigns basis vector i
// to outcome i mod n.
Povm random_projective_povm(Index d, int outcomes, Rng& rng);
QuantumStrategy random_strategy(Index d, int questions, int answers, Rng& rng);

// d = 1 strategy answering answers[q] to question q.
QuantumStrategy classical_strategy(const std::vector<int>& answers, int n_answers);

// Question q = q1 * n2 + q2, outcome x = x1 * m2 + x2, operators A1 (x) A2.
QuantumStrategy tensor_strategy(const QuantumStrategy& s1, const QuantumStrategy& s2);
// psi1 on A1B1 and psi2 on A2B2 reordered onto (A1A2)(B1B2).
CVector tensor_state(const CVector& psi1, Index d1, const CVector& psi2, Index d2);

CVector maximally_entangled(Index d);

struct ChshOptimal {
  QuantumStrategy alice;
  QuantumStrategy bob;
  CVector state;
};
ChshOptimal chsh_optimal();

}  // namespace entgames

#endif  // ENTGAMES_QUANTUM_HPP_
