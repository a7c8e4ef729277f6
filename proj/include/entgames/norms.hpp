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

#ifndef ENTGAMES_NORMS_HPP_
#define ENTGAMES_NORMS_HPP_

#include <string>
#include <vector>

#include "entgames/game.hpp"
#include "entgames/quantum.hpp"

namespace entgames {

// Operators A_v^b >= 0 with sum_b A_v^b <= Id.
struct FractionalStrategy {
  Index dim = 0;
  OperatorTable ops;  // [v][b]

  CMatrix row_total(int v) const;
};

void validate_fractional(const FractionalStrategy& fs, double tol = 1e-9);
FractionalStrategy fractional_from(const QuantumStrategy& s, int answers);

// Weighted family of fractional strategies indexed by omega.
struct VectorStrategy {
  std::vector<double> weights;
  std::vector<FractionalStrategy> parts;

  Index dim() const { return parts.empty() ? 0 : parts.front().dim; }
};

VectorStrategy single_vector_strategy(const FractionalStrategy& fs);
VectorStrategy scaled(const VectorStrategy& a, double t);

// sum_q mu(q) sum_x conj(A_q^x) (x) B_q^x.
CMatrix ext_inner(const OperatorTable& a, const OperatorTable& b, const std::vector<double>& mu);

// (G B)_u^a = sum_v mu(v|u) sum_{b -> a} B_v^b, as a [u][a] table.
OperatorTable apply_game(const Game& g, const ProjectionMap& pm, const OperatorTable& bob);
OperatorTable povm_table(const QuantumStrategy& s, int answers);

double sqnorm(const Game& g, const ProjectionMap& pm, const QuantumStrategy& bob);
double sqnorm_squared(const Game& g, const ProjectionMap& pm, const QuantumStrategy& bob);

double plusnorm(const VectorStrategy& a);

// || E_omega sum_u mu(u) sum_a conj(C_{omega u a}) (x) C_{omega u a} || where
// C_{omega u a} = sum_v mu(v|u) sum_{b -> a} A_{omega v}^b.
double vector_strategy_value(const Game& g, const ProjectionMap& pm, const VectorStrategy& a);

// Omega = U_H x A_H (index uH * nA_H + aH) weighted by mu_L^H(uH).
VectorStrategy vector_from_product(const Game& g, const Game& h, const ProjectionMap& pm_h,
                                   const QuantumStrategy& bob);

// Strategy for H induced by fixing the G-question vG and summing over bG.
QuantumStrategy induced_row_strategy(const Game& g, const Game& h, const QuantumStrategy& bob,
                                     int vG);

// Witness for G (x) H from witnesses for G and H: parts indexed (omegaG, omegaH).
VectorStrategy tensor_vector_strategies(const Game& g, const VectorStrategy& a, const Game& h,
                                        const VectorStrategy& b);

struct ChainInstance {
  std::string label;
  QuantumStrategy alice;
  QuantumStrategy bob;
  CVector state;
};

struct ChainCheck {
  std::string label;
  double value = 0.0;
  double sqnorm_sq = 0.0;
  double response_value = 0.0;
  bool lower_ok = true;  // value^2 <= sqnorm^2
  bool upper_ok = true;  // sqnorm^2 <= value(G, response(B), B, best state)
};

struct ChainReport {
  std::vector<ChainCheck> checks;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

ChainReport verify_chain(const Game& g, const ProjectionMap& pm,
                         const std::vector<ChainInstance>& corpus, double tol = 1e-8);

struct ProductCheck {
  double lhs = 0.0;             // sqnorm(G (x) H, B)^2
  double witness_value = 0.0;   // vector_strategy_value(G, A)
  double normalized_value = 0.0;  // vector_strategy_value(G, A / plusnorm(A))
  double plusnorm = 0.0;
  double best_h_sqnorm = 0.0;   // max over the H corpus and induced rows
  double row_sqnorm = 0.0;      // max_vG sqnorm(H, induced row vG)
  double rhs = 0.0;             // normalized_value * best_h_sqnorm^2
  bool product_ok = true;
  bool plusnorm_ok = true;
};

// Instance of ||G (x) H||^2 <= val+(G) ||H||^2 on the witness built from B.
ProductCheck verify_product(const Game& g, const Game& h, const QuantumStrategy& bob,
                            const std::vector<QuantumStrategy>& h_corpus, double tol = 1e-7);

}  // namespace entgames

#endif  // ENTGAMES_NORMS_HPP_
