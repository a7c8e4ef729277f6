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

#ifndef ENTGAMES_GAME_HPP_
#define ENTGAMES_GAME_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "entgames/linalg.hpp"

namespace entgames {

// Two-player one-round game. mu is row-major over (u, v); the predicate is
// indexed [a][b][u][v].
struct Game {
  int nU = 0, nV = 0, nA = 0, nB = 0;
  std::vector<double> mu;
  std::vector<std::uint8_t> predicate;

  static Game zeros(int nU, int nV, int nA, int nB);

  double prob(int u, int v) const { return mu[static_cast<std::size_t>(u) * nV + v]; }
  double& prob(int u, int v) { return mu[static_cast<std::size_t>(u) * nV + v]; }

  std::size_t predicate_index(int a, int b, int u, int v) const {
    return ((static_cast<std::size_t>(a) * nB + b) * nU + u) * nV + v;
  }
  bool accepts(int a, int b, int u, int v) const { return predicate[predicate_index(a, b, u, v)] != 0; }
  void set_accepts(int a, int b, int u, int v, bool value) {
    predicate[predicate_index(a, b, u, v)] = value ? 1 : 0;
  }

  bool operator==(const Game&) const = default;
};

// Throws Error(kShapeMismatch | kNegativeProbability | kNonNormalizedMu).
void validate(const Game& g);

struct ProjectionMap {
  static constexpr int kBottom = -1;

  int nU = 0, nV = 0, nB = 0;
  std::vector<int> pi;  // [u][v][b]

  int operator()(int u, int v, int b) const {
    return pi[(static_cast<std::size_t>(u) * nV + v) * nB + b];
  }
  int& at(int u, int v, int b) { return pi[(static_cast<std::size_t>(u) * nV + v) * nB + b]; }

  bool operator==(const ProjectionMap&) const = default;
};

// Throws NotProjectionError on the first (u, v, b) with two accepted answers.
ProjectionMap projection_map(const Game& g);
bool is_projection(const Game& g);
// Game whose predicate is V(a,b,u,v) = [pi(u,v,b) = a].
Game game_from_projection(int nA, const std::vector<double>& mu, const ProjectionMap& pm);

struct Marginals {
  std::vector<double> left;   // mu_L over U
  std::vector<double> right;  // mu_R over V
};

Marginals marginals(const Game& g);
// mu(.|u); the zero vector when mu_L(u) = 0.
std::vector<double> conditional(const Game& g, int u);
// mu(.|v) over U; the zero vector when mu_R(v) = 0.
std::vector<double> conditional_right(const Game& g, int v);

// (nU*nA) x (nV*nB) matrix with entry mu(v|u) at ((u,a),(v,b)) when b -> a.
RMatrix game_operator(const Game& g, const ProjectionMap& pm);
// (nV*nB) x (nU*nA) matrix with entry mu(u|v) at ((v,b),(u,a)) when b -> a.
RMatrix game_adjoint(const Game& g, const ProjectionMap& pm);
// <f, g>_w = sum_q w(q) sum_x f(q,x) g(q,x) over blocks of n_answers entries.
double weighted_inner(const RVector& f, const RVector& h, const std::vector<double>& weights,
                      int n_answers);

// Square of a projection game: questions (v, v') with mu2, answers (b, b').
struct SquareSpec {
  int nV = 0, nB = 0;
  RMatrix mu2;
  std::vector<std::uint8_t> predicate2;  // [b][b'][v][v']

  bool accepts(int b, int b2, int v, int v2) const {
    return predicate2[((static_cast<std::size_t>(b) * nB + b2) * nV + v) * nV + v2] != 0;
  }
};

SquareSpec square_spec(const Game& g, const ProjectionMap& pm);
Game square_game(const Game& g, const ProjectionMap& pm);

inline constexpr std::size_t kDefaultTensorCap = 100'000'000;

// Question u = uG * nU_H + uH, answer a = aG * nA_H + aH (same for v, b).
// Throws Error(kSizeOverflow) when the predicate would exceed cap entries.
Game tensor(const Game& g, const Game& h, std::size_t cap = kDefaultTensorCap);
Game tensor_power(const Game& g, int k, std::size_t cap = kDefaultTensorCap);

// First-player questions U' = U + V (u first, then nU + v); second-player
// questions U x V (index u * nV + v); answers A' = A + B and B' = A x B
// (index a * nB + b).
Game to_projection(const Game& g);

// Second-smallest eigenvalue of Id - D^{-1/2} H D^{-1/2} after removing
// vertices with zero weight. A single remaining vertex yields 1.
double laplacian_gap(const SquareSpec& sq);
double laplacian_gap(const RMatrix& mu2);

struct RandomGameOptions {
  double density = 1.0;
  double bottom_prob = 0.1;
};

Game random_projection_game(int nU, int nV, int nA, int nB, double density, std::uint64_t seed);
Game random_projection_game(int nU, int nV, int nA, int nB, const RandomGameOptions& options,
                            std::uint64_t seed);

// Projection game with a perfect classical labeling (alice[u], bob[v]).
struct PlantedGame {
  Game game;
  std::vector<int> alice;
  std::vector<int> bob;
};
PlantedGame planted_projection_game(int nU, int nV, int nA, int nB, double density,
                                    std::uint64_t seed);

// General (not necessarily projection) game with i.i.d. predicate entries.
Game random_game(int nU, int nV, int nA, int nB, double accept_prob, std::uint64_t seed);

Game chsh_game();
// Single question per side, k answers, accept iff a == b.
Game identity_game(int k);
Game constant_game(int nU, int nV, int nA, int nB, bool accept);

}  // namespace entgames

#endif  // ENTGAMES_GAME_HPP_
