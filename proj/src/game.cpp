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

#include "entgames/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entgames/rng.hpp"

namespace entgames {

Game Game::zeros(int nU, int nV, int nA, int nB) {
  if (nU < 1 || nV < 1 || nA < 1 || nB < 1) {
    throw Error(ErrorCode::kShapeMismatch, "game sizes must be positive");
  }
  Game g;
  g.nU = nU;
  g.nV = nV;
  g.nA = nA;
  g.nB = nB;
  g.mu.assign(static_cast<std::size_t>(nU) * nV, 0.0);
  g.predicate.assign(static_cast<std::size_t>(nA) * nB * nU * nV, 0);
  return g;
}

void validate(const Game& g) {
  if (g.nU < 1 || g.nV < 1 || g.nA < 1 || g.nB < 1) {
    throw Error(ErrorCode::kShapeMismatch, "game sizes must be positive");
  }
  if (g.mu.size() != static_cast<std::size_t>(g.nU) * g.nV) {
    throw Error(ErrorCode::kShapeMismatch, "mu must have nU*nV entries");
  }
  if (g.predicate.size() != static_cast<std::size_t>(g.nA) * g.nB * g.nU * g.nV) {
    throw Error(ErrorCode::kShapeMismatch, "predicate must have nA*nB*nU*nV entries");
  }
  double total = 0.0;
  for (double p : g.mu) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorCode::kNegativeProbability, "mu entry " + std::to_string(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kNonNormalizedMu, "mu sums to " + std::to_string(total));
  }
}

ProjectionMap projection_map(const Game& g) {
  ProjectionMap pm;
  pm.nU = g.nU;
  pm.nV = g.nV;
  pm.nB = g.nB;
  pm.pi.assign(static_cast<std::size_t>(g.nU) * g.nV * g.nB, ProjectionMap::kBottom);
  for (int u = 0; u < g.nU; ++u) {
    for (int v = 0; v < g.nV; ++v) {
      for (int b = 0; b < g.nB; ++b) {
        for (int a = 0; a < g.nA; ++a) {
          if (!g.accepts(a, b, u, v)) continue;
          if (pm(u, v, b) != ProjectionMap::kBottom) throw NotProjectionError(u, v, b);
          pm.at(u, v, b) = a;
        }
      }
    }
  }
  return pm;
}

bool is_projection(const Game& g) {
  try {
    projection_map(g);
    return true;
  } catch (const NotProjectionError&) {
    return false;
  }
}

Game game_from_projection(int nA, const std::vector<double>& mu, const ProjectionMap& pm) {
  Game g = Game::zeros(pm.nU, pm.nV, nA, pm.nB);
  if (mu.size() != g.mu.size()) throw Error(ErrorCode::kShapeMismatch, "mu must have nU*nV entries");
  g.mu = mu;
  for (int u = 0; u < pm.nU; ++u) {
    for (int v = 0; v < pm.nV; ++v) {
      for (int b = 0; b < pm.nB; ++b) {
        int a = pm(u, v, b);
        if (a == ProjectionMap::kBottom) continue;
        if (a < 0 || a >= nA) throw Error(ErrorCode::kShapeMismatch, "projection entry out of range");
        g.set_accepts(a, b, u, v, true);
      }
    }
  }
  return g;
}

Marginals marginals(const Game& g) {
  Marginals m;
  m.left.assign(g.nU, 0.0);
  m.right.assign(g.nV, 0.0);
  for (int u = 0; u < g.nU; ++u) {
    for (int v = 0; v < g.nV; ++v) {
      m.left[u] += g.prob(u, v);
      m.right[v] += g.prob(u, v);
    }
  }
  return m;
}

std::vector<double> conditional(const Game& g, int u) {
  std::vector<double> c(g.nV, 0.0);
  double total = 0.0;
  for (int v = 0; v < g.nV; ++v) total += g.prob(u, v);
  if (total <= 0.0) return c;
  for (int v = 0; v < g.nV; ++v) c[v] = g.prob(u, v) / total;
  return c;
}

std::vector<double> conditional_right(const Game& g, int v) {
  std::vector<double> c(g.nU, 0.0);
  double total = 0.0;
  for (int u = 0; u < g.nU; ++u) total += g.prob(u, v);
  if (total <= 0.0) return c;
  for (int u = 0; u < g.nU; ++u) c[u] = g.prob(u, v) / total;
  return c;
}

RMatrix game_operator(const Game& g, const ProjectionMap& pm) {
  RMatrix op = RMatrix::Zero(g.nU * g.nA, g.nV * g.nB);
  for (int u = 0; u < g.nU; ++u) {
    std::vector<double> c = conditional(g, u);
    for (int v = 0; v < g.nV; ++v) {
      if (c[v] == 0.0) continue;
      for (int b = 0; b < g.nB; ++b) {
        int a = pm(u, v, b);
        if (a != ProjectionMap::kBottom) op(u * g.nA + a, v * g.nB + b) = c[v];
      }
    }
  }
  return op;
}

RMatrix game_adjoint(const Game& g, const ProjectionMap& pm) {
  RMatrix op = RMatrix::Zero(g.nV * g.nB, g.nU * g.nA);
  for (int v = 0; v < g.nV; ++v) {
    std::vector<double> c = conditional_right(g, v);
    for (int u = 0; u < g.nU; ++u) {
      if (c[u] == 0.0) continue;
      for (int b = 0; b < g.nB; ++b) {
        int a = pm(u, v, b);
        if (a != ProjectionMap::kBottom) op(v * g.nB + b, u * g.nA + a) = c[u];
      }
    }
  }
  return op;
}

double weighted_inner(const RVector& f, const RVector& h, const std::vector<double>& weights,
                      int n_answers) {
  if (f.size() != h.size() || f.size() != static_cast<Index>(weights.size()) * n_answers) {
    throw Error(ErrorCode::kShapeMismatch, "weighted_inner: size mismatch");
  }
  double s = 0.0;
  for (std::size_t q = 0; q < weights.size(); ++q) {
    s += weights[q] * f.segment(q * n_answers, n_answers).dot(h.segment(q * n_answers, n_answers));
  }
  return s;
}

SquareSpec square_spec(const Game& g, const ProjectionMap& pm) {
  Marginals m = marginals(g);
  SquareSpec sq;
  sq.nV = g.nV;
  sq.nB = g.nB;
  sq.mu2 = RMatrix::Zero(g.nV, g.nV);
  sq.predicate2.assign(static_cast<std::size_t>(g.nB) * g.nB * g.nV * g.nV, 0);
  for (int u = 0; u < g.nU; ++u) {
    if (m.left[u] <= 0.0) continue;
    std::vector<double> c = conditional(g, u);
    for (int v = 0; v < g.nV; ++v) {
      if (c[v] == 0.0) continue;
      for (int v2 = 0; v2 < g.nV; ++v2) {
        if (c[v2] == 0.0) continue;
        sq.mu2(v, v2) += m.left[u] * c[v] * c[v2];
        for (int b = 0; b < g.nB; ++b) {
          int a = pm(u, v, b);
          if (a == ProjectionMap::kBottom) continue;
          for (int b2 = 0; b2 < g.nB; ++b2) {
            if (pm(u, v2, b2) == a) {
              sq.predicate2[((static_cast<std::size_t>(b) * g.nB + b2) * g.nV + v) * g.nV + v2] = 1;
            }
          }
        }
      }
    }
  }
  sq.mu2 = (0.5 * (sq.mu2 + sq.mu2.transpose())).eval();
  return sq;
}

Game square_game(const Game& g, const ProjectionMap& pm) {
  SquareSpec sq = square_spec(g, pm);
  Game out = Game::zeros(g.nV, g.nV, g.nB, g.nB);
  for (int v = 0; v < g.nV; ++v) {
    for (int v2 = 0; v2 < g.nV; ++v2) out.prob(v, v2) = sq.mu2(v, v2);
  }
  for (int b = 0; b < g.nB; ++b) {
    for (int b2 = 0; b2 < g.nB; ++b2) {
      for (int v = 0; v < g.nV; ++v) {
        for (int v2 = 0; v2 < g.nV; ++v2) out.set_accepts(b, b2, v, v2, sq.accepts(b, b2, v, v2));
      }
    }
  }
  return out;
}

Game tensor(const Game& g, const Game& h, std::size_t cap) {
  double entries = static_cast<double>(g.nA) * h.nA * g.nB * h.nB * g.nU * h.nU * g.nV * h.nV;
  if (entries > static_cast<double>(cap)) {
    throw Error(ErrorCode::kSizeOverflow,
                "tensor product predicate would have " + std::to_string(entries) + " entries");
  }
  Game out = Game::zeros(g.nU * h.nU, g.nV * h.nV, g.nA * h.nA, g.nB * h.nB);
  for (int ug = 0; ug < g.nU; ++ug) {
    for (int uh = 0; uh < h.nU; ++uh) {
      for (int vg = 0; vg < g.nV; ++vg) {
        for (int vh = 0; vh < h.nV; ++vh) {
          int u = ug * h.nU + uh;
          int v = vg * h.nV + vh;
          out.prob(u, v) = g.prob(ug, vg) * h.prob(uh, vh);
          for (int ag = 0; ag < g.nA; ++ag) {
            for (int bg = 0; bg < g.nB; ++bg) {
              if (!g.accepts(ag, bg, ug, vg)) continue;
              for (int ah = 0; ah < h.nA; ++ah) {
                for (int bh = 0; bh < h.nB; ++bh) {
                  if (h.accepts(ah, bh, uh, vh)) {
                    out.set_accepts(ag * h.nA + ah, bg * h.nB + bh, u, v, true);
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return out;
}

Game tensor_power(const Game& g, int k, std::size_t cap) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "tensor power needs k >= 1");
  Game out = g;
  for (int i = 1; i < k; ++i) out = tensor(out, g, cap);
  return out;
}

Game to_projection(const Game& g) {
  const int nU2 = g.nU + g.nV;
  const int nV2 = g.nU * g.nV;
  const int nA2 = g.nA + g.nB;
  const int nB2 = g.nA * g.nB;
  Game out = Game::zeros(nU2, nV2, nA2, nB2);
  for (int u = 0; u < g.nU; ++u) {
    for (int v = 0; v < g.nV; ++v) {
      int e = u * g.nV + v;
      out.prob(u, e) = 0.5 * g.prob(u, v);
      out.prob(g.nU + v, e) = 0.5 * g.prob(u, v);
      for (int a = 0; a < g.nA; ++a) {
        for (int b = 0; b < g.nB; ++b) {
          if (!g.accepts(a, b, u, v)) continue;
          int b2 = a * g.nB + b;
          out.set_accepts(a, b2, u, e, true);
          out.set_accepts(g.nA + b, b2, g.nU + v, e, true);
        }
      }
    }
  }
  return out;
}

double laplacian_gap(const RMatrix& mu2) {
  const Index n = mu2.rows();
  RVector weight = mu2.rowwise().sum();
  std::vector<Index> keep;
  for (Index v = 0; v < n; ++v) {
    if (weight(v) > 0.0) keep.push_back(v);
  }
  if (keep.empty()) throw Error(ErrorCode::kZeroInput, "square distribution is identically zero");
  const Index m = static_cast<Index>(keep.size());
  if (m == 1) return 1.0;
  CMatrix lap(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      double h = 0.5 * (mu2(keep[i], keep[j]) + mu2(keep[j], keep[i]));
      lap(i, j) = (i == j ? 1.0 : 0.0) - h / std::sqrt(weight(keep[i]) * weight(keep[j]));
    }
  }
  return eigvals_hermitian(lap)(1);
}

double laplacian_gap(const SquareSpec& sq) { return laplacian_gap(sq.mu2); }

namespace {

// Edge support and weights shared by the random generators.
std::vector<double> random_mu(int nU, int nV, double density, Rng& rng) {
  if (!(density > 0.0 && density <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "density must lie in (0, 1]");
  }
  std::vector<double> mu(static_cast<std::size_t>(nU) * nV, 0.0);
  double total = 0.0;
  for (auto& p : mu) {
    bool on = density >= 1.0 || rng.uniform() < density;
    double w = rng.uniform(0.1, 1.0);
    if (on) {
      p = w;
      total += w;
    }
  }
  if (total == 0.0) {
    std::size_t e = rng.below(mu.size());
    mu[e] = 1.0;
    total = 1.0;
  }
  for (auto& p : mu) p /= total;
  return mu;
}

}  // namespace

Game random_projection_game(int nU, int nV, int nA, int nB, const RandomGameOptions& options,
                            std::uint64_t seed) {
  Rng rng(seed, 0x67616d65);
  std::vector<double> mu = random_mu(nU, nV, options.density, rng);
  ProjectionMap pm;
  pm.nU = nU;
  pm.nV = nV;
  pm.nB = nB;
  pm.pi.assign(static_cast<std::size_t>(nU) * nV * nB, ProjectionMap::kBottom);
  for (auto& a : pm.pi) {
    bool bottom = rng.uniform() < options.bottom_prob;
    int label = static_cast<int>(rng.below(nA));
    a = bottom ? ProjectionMap::kBottom : label;
  }
  return game_from_projection(nA, mu, pm);
}

Game random_projection_game(int nU, int nV, int nA, int nB, double density, std::uint64_t seed) {
  RandomGameOptions options;
  options.density = density;
  return random_projection_game(nU, nV, nA, nB, options, seed);
}

PlantedGame planted_projection_game(int nU, int nV, int nA, int nB, double density,
                                    std::uint64_t seed) {
  Rng rng(seed, 0x706c616e);
  PlantedGame out;
  std::vector<double> mu = random_mu(nU, nV, density, rng);
  out.alice.resize(nU);
  out.bob.resize(nV);
  for (auto& a : out.alice) a = static_cast<int>(rng.below(nA));
  for (auto& b : out.bob) b = static_cast<int>(rng.below(nB));
  ProjectionMap pm;
  pm.nU = nU;
  pm.nV = nV;
  pm.nB = nB;
  pm.pi.resize(static_cast<std::size_t>(nU) * nV * nB);
  for (int u = 0; u < nU; ++u) {
    for (int v = 0; v < nV; ++v) {
      for (int b = 0; b < nB; ++b) {
        int label = static_cast<int>(rng.below(nA));
        pm.at(u, v, b) = b == out.bob[v] ? out.alice[u] : label;
      }
    }
  }
  out.game = game_from_projection(nA, mu, pm);
  return out;
}

Game random_game(int nU, int nV, int nA, int nB, double accept_prob, std::uint64_t seed) {
  Rng rng(seed, 0x72616e64);
  Game g = Game::zeros(nU, nV, nA, nB);
  g.mu = random_mu(nU, nV, 1.0, rng);
  for (auto& x : g.predicate) x = rng.uniform() < accept_prob ? 1 : 0;
  return g;
}

Game chsh_game() {
  Game g = Game::zeros(2, 2, 2, 2);
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) {
      g.prob(u, v) = 0.25;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) g.set_accepts(a, b, u, v, (a ^ b) == (u & v));
      }
    }
  }
  return g;
}

Game identity_game(int k) {
  Game g = Game::zeros(1, 1, k, k);
  g.prob(0, 0) = 1.0;
  for (int a = 0; a < k; ++a) g.set_accepts(a, a, 0, 0, true);
  return g;
}

Game constant_game(int nU, int nV, int nA, int nB, bool accept) {
  Game g = Game::zeros(nU, nV, nA, nB);
  for (auto& p : g.mu) p = 1.0 / (static_cast<double>(nU) * nV);
  std::fill(g.predicate.begin(), g.predicate.end(), accept ? 1 : 0);
  return g;
}

}  // namespace entgames
