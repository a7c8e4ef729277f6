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

#include "entgames/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace entgames {

CMatrix FractionalStrategy::row_total(int v) const {
  CMatrix s = CMatrix::Zero(dim, dim);
  for (const auto& x : ops[v]) s += x;
  return s;
}

void validate_fractional(const FractionalStrategy& fs, double tol) {
  for (std::size_t v = 0; v < fs.ops.size(); ++v) {
    for (const auto& x : fs.ops[v]) {
      if (x.rows() != fs.dim || x.cols() != fs.dim) {
        throw Error(ErrorCode::kDimensionMismatch, "fractional strategy dimension mismatch");
      }
      if (!is_psd(x, tol)) throw Error(ErrorCode::kInvalidPsd, "fractional operator is not PSD");
    }
    CMatrix gap = CMatrix::Identity(fs.dim, fs.dim) - fs.row_total(static_cast<int>(v));
    if (!is_psd(gap, tol)) {
      throw Error(ErrorCode::kInvalidPsd, "fractional row " + std::to_string(v) + " exceeds Id");
    }
  }
}

FractionalStrategy fractional_from(const QuantumStrategy& s, int answers) {
  return {s.dim, povm_table(s, answers)};
}

VectorStrategy single_vector_strategy(const FractionalStrategy& fs) {
  VectorStrategy a;
  a.weights = {1.0};
  a.parts = {fs};
  return a;
}

VectorStrategy scaled(const VectorStrategy& a, double t) {
  VectorStrategy out = a;
  for (auto& part : out.parts) {
    for (auto& row : part.ops) {
      for (auto& x : row) x *= t;
    }
  }
  return out;
}

CMatrix ext_inner(const OperatorTable& a, const OperatorTable& b, const std::vector<double>& mu) {
  if (a.size() != b.size() || a.size() != mu.size()) {
    throw Error(ErrorCode::kShapeMismatch, "ext_inner: question counts differ");
  }
  if (a.empty() || a.front().empty() || b.front().empty()) {
    throw Error(ErrorCode::kShapeMismatch, "ext_inner: empty table");
  }
  const Index da = a.front().front().rows();
  const Index db = b.front().front().rows();
  CMatrix out = CMatrix::Zero(da * db, da * db);
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q].size() != b[q].size()) throw Error(ErrorCode::kShapeMismatch, "ext_inner: answer counts differ");
    if (mu[q] == 0.0) continue;
    for (std::size_t x = 0; x < a[q].size(); ++x) {
      out += mu[q] * kron(CMatrix(a[q][x].conjugate()), b[q][x]);
    }
  }
  return out;
}

OperatorTable apply_game(const Game& g, const ProjectionMap& pm, const OperatorTable& bob) {
  if (static_cast<int>(bob.size()) != g.nV) throw Error(ErrorCode::kShapeMismatch, "apply_game: question count");
  const Index d = bob.front().front().rows();
  OperatorTable out(g.nU, std::vector<CMatrix>(g.nA, CMatrix::Zero(d, d)));
  for (int u = 0; u < g.nU; ++u) {
    std::vector<double> cond = conditional(g, u);
    for (int v = 0; v < g.nV; ++v) {
      if (cond[v] == 0.0) continue;
      for (int b = 0; b < g.nB; ++b) {
        int a = pm(u, v, b);
        if (a != ProjectionMap::kBottom) out[u][a] += cond[v] * bob[v][b];
      }
    }
  }
  return out;
}

OperatorTable povm_table(const QuantumStrategy& s, int answers) {
  OperatorTable t;
  for (const Povm& p : s.povms) {
    if (p.size() < answers) throw Error(ErrorCode::kShapeMismatch, "POVM has too few outcomes");
    t.emplace_back(p.outcomes.begin(), p.outcomes.begin() + answers);
  }
  return t;
}

double sqnorm_squared(const Game& g, const ProjectionMap& pm, const QuantumStrategy& bob) {
  OperatorTable c = apply_game(g, pm, povm_table(bob, g.nB));
  CMatrix m = ext_inner(c, c, marginals(g).left);
  return std::max(0.0, max_eigenvalue(m));
}

double sqnorm(const Game& g, const ProjectionMap& pm, const QuantumStrategy& bob) {
  return std::sqrt(sqnorm_squared(g, pm, bob));
}

double plusnorm(const VectorStrategy& a) {
  if (a.parts.empty()) return 0.0;
  const Index d = a.dim();
  const std::size_t nv = a.parts.front().ops.size();
  double best = 0.0;
  for (std::size_t v = 0; v < nv; ++v) {
    CMatrix m = CMatrix::Zero(d * d, d * d);
    for (std::size_t w = 0; w < a.parts.size(); ++w) {
      if (a.weights[w] == 0.0) continue;
      CMatrix row = a.parts[w].row_total(static_cast<int>(v));
      m += a.weights[w] * kron(CMatrix(row.conjugate()), row);
    }
    best = std::max(best, max_eigenvalue(m));
  }
  return std::sqrt(std::max(0.0, best));
}

double vector_strategy_value(const Game& g, const ProjectionMap& pm, const VectorStrategy& a) {
  if (a.parts.empty()) return 0.0;
  const Index d = a.dim();
  std::vector<double> mu_l = marginals(g).left;
  CMatrix m = CMatrix::Zero(d * d, d * d);
  for (std::size_t w = 0; w < a.parts.size(); ++w) {
    if (a.weights[w] == 0.0) continue;
    OperatorTable c = apply_game(g, pm, a.parts[w].ops);
    m += a.weights[w] * ext_inner(c, c, mu_l);
  }
  return std::max(0.0, max_eigenvalue(m));
}

VectorStrategy vector_from_product(const Game& g, const Game& h, const ProjectionMap& pm_h,
                                   const QuantumStrategy& bob) {
  if (static_cast<int>(bob.povms.size()) != g.nV * h.nV) {
    throw Error(ErrorCode::kShapeMismatch, "product strategy question count");
  }
  const Index d = bob.dim;
  Marginals mh = marginals(h);
  VectorStrategy out;
  for (int uh = 0; uh < h.nU; ++uh) {
    std::vector<double> cond = conditional(h, uh);
    for (int ah = 0; ah < h.nA; ++ah) {
      FractionalStrategy part;
      part.dim = d;
      part.ops.assign(g.nV, std::vector<CMatrix>(g.nB, CMatrix::Zero(d, d)));
      for (int vg = 0; vg < g.nV; ++vg) {
        for (int vh = 0; vh < h.nV; ++vh) {
          if (cond[vh] == 0.0) continue;
          const Povm& p = bob.povms[vg * h.nV + vh];
          if (p.size() < g.nB * h.nB) throw Error(ErrorCode::kShapeMismatch, "product POVM outcomes");
          for (int bh = 0; bh < h.nB; ++bh) {
            if (pm_h(uh, vh, bh) != ah) continue;
            for (int bg = 0; bg < g.nB; ++bg) {
              part.ops[vg][bg] += cond[vh] * p.outcomes[bg * h.nB + bh];
            }
          }
        }
      }
      out.weights.push_back(mh.left[uh]);
      out.parts.push_back(std::move(part));
    }
  }
  return out;
}

QuantumStrategy induced_row_strategy(const Game& g, const Game& h, const QuantumStrategy& bob,
                                     int vg) {
  const Index d = bob.dim;
  QuantumStrategy s;
  s.dim = d;
  for (int vh = 0; vh < h.nV; ++vh) {
    const Povm& p = bob.povms[vg * h.nV + vh];
    Povm row;
    row.outcomes.assign(h.nB, CMatrix::Zero(d, d));
    for (int bg = 0; bg < g.nB; ++bg) {
      for (int bh = 0; bh < h.nB; ++bh) row.outcomes[bh] += p.outcomes[bg * h.nB + bh];
    }
    s.povms.push_back(std::move(row));
  }
  return s;
}

VectorStrategy tensor_vector_strategies(const Game& g, const VectorStrategy& a, const Game& h,
                                        const VectorStrategy& b) {
  VectorStrategy out;
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    for (std::size_t j = 0; j < b.parts.size(); ++j) {
      FractionalStrategy part;
      part.dim = a.dim() * b.dim();
      part.ops.resize(static_cast<std::size_t>(g.nV) * h.nV);
      for (int vg = 0; vg < g.nV; ++vg) {
        for (int vh = 0; vh < h.nV; ++vh) {
          auto& row = part.ops[vg * h.nV + vh];
          for (int bg = 0; bg < g.nB; ++bg) {
            for (int bh = 0; bh < h.nB; ++bh) {
              row.push_back(kron(a.parts[i].ops[vg][bg], b.parts[j].ops[vh][bh]));
            }
          }
        }
      }
      out.weights.push_back(a.weights[i] * b.weights[j]);
      out.parts.push_back(std::move(part));
    }
  }
  return out;
}

ChainReport verify_chain(const Game& g, const ProjectionMap& pm,
                         const std::vector<ChainInstance>& corpus, double tol) {
  ChainReport report;
  for (const ChainInstance& inst : corpus) {
    ChainCheck c;
    c.label = inst.label;
    try {
      validate_strategy(inst.alice, g.nU, g.nA);
      validate_strategy(inst.bob, g.nV, g.nB);
      if (std::abs(inst.state.norm() - 1.0) > 1e-8) {
        throw Error(ErrorCode::kInvalidArgument, "shared state is not normalized");
      }
    } catch (const Error& e) {
      c.lower_ok = c.upper_ok = false;
      report.violations.push_back(inst.label + ": invalid strategy (" + e.what() + ")");
      report.checks.push_back(c);
      continue;
    }
    c.value = raw_value(g, inst.alice, inst.bob, inst.state);
    c.sqnorm_sq = sqnorm_squared(g, pm, inst.bob);
    QuantumStrategy response = bob_to_alice_response(g, pm, inst.bob);
    StateResult best = best_state(g, response, inst.bob);
    c.response_value = raw_value(g, response, inst.bob, best.state);
    c.lower_ok = c.value * c.value <= c.sqnorm_sq + tol;
    c.upper_ok = c.sqnorm_sq <= c.response_value + tol;
    if (!c.lower_ok) {
      report.violations.push_back(inst.label + ": value^2 = " + std::to_string(c.value * c.value) +
                                  " exceeds sqnorm^2 = " + std::to_string(c.sqnorm_sq));
    }
    if (!c.upper_ok) {
      report.violations.push_back(inst.label + ": sqnorm^2 = " + std::to_string(c.sqnorm_sq) +
                                  " exceeds response value " + std::to_string(c.response_value));
    }
    report.checks.push_back(c);
  }
  return report;
}

ProductCheck verify_product(const Game& g, const Game& h, const QuantumStrategy& bob,
                            const std::vector<QuantumStrategy>& h_corpus, double tol) {
  Game gh = tensor(g, h);
  ProjectionMap pm_gh = projection_map(gh);
  ProjectionMap pm_g = projection_map(g);
  ProjectionMap pm_h = projection_map(h);
  ProductCheck c;
  c.lhs = sqnorm_squared(gh, pm_gh, bob);
  VectorStrategy a = vector_from_product(g, h, pm_h, bob);
  c.plusnorm = plusnorm(a);
  c.witness_value = vector_strategy_value(g, pm_g, a);
  c.normalized_value = c.plusnorm > 0.0 ? c.witness_value / (c.plusnorm * c.plusnorm) : 0.0;
  for (int vg = 0; vg < g.nV; ++vg) {
    c.row_sqnorm = std::max(c.row_sqnorm, sqnorm(h, pm_h, induced_row_strategy(g, h, bob, vg)));
  }
  c.best_h_sqnorm = c.row_sqnorm;
  for (const QuantumStrategy& s : h_corpus) c.best_h_sqnorm = std::max(c.best_h_sqnorm, sqnorm(h, pm_h, s));
  c.rhs = c.normalized_value * c.best_h_sqnorm * c.best_h_sqnorm;
  c.product_ok = c.lhs <= c.rhs + tol;
  c.plusnorm_ok = c.plusnorm <= c.row_sqnorm + 1e-8;
  return c;
}

}  // namespace entgames
