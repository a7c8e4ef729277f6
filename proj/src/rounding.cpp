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

#include "entgames/rounding.hpp"

#include <algorithm>
#include <cmath>

namespace entgames {
namespace {

double tr_real(const CMatrix& m) { return m.trace().real(); }

// Tr(P K Q K) for the symmetric state K.
double overlap(const CMatrix& p, const CMatrix& k, const CMatrix& q) {
  return tr_real(p * k * q * k);
}

}  // namespace

SymmetricState SymmetricState::from_k(const CMatrix& k) {
  if (k.rows() != k.cols() || k.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "symmetric state needs a nonempty square K");
  }
  if (!is_psd(k, tolerances().clamp)) throw Error(ErrorCode::kInvalidPsd, "K is not PSD");
  SymmetricState s;
  s.k_ = hermitian_part(k);
  double t = tr_real(s.k_ * s.k_);
  if (std::abs(t - 1.0) > 1e-10) {
    throw Error(ErrorCode::kInvalidPsd, "Tr(K^2) must equal 1");
  }
  return s;
}

SymmetricState SymmetricState::normalized(const CMatrix& k) {
  if (k.rows() != k.cols() || k.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "symmetric state needs a nonempty square K");
  }
  if (!is_psd(k, tolerances().clamp)) throw Error(ErrorCode::kInvalidPsd, "K is not PSD");
  CMatrix h = hermitian_part(k);
  double t = tr_real(h * h);
  if (t <= 0.0) throw Error(ErrorCode::kZeroInput, "K is zero");
  return from_k(h / std::sqrt(t));
}

SymmetricState SymmetricState::maximally_entangled(Index d) {
  return from_k(CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
}

CVector SymmetricState::vector() const { return vectorize(CMatrix(k_.conjugate())); }

Complex SymmetricState::expectation(const CMatrix& x, const CMatrix& y) const {
  return (x * k_.conjugate() * y.transpose() * k_.transpose()).trace();
}

SymmetricState random_symmetric_state(Index d, Rng& rng, Index rank) {
  if (rank <= 0 || rank > d) rank = d;
  RVector p = RVector::Zero(d);
  for (Index i = 0; i < rank; ++i) {
    double x = rng.normal(), y = rng.normal();
    p(i) = x * x + y * y + 1e-3;
  }
  p /= p.sum();
  CMatrix w = random_unitary(d, rng);
  CMatrix k = w * p.cwiseSqrt().cast<Complex>().asDiagonal() * w.adjoint();
  return SymmetricState::normalized(k);
}

CMatrix rounding_unitary(const CMatrix& av, const CMatrix& rho) {
  if (av.rows() != rho.rows()) throw Error(ErrorCode::kDimensionMismatch, "rounding_unitary dims");
  CMatrix m = psd_sqrt(av) * psd_power(rho, 0.25, tolerances().rank_rel);
  return polar_unitary(m);
}

CVector post_measurement_state(const CMatrix& av, const CMatrix& av2, const SymmetricState& state,
                               const CMatrix& uv, const CMatrix& uv2) {
  const Index d = state.dim();
  if (av.rows() != d || av2.rows() != d || uv.rows() != d || uv2.rows() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "post_measurement_state dims");
  }
  // Coefficient matrix conj(Uv Av^{1/2} K Av'^{1/2} Uv'^dag).
  CMatrix c = uv * psd_sqrt(av) * state.k() * psd_sqrt(av2) * uv2.adjoint();
  return vectorize(CMatrix(c.conjugate()));
}

Povm renormalized_measurement(const FractionalStrategy& fs, int v, const CMatrix& uv) {
  CMatrix s = psd_pinv_sqrt(fs.row_total(v));
  Povm p;
  p.subnormalized = true;
  for (const CMatrix& x : fs.ops[v]) p.outcomes.push_back(hermitian_part(uv * s * x * s * uv.adjoint()));
  return p;
}

ExpansionTerms expansion_terms(const Game& g, const ProjectionMap& pm, const FractionalStrategy& fs,
                               const SymmetricState& state) {
  Marginals m = marginals(g);
  const CMatrix& k = state.k();
  ExpansionTerms t;
  OperatorTable c = apply_game(g, pm, fs.ops);
  for (int u = 0; u < g.nU; ++u) {
    if (m.left[u] == 0.0) continue;
    for (int a = 0; a < g.nA; ++a) t.consistent += m.left[u] * overlap(c[u][a], k, c[u][a]);
  }
  for (int v = 0; v < g.nV; ++v) {
    if (m.right[v] == 0.0) continue;
    CMatrix av = fs.row_total(v);
    t.diagonal += m.right[v] * overlap(av, k, av);
  }
  return t;
}

ExpandRoundResult expand_round(const Game& g, const ProjectionMap& pm, const VectorStrategy& a,
                               const SymmetricState& state, const ExpandRoundOptions& options) {
  if (a.parts.empty()) throw Error(ErrorCode::kInvalidArgument, "empty vector strategy");
  if (a.dim() != state.dim()) throw Error(ErrorCode::kDimensionMismatch, "strategy and state dims");
  if (!is_projection(g)) throw Error(ErrorCode::kNotProjection, "expand_round needs a projection game");
  if (pm.nU != g.nU || pm.nV != g.nV || pm.nB != g.nB) {
    throw Error(ErrorCode::kShapeMismatch, "projection map does not match the game");
  }
  ExpandRoundResult r;
  r.lambda = laplacian_gap(square_spec(g, pm));

  double cons = 0.0, diag = 0.0, best_ratio = -1.0;
  int best = 0;
  for (std::size_t w = 0; w < a.parts.size(); ++w) {
    if (static_cast<int>(a.parts[w].ops.size()) != g.nV) {
      throw Error(ErrorCode::kShapeMismatch, "vector strategy question count");
    }
    ExpansionTerms t = expansion_terms(g, pm, a.parts[w], state);
    cons += a.weights[w] * t.consistent;
    diag += a.weights[w] * t.diagonal;
    if (a.weights[w] > 0.0 && t.ratio() > best_ratio) {
      best_ratio = t.ratio();
      best = static_cast<int>(w);
    }
  }
  r.eta_average = diag > 0.0 ? 1.0 - cons / diag : 1.0;
  if (options.omega >= 0) {
    if (options.omega >= static_cast<int>(a.parts.size())) {
      throw Error(ErrorCode::kInvalidArgument, "omega out of range");
    }
    best = options.omega;
  }
  r.omega = best;
  const FractionalStrategy& fs = a.parts[best];
  ExpansionTerms terms = expansion_terms(g, pm, fs, state);
  r.eta = 1.0 - terms.ratio();

  Marginals m = marginals(g);
  const Index d = state.dim();
  CMatrix rho = state.rho();
  RoundedStrategy& rs = r.strategy;
  rs.measurements.dim = d;
  std::vector<CMatrix> totals;
  for (int v = 0; v < g.nV; ++v) {
    totals.push_back(fs.row_total(v));
    rs.unitaries.push_back(rounding_unitary(totals.back(), rho));
    rs.measurements.povms.push_back(renormalized_measurement(fs, v, rs.unitaries.back()));
  }

  rs.sigma = CMatrix::Zero(d * d, d * d);
  for (int w = 0; w < g.nV; ++w) {
    if (m.right[w] == 0.0) continue;
    CVector psi = post_measurement_state(totals[w], totals[w], state, rs.unitaries[w], rs.unitaries[w]);
    r.psi_weight += m.right[w] * psi.squaredNorm();
    rs.sigma += m.right[w] * psi * psi.adjoint();
  }
  if (!(r.psi_weight > 1e-300)) {
    throw Error(ErrorCode::kDegenerateState, "every post-measurement state vanishes");
  }
  rs.sigma /= r.psi_weight;

  OperatorTable c = apply_game(g, pm, povm_table(rs.measurements, g.nB));
  CMatrix sq = ext_inner(c, c, m.left);
  r.square_value = (sq * rs.sigma).trace().real();
  r.square_sup = max_eigenvalue(sq);
  r.eps = 1.0 - r.square_value;
  if (r.square_value > r.square_sup + options.tol) {
    throw Error(ErrorCode::kNumericalFailure, "rounded value exceeds its operator-norm bound");
  }

  CMatrix mean = CMatrix::Zero(d, d);
  for (int v = 0; v < g.nV; ++v) mean += m.right[v] * totals[v];
  r.independent_overlap = overlap(mean, state.k(), mean);
  r.diagonal_overlap = terms.diagonal;
  if (r.lambda > 0.0) {
    r.laplacian_bound_ok = r.independent_overlap >=
                           (1.0 - 2.0 * r.eta / r.lambda) * r.diagonal_overlap - options.tol;
  }
  return r;
}

double reproduction_gap(const FractionalStrategy& fs, const SymmetricState& state,
                        bool project_supports) {
  const int nv = static_cast<int>(fs.ops.size());
  CMatrix rho = state.rho();
  std::vector<CMatrix> totals, us, proj;
  std::vector<Povm> tilde;
  for (int v = 0; v < nv; ++v) {
    totals.push_back(fs.row_total(v));
    us.push_back(rounding_unitary(totals.back(), rho));
    tilde.push_back(renormalized_measurement(fs, v, us.back()));
    proj.push_back(range_projector(totals.back(), tolerances().rank_rel));
  }
  double gap = 0.0;
  for (int v = 0; v < nv; ++v) {
    for (int v2 = 0; v2 < nv; ++v2) {
      CVector psi = post_measurement_state(totals[v], totals[v2], state, us[v], us[v2]);
      for (std::size_t b = 0; b < fs.ops[v].size(); ++b) {
        CMatrix left = tilde[v].outcomes[b].conjugate();
        CMatrix ref_left = project_supports ? CMatrix(proj[v] * fs.ops[v][b] * proj[v]) : fs.ops[v][b];
        for (std::size_t b2 = 0; b2 < fs.ops[v2].size(); ++b2) {
          CMatrix ref_right =
              project_supports ? CMatrix(proj[v2] * fs.ops[v2][b2] * proj[v2]) : fs.ops[v2][b2];
          double lhs = bipartite_expectation(psi, left, tilde[v2].outcomes[b2]).real();
          double rhs = overlap(ref_left, state.k(), ref_right);
          gap = std::max(gap, std::abs(lhs - rhs));
        }
      }
    }
  }
  return gap;
}

PsiCloseReport psi_close_diagnostic(const std::vector<CMatrix>& a, const SymmetricState& state,
                                    const RMatrix& nu, double tol) {
  const int nv = static_cast<int>(a.size());
  if (nu.rows() != nv || nu.cols() != nv) throw Error(ErrorCode::kShapeMismatch, "nu shape");
  if ((nu - nu.transpose()).cwiseAbs().maxCoeff() > 1e-12 || nu.minCoeff() < 0.0 ||
      std::abs(nu.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "nu must be a symmetric distribution");
  }
  CMatrix rho = state.rho();
  CMatrix rho4 = psd_power(rho, 0.25, tolerances().rank_rel);
  CVector phi = state.vector();

  PsiCloseReport rep;
  std::vector<CMatrix> us, xs;
  for (int v = 0; v < nv; ++v) {
    us.push_back(rounding_unitary(a[v], rho));
    xs.push_back(us.back() * psd_sqrt(a[v]) * rho4);
    const CMatrix& x = xs.back();
    double herm = (x - x.adjoint()).norm();
    double neg = std::max(0.0, -eigvals_hermitian(hermitian_part(x)).minCoeff());
    rep.x_psd_error = std::max(rep.x_psd_error, herm + neg);
  }

  RMatrix n(nv, nv);
  std::vector<std::vector<CVector>> states(nv, std::vector<CVector>(nv));
  for (int v = 0; v < nv; ++v) {
    for (int v2 = 0; v2 < nv; ++v2) {
      n(v, v2) = bipartite_expectation(phi, CMatrix(a[v].conjugate()), a[v2]).real();
      CMatrix x2 = xs[v] * xs[v];
      CMatrix y2 = xs[v2] * xs[v2];
      double err = std::abs((x2 * y2).trace().real() - n(v, v2));
      if (v == v2) {
        rep.xu_diag_error = std::max(rep.xu_diag_error, std::abs((x2 * x2).trace().real() - n(v, v)));
      }
      rep.xu_cross_error = std::max(rep.xu_cross_error, err);
      states[v][v2] = post_measurement_state(a[v], a[v2], state, us[v], us[v2]);
    }
  }

  RVector marginal = nu.rowwise().sum();
  std::vector<int> component(nv, -1);
  int nblocks = 0;
  for (int s = 0; s < nv; ++s) {
    if (component[s] >= 0 || marginal(s) <= 0.0) continue;
    std::vector<int> stack{s};
    component[s] = nblocks;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < nv; ++w) {
        if (nu(v, w) > 0.0 && component[w] < 0) {
          component[w] = nblocks;
          stack.push_back(w);
        }
      }
    }
    ++nblocks;
  }

  for (int blk = 0; blk < nblocks; ++blk) {
    PsiCloseBlock b;
    double mass = 0.0;
    for (int v = 0; v < nv; ++v) {
      if (component[v] == blk) {
        b.vertices.push_back(v);
        mass += marginal(v);
      }
    }
    double cross = 0.0, diag = 0.0;
    for (int v : b.vertices) {
      diag += marginal(v) / mass * n(v, v);
      b.mean_norm_sq += marginal(v) / mass * states[v][v].squaredNorm();
      for (int w : b.vertices) cross += nu(v, w) / mass * n(v, w);
    }
    b.eta = diag > 0.0 ? std::max(0.0, 1.0 - cross / diag) : 0.0;
    double scale = std::sqrt(2.0 * b.eta * b.mean_norm_sq);
    for (int v3 = 0; v3 < nv; ++v3) {
      double lhs = 0.0;
      for (int v : b.vertices) {
        for (int w : b.vertices) {
          if (nu(v, w) > 0.0) lhs += nu(v, w) / mass * (states[v][v3] - states[w][v3]).squaredNorm();
        }
      }
      b.lhs1.push_back(lhs);
      b.rhs1.push_back(scale * states[v3][v3].norm());
      if (lhs > b.rhs1.back() + tol) rep.ok = false;
    }
    for (int v : b.vertices) {
      for (int w : b.vertices) {
        if (nu(v, w) > 0.0) b.lhs2 += nu(v, w) / mass * (states[v][v] - states[w][v]).squaredNorm();
      }
    }
    b.rhs2 = scale * std::sqrt(b.mean_norm_sq);
    if (b.lhs2 > b.rhs2 + tol) rep.ok = false;
    rep.blocks.push_back(std::move(b));
  }
  if (rep.xu_diag_error > 1e-9 || rep.xu_cross_error > 1e-9 || rep.x_psd_error > 1e-8) rep.ok = false;
  return rep;
}

FractionalStrategy planted_strategy(const PlantedRounding& p, double t) {
  FractionalStrategy fs;
  fs.dim = p.common.rows();
  const int nv = p.game.nV, nb = p.game.nB;
  fs.ops.assign(nv, std::vector<CMatrix>(nb));
  for (int v = 0; v < nv; ++v) {
    for (int b = 0; b < nb; ++b) {
      fs.ops[v][b] = t * p.noise[v][b];
      if (b == p.bob[v]) fs.ops[v][b] += (1.0 - t) * p.common;
    }
  }
  return fs;
}

PlantedRounding planted_rounding_instance(double target_eta, std::uint64_t seed,
                                          const PlantedRoundingOptions& o) {
  if (!(target_eta > 0.0 && target_eta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "target eta must lie in (0, 1)");
  }
  PlantedGame planted = planted_projection_game(o.nU, o.nV, o.nA, o.nB, o.density, seed);
  Rng rng(seed, 0x726f756e64);
  PlantedRounding p;
  p.game = planted.game;
  p.pm = projection_map(p.game);
  p.bob = planted.bob;
  p.state = random_symmetric_state(o.dim, rng);
  CMatrix w = random_unitary(o.dim, rng);
  RVector spec(o.dim);
  for (Index i = 0; i < o.dim; ++i) spec(i) = rng.uniform(0.4, 0.9);
  p.common = w * spec.cast<Complex>().asDiagonal() * w.adjoint();
  for (int v = 0; v < o.nV; ++v) {
    double c = rng.uniform(0.5, 1.0);
    Povm n = random_povm(o.dim, o.nB, rng);
    std::vector<CMatrix> row;
    for (const CMatrix& x : n.outcomes) row.push_back(c * x);
    p.noise.push_back(std::move(row));
  }

  auto eta_at = [&](double t) {
    return 1.0 - expansion_terms(p.game, p.pm, planted_strategy(p, t), p.state).ratio();
  };
  if (eta_at(1.0) < target_eta) {
    throw Error(ErrorCode::kInvalidArgument, "target eta exceeds the fully mixed instance");
  }
  double lo = 0.0, hi = 1.0, t = 0.5, eta = 0.0;
  for (int it = 0; it < 200; ++it) {
    t = 0.5 * (lo + hi);
    eta = eta_at(t);
    if (std::abs(eta - target_eta) <= 1e-3 * target_eta) break;
    (eta < target_eta ? lo : hi) = t;
  }
  p.rate = t;
  p.eta = eta;
  p.strategy = planted_strategy(p, t);
  return p;
}

}  // namespace entgames
