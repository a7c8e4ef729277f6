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

#include "entgames/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/QR>

#include "entgames/parallel.hpp"

namespace entgames {

CMatrix Povm::total() const {
  CMatrix s = CMatrix::Zero(dim(), dim());
  for (const auto& e : outcomes) s += e;
  return s;
}

CMatrix Povm::deficit() const { return CMatrix::Identity(dim(), dim()) - total(); }

Povm Povm::with_dummy() const {
  Povm p = *this;
  p.outcomes.push_back(hermitian_part(deficit()));
  p.subnormalized = false;
  return p;
}

void validate_povm(const Povm& p, double tol) {
  if (p.outcomes.empty()) throw Error(ErrorCode::kShapeMismatch, "POVM has no outcomes");
  const Index d = p.dim();
  for (std::size_t x = 0; x < p.outcomes.size(); ++x) {
    const CMatrix& e = p.outcomes[x];
    if (e.rows() != d || e.cols() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "POVM outcomes have different dimensions");
    }
    if (!is_psd(e, tol)) {
      throw Error(ErrorCode::kInvalidPsd, "POVM outcome " + std::to_string(x) + " is not PSD");
    }
  }
  CMatrix gap = p.deficit();
  if (p.subnormalized) {
    if (!is_psd(gap, tol)) throw Error(ErrorCode::kInvalidPsd, "sub-normalized POVM exceeds Id");
  } else if (gap.cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorCode::kInvalidPsd, "POVM outcomes do not sum to Id");
  }
}

void validate_strategy(const QuantumStrategy& s, int questions, int answers, double tol) {
  if (static_cast<int>(s.povms.size()) != questions) {
    throw Error(ErrorCode::kShapeMismatch, "strategy has " + std::to_string(s.povms.size()) +
                                               " POVMs for " + std::to_string(questions) +
                                               " questions");
  }
  for (const Povm& p : s.povms) {
    if (p.size() != answers && p.size() != answers + 1) {
      throw Error(ErrorCode::kShapeMismatch, "POVM outcome count does not match answers");
    }
    if (p.dim() != s.dim) throw Error(ErrorCode::kDimensionMismatch, "POVM dimension mismatch");
    validate_povm(p, tol);
  }
}

namespace {

void check_shapes(const Game& g, const QuantumStrategy& alice, const QuantumStrategy& bob) {
  if (alice.dim != bob.dim) throw Error(ErrorCode::kDimensionMismatch, "players' dimensions differ");
  if (static_cast<int>(alice.povms.size()) != g.nU || static_cast<int>(bob.povms.size()) != g.nV) {
    throw Error(ErrorCode::kShapeMismatch, "strategy does not match question sets");
  }
  for (const Povm& p : alice.povms) {
    if (p.size() < g.nA) throw Error(ErrorCode::kShapeMismatch, "Alice POVM has too few outcomes");
  }
  for (const Povm& p : bob.povms) {
    if (p.size() < g.nB) throw Error(ErrorCode::kShapeMismatch, "Bob POVM has too few outcomes");
  }
}

// sum_v mu(u,v) sum_{b: V(a,b,u,v)} B_v^b, i.e. unnormalized conditional weights.
CMatrix bob_aggregate(const Game& g, const QuantumStrategy& bob, int u, int a, bool conditional_w,
                      const std::vector<double>& cond) {
  CMatrix s = CMatrix::Zero(bob.dim, bob.dim);
  for (int v = 0; v < g.nV; ++v) {
    double w = conditional_w ? cond[v] : g.prob(u, v);
    if (w == 0.0) continue;
    for (int b = 0; b < g.nB; ++b) {
      if (g.accepts(a, b, u, v)) s += w * bob.povms[v].outcomes[b];
    }
  }
  return s;
}

}  // namespace

double raw_value(const Game& g, const QuantumStrategy& alice, const QuantumStrategy& bob,
                 const CVector& psi) {
  check_shapes(g, alice, bob);
  const Index d = alice.dim;
  if (psi.size() != d * d) throw Error(ErrorCode::kDimensionMismatch, "state is not on C^d (x) C^d");
  CMatrix k = coefficient_matrix(psi, d, d);
  double total = 0.0;
  std::vector<double> none;
  for (int u = 0; u < g.nU; ++u) {
    for (int a = 0; a < g.nA; ++a) {
      CMatrix agg = bob_aggregate(g, bob, u, a, false, none);
      if (agg.isZero(0.0)) continue;
      // <psi| conj(A) (x) Bagg |psi> = Tr(K^dag conj(A) K Bagg^T).
      CMatrix left = k.adjoint() * alice.povms[u].outcomes[a].conjugate() * k;
      total += left.cwiseProduct(agg).sum().real();
    }
  }
  return total;
}

double value(const Game& g, const QuantumStrategy& alice, const QuantumStrategy& bob,
             const CVector& psi) {
  double v = raw_value(g, alice, bob, psi);
  if (v < -1e-9 || v > 1.0 + 1e-9) {
    throw Error(ErrorCode::kNumericalFailure,
                "value " + std::to_string(v) + " outside [0,1]; strategies are not valid POVMs");
  }
  return std::clamp(v, 0.0, 1.0);
}

CMatrix game_matrix(const Game& g, const QuantumStrategy& alice, const QuantumStrategy& bob) {
  check_shapes(g, alice, bob);
  const Index d = alice.dim;
  CMatrix m = CMatrix::Zero(d * d, d * d);
  std::vector<double> none;
  for (int u = 0; u < g.nU; ++u) {
    for (int a = 0; a < g.nA; ++a) {
      CMatrix agg = bob_aggregate(g, bob, u, a, false, none);
      if (agg.isZero(0.0)) continue;
      m += kron(CMatrix(alice.povms[u].outcomes[a].conjugate()), agg);
    }
  }
  return hermitian_part(m);
}

StateResult best_state(const Game& g, const QuantumStrategy& alice, const QuantumStrategy& bob) {
  EigenDecomposition e = eig_hermitian(game_matrix(g, alice, bob));
  Index top = e.values.size() - 1;
  return {e.vectors.col(top), std::clamp(e.values(top), 0.0, 1.0)};
}

OperatorTable alice_effective_ops(const Game& g, const QuantumStrategy& bob, const CVector& psi) {
  const Index d = bob.dim;
  CMatrix k = coefficient_matrix(psi, d, d);
  Marginals m = marginals(g);
  OperatorTable out(g.nU, std::vector<CMatrix>(g.nA, CMatrix::Zero(d, d)));
  for (int u = 0; u < g.nU; ++u) {
    if (m.left[u] <= 0.0) continue;
    std::vector<double> cond = conditional(g, u);
    for (int a = 0; a < g.nA; ++a) {
      CMatrix agg = bob_aggregate(g, bob, u, a, true, cond);
      // Tr_2[(Id (x) sqrt B)|psi><psi|(Id (x) sqrt B)] = K B^T K^dag.
      out[u][a] = hermitian_part(k * agg.transpose() * k.adjoint());
    }
  }
  return out;
}

OperatorTable bob_effective_ops(const Game& g, const QuantumStrategy& alice, const CVector& psi) {
  const Index d = alice.dim;
  CMatrix k = coefficient_matrix(psi, d, d);
  Marginals m = marginals(g);
  OperatorTable out(g.nV, std::vector<CMatrix>(g.nB, CMatrix::Zero(d, d)));
  for (int v = 0; v < g.nV; ++v) {
    if (m.right[v] <= 0.0) continue;
    std::vector<double> cond = conditional_right(g, v);
    for (int b = 0; b < g.nB; ++b) {
      CMatrix agg = CMatrix::Zero(d, d);
      for (int u = 0; u < g.nU; ++u) {
        if (cond[u] == 0.0) continue;
        for (int a = 0; a < g.nA; ++a) {
          if (g.accepts(a, b, u, v)) agg += cond[u] * alice.povms[u].outcomes[a];
        }
      }
      out[v][b] = hermitian_part(k.transpose() * agg * k.conjugate());
    }
  }
  return out;
}

double discrimination_objective(const Povm& p, const std::vector<CMatrix>& ops) {
  double s = 0.0;
  for (std::size_t a = 0; a < ops.size(); ++a) {
    s += (p.outcomes[a].cwiseProduct(ops[a].transpose())).sum().real();
  }
  return s;
}

namespace {

CMatrix sum_of(const std::vector<CMatrix>& ops) {
  CMatrix s = CMatrix::Zero(ops.front().rows(), ops.front().cols());
  for (const auto& o : ops) s += o;
  return s;
}

// E_a = S^{-1/2} X_a S^{-1/2} plus (Id - Pi_S)/n on the kernel of S.
Povm normalize_by_sum(const std::vector<CMatrix>& xs) {
  const Index d = xs.front().rows();
  const double n = static_cast<double>(xs.size());
  CMatrix s = hermitian_part(sum_of(xs));
  double rank = tolerances().rank_rel;
  CMatrix r = psd_pinv_sqrt(s, rank);
  CMatrix kernel = CMatrix::Identity(d, d) - range_projector(s, rank);
  Povm p;
  for (const auto& x : xs) p.outcomes.push_back(hermitian_part(r * x * r + kernel / n));
  return p;
}

Povm uniform_povm(Index d, int n) {
  Povm p;
  for (int a = 0; a < n; ++a) p.outcomes.push_back(CMatrix::Identity(d, d) / static_cast<double>(n));
  return p;
}

// Optimal split of E_a + E_b between outcomes a and b.
void pairwise_split(Povm& p, const std::vector<CMatrix>& ops, int a, int b) {
  CMatrix f = hermitian_part(p.outcomes[a] + p.outcomes[b]);
  if (f.cwiseAbs().maxCoeff() < 1e-300) return;
  CMatrix fh = psd_sqrt(f);
  CMatrix proj = nonnegative_projector(hermitian_part(fh * (ops[a] - ops[b]) * fh));
  CMatrix x = hermitian_part(fh * proj * fh);
  p.outcomes[a] = x;
  p.outcomes[b] = hermitian_part(f - x);
}

}  // namespace

Povm pgm(const std::vector<CMatrix>& ops) {
  if (ops.empty()) throw Error(ErrorCode::kZeroInput, "pgm needs at least one operator");
  if (sum_of(ops).cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorCode::kZeroInput, "pgm of all-zero operators");
  }
  return normalize_by_sum(ops);
}

Povm helstrom(const CMatrix& k0, const CMatrix& k1) {
  const Index d = k0.rows();
  CMatrix e0 = nonnegative_projector(hermitian_part(k0 - k1));
  Povm p;
  p.outcomes = {e0, CMatrix::Identity(d, d) - e0};
  return p;
}

DiscriminationResult discrimination_fixed_point(const std::vector<CMatrix>& ops, int iters,
                                                double tol, const Povm* start) {
  if (ops.empty()) throw Error(ErrorCode::kZeroInput, "discrimination needs operators");
  const Index d = ops.front().rows();
  const int n = static_cast<int>(ops.size());
  DiscriminationResult res;
  // Effective operators are bounded by Id; anything this small is rounding noise.
  constexpr double kNegligible = 1e-14;
  bool all_zero = sum_of(ops).cwiseAbs().maxCoeff() < kNegligible;
  if (all_zero) {
    res.povm = start ? *start : uniform_povm(d, n);
    res.povm.outcomes.resize(n);
    res.objective = 0.0;
    res.converged = true;
    return res;
  }
  res.povm = pgm(ops);
  res.objective = discrimination_objective(res.povm, ops);
  if (start != nullptr && start->size() >= n) {
    Povm s = *start;
    s.outcomes.resize(n);
    s.subnormalized = false;
    double so = discrimination_objective(s, ops);
    if (so > res.objective) {
      res.povm = s;
      res.objective = so;
    }
  }
  for (int it = 0; it < iters; ++it) {
    double before = res.objective;
    std::vector<CMatrix> xs;
    xs.reserve(n);
    for (int a = 0; a < n; ++a) xs.push_back(ops[a] * res.povm.outcomes[a] * ops[a]);
    if (sum_of(xs).cwiseAbs().maxCoeff() > kNegligible * kNegligible) {
      Povm step = normalize_by_sum(xs);
      double so = discrimination_objective(step, ops);
      if (so > res.objective) {
        res.povm = step;
        res.objective = so;
      }
    }
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        Povm trial = res.povm;
        pairwise_split(trial, ops, a, b);
        double so = discrimination_objective(trial, ops);
        if (so >= res.objective) {
          res.povm = std::move(trial);
          res.objective = so;
        }
      }
    }
    res.iterations = it + 1;
    res.history.push_back(res.objective);
    if (res.objective - before < tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

QuantumStrategy bob_to_alice_response(const Game& g, const ProjectionMap& pm,
                                      const QuantumStrategy& bob) {
  if (static_cast<int>(bob.povms.size()) != g.nV) {
    throw Error(ErrorCode::kShapeMismatch, "strategy does not match question set");
  }
  const Index d = bob.dim;
  QuantumStrategy alice;
  alice.dim = d;
  for (int u = 0; u < g.nU; ++u) {
    std::vector<double> cond = conditional(g, u);
    Povm p;
    p.subnormalized = true;
    p.outcomes.assign(g.nA, CMatrix::Zero(d, d));
    for (int v = 0; v < g.nV; ++v) {
      if (cond[v] == 0.0) continue;
      for (int b = 0; b < g.nB; ++b) {
        int a = pm(u, v, b);
        if (a != ProjectionMap::kBottom) p.outcomes[a] += cond[v] * bob.povms[v].outcomes[b];
      }
    }
    alice.povms.push_back(std::move(p));
  }
  return alice;
}

CMatrix random_unitary(Index d, Rng& rng) {
  CMatrix z(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) z(i, j) = Complex(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR();
  for (Index j = 0; j < d; ++j) {
    double mag = std::abs(r(j, j));
    Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

CVector random_state(Index dim, Rng& rng) {
  CVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
  return v / v.norm();
}

CMatrix random_psd(Index d, Rng& rng) {
  CMatrix z(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) z(i, j) = Complex(rng.normal(), rng.normal());
  }
  return hermitian_part(z * z.adjoint());
}

Povm random_povm(Index d, int outcomes, Rng& rng) {
  std::vector<CMatrix> xs;
  for (int x = 0; x < outcomes; ++x) xs.push_back(random_psd(d, rng));
  return normalize_by_sum(xs);
}

Povm random_projective_povm(Index d, int outcomes, Rng& rng) {
  CMatrix u = random_unitary(d, rng);
  Povm p;
  p.outcomes.assign(outcomes, CMatrix::Zero(d, d));
  for (Index i = 0; i < d; ++i) {
    p.outcomes[i % outcomes] += u.col(i) * u.col(i).adjoint();
  }
  return p;
}

QuantumStrategy random_strategy(Index d, int questions, int answers, Rng& rng) {
  QuantumStrategy s;
  s.dim = d;
  for (int q = 0; q < questions; ++q) s.povms.push_back(random_povm(d, answers, rng));
  return s;
}

QuantumStrategy classical_strategy(const std::vector<int>& answers, int n_answers) {
  QuantumStrategy s;
  s.dim = 1;
  for (int x : answers) {
    Povm p;
    p.outcomes.assign(n_answers, CMatrix::Zero(1, 1));
    p.outcomes[x](0, 0) = 1.0;
    s.povms.push_back(std::move(p));
  }
  return s;
}

QuantumStrategy tensor_strategy(const QuantumStrategy& s1, const QuantumStrategy& s2) {
  QuantumStrategy s;
  s.dim = s1.dim * s2.dim;
  for (const Povm& p1 : s1.povms) {
    for (const Povm& p2 : s2.povms) {
      Povm p;
      p.subnormalized = p1.subnormalized || p2.subnormalized;
      for (const CMatrix& e1 : p1.outcomes) {
        for (const CMatrix& e2 : p2.outcomes) p.outcomes.push_back(kron(e1, e2));
      }
      s.povms.push_back(std::move(p));
    }
  }
  return s;
}

CVector tensor_state(const CVector& psi1, Index d1, const CVector& psi2, Index d2) {
  CVector out(d1 * d1 * d2 * d2);
  const Index d = d1 * d2;
  for (Index i1 = 0; i1 < d1; ++i1) {
    for (Index i2 = 0; i2 < d2; ++i2) {
      for (Index j1 = 0; j1 < d1; ++j1) {
        for (Index j2 = 0; j2 < d2; ++j2) {
          out((i1 * d2 + i2) * d + (j1 * d2 + j2)) = psi1(i1 * d1 + j1) * psi2(i2 * d2 + j2);
        }
      }
    }
  }
  return out;
}

CVector maximally_entangled(Index d) {
  CVector v = CVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

ChshOptimal chsh_optimal() {
  CMatrix id = CMatrix::Identity(2, 2);
  CMatrix z(2, 2), x(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  x << 0.0, 1.0, 1.0, 0.0;
  const double h = 1.0 / std::numbers::sqrt2;
  auto projective = [&](const CMatrix& obs) {
    Povm p;
    p.outcomes = {(id + obs) / 2.0, (id - obs) / 2.0};
    return p;
  };
  ChshOptimal out;
  out.alice.dim = 2;
  out.alice.povms = {projective(z), projective(x)};
  out.bob.dim = 2;
  out.bob.povms = {projective(h * (z + x)), projective(h * (z - x))};
  out.state = maximally_entangled(2);
  return out;
}

namespace {

struct RestartOutcome {
  double value = -1.0;
  QuantumStrategy alice, bob;
  CVector state;
  std::vector<double> history;
  double worst_decrease = 0.0;
};

RestartOutcome run_restart(const Game& g, Index d, const SeesawOptions& options, Rng rng) {
  Marginals m = marginals(g);
  RestartOutcome out;
  out.alice.dim = d;
  out.bob.dim = d;
  for (int u = 0; u < g.nU; ++u) out.alice.povms.push_back(random_projective_povm(d, g.nA, rng));
  for (int v = 0; v < g.nV; ++v) out.bob.povms.push_back(random_projective_povm(d, g.nB, rng));
  StateResult st = best_state(g, out.alice, out.bob);
  out.state = st.state;
  double current = raw_value(g, out.alice, out.bob, out.state);
  out.history.push_back(current);
  for (int it = 0; it < options.iters; ++it) {
    double before = current;
    OperatorTable rho = alice_effective_ops(g, out.bob, out.state);
    for (int u = 0; u < g.nU; ++u) {
      if (m.left[u] <= 0.0) continue;
      // Tr(conj(A) rho) = Tr(A conj(rho)) for Hermitian operators.
      std::vector<CMatrix> ops;
      for (const auto& r : rho[u]) ops.push_back(r.conjugate());
      out.alice.povms[u] = discrimination_fixed_point(ops, 200, 1e-13, &out.alice.povms[u]).povm;
    }
    OperatorTable sigma = bob_effective_ops(g, out.alice, out.state);
    for (int v = 0; v < g.nV; ++v) {
      if (m.right[v] <= 0.0) continue;
      out.bob.povms[v] = discrimination_fixed_point(sigma[v], 200, 1e-13, &out.bob.povms[v]).povm;
    }
    st = best_state(g, out.alice, out.bob);
    double next = raw_value(g, out.alice, out.bob, st.state);
    if (next >= raw_value(g, out.alice, out.bob, out.state)) out.state = st.state;
    current = raw_value(g, out.alice, out.bob, out.state);
    out.history.push_back(current);
    out.worst_decrease = std::max(out.worst_decrease, before - current);
    if (current - before < options.tol) break;
  }
  out.value = std::clamp(current, 0.0, 1.0);
  return out;
}

}  // namespace

SeesawResult seesaw(const Game& g, Index d, const SeesawOptions& options) {
  validate(g);
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "see-saw dimension must be >= 1");
  if (options.restarts < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one restart");
  Rng root(options.seed, 0x73656573);
  std::vector<RestartOutcome> runs(options.restarts);
  parallel_for(
      runs.size(), [&](std::size_t r) { runs[r] = run_restart(g, d, options, root.split(r)); },
      options.threads);
  SeesawResult res;
  int best = 0;
  for (int r = 0; r < options.restarts; ++r) {
    res.restart_values.push_back(runs[r].value);
    res.worst_decrease = std::max(res.worst_decrease, runs[r].worst_decrease);
    if (runs[r].value > runs[best].value) best = r;
  }
  res.best_restart = best;
  res.value = runs[best].value;
  res.alice = std::move(runs[best].alice);
  res.bob = std::move(runs[best].bob);
  res.state = std::move(runs[best].state);
  res.history = std::move(runs[best].history);
  return res;
}

}  // namespace entgames
