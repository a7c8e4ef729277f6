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

#include "entgames/embezzlement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entgames {
namespace {

CMatrix block_diagonal(const std::vector<CMatrix>& blocks, Index d) {
  const Index n = static_cast<Index>(blocks.size());
  CMatrix out = CMatrix::Zero(n * d, n * d);
  for (Index k = 0; k < n; ++k) out.block(k * d, k * d, d, d) = blocks[k];
  return out;
}

void check_bipartite(const CVector& psi, Index d, const char* what) {
  if (d < 1 || psi.size() != d * d) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + ": expected a vector on C^d (x) C^d");
  }
}

}  // namespace

RVector gamma_coefficients(Index d) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "gamma needs d >= 1");
  RVector c(d);
  for (Index i = 0; i < d; ++i) c(i) = 1.0 / std::sqrt(static_cast<double>(i + 1));
  return c / c.norm();
}

CVector gamma(Index d) {
  RVector c = gamma_coefficients(d);
  CVector v = CVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = c(i);
  return v;
}

CMatrix embezzled_coefficients(const CMatrix& u, const CMatrix& v) {
  RVector g = gamma_coefficients(u.cols());
  return u * g.cast<Complex>().asDiagonal() * v.transpose();
}

CMatrix target_coefficients(const CVector& psi, Index d, Index dprime) {
  check_bipartite(psi, d, "target_coefficients");
  RVector g = gamma_coefficients(dprime);
  CMatrix diag = g.cast<Complex>().asDiagonal();
  return kron(coefficient_matrix(psi, d, d), diag);
}

EmbezzleResult embezzle(const CVector& psi, Index d, Index dprime) {
  check_bipartite(psi, d, "embezzle");
  if (dprime < 1) throw Error(ErrorCode::kInvalidArgument, "embezzle needs d' >= 1");
  SchmidtDecomposition s = schmidt(psi, d, d);
  RVector gp = gamma_coefficients(dprime);
  const Index n = d * dprime;
  std::vector<double> c(n);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < dprime; ++j) c[i * dprime + j] = s.coeffs(i) * gp(j);
  }
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return c[x] > c[y]; });

  EmbezzleResult r;
  r.u = CMatrix::Zero(n, n);
  r.v = CMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    Index i = order[j] / dprime, e = order[j] % dprime;
    for (Index a = 0; a < d; ++a) {
      r.u(a * dprime + e, j) = s.left(a, i);
      r.v(a * dprime + e, j) = s.right(a, i);
    }
  }
  CMatrix x = embezzled_coefficients(r.u, r.v);
  CMatrix t = target_coefficients(psi, d, dprime);
  r.fidelity = std::abs(t.cwiseProduct(x.conjugate()).sum());
  return r;
}

double TauSequence::sum_squares() const {
  double s = 0.0;
  for (int i = 0; i <= k; ++i) s += taus[i] * taus[i];
  return s;
}

int tau_count(Index d, double delta, double eta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  if (!(eta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eta must be positive");
  double k = std::ceil(std::log(static_cast<double>(d) / delta) / std::log1p(eta));
  if (k > 1e7) throw Error(ErrorCode::kSizeOverflow, "tau sequence too long");
  return static_cast<int>(k);
}

TauSequence tau_sequence(Index d, double delta, double eta, Rng& rng) {
  TauSequence t;
  t.d = d;
  t.delta = delta;
  t.eta = eta;
  t.k = tau_count(d, delta, eta);
  t.taus.assign(t.k + 2, 0.0);
  t.taus[0] = 1.0;
  for (int k = 1; k <= t.k; ++k) {
    double lo = std::pow(1.0 + eta, -k);
    double hi = lo * (1.0 + eta);
    t.taus[k] = std::min(rng.uniform(lo, hi), std::nextafter(hi, 0.0));
  }
  return t;
}

CVector xi0(const TauSequence& tau) {
  const Index d = tau.d;
  const Index n = static_cast<Index>(tau.k + 1) * d;
  double norm = std::sqrt(static_cast<double>(d) * tau.sum_squares());
  CMatrix m = CMatrix::Zero(n, n);
  for (int k = 0; k <= tau.k; ++k) {
    for (Index i = 0; i < d; ++i) m(k * d + i, k * d + i) = tau.taus[k] / norm;
  }
  return vectorize(m);
}

int band_of(double lambda, const TauSequence& tau) {
  if (!(lambda > 0.0)) return -1;
  if (lambda >= tau.taus[1]) return 0;
  for (int k = 1; k <= tau.k; ++k) {
    if (lambda >= tau.taus[k + 1] && lambda < tau.taus[k]) return k;
  }
  return tau.k;
}

BandSets band_sets(const RVector& coeffs, const CMatrix& basis, const TauSequence& tau) {
  BandSets b;
  const Index d = basis.rows();
  b.sets.resize(tau.k + 1);
  b.projectors.assign(tau.k + 1, CMatrix::Zero(d, d));
  for (Index i = 0; i < coeffs.size(); ++i) {
    int k = band_of(coeffs(i), tau);
    if (k < 0) continue;
    b.sets[k].push_back(static_cast<int>(i));
    b.projectors[k] += basis.col(i) * basis.col(i).adjoint();
  }
  return b;
}

RoundedState rounded_states(const CVector& psi, Index d, const TauSequence& tau) {
  check_bipartite(psi, d, "rounded_states");
  SchmidtDecomposition s = schmidt(psi, d, d);
  BandSets b = band_sets(s.coeffs, s.left, tau);
  CMatrix m = CMatrix::Zero(d, d);
  double weight = 0.0;
  for (int k = 0; k <= tau.k; ++k) {
    for (int i : b.sets[k]) {
      m += tau.taus[k] * s.left.col(i) * s.right.col(i).transpose();
      weight += tau.taus[k] * tau.taus[k];
    }
  }
  RoundedState r;
  r.c = 1.0 / std::sqrt(weight);
  r.state = vectorize(CMatrix(r.c * m));
  r.distance_sq = (psi - r.state).squaredNorm();
  return r;
}

SamplingTranscript correlated_sample(const CVector& psi, const CVector& phi, Index d, double delta,
                                     Rng& rng, const SamplingOptions& options) {
  double eta = options.eta > 0.0 ? options.eta : std::pow(delta, 0.25);
  TauSequence tau = tau_sequence(d, delta, eta, rng);
  return correlated_sample(psi, phi, tau, rng, options);
}

SamplingTranscript correlated_sample(const CVector& psi, const CVector& phi, const TauSequence& tau,
                                     Rng& rng, const SamplingOptions& options) {
  const Index d = tau.d;
  check_bipartite(psi, d, "correlated_sample");
  check_bipartite(phi, d, "correlated_sample");
  SamplingTranscript t;
  t.tau = tau;
  SchmidtDecomposition sa = schmidt(psi, d, d);
  SchmidtDecomposition sb = schmidt(phi, d, d);
  t.alice = band_sets(sa.coeffs, sa.left, tau);
  t.bob = band_sets(sb.coeffs, sb.left, tau);

  double wa = 0.0, wb = 0.0;
  for (int k = 0; k <= tau.k; ++k) {
    double t2 = tau.taus[k] * tau.taus[k];
    wa += t2 * static_cast<double>(t.alice.sets[k].size());
    wb += t2 * static_cast<double>(t.bob.sets[k].size());
  }
  double overlap = pq_overlap(t);
  double z = static_cast<double>(d) * tau.sum_squares();
  t.p_alice = wa / z;
  t.p_bob = wb / z;
  t.p_sync = overlap / z;
  t.c = 1.0 / std::sqrt(wa);
  t.c_prime = 1.0 / std::sqrt(wb);
  t.c_second = overlap > 0.0 ? 1.0 / std::sqrt(overlap) : 0.0;
  t.delta_warning = tau.delta < (psi - phi).squaredNorm();

  double base = 2.0 * tau.delta * z;
  t.copies_required = std::ceil(1.0 / (base * base));
  t.budget = static_cast<long long>(std::max(1.0, std::min(t.copies_required, options.max_copies)));

  double q = std::clamp(t.p_alice + t.p_bob - t.p_sync, 0.0, 1.0);
  double u_round = rng.uniform();
  double u_sync = rng.uniform();
  if (q <= 0.0) {
    t.exhausted = true;
    t.copies_used = t.budget;
    return t;
  }
  double r = q >= 1.0 ? 1.0 : 1.0 + std::floor(std::log1p(-u_round) / std::log1p(-q));
  if (r > static_cast<double>(t.budget)) {
    t.exhausted = true;
    t.copies_used = t.budget;
    return t;
  }
  t.copies_used = static_cast<long long>(r);
  t.synchronous = u_sync < t.p_sync / q;
  t.success = t.synchronous;
  if (!t.success) return t;

  CMatrix m = CMatrix::Zero(d, d);
  for (int k = 0; k <= tau.k; ++k) {
    for (int i : t.alice.sets[k]) {
      for (int j : t.bob.sets[k]) {
        Complex ov = sa.left.col(i).dot(sb.left.col(j));
        m += tau.taus[k] * ov * sa.left.col(i) * sb.right.col(j).transpose();
      }
    }
  }
  t.joint_state = vectorize(CMatrix(t.c_second * m));
  return t;
}

double pq_overlap(const SamplingTranscript& t) {
  double s = 0.0;
  for (int k = 0; k <= t.tau.k; ++k) {
    double t2 = t.tau.taus[k] * t.tau.taus[k];
    s += t2 * (t.alice.projectors[k] * t.bob.projectors[k]).trace().real();
  }
  return s;
}

CopyProbabilities copy_probabilities_direct(const SamplingTranscript& t) {
  const Index d = t.tau.d;
  std::vector<CMatrix> qbar;
  for (const CMatrix& q : t.bob.projectors) qbar.push_back(q.conjugate());
  CMatrix pa = block_diagonal(t.alice.projectors, d);
  CMatrix pb = block_diagonal(qbar, d);
  CMatrix id = CMatrix::Identity(pa.rows(), pa.cols());
  CVector xi = xi0(t.tau);
  CopyProbabilities p;
  p.alice = bipartite_expectation(xi, pa, id).real();
  p.bob = bipartite_expectation(xi, id, pb).real();
  p.both = bipartite_expectation(xi, pa, pb).real();
  return p;
}

double sync_probability_closed_form(const SamplingTranscript& t) {
  return pq_overlap(t) / (static_cast<double>(t.tau.d) * t.tau.sum_squares());
}

CVector epsilon_state(double eps, bool flip) {
  CVector v = CVector::Zero(4);
  double hi = std::sqrt((1.0 + eps) / 2.0), lo = std::sqrt((1.0 - eps) / 2.0);
  v(0) = flip ? lo : hi;
  v(3) = flip ? hi : lo;
  return v;
}

double naive_embezzle_failure(double eps, Index dprime) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0, 1)");
  CVector psi = epsilon_state(eps, false);
  CVector phi = epsilon_state(eps, true);
  EmbezzleResult a = embezzle(psi, 2, dprime);
  EmbezzleResult b = embezzle(phi, 2, dprime);
  CMatrix x = embezzled_coefficients(a.u, b.v);
  return (x - target_coefficients(psi, 2, dprime)).norm();
}

ClassicalSample classical_correlated_sample(const std::vector<double>& p,
                                            const std::vector<double>& q, Rng& rng) {
  if (p.size() != q.size() || p.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "distributions must share a nonempty universe");
  }
  double mp = *std::max_element(p.begin(), p.end());
  double mq = *std::max_element(q.begin(), q.end());
  if (!(mp > 0.0) || !(mq > 0.0)) throw Error(ErrorCode::kZeroInput, "distribution has no mass");
  ClassicalSample s;
  const auto n = static_cast<std::uint64_t>(p.size());
  while (s.u < 0 || s.v < 0) {
    int x = static_cast<int>(rng.below(n));
    double t = rng.uniform();
    if (s.u < 0 && t < p[x] / mp) s.u = x;
    if (s.v < 0 && t < q[x] / mq) s.v = x;
  }
  s.agreed = s.u == s.v;
  return s;
}

}  // namespace entgames
