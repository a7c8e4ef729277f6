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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "entgames/embezzlement.hpp"
#include "entgames/errors.hpp"
#include "entgames/quantum.hpp"
#include "test_util.hpp"

using namespace entgames;
using namespace entgames::testing;

namespace {

double harmonic(Index d) {
  double h = 0.0;
  for (Index i = 1; i <= d; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

// Schmidt coefficients a_i >= 0 with the given squares, on |ii>.
CVector diagonal_state(const std::vector<double>& squares) {
  const Index d = static_cast<Index>(squares.size());
  CVector v = CVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = std::sqrt(squares[i]);
  return v / v.norm();
}

}  // namespace

TEST_CASE("embezzling family") {
  CVector g1 = entgames::gamma(1);
  CHECK(g1.size() == 1);
  CHECK(std::abs(g1(0) - 1.0) < 1e-15);

  RVector c2 = gamma_coefficients(2);
  CHECK(c2(0) == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(c2(1) == doctest::Approx(std::sqrt(1.0 / 3.0)));

  RVector c4 = gamma_coefficients(4);
  CHECK(c4(0) == doctest::Approx(1.0 / std::sqrt(25.0 / 12.0)).epsilon(1e-12));

  for (Index d : {2, 5, 17, 64}) {
    RVector c = gamma_coefficients(d);
    CHECK(std::abs(c(0) - 1.0 / std::sqrt(harmonic(d))) < 1e-12);
    for (Index i = 1; i < d; ++i) CHECK(c(i) < c(i - 1));
    CVector v = entgames::gamma(d);
    CHECK(v.norm() == doctest::Approx(1.0));
    CHECK((schmidt(v, d, d).coeffs - c).norm() < 1e-10);
  }
}

TEST_CASE("embezzlement unitaries") {
  // Target equal to the resource itself with d' = 1.
  EmbezzleResult self = embezzle(entgames::gamma(3), 3, 1);
  CHECK(self.fidelity == doctest::Approx(1.0).epsilon(1e-12));

  CVector prod = CVector::Zero(4);
  prod(0) = 1.0;
  CHECK(embezzle(prod, 2, 64).fidelity >= 0.9);

  Rng rng(1);
  for (int t = 0; t < 5; ++t) {
    CVector psi = random_state(4, rng);
    Index dp = 16;
    EmbezzleResult r = embezzle(psi, 2, dp);
    CHECK(max_abs(r.u * r.u.adjoint() - CMatrix::Identity(2 * dp, 2 * dp)) < 1e-10);
    CHECK(max_abs(r.v * r.v.adjoint() - CMatrix::Identity(2 * dp, 2 * dp)) < 1e-10);
    CVector out = kron(r.u, r.v) * entgames::gamma(2 * dp);
    CVector target = tensor_state(psi, 2, entgames::gamma(dp), dp);
    double direct = std::abs(target.dot(out));
    CHECK(direct == doctest::Approx(r.fidelity).epsilon(1e-9));
    CHECK(max_abs(coefficient_matrix(out, 2 * dp, 2 * dp) - embezzled_coefficients(r.u, r.v)) < 1e-12);
    CHECK(max_abs(coefficient_matrix(target, 2 * dp, 2 * dp) - target_coefficients(psi, 2, dp)) < 1e-12);
  }
}

TEST_CASE("tau sequence") {
  CHECK(tau_count(2, 0.1, std::pow(0.1, 0.25)) == 7);
  CHECK(tau_count(2, 0.1, std::pow(0.1, 0.25)) ==
        static_cast<int>(std::ceil(std::log(20.0) / std::log(1.0 + std::pow(0.1, 0.25)))));

  Rng a(3), b(3);
  TauSequence ta = tau_sequence(3, 0.01, 0.2, a), tb = tau_sequence(3, 0.01, 0.2, b);
  CHECK(ta.taus == tb.taus);

  Rng rng(4);
  for (int t = 0; t < 1000; ++t) {
    double eta = rng.uniform(0.05, 0.6);
    TauSequence s = tau_sequence(2 + t % 3, rng.uniform(0.001, 0.5), eta, rng);
    CHECK(s.taus.front() == 1.0);
    CHECK(s.taus.back() == 0.0);
    for (int k = 1; k <= s.k; ++k) {
      double lo = std::pow(1.0 + eta, -k);
      CHECK(s.taus[k] >= lo);
      CHECK(s.taus[k] < lo * (1.0 + eta));
    }
  }
  CHECK_THROWS_AS(tau_count(2, 0.0, 0.1), Error);
}

TEST_CASE("xi0") {
  TauSequence zero;
  zero.d = 3;
  zero.k = 0;
  zero.taus = {1.0, 0.0};
  CHECK((xi0(zero) - maximally_entangled(3)).norm() < 1e-12);

  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    TauSequence s = tau_sequence(2, 0.2, 0.5, rng);
    CVector x = xi0(s);
    CHECK(std::abs(x.norm() - 1.0) < 1e-12);
    Index n = static_cast<Index>(s.k + 1) * 2;
    std::vector<double> expect;
    for (int k = 0; k <= s.k; ++k) {
      for (int i = 0; i < 2; ++i) expect.push_back(s.taus[k] / std::sqrt(2.0 * s.sum_squares()));
    }
    std::sort(expect.rbegin(), expect.rend());
    RVector got = schmidt(x, n, n).coeffs;
    for (Index i = 0; i < n; ++i) CHECK(got(i) == doctest::Approx(expect[i]).epsilon(1e-9));
  }
}

TEST_CASE("band sets") {
  Rng rng(6);
  TauSequence s = tau_sequence(3, 0.05, 0.3, rng);
  CHECK(band_of(1.0, s) == 0);
  CHECK(band_of(s.taus[1], s) == 0);
  for (int k = 2; k <= s.k; ++k) CHECK(band_of(s.taus[k], s) == k - 1);
  CHECK(band_of(0.0, s) == -1);

  for (int t = 0; t < 20; ++t) {
    Index d = 2 + t % 3;
    CVector psi = random_state(d * d, rng);
    if (t % 4 == 0) psi = kron(random_state(d, rng), random_state(d, rng));
    SchmidtDecomposition sd = schmidt(psi, d, d);
    BandSets b = band_sets(sd.coeffs, sd.left, s);
    Index nonzero = 0;
    for (Index i = 0; i < d; ++i) nonzero += sd.coeffs(i) > 0.0;
    double rank = 0.0;
    for (const CMatrix& p : b.projectors) rank += p.trace().real();
    CHECK(rank == doctest::Approx(static_cast<double>(nonzero)));
  }
}

TEST_CASE("rounded states") {
  Rng rng(7);
  // Coefficients whose ratio is a band value: the rounding only rescales.
  TauSequence s;
  s.d = 2;
  s.delta = 0.01;
  s.eta = 0.5;
  s.k = 2;
  s.taus = {1.0, 0.75, 0.5, 0.0};
  CVector edge = diagonal_state({0.64, 0.36});
  RoundedState r = rounded_states(edge, 2, s);
  CHECK((r.state - edge).norm() < 1e-12);
  CHECK(r.c == doctest::Approx(1.0 / std::sqrt(1.0 + 0.75 * 0.75)));

  CVector me = maximally_entangled(4);
  TauSequence s4 = tau_sequence(4, 0.01, 0.1, rng);
  RoundedState rme = rounded_states(me, 4, s4);
  CHECK(rme.distance_sq <= 0.1 * 2.0);
  CHECK(rme.state.norm() == doctest::Approx(1.0));

  int lower = 0;
  for (int t = 0; t < 1000; ++t) {
    Index d = 2 + t % 3;
    double eta = std::pow(0.01, 0.25);
    CVector psi = random_state(d * d, rng);
    TauSequence tau = tau_sequence(d, 0.01, eta, rng);
    RoundedState x = rounded_states(psi, d, tau);
    CHECK(x.state.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x.c <= 1.0 + 1e-12);
    // Normalizer bound that survives coefficients below the last edge.
    double bound = std::pow(1.0 + eta, 4) + std::pow(1.0 + eta, 2) * 1e-4 / static_cast<double>(d);
    CHECK(1.0 / (x.c * x.c) <= bound + 1e-12);
    lower += x.c >= 1.0 / (1.0 + eta);
  }
  CHECK(lower > 900);
}

TEST_CASE("correlated sampling with identical inputs") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    Index d = 2 + t % 3;
    CVector psi = random_state(d * d, rng);
    Rng draw = Rng(9).split(t);
    TauSequence tau = tau_sequence(d, 0.01, std::pow(0.01, 0.25), draw);
    SamplingOptions o;
    o.max_copies = 1e9;
    SamplingTranscript tr = correlated_sample(psi, psi, tau, rng, o);
    CHECK(tr.alice.sets == tr.bob.sets);
    for (int k = 0; k <= tau.k; ++k) CHECK(max_abs(tr.alice.projectors[k] - tr.bob.projectors[k]) < 1e-12);
    double ov = pq_overlap(tr);
    CHECK(ov >= 1.0 - 1e-12);
    // Same normalizer as rounded_states: C^-2 = sum_k tau_k^2 s_k.
    CHECK(ov <= std::pow(1.0 + tau.eta, 4) + std::pow(1.0 + tau.eta, 2) * 1e-4 / static_cast<double>(d) + 1e-12);
    CopyProbabilities cp = copy_probabilities_direct(tr);
    CHECK(std::abs(cp.both - sync_probability_closed_form(tr)) < 1e-9);
    CHECK(std::abs(cp.alice - tr.p_alice) < 1e-9);
    CHECK(std::abs(cp.bob - tr.p_bob) < 1e-9);
    if (tr.success) {
      RoundedState r = rounded_states(psi, d, tau);
      CHECK(std::abs(std::norm(tr.joint_state->dot(r.state)) - 1.0) < 1e-9);
    }
  }

  CVector prod = CVector::Zero(4);
  prod(0) = 1.0;
  int wins = 0;
  for (int t = 0; t < 20; ++t) {
    Rng r = Rng(10).split(t);
    SamplingTranscript tr = correlated_sample(prod, prod, 2, 0.01, r);
    int used = 0;
    for (const auto& set : tr.alice.sets) used += !set.empty();
    CHECK(used == 1);
    if (tr.success) {
      ++wins;
      CHECK(std::abs(std::norm(tr.joint_state->dot(prod)) - 1.0) < 1e-12);
    }
  }
  CHECK(wins > 0);
}

TEST_CASE("correlated sampling properties") {
  Rng rng(11);
  // Orthogonal supports: no band overlap.
  CVector a = CVector::Zero(4), b = CVector::Zero(4);
  a(0) = 1.0;
  b(3) = 1.0;
  SamplingTranscript tr = correlated_sample(a, b, 2, 0.5, rng);
  CHECK(pq_overlap(tr) == doctest::Approx(0.0));
  CHECK_FALSE(tr.success);
  CHECK(tr.delta_warning);

  // Same local unitary on both sides: same statistics, rotated output.
  CVector psi = random_state(9, rng);
  CMatrix u = random_unitary(3, rng);
  CVector rotated = kron(u, u) * psi;
  Rng d1 = Rng(12);
  TauSequence tau = tau_sequence(3, 0.01, std::pow(0.01, 0.25), d1);
  SamplingOptions o;
  o.max_copies = 1e9;
  Rng s1 = Rng(13), s2 = Rng(13);
  SamplingTranscript x = correlated_sample(psi, psi, tau, s1, o);
  SamplingTranscript y = correlated_sample(rotated, rotated, tau, s2, o);
  CHECK(x.alice.sets == y.alice.sets);
  CHECK(std::abs(x.p_sync - y.p_sync) < 1e-9);
  CHECK(x.success == y.success);

  // Overlap decreases as the pair separates.
  double prev = 1e9;
  for (double eps : {0.0, 0.2, 0.6}) {
    double mean = 0.0;
    for (int t = 0; t < 200; ++t) {
      Rng r = Rng(14).split(t);
      mean += pq_overlap(correlated_sample(epsilon_state(eps, false), epsilon_state(eps, true), 2, 0.01, r));
    }
    mean /= 200.0;
    CHECK(mean <= prev + 1e-12);
    prev = mean;
  }
}

TEST_CASE("transcripts are reproducible") {
  CVector psi = epsilon_state(0.3, false), phi = epsilon_state(0.3, true);
  Rng a(21), b(21);
  SamplingTranscript x = correlated_sample(psi, phi, 2, 0.03, a);
  SamplingTranscript y = correlated_sample(psi, phi, 2, 0.03, b);
  CHECK(x.tau.taus == y.tau.taus);
  CHECK(x.copies_used == y.copies_used);
  CHECK(x.success == y.success);
  CHECK(x.budget <= 10000);
  CHECK(x.copies_required >= 1.0);
}

TEST_CASE("naive embezzlement fails for nearby states") {
  for (double eps : {0.05, 0.1, 0.3}) CHECK(naive_embezzle_failure(eps, 64) >= 0.25);
  CHECK(naive_embezzle_failure(0.0, 64) < 0.25);
  CHECK_THROWS_AS(naive_embezzle_failure(1.0), Error);
}

TEST_CASE("classical correlated sampling") {
  Rng rng(15);
  std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  for (int t = 0; t < 200; ++t) CHECK(classical_correlated_sample(p, p, rng).agreed);

  std::vector<double> q = {0.0, 0.2, 0.3, 0.5};  // total variation 0.1
  int disagree = 0;
  std::vector<int> counts(4, 0);
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    ClassicalSample s = classical_correlated_sample(p, q, rng);
    disagree += !s.agreed;
    ++counts[s.u];
  }
  CHECK(disagree <= 0.25 * n);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(counts[i] / static_cast<double>(n) - p[i]) < 0.02);

  std::vector<double> e0 = {1.0, 0.0}, e1 = {0.0, 1.0};
  for (int t = 0; t < 50; ++t) CHECK_FALSE(classical_correlated_sample(e0, e1, rng).agreed);
}
