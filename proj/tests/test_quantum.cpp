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

#include "entgames/classical.hpp"
#include "entgames/errors.hpp"
#include "entgames/game.hpp"
#include "entgames/norms.hpp"
#include "entgames/quantum.hpp"
#include "test_util.hpp"

using namespace entgames;
using namespace entgames::testing;

namespace {

const double kTsirelson = std::pow(std::cos(M_PI / 8.0), 2);

// Two-outcome POVM {(Id + O)/2, (Id - O)/2} from a +-1 observable.
Povm observable_povm(const CMatrix& o) {
  CMatrix id = CMatrix::Identity(o.rows(), o.cols());
  return Povm{{0.5 * (id + o), 0.5 * (id - o)}};
}

double brute_value(const Game& g, const QuantumStrategy& a, const QuantumStrategy& b, const CVector& psi) {
  double s = 0.0;
  for (int u = 0; u < g.nU; ++u) {
    for (int v = 0; v < g.nV; ++v) {
      for (int x = 0; x < g.nA; ++x) {
        for (int y = 0; y < g.nB; ++y) {
          if (!g.accepts(x, y, u, v)) continue;
          CMatrix ca = a.povms[u].outcomes[x].conjugate();
          s += g.prob(u, v) * brute_expectation(psi, ca, b.povms[v].outcomes[y]).real();
        }
      }
    }
  }
  return s;
}

double objective(const Povm& p, const std::vector<CMatrix>& ops) {
  double s = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i) s += (p.outcomes[i] * ops[i]).trace().real();
  return s;
}

}  // namespace

TEST_CASE("value agrees with the explicit sum") {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    Game g = random_game(2, 3, 2, 3, 0.5, t);
    Index d = 1 + t % 3;
    QuantumStrategy a = random_strategy(d, g.nU, g.nA, rng), b = random_strategy(d, g.nV, g.nB, rng);
    CVector psi = random_state(d * d, rng);
    CHECK(value(g, a, b, psi) == doctest::Approx(brute_value(g, a, b, psi)).epsilon(1e-10));
    CMatrix m = game_matrix(g, a, b);
    CHECK(psi.dot(m * psi).real() == doctest::Approx(brute_value(g, a, b, psi)).epsilon(1e-10));
  }
}

TEST_CASE("d = 1 strategies are classical") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Game g = random_game(3, 2, 2, 3, 0.5, seed);
    DeterministicStrategy s{{0, 1, static_cast<int>(seed % 2)}, {static_cast<int>(seed % 3), 2}};
    CVector one = CVector::Ones(1);
    CHECK(value(g, classical_strategy(s.alice, g.nA), classical_strategy(s.bob, g.nB), one) ==
          doctest::Approx(value_of(g, s)).epsilon(1e-14));
  }
}

TEST_CASE("Tsirelson strategy for CHSH") {
  CMatrix z(2, 2), x(2, 2);
  z << 1, 0, 0, -1;
  x << 0, 1, 1, 0;
  QuantumStrategy alice{2, {observable_povm(z), observable_povm(x)}};
  QuantumStrategy bob{2, {observable_povm((z + x) / std::sqrt(2.0)), observable_povm((z - x) / std::sqrt(2.0))}};
  Game g = chsh_game();
  CHECK(value(g, alice, bob, maximally_entangled(2)) == doctest::Approx(kTsirelson).epsilon(1e-6));

  ChshOptimal opt = chsh_optimal();
  CHECK(value(g, opt.alice, opt.bob, opt.state) == doctest::Approx(kTsirelson).epsilon(1e-6));

  StateResult best = best_state(g, alice, bob);
  CHECK(best.value == doctest::Approx(kTsirelson).epsilon(1e-6));
  RVector c = schmidt(best.state, 2, 2).coeffs;
  CHECK(c(0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
  CHECK(c(1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));

  OperatorTable rho = alice_effective_ops(g, bob, maximally_entangled(2));
  Marginals m = marginals(g);
  double via_rho = 0.0;
  for (int u = 0; u < 2; ++u) {
    for (int a = 0; a < 2; ++a) {
      CHECK(rho[u][a].trace().real() == doctest::Approx(0.5));
      via_rho += m.left[u] * (CMatrix(alice.povms[u].outcomes[a].conjugate()) * rho[u][a]).trace().real();
    }
  }
  CHECK(via_rho == doctest::Approx(kTsirelson).epsilon(1e-9));
}

TEST_CASE("always-accept and constant games") {
  Rng rng(2);
  Game g = constant_game(2, 3, 2, 2, true);
  QuantumStrategy a = random_strategy(2, 2, 2, rng), b = random_strategy(2, 3, 2, rng);
  CHECK(value(g, a, b, random_state(4, rng)) == doctest::Approx(1.0));

  // One question always wins, the other always loses: M = Id / 2.
  Game half = Game::zeros(2, 1, 1, 1);
  half.prob(0, 0) = 0.5;
  half.prob(1, 0) = 0.5;
  half.set_accepts(0, 0, 0, 0, true);
  QuantumStrategy a1{2, {Povm{{CMatrix::Identity(2, 2)}}, Povm{{CMatrix::Identity(2, 2)}}}};
  QuantumStrategy b1{2, {Povm{{CMatrix::Identity(2, 2)}}}};
  CHECK(best_state(half, a1, b1).value == doctest::Approx(0.5));
  CHECK(value(half, a1, b1, random_state(4, rng)) == doctest::Approx(0.5));

  QuantumStrategy s1{1, {Povm{{CMatrix::Ones(1, 1)}}}};
  StateResult scalar = best_state(constant_game(1, 1, 1, 1, true), s1, s1);
  CHECK(scalar.state.size() == 1);
  CHECK(scalar.value == doctest::Approx(1.0));
}

TEST_CASE("alice effective operators") {
  Rng rng(3);
  Game g = constant_game(1, 1, 1, 1, true);
  CVector psi = random_state(9, rng);
  QuantumStrategy bob{3, {Povm{{CMatrix::Identity(3, 3)}}}};
  OperatorTable rho = alice_effective_ops(g, bob, psi);
  CHECK(max_abs(rho[0][0] - partial_trace(psi * psi.adjoint(), Keep::kFirst, 3, 3)) < 1e-12);

  Povm sub{{0.5 * CMatrix::Identity(2, 2)}, true};
  CHECK(max_abs(sub.deficit() - 0.5 * CMatrix::Identity(2, 2)) < 1e-15);
  CHECK_NOTHROW(validate_povm(sub));
  sub.subnormalized = false;
  CHECK_THROWS_AS(validate_povm(sub), Error);
}

TEST_CASE("pretty good measurement") {
  CMatrix p0 = CMatrix::Zero(2, 2), p1 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  Povm e = pgm({p0, p1});
  CHECK(max_abs(e.outcomes[0] - p0) < 1e-12);
  CHECK(max_abs(e.outcomes[1] - p1) < 1e-12);

  Rng rng(4);
  CVector v = random_state(3, rng);
  CMatrix r = v * v.adjoint();
  // Rank-one support plus the uniform kernel correction gives Id / 3.
  Povm same = pgm({r, r, r});
  for (const CMatrix& o : same.outcomes) CHECK(max_abs(o - CMatrix::Identity(3, 3) / 3.0) < 1e-10);

  for (int t = 0; t < 30; ++t) {
    std::vector<CMatrix> ops;
    for (int i = 0; i < 3; ++i) ops.push_back(random_psd(3, rng));
    double total = 0.0;
    for (const auto& o : ops) total += o.trace().real();
    for (auto& o : ops) o /= total;
    double opt = discrimination_fixed_point(ops).objective;
    CHECK(objective(pgm(ops), ops) >= opt * opt - 1e-8);
    CHECK(objective(pgm(ops), ops) <= opt + 1e-9);
  }
}

TEST_CASE("Helstrom measurement") {
  Rng rng(5);
  CMatrix k = random_psd(2, rng);
  CHECK(objective(helstrom(k, k), {k, k}) == doctest::Approx(k.trace().real()));

  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k1(1, 1) = 1.0;
  Povm h = helstrom(k0, k1);
  CHECK(max_abs(h.outcomes[0] - k0) < 1e-12);
  CHECK(max_abs(h.outcomes[1] - k1) < 1e-12);

  for (int t = 0; t < 5; ++t) {
    CMatrix a = random_hermitian(2, rng), b = random_hermitian(2, rng);
    double best = objective(helstrom(a, b), {a, b});
    double probe = -1e300;
    for (int i = 0; i < 10000; ++i) {
      CVector x = random_state(2, rng);
      CMatrix p = x * x.adjoint();
      CMatrix q = CMatrix::Identity(2, 2) - p;
      probe = std::max({probe, objective(Povm{{p, q}}, {a, b}),
                        objective(Povm{{CMatrix::Identity(2, 2), CMatrix::Zero(2, 2)}}, {a, b}),
                        objective(Povm{{CMatrix::Zero(2, 2), CMatrix::Identity(2, 2)}}, {a, b})});
    }
    CHECK(probe <= best + 1e-9);
    CHECK(probe >= best - 1e-3);
  }
}

TEST_CASE("fixed-point discrimination") {
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    std::vector<CMatrix> ops(3, CMatrix::Zero(3, 3));
    double expect = 0.0;
    for (Index i = 0; i < 3; ++i) {
      double best = 0.0;
      for (auto& o : ops) {
        o(i, i) = rng.uniform();
        best = std::max(best, o(i, i).real());
      }
      expect += best;
    }
    CHECK(discrimination_fixed_point(ops).objective == doctest::Approx(expect).epsilon(1e-8));
  }

  for (int t = 0; t < 10; ++t) {
    CMatrix a = random_psd(3, rng), b = random_psd(3, rng);
    double h = objective(helstrom(a, b), {a, b});
    CHECK(std::abs(discrimination_fixed_point({a, b}).objective - h) < 1e-8);
  }

  // Symmetric ensemble: the PGM is already optimal.
  std::vector<CMatrix> trine;
  for (int i = 0; i < 3; ++i) {
    CVector s(2);
    s << std::cos(2 * M_PI * i / 3), std::sin(2 * M_PI * i / 3);
    trine.push_back(s * s.adjoint() / 3.0);
  }
  double p = objective(pgm(trine), trine);
  CHECK(discrimination_fixed_point(trine).objective == doctest::Approx(p).epsilon(1e-9));

  DiscriminationResult r = discrimination_fixed_point({random_psd(3, rng), random_psd(3, rng), random_psd(3, rng)});
  for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] >= r.history[i - 1] - 1e-10);
}

TEST_CASE("best response from Bob's strategy") {
  Game id = identity_game(3);
  QuantumStrategy single{2, {Povm{{CMatrix::Identity(2, 2), CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)}}}};
  QuantumStrategy resp = bob_to_alice_response(id, projection_map(id), single);
  CHECK(max_abs(resp.povms[0].outcomes[0] - CMatrix::Identity(2, 2)) < 1e-15);

  Game none = constant_game(2, 2, 2, 2, false);
  Rng rng(7);
  QuantumStrategy b = random_strategy(2, 2, 2, rng);
  QuantumStrategy zero = bob_to_alice_response(none, projection_map(none), b);
  for (const Povm& p : zero.povms) {
    for (const CMatrix& o : p.outcomes) CHECK(max_abs(o) == 0.0);
    CHECK(max_abs(p.with_dummy().outcomes.back() - CMatrix::Identity(2, 2)) < 1e-15);
  }

  Game g = chsh_game();
  ProjectionMap pm = projection_map(g);
  ChshOptimal opt = chsh_optimal();
  QuantumStrategy a = bob_to_alice_response(g, pm, opt.bob);
  CHECK_NOTHROW(validate_strategy(a, 2, 2));
  CHECK(best_state(g, a, opt.bob).value >= sqnorm_squared(g, pm, opt.bob) - 1e-9);
}

TEST_CASE("see-saw") {
  Game g = chsh_game();
  SeesawOptions o;
  o.seed = 3;
  SeesawResult d1 = seesaw(g, 1, o);
  CHECK(std::abs(d1.value - 0.75) < 1e-9);
  SeesawResult d2 = seesaw(g, 2, o);
  CHECK(d2.value >= 0.8535);
  CHECK(d2.value <= kTsirelson + 1e-9);
  CHECK(value(g, d2.alice, d2.bob, d2.state) == doctest::Approx(d2.value).epsilon(1e-9));
  CHECK(d2.worst_decrease <= 1e-10);
  for (std::size_t i = 1; i < d2.history.size(); ++i) CHECK(d2.history[i] >= d2.history[i - 1] - 1e-10);

  SeesawOptions quick;
  quick.restarts = 1;
  SeesawResult accept = seesaw(constant_game(2, 2, 2, 2, true), 2, quick);
  CHECK(accept.value == doctest::Approx(1.0));
  CHECK(accept.history.front() == doctest::Approx(1.0));

  SeesawResult again = seesaw(g, 2, o);
  CHECK(again.value == d2.value);
  CHECK(again.best_restart == d2.best_restart);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Game r = random_game(2, 3, 2, 2, 0.5, seed);
    quick.restarts = 3;
    CHECK(seesaw(r, 1, quick).value <= classical_value(r).value + 1e-9);
  }
}

TEST_CASE("tensor strategies multiply values") {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    Game g = random_game(2, 2, 2, 2, 0.5, t);
    Game h = random_game(2, 1, 2, 3, 0.6, t + 50);
    Index d1 = 1 + t % 2, d2 = 2;
    QuantumStrategy a1 = random_strategy(d1, 2, 2, rng), b1 = random_strategy(d1, 2, 2, rng);
    QuantumStrategy a2 = random_strategy(d2, 2, 2, rng), b2 = random_strategy(d2, 1, 3, rng);
    CVector p1 = random_state(d1 * d1, rng), p2 = random_state(d2 * d2, rng);
    double prod = value(g, a1, b1, p1) * value(h, a2, b2, p2);
    double joint = value(tensor(g, h), tensor_strategy(a1, a2), tensor_strategy(b1, b2),
                         tensor_state(p1, d1, p2, d2));
    CHECK(std::abs(joint - prod) < 1e-9);
  }
}

TEST_CASE("discrimination with rounding-noise operators") {
  CMatrix noise(2, 2);
  noise << Complex(-9.5e-18, 0), Complex(-4.2e-18, -1e-18), Complex(-4.2e-18, 1e-18), Complex(-1.8e-18, 0);
  std::vector<CMatrix> ops = {CMatrix::Zero(2, 2), noise, CMatrix::Zero(2, 2), CMatrix(noise.adjoint() * -1.0)};
  DiscriminationResult r = discrimination_fixed_point(ops, 50, 1e-12);
  CHECK_NOTHROW(validate_povm(r.povm, 1e-8));

  // Product game whose see-saw hits numerically vanishing effective operators.
  Game gh = tensor(random_projection_game(2, 2, 2, 2, 0.9, 2026), random_projection_game(2, 2, 2, 2, 0.9, 2027));
  SeesawOptions o;
  o.restarts = 4;
  o.seed = 2026;
  SeesawResult s;
  CHECK_NOTHROW(s = seesaw(gh, 2, o));
  CHECK(s.value >= classical_value(gh).value - 1e-9);
}
