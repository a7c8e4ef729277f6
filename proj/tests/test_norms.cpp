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

#include <cmath>

#include "entgames/classical.hpp"
#include "entgames/game.hpp"
#include "entgames/norms.hpp"
#include "entgames/quantum.hpp"
#include "test_util.hpp"

using namespace entgames;
using namespace entgames::testing;

namespace {

const double kTsirelson = std::pow(std::cos(M_PI / 8.0), 2);

OperatorTable random_table(Index d, int questions, int answers, Rng& rng) {
  return povm_table(random_strategy(d, questions, answers, rng), answers);
}

}  // namespace

TEST_CASE("extended inner product") {
  // d = 1 reduces to the classical weighted inner product.
  Rng rng(1);
  OperatorTable f(3, std::vector<CMatrix>(2)), g(3, std::vector<CMatrix>(2));
  std::vector<double> mu = {0.2, 0.5, 0.3};
  double expect = 0.0;
  for (int q = 0; q < 3; ++q) {
    for (int x = 0; x < 2; ++x) {
      double a = rng.normal(), b = rng.normal();
      f[q][x] = CMatrix::Constant(1, 1, a);
      g[q][x] = CMatrix::Constant(1, 1, b);
      expect += mu[q] * a * b;
    }
  }
  CHECK(ext_inner(f, g, mu)(0, 0).real() == doctest::Approx(expect));

  OperatorTable id(2, std::vector<CMatrix>{CMatrix::Identity(2, 2)});
  CHECK(max_abs(ext_inner(id, id, {0.5, 0.5}) - CMatrix::Identity(4, 4)) < 1e-15);

  for (int t = 0; t < 20; ++t) {
    OperatorTable a = random_table(2, 3, 2, rng), b = random_table(2, 3, 2, rng);
    CMatrix aa = ext_inner(a, a, mu), bb = ext_inner(b, b, mu), ab = ext_inner(a, b, mu);
    CHECK(max_abs(aa - aa.adjoint()) < 1e-10);
    CHECK(std::pow(operator_norm(ab), 2) <= operator_norm(aa) * operator_norm(bb) + 1e-9);
  }
}

TEST_CASE("square norm examples") {
  Game id = identity_game(3);
  CHECK(sqnorm(id, projection_map(id), classical_strategy({1}, 3)) == doctest::Approx(1.0));

  Game g = chsh_game();
  ProjectionMap pm = projection_map(g);
  double s2 = sqnorm_squared(g, pm, chsh_optimal().bob);
  CHECK(s2 >= kTsirelson * kTsirelson - 1e-6);
  CHECK(s2 <= kTsirelson + 1e-6);

  Game none = constant_game(2, 2, 2, 2, false);
  Rng rng(2);
  CHECK(sqnorm(none, projection_map(none), random_strategy(2, 2, 2, rng)) == 0.0);
}

TEST_CASE("plusnorm") {
  Rng rng(3);
  FractionalStrategy full = fractional_from(random_strategy(2, 3, 2, rng), 2);
  CHECK(plusnorm(single_vector_strategy(full)) == doctest::Approx(1.0));

  FractionalStrategy zero = full;
  for (auto& row : zero.ops) {
    for (auto& x : row) x.setZero();
  }
  CHECK(plusnorm(single_vector_strategy(zero)) == 0.0);

  for (int t = 0; t < 10; ++t) {
    VectorStrategy a;
    for (int w = 0; w < 3; ++w) {
      a.weights.push_back(1.0 / 3.0);
      a.parts.push_back(random_fractional(2, 3, 2, rng));
    }
    double s = rng.uniform();
    CHECK(plusnorm(scaled(a, s)) == doctest::Approx(s * plusnorm(a)).epsilon(1e-10));
  }
}

TEST_CASE("vector strategy value") {
  Game id = identity_game(2);
  ProjectionMap pm = projection_map(id);
  FractionalStrategy full = fractional_from(classical_strategy({0}, 2), 2);
  CHECK(vector_strategy_value(id, pm, single_vector_strategy(full)) == doctest::Approx(1.0));

  Game g = chsh_game();
  Rng rng(4);
  FractionalStrategy zero = random_fractional(2, 2, 2, rng);
  for (auto& row : zero.ops) {
    for (auto& x : row) x.setZero();
  }
  CHECK(vector_strategy_value(g, projection_map(g), single_vector_strategy(zero)) == 0.0);

  // A full single-part strategy has the value of its square norm.
  QuantumStrategy b = random_strategy(2, 2, 2, rng);
  CHECK(vector_strategy_value(g, projection_map(g), single_vector_strategy(fractional_from(b, 2))) ==
        doctest::Approx(sqnorm_squared(g, projection_map(g), b)).epsilon(1e-10));
}

TEST_CASE("vector strategy from a product") {
  Game g = chsh_game();
  Game trivial = identity_game(1);
  Rng rng(5);
  QuantumStrategy b = random_strategy(2, 2, 2, rng);
  VectorStrategy a = vector_from_product(g, trivial, projection_map(trivial), b);
  REQUIRE(a.parts.size() == 1);
  for (int v = 0; v < 2; ++v) {
    for (int x = 0; x < 2; ++x) CHECK(max_abs(a.parts[0].ops[v][x] - b.povms[v].outcomes[x]) < 1e-15);
  }
  CHECK(plusnorm(a) == doctest::Approx(1.0));

  // B = B1 (x) B2: parts factor and plusnorm equals the H square norm of B2.
  Game h = random_projection_game(2, 2, 2, 2, 1.0, 7);
  ProjectionMap ph = projection_map(h);
  for (int t = 0; t < 10; ++t) {
    QuantumStrategy b1 = random_strategy(2, 2, 2, rng), b2 = random_strategy(2, 2, 2, rng);
    VectorStrategy v = vector_from_product(g, h, ph, tensor_strategy(b1, b2));
    OperatorTable resp = apply_game(h, ph, povm_table(b2, 2));
    for (int uh = 0; uh < 2; ++uh) {
      for (int ah = 0; ah < 2; ++ah) {
        const FractionalStrategy& part = v.parts[uh * 2 + ah];
        for (int vg = 0; vg < 2; ++vg) {
          for (int bg = 0; bg < 2; ++bg) {
            CHECK(max_abs(part.ops[vg][bg] - kron(b1.povms[vg].outcomes[bg], resp[uh][ah])) < 1e-12);
          }
        }
      }
    }
    CHECK(plusnorm(v) == doctest::Approx(sqnorm(h, ph, b2)).epsilon(1e-9));
  }

  // Sub-normalization of every (omega, v) row.
  Game hh = random_projection_game(2, 3, 2, 2, 0.7, 8);
  for (int t = 0; t < 10; ++t) {
    QuantumStrategy bb = random_strategy(2, 2 * 3, 4, rng);
    VectorStrategy v = vector_from_product(g, hh, projection_map(hh), bb);
    for (const auto& part : v.parts) {
      for (int q = 0; q < 2; ++q) CHECK(max_eigenvalue(part.row_total(q)) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("tensoring vector strategies is super-multiplicative") {
  Rng rng(6);
  Game g = chsh_game();
  Game h = random_projection_game(2, 2, 2, 2, 1.0, 9);
  ProjectionMap pg = projection_map(g), ph = projection_map(h);
  ProjectionMap pgh = projection_map(tensor(g, h));
  for (int t = 0; t < 10; ++t) {
    VectorStrategy a, b;
    for (int w = 0; w < 2; ++w) {
      a.weights.push_back(0.5);
      a.parts.push_back(random_fractional(2, 2, 2, rng));
      b.weights.push_back(0.5);
      b.parts.push_back(random_fractional(2, 2, 2, rng));
    }
    double joint = vector_strategy_value(tensor(g, h), pgh, tensor_vector_strategies(g, a, h, b));
    CHECK(joint >= vector_strategy_value(g, pg, a) * vector_strategy_value(h, ph, b) - 1e-8);
  }
}

TEST_CASE("sandwich chain on CHSH") {
  Game g = chsh_game();
  ProjectionMap pm = projection_map(g);
  Rng rng(7);
  std::vector<ChainInstance> corpus;
  for (int t = 0; t < 20; ++t) {
    Index d = 1 + t % 3;
    corpus.push_back({"chsh#" + std::to_string(t), random_strategy(d, 2, 2, rng),
                      random_strategy(d, 2, 2, rng), random_state(d * d, rng)});
  }
  ChainReport r = verify_chain(g, pm, corpus);
  CHECK(r.ok());
  CHECK(r.checks.size() == 20);

  ChainInstance broken = corpus.front();
  broken.bob.povms[0].outcomes[0] *= 2.0;
  CHECK_FALSE(verify_chain(g, pm, {broken}).ok());
}

TEST_CASE("classical sandwich at d = 1") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Game g = random_projection_game(3, 3, 2, 2, 0.8, seed);
    ProjectionMap pm = projection_map(g);
    double val = classical_value(g).value;
    double best = 0.0;
    for (int code = 0; code < 8; ++code) {
      std::vector<int> labels = {code & 1, (code >> 1) & 1, (code >> 2) & 1};
      best = std::max(best, sqnorm_squared(g, pm, classical_strategy(labels, 2)));
    }
    CHECK(val * val <= best + 1e-12);
    CHECK(best <= val + 1e-12);
  }
}

TEST_CASE("all-bottom game") {
  Game none = constant_game(2, 2, 2, 2, false);
  ProjectionMap pm = projection_map(none);
  Rng rng(8);
  ChainInstance inst{"none", random_strategy(2, 2, 2, rng), random_strategy(2, 2, 2, rng), random_state(4, rng)};
  ChainReport r = verify_chain(none, pm, {inst});
  CHECK(r.ok());
  CHECK(r.checks[0].value == 0.0);
  CHECK(r.checks[0].sqnorm_sq == 0.0);
  CHECK(r.checks[0].response_value == 0.0);
}

TEST_CASE("product inequality on CHSH x CHSH") {
  Game g = chsh_game();
  SeesawOptions o;
  o.restarts = 4;
  o.seed = 2;
  Game gg = tensor(g, g);
  SeesawResult best = seesaw(gg, 4, o);
  std::vector<QuantumStrategy> h_corpus = {chsh_optimal().bob};
  ProductCheck c = verify_product(g, g, best.bob, h_corpus);
  CHECK(c.product_ok);
  CHECK(c.plusnorm_ok);
  CHECK(c.plusnorm <= c.best_h_sqnorm + 1e-6);
}
