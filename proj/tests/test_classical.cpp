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
#include "entgames/errors.hpp"
#include "entgames/game.hpp"

using namespace entgames;

namespace {

// Odometer over every pair of deterministic strategies.
double brute_force(const Game& g) {
  DeterministicStrategy s{std::vector<int>(g.nU, 0), std::vector<int>(g.nV, 0)};
  double best = 0.0;
  auto next = [](std::vector<int>& xs, int base) {
    for (int& x : xs) {
      if (++x < base) return true;
      x = 0;
    }
    return false;
  };
  do {
    std::fill(s.bob.begin(), s.bob.end(), 0);
    do {
      best = std::max(best, value_of(g, s));
    } while (next(s.bob, g.nB));
  } while (next(s.alice, g.nA));
  return best;
}

}  // namespace

TEST_CASE("value_of") {
  Game g = chsh_game();
  CHECK(value_of(g, {{0, 0}, {0, 0}}) == 0.75);
  CHECK(value_of(constant_game(2, 2, 2, 2, false), {{0, 1}, {1, 0}}) == 0.0);
  CHECK(value_of(constant_game(2, 2, 2, 2, true), {{0, 1}, {1, 0}}) == 1.0);
  CHECK_THROWS_AS(value_of(g, {{0}, {0, 0}}), Error);
}

TEST_CASE("classical value of CHSH and its square") {
  Game g = chsh_game();
  ClassicalResult r = classical_value(g);
  CHECK(r.value == 0.75);
  CHECK(value_of(g, r.witness) == r.value);

  Game gg = tensor(g, g);
  ClassicalResult r2 = classical_value(gg);
  CHECK(r2.value == 0.625);
  CHECK(r2.value > 0.75 * 0.75);
  CHECK(value_of(gg, r2.witness) == r2.value);

  double p = classical_value(to_projection(g)).value;
  CHECK(p >= 0.75);
  CHECK(p <= 0.875);
}

TEST_CASE("matches brute force on random games") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Game g = seed % 2 ? random_game(2 + seed % 2, 2, 2, 2 + seed % 3 / 2, 0.5, seed)
                      : random_projection_game(3, 2 + seed % 2, 2, 3, 0.7, seed);
    ClassicalResult r = classical_value(g);
    CHECK(r.value == doctest::Approx(brute_force(g)).epsilon(1e-12));
    CHECK(value_of(g, r.witness) == doctest::Approx(r.value).epsilon(1e-12));
  }
}

TEST_CASE("thread count does not change the result") {
  Game g = random_projection_game(4, 4, 3, 3, 0.8, 17);
  ClassicalOptions one, many;
  one.threads = 1;
  many.threads = 4;
  ClassicalResult a = classical_value(g, one), b = classical_value(g, many);
  CHECK(a.value == b.value);
  CHECK(a.witness == b.witness);
}

TEST_CASE("cap") {
  Game g = random_game(12, 12, 4, 4, 0.5, 1);
  try {
    classical_value(g);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSearchSpaceTooLarge);
  }
  CHECK(classical_work(g) > 1e8);
}

TEST_CASE("tensor is super-multiplicative and the square dominates val^2") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Game g = random_projection_game(2, 2, 2, 2, 0.8, seed);
    Game h = random_projection_game(2, 2, 2, 2, 0.8, seed + 100);
    double vg = classical_value(g).value, vh = classical_value(h).value;
    CHECK(classical_value(tensor(g, h)).value >= vg * vh - 1e-12);

    Game sq = square_game(g, projection_map(g));
    CHECK(classical_value(sq).value >= vg * vg - 1e-12);
  }
}

TEST_CASE("rescaling mu keeps the optimum") {
  Game g = random_game(3, 3, 2, 2, 0.5, 5);
  Game s = g;
  for (double& m : s.mu) m = m * 3.0;
  double total = 0.0;
  for (double m : s.mu) total += m;
  for (double& m : s.mu) m /= total;
  ClassicalResult a = classical_value(g), b = classical_value(s);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
  CHECK(value_of(g, b.witness) == doctest::Approx(a.value).epsilon(1e-12));
}
