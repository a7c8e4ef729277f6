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

#include "entgames/classical.hpp"

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <string>

#include "entgames/parallel.hpp"

namespace entgames {

double value_of(const Game& g, const DeterministicStrategy& s) {
  if (static_cast<int>(s.alice.size()) != g.nU || static_cast<int>(s.bob.size()) != g.nV) {
    throw Error(ErrorCode::kShapeMismatch, "strategy does not match question sets");
  }
  double total = 0.0;
  for (int u = 0; u < g.nU; ++u) {
    for (int v = 0; v < g.nV; ++v) {
      int a = s.alice[u];
      int b = s.bob[v];
      if (a < 0 || a >= g.nA || b < 0 || b >= g.nB) {
        throw Error(ErrorCode::kShapeMismatch, "strategy answer out of range");
      }
      if (g.accepts(a, b, u, v)) total += g.prob(u, v);
    }
  }
  return total;
}

namespace {

// Outer player's view: questions nOut with nOutAns answers, inner player nIn / nInAns.
struct View {
  bool alice_outer;
  int n_out, n_out_ans, n_in, n_in_ans;
};

View choose_view(const Game& g) {
  double alice = g.nU * std::log(static_cast<double>(g.nA));
  double bob = g.nV * std::log(static_cast<double>(g.nB));
  if (alice <= bob) return {true, g.nU, g.nA, g.nV, g.nB};
  return {false, g.nV, g.nB, g.nU, g.nA};
}

double outer_count(const View& view) {
  return std::pow(static_cast<double>(view.n_out_ans), view.n_out);
}

bool accepts(const Game& g, const View& view, int x_out, int x_in, int q_out, int q_in) {
  return view.alice_outer ? g.accepts(x_out, x_in, q_out, q_in) : g.accepts(x_in, x_out, q_in, q_out);
}

double prob(const Game& g, const View& view, int q_out, int q_in) {
  return view.alice_outer ? g.prob(q_out, q_in) : g.prob(q_in, q_out);
}

struct Best {
  double value = -1.0;
  std::uint64_t index = 0;
};

}  // namespace

double classical_work(const Game& g) {
  View view = choose_view(g);
  return outer_count(view) * view.n_out * view.n_in * view.n_in_ans;
}

ClassicalResult classical_value(const Game& g, const ClassicalOptions& options) {
  validate(g);
  const View view = choose_view(g);
  const double work = classical_work(g);
  if (work > options.cap || outer_count(view) > 9e18) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                "classical enumeration needs " + std::to_string(work) + " steps (cap " +
                    std::to_string(options.cap) + ")");
  }
  const auto total = static_cast<std::uint64_t>(std::llround(outer_count(view)));

  // Inner best response for an outer assignment; returns value and fills answers.
  auto respond = [&](const std::vector<int>& outer, std::vector<int>* inner) {
    double value = 0.0;
    for (int q = 0; q < view.n_in; ++q) {
      double best = -1.0;
      int arg = 0;
      for (int x = 0; x < view.n_in_ans; ++x) {
        double s = 0.0;
        for (int p = 0; p < view.n_out; ++p) {
          if (accepts(g, view, outer[p], x, p, q)) s += prob(g, view, p, q);
        }
        if (s > best) {
          best = s;
          arg = x;
        }
      }
      value += best;
      if (inner) (*inner)[q] = arg;
    }
    return value;
  };

  auto decode = [&](std::uint64_t index) {
    // Lexicographic: the first question is the most significant digit.
    std::vector<int> outer(view.n_out);
    for (int p = view.n_out - 1; p >= 0; --p) {
      outer[p] = static_cast<int>(index % view.n_out_ans);
      index /= view.n_out_ans;
    }
    return outer;
  };

  int threads = options.threads > 0 ? options.threads : worker_count();
  const std::uint64_t chunks = std::min<std::uint64_t>(total, static_cast<std::uint64_t>(threads) * 8);
  std::vector<Best> partial(chunks);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        std::uint64_t lo = total * c / chunks;
        std::uint64_t hi = total * (c + 1) / chunks;
        Best best;
        std::vector<int> outer = decode(lo);
        for (std::uint64_t i = lo; i < hi; ++i) {
          double value = respond(outer, nullptr);
          if (value > best.value) {
            best.value = value;
            best.index = i;
          }
          for (int p = view.n_out - 1; p >= 0; --p) {
            if (++outer[p] < view.n_out_ans) break;
            outer[p] = 0;
          }
        }
        partial[c] = best;
      },
      threads);

  Best best;
  for (const Best& b : partial) {
    if (b.value > best.value) best = b;
  }
  ClassicalResult result;
  std::vector<int> outer = decode(best.index);
  std::vector<int> inner(view.n_in);
  result.value = respond(outer, &inner);
  if (view.alice_outer) {
    result.witness.alice = outer;
    result.witness.bob = inner;
  } else {
    result.witness.alice = inner;
    result.witness.bob = outer;
  }
  return result;
}

}  // namespace entgames
