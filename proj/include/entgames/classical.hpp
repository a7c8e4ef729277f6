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

#ifndef ENTGAMES_CLASSICAL_HPP_
#define ENTGAMES_CLASSICAL_HPP_

#include <vector>

#include "entgames/game.hpp"

namespace entgames {

struct DeterministicStrategy {
  std::vector<int> alice;  // f: U -> A
  std::vector<int> bob;    // g: V -> B

  bool operator==(const DeterministicStrategy&) const = default;
};

double value_of(const Game& g, const DeterministicStrategy& s);

struct ClassicalOptions {
  // Upper bound on enumeration work (outer strategies x inner evaluations).
  double cap = 1e8;
  int threads = 0;
};

struct ClassicalResult {
  double value = 0.0;
  DeterministicStrategy witness;
};

// Enumeration work for classical_value; compared against ClassicalOptions::cap.
double classical_work(const Game& g);

// Exact value. Enumerates the side with fewer deterministic strategies and
// best-responds on the other. Among optimal strategies the witness has the
// smallest outer strategy in lexicographic order and the smallest inner
// answers. Throws Error(kSearchSpaceTooLarge) above the cap.
ClassicalResult classical_value(const Game& g, const ClassicalOptions& options = {});

}  // namespace entgames

#endif  // ENTGAMES_CLASSICAL_HPP_
