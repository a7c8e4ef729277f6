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

#ifndef ENTGAMES_GAME_IO_HPP_
#define ENTGAMES_GAME_IO_HPP_

#include <optional>
#include <string>

#include <json.hpp>

#include "entgames/embezzlement.hpp"
#include "entgames/game.hpp"
#include "entgames/quantum.hpp"

namespace entgames {

using Json = nlohmann::json;

// Game documents:
//   {"nU", "nV", "nA", "nB", "mu": flat row-major or nested [u][v],
//    "predicate": dense [a][b][u][v] of 0/1, or {"projection": [u][v][b]} with -1 for none}
// All parse failures throw Error(kParseError); the parsed game is validated.
Game game_from_json(const Json& j);
// Projection games are written in projection form unless dense is set.
Json game_to_json(const Game& g, bool dense = false);
Game read_game(const std::string& path);
void write_game(const std::string& path, const Game& g, bool dense = false);

// Complex matrices are nested rows of entries, each a number or [re, im].
CMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);
CVector vector_from_json(const Json& j);
Json vector_to_json(const CVector& v);

// Strategy documents:
//   {"type": "strategy", "game": <path relative to the document>, "dim": d,
//    "bob": [[op per answer] per question], "alice": optional, "state": optional}
struct StrategyFile {
  std::string game_path;
  Index dim = 0;
  QuantumStrategy bob;
  std::optional<QuantumStrategy> alice;
  std::optional<CVector> state;
};
StrategyFile strategy_from_json(const Json& j);
Json strategy_to_json(const StrategyFile& s);
StrategyFile read_strategy(const std::string& path);

Json transcript_to_json(const SamplingTranscript& t);

// Comma-separated amplitudes of a vector on C^d (x) C^d, each "x" or "re:im".
// The vector is normalized. Throws Error(kParseError).
CVector parse_state_spec(const std::string& spec, Index* d_out);

Json read_json_file(const std::string& path);

}  // namespace entgames

#endif  // ENTGAMES_GAME_IO_HPP_
