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

#include "entgames/game_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace entgames {
namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::kParseError, msg); }

int get_dim(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) parse_error(std::string("missing integer field ") + key);
  int v = j[key].get<int>();
  if (v < 1) parse_error(std::string(key) + " must be positive");
  return v;
}

const Json& expect_array(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) {
    parse_error(what + ": expected an array of length " + std::to_string(n));
  }
  return j;
}

double get_number(const Json& j, const std::string& what) {
  if (!j.is_number()) parse_error(what + ": expected a number");
  return j.get<double>();
}

Complex entry_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  parse_error("matrix entry must be a number or [re, im]");
}

Json entry_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

QuantumStrategy strategy_table(const Json& j, Index dim, const std::string& what) {
  if (!j.is_array()) parse_error(what + ": expected an array of questions");
  QuantumStrategy s;
  s.dim = dim;
  for (const Json& q : j) {
    if (!q.is_array() || q.empty()) parse_error(what + ": expected operators per answer");
    Povm p;
    for (const Json& op : q) {
      CMatrix m = matrix_from_json(op);
      if (m.rows() != dim || m.cols() != dim) parse_error(what + ": operator dimension mismatch");
      p.outcomes.push_back(std::move(m));
    }
    s.povms.push_back(std::move(p));
  }
  return s;
}

Json table_to_json(const QuantumStrategy& s) {
  Json out = Json::array();
  for (const Povm& p : s.povms) {
    Json row = Json::array();
    for (const CMatrix& m : p.outcomes) row.push_back(matrix_to_json(m));
    out.push_back(row);
  }
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

Game game_from_json(const Json& j) {
  if (!j.is_object()) parse_error("game document must be an object");
  int nU = get_dim(j, "nU"), nV = get_dim(j, "nV"), nA = get_dim(j, "nA"), nB = get_dim(j, "nB");
  Game g = Game::zeros(nU, nV, nA, nB);
  if (!j.contains("mu")) parse_error("missing mu");
  const Json& mu = j["mu"];
  if (mu.is_array() && mu.size() == static_cast<std::size_t>(nU) * nV && (mu.empty() || mu[0].is_number())) {
    for (std::size_t i = 0; i < mu.size(); ++i) g.mu[i] = get_number(mu[i], "mu");
  } else {
    expect_array(mu, nU, "mu");
    for (int u = 0; u < nU; ++u) {
      expect_array(mu[u], nV, "mu row");
      for (int v = 0; v < nV; ++v) g.prob(u, v) = get_number(mu[u][v], "mu");
    }
  }
  if (!j.contains("predicate")) parse_error("missing predicate");
  const Json& pr = j["predicate"];
  if (pr.is_object()) {
    if (!pr.contains("projection")) parse_error("predicate object needs a projection field");
    const Json& pi = pr["projection"];
    expect_array(pi, nU, "projection");
    for (int u = 0; u < nU; ++u) {
      expect_array(pi[u], nV, "projection row");
      for (int v = 0; v < nV; ++v) {
        expect_array(pi[u][v], nB, "projection entry");
        for (int b = 0; b < nB; ++b) {
          if (!pi[u][v][b].is_number_integer()) parse_error("projection labels must be integers");
          int a = pi[u][v][b].get<int>();
          if (a == ProjectionMap::kBottom) continue;
          if (a < 0 || a >= nA) parse_error("projection label out of range");
          g.set_accepts(a, b, u, v, true);
        }
      }
    }
  } else {
    expect_array(pr, nA, "predicate");
    for (int a = 0; a < nA; ++a) {
      expect_array(pr[a], nB, "predicate[a]");
      for (int b = 0; b < nB; ++b) {
        expect_array(pr[a][b], nU, "predicate[a][b]");
        for (int u = 0; u < nU; ++u) {
          expect_array(pr[a][b][u], nV, "predicate[a][b][u]");
          for (int v = 0; v < nV; ++v) {
            const Json& x = pr[a][b][u][v];
            int val = x.is_boolean() ? static_cast<int>(x.get<bool>())
                      : x.is_number_integer() ? x.get<int>() : -1;
            if (val != 0 && val != 1) parse_error("predicate entries must be 0 or 1");
            g.set_accepts(a, b, u, v, val == 1);
          }
        }
      }
    }
  }
  try {
    validate(g);
  } catch (const Error& e) {
    parse_error(std::string("invalid game: ") + e.what());
  }
  return g;
}

Json game_to_json(const Game& g, bool dense) {
  Json j;
  j["nU"] = g.nU;
  j["nV"] = g.nV;
  j["nA"] = g.nA;
  j["nB"] = g.nB;
  j["mu"] = g.mu;
  if (!dense && is_projection(g)) {
    ProjectionMap pm = projection_map(g);
    Json pi = Json::array();
    for (int u = 0; u < g.nU; ++u) {
      Json row = Json::array();
      for (int v = 0; v < g.nV; ++v) {
        Json labels = Json::array();
        for (int b = 0; b < g.nB; ++b) labels.push_back(pm(u, v, b));
        row.push_back(labels);
      }
      pi.push_back(row);
    }
    j["predicate"] = {{"projection", pi}};
    return j;
  }
  Json pr = Json::array();
  for (int a = 0; a < g.nA; ++a) {
    Json pa = Json::array();
    for (int b = 0; b < g.nB; ++b) {
      Json pb = Json::array();
      for (int u = 0; u < g.nU; ++u) {
        Json pu = Json::array();
        for (int v = 0; v < g.nV; ++v) pu.push_back(g.accepts(a, b, u, v) ? 1 : 0);
        pb.push_back(pu);
      }
      pa.push_back(pb);
    }
    pr.push_back(pa);
  }
  j["predicate"] = pr;
  return j;
}

Game read_game(const std::string& path) { return game_from_json(read_json_file(path)); }

void write_game(const std::string& path, const Game& g, bool dense) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << game_to_json(g, dense).dump(2) << "\n";
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) parse_error("matrix must be a nested array");
  const std::size_t rows = j.size(), cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    expect_array(j[r], cols, "matrix row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = entry_from_json(j[r][c]);
  }
  return m;
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(entry_to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_error("vector must be a nonempty array");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = entry_from_json(j[i]);
  return v;
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(entry_to_json(v(i)));
  return out;
}

StrategyFile strategy_from_json(const Json& j) {
  if (!j.is_object() || j.value("type", "") != "strategy") parse_error("not a strategy document");
  StrategyFile s;
  if (!j.contains("game") || !j["game"].is_string()) parse_error("strategy needs a game path");
  s.game_path = j["game"].get<std::string>();
  s.dim = get_dim(j, "dim");
  if (!j.contains("bob")) parse_error("strategy needs bob operators");
  s.bob = strategy_table(j["bob"], s.dim, "bob");
  if (j.contains("alice")) s.alice = strategy_table(j["alice"], s.dim, "alice");
  if (j.contains("state")) {
    s.state = vector_from_json(j["state"]);
    if (s.state->size() != s.dim * s.dim) parse_error("state must live on C^d (x) C^d");
  }
  return s;
}

Json strategy_to_json(const StrategyFile& s) {
  Json j;
  j["type"] = "strategy";
  j["game"] = s.game_path;
  j["dim"] = s.dim;
  j["bob"] = table_to_json(s.bob);
  if (s.alice) j["alice"] = table_to_json(*s.alice);
  if (s.state) j["state"] = vector_to_json(*s.state);
  return j;
}

StrategyFile read_strategy(const std::string& path) { return strategy_from_json(read_json_file(path)); }

Json transcript_to_json(const SamplingTranscript& t) {
  Json j;
  j["d"] = t.tau.d;
  j["delta"] = t.tau.delta;
  j["eta"] = t.tau.eta;
  j["K"] = t.tau.k;
  j["taus"] = t.tau.taus;
  j["copies_required"] = t.copies_required;
  j["budget"] = t.budget;
  j["copies_used"] = t.copies_used;
  j["exhausted"] = t.exhausted;
  j["synchronous"] = t.synchronous;
  j["success"] = t.success;
  j["delta_warning"] = t.delta_warning;
  j["p_alice"] = t.p_alice;
  j["p_bob"] = t.p_bob;
  j["p_sync"] = t.p_sync;
  j["S"] = t.alice.sets;
  j["T"] = t.bob.sets;
  j["C"] = t.c;
  j["C_prime"] = t.c_prime;
  j["C_second"] = t.c_second;
  j["pq_overlap"] = pq_overlap(t);
  if (t.joint_state) j["joint_state"] = vector_to_json(*t.joint_state);
  return j;
}

CVector parse_state_spec(const std::string& spec, Index* d_out) {
  std::vector<Complex> amps;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t colon = item.find(':');
    try {
      std::size_t used = 0;
      if (colon == std::string::npos) {
        double re = std::stod(item, &used);
        if (item.find_first_not_of(" \t", used) != std::string::npos) parse_error("bad amplitude '" + item + "'");
        amps.emplace_back(re, 0.0);
      } else {
        std::string a = item.substr(0, colon), b = item.substr(colon + 1);
        std::size_t ua = 0, ub = 0;
        double re = std::stod(a, &ua), im = std::stod(b, &ub);
        if (a.find_first_not_of(" \t", ua) != std::string::npos ||
            b.find_first_not_of(" \t", ub) != std::string::npos) {
          parse_error("bad amplitude '" + item + "'");
        }
        amps.emplace_back(re, im);
      }
    } catch (const std::logic_error&) {
      parse_error("bad amplitude '" + item + "'");
    }
  }
  Index d = exact_sqrt(static_cast<Index>(amps.size()));
  if (amps.empty() || d < 1) parse_error("state spec needs d^2 amplitudes");
  CVector v(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) v(i) = amps[i];
  double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) parse_error("state spec has zero norm");
  if (d_out) *d_out = d;
  return v / n;
}

}  // namespace entgames
