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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "entgames/classical.hpp"
#include "entgames/embezzlement.hpp"
#include "entgames/errors.hpp"
#include "entgames/game.hpp"
#include "entgames/game_io.hpp"
#include "entgames/norms.hpp"
#include "entgames/quantum.hpp"
#include "entgames/rng.hpp"

namespace py = pybind11;
using namespace entgames;

namespace {

using PovmList = std::vector<std::vector<CMatrix>>;

QuantumStrategy to_strategy(const PovmList& povms) {
  if (povms.empty() || povms.front().empty()) {
    throw Error(ErrorCode::kInvalidArgument, "strategy needs at least one question and one outcome");
  }
  QuantumStrategy s;
  s.dim = povms.front().front().rows();
  for (const auto& row : povms) s.povms.push_back(Povm{row});
  return s;
}

PovmList from_strategy(const QuantumStrategy& s) {
  PovmList out;
  for (const Povm& p : s.povms) out.push_back(p.outcomes);
  return out;
}

py::dict transcript_dict(const SamplingTranscript& t) {
  py::dict d;
  d["success"] = t.success;
  d["synchronous"] = t.synchronous;
  d["exhausted"] = t.exhausted;
  d["copies_used"] = t.copies_used;
  d["copies_required"] = t.copies_required;
  d["p_sync"] = t.p_sync;
  d["pq_overlap"] = pq_overlap(t);
  d["eta"] = t.tau.eta;
  d["bands"] = t.tau.k + 1;
  if (t.joint_state) {
    d["joint_state"] = *t.joint_state;
  } else {
    d["joint_state"] = py::none();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_entgames, m) {
  m.doc() = "Bindings for the entgames library.";
  py::register_exception<Error>(m, "EntgamesError", PyExc_ValueError);

  py::class_<Game>(m, "Game")
      .def_readonly("nU", &Game::nU)
      .def_readonly("nV", &Game::nV)
      .def_readonly("nA", &Game::nA)
      .def_readonly("nB", &Game::nB)
      .def("prob", py::overload_cast<int, int>(&Game::prob, py::const_), py::arg("u"), py::arg("v"))
      .def("accepts", &Game::accepts, py::arg("a"), py::arg("b"), py::arg("u"), py::arg("v"))
      .def("is_projection", [](const Game& g) { return is_projection(g); })
      .def("to_json", [](const Game& g, bool dense) { return game_to_json(g, dense).dump(); },
           py::arg("dense") = false)
      .def_static("from_json", [](const std::string& text) {
        Json j;
        try {
          j = Json::parse(text);
        } catch (const Json::exception& e) {
          throw Error(ErrorCode::kParseError, e.what());
        }
        return game_from_json(j);
      })
      .def_static("load", &read_game, py::arg("path"))
      .def("__repr__", [](const Game& g) {
        return "<Game nU=" + std::to_string(g.nU) + " nV=" + std::to_string(g.nV) + " nA=" +
               std::to_string(g.nA) + " nB=" + std::to_string(g.nB) + ">";
      });

  m.def("chsh", &chsh_game);
  m.def("identity_game", &identity_game, py::arg("k"));
  m.def("random_projection_game",
        py::overload_cast<int, int, int, int, double, std::uint64_t>(&random_projection_game), py::arg("nU"),
        py::arg("nV"), py::arg("nA"), py::arg("nB"), py::arg("density"), py::arg("seed"));
  m.def("tensor", [](const Game& g, const Game& h) { return tensor(g, h); });
  m.def("to_projection", &to_projection);
  m.def("laplacian_gap", [](const Game& g) { return laplacian_gap(square_spec(g, projection_map(g))); });

  m.def(
      "classical_value",
      [](const Game& g, double cap, int threads) {
        ClassicalOptions o;
        o.cap = cap;
        o.threads = threads;
        ClassicalResult r = classical_value(g, o);
        return py::make_tuple(r.value, r.witness.alice, r.witness.bob);
      },
      py::arg("game"), py::arg("cap") = 1e8, py::arg("threads") = 0,
      "Exact classical value and an optimal deterministic witness (alice, bob).");

  m.def(
      "seesaw",
      [](const Game& g, Index dim, int restarts, int iters, double tol, std::uint64_t seed) {
        SeesawOptions o;
        o.restarts = restarts;
        o.iters = iters;
        o.tol = tol;
        o.seed = seed;
        SeesawResult r;
        {
          py::gil_scoped_release release;
          r = seesaw(g, dim, o);
        }
        py::dict d;
        d["value"] = r.value;
        d["alice"] = from_strategy(r.alice);
        d["bob"] = from_strategy(r.bob);
        d["state"] = r.state;
        d["best_restart"] = r.best_restart;
        d["restart_values"] = r.restart_values;
        return d;
      },
      py::arg("game"), py::arg("dim"), py::arg("restarts") = 10, py::arg("iters") = 200, py::arg("tol") = 1e-9,
      py::arg("seed") = 0, "See-saw lower bound on the entangled value.");

  m.def(
      "value",
      [](const Game& g, const PovmList& alice, const PovmList& bob, const CVector& psi) {
        return value(g, to_strategy(alice), to_strategy(bob), psi);
      },
      py::arg("game"), py::arg("alice"), py::arg("bob"), py::arg("state"));

  m.def(
      "sqnorm",
      [](const Game& g, const PovmList& bob) { return sqnorm(g, projection_map(g), to_strategy(bob)); },
      py::arg("game"), py::arg("bob"));

  m.def("maximally_entangled", &maximally_entangled, py::arg("d"));
  m.def("epsilon_state", &epsilon_state, py::arg("eps"), py::arg("flip") = false);

  m.def(
      "embezzle_fidelity", [](const CVector& psi, Index d, Index dprime) { return embezzle(psi, d, dprime).fidelity; },
      py::arg("psi"), py::arg("d"), py::arg("dprime"));
  m.def("naive_embezzle_failure", &naive_embezzle_failure, py::arg("eps"), py::arg("dprime") = 64);

  m.def(
      "correlated_sample",
      [](const CVector& psi, const CVector& phi, Index d, double delta, std::uint64_t seed, double max_copies) {
        Rng rng(seed);
        SamplingOptions o;
        o.max_copies = max_copies;
        return transcript_dict(correlated_sample(psi, phi, d, delta, rng, o));
      },
      py::arg("psi"), py::arg("phi"), py::arg("d"), py::arg("delta"), py::arg("seed") = 0,
      py::arg("max_copies") = 1e4);
}
