# Copyright 2026 The entgames Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import entgames

TSIRELSON = math.cos(math.pi / 8) ** 2


def test_chsh_classical():
    value, alice, bob = entgames.classical_value(entgames.chsh())
    assert value == 0.75
    assert len(alice) == 2 and len(bob) == 2


def test_chsh_squared_classical():
    g = entgames.chsh()
    value, _, _ = entgames.classical_value(entgames.tensor(g, g))
    assert value == 0.625


def test_seesaw_reaches_tsirelson():
    r = entgames.seesaw(entgames.chsh(), 2, restarts=4, seed=1)
    assert r["value"] >= 0.8535
    assert abs(r["value"] - TSIRELSON) < 1e-3
    # Recompute the value from the returned strategy.
    again = entgames.value(entgames.chsh(), r["alice"], r["bob"], r["state"])
    assert again == pytest.approx(r["value"], abs=1e-9)
    assert entgames.sqnorm(entgames.chsh(), r["bob"]) ** 2 >= again**2 - 1e-8


def test_game_json_round_trip():
    g = entgames.random_projection_game(3, 3, 2, 2, 0.8, 5)
    h = entgames.Game.from_json(g.to_json())
    assert (h.nU, h.nV, h.nA, h.nB) == (3, 3, 2, 2)
    assert h.is_projection()
    assert all(h.prob(u, v) == g.prob(u, v) for u in range(3) for v in range(3))


def test_malformed_json_raises():
    with pytest.raises(entgames.EntgamesError):
        entgames.Game.from_json('{"nU": 2')
    with pytest.raises(ValueError):
        entgames.Game.from_json('{"nU": 2, "nV": 2, "nA": 2, "nB": 2, "mu": [1.0]}')


def test_projection_transform_bounds():
    g = entgames.chsh()
    v, _, _ = entgames.classical_value(g)
    vp, _, _ = entgames.classical_value(entgames.to_projection(g))
    assert 1 - vp <= 1 - v <= 2 * (1 - vp)


def test_embezzlement_and_sampling():
    psi = np.array([math.sqrt(0.7), 0, 0, math.sqrt(0.3)], dtype=complex)
    assert entgames.embezzle_fidelity(psi, 2, 256) > 0.9
    assert entgames.naive_embezzle_failure(0.1) >= 0.25
    t = entgames.correlated_sample(psi, psi, 2, 0.01, seed=3, max_copies=1e6)
    assert t["pq_overlap"] >= 1 - 1e-12
    if t["success"]:
        assert np.linalg.norm(t["joint_state"]) == pytest.approx(1.0)
    orth = entgames.correlated_sample(
        np.array([1, 0, 0, 0], dtype=complex), np.array([0, 0, 0, 1], dtype=complex), 2, 0.1, seed=3
    )
    assert orth["pq_overlap"] == 0.0
    assert not orth["success"]
