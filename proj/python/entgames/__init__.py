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

"""Entangled nonlocal games: values, rounding diagnostics and embezzlement."""

from ._entgames import (
    EntgamesError,
    Game,
    chsh,
    classical_value,
    correlated_sample,
    embezzle_fidelity,
    epsilon_state,
    identity_game,
    laplacian_gap,
    maximally_entangled,
    naive_embezzle_failure,
    random_projection_game,
    seesaw,
    sqnorm,
    tensor,
    to_projection,
    value,
)

__all__ = [
    "EntgamesError",
    "Game",
    "chsh",
    "classical_value",
    "correlated_sample",
    "embezzle_fidelity",
    "epsilon_state",
    "identity_game",
    "laplacian_gap",
    "maximally_entangled",
    "naive_embezzle_failure",
    "random_projection_game",
    "seesaw",
    "sqnorm",
    "tensor",
    "to_projection",
    "value",
]
