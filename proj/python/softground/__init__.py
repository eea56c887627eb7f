# Copyright 2026 The Softground Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Softened symbol grounding: training and diagnostics.

The compiled kernels live in ``softground._softground``; this module adds
JSON decoding for structured results.
"""

import json

from ._softground import (
    NumericalFault,
    Unsatisfiable,
    acceptance_ratio,
    closed_form_grounding,
    default_config,
    gamma_at,
    generate_dataset,
    hwf_eval,
    hwf_feasible,
    hwf_solutions,
    normalize_config,
    probe,
    roundtrip_dataset,
    sdsp_dijkstra,
    sdsp_greedy_astar,
    sudoku_valid,
    total_variation,
)
from . import _softground

__all__ = [
    "NumericalFault",
    "Unsatisfiable",
    "acceptance_ratio",
    "closed_form_grounding",
    "default_config",
    "gamma_at",
    "generate_dataset",
    "hwf_eval",
    "hwf_feasible",
    "hwf_solutions",
    "normalize_config",
    "oracle_checks",
    "probe",
    "roundtrip_dataset",
    "sdsp_dijkstra",
    "sdsp_greedy_astar",
    "sudoku_valid",
    "total_variation",
    "train",
]


def train(ini):
    """Run the protocol described by INI text.

    Returns ``(epochs, summary)``: a list of per-epoch metric dicts and the
    final summary dict.
    """
    lines = [json.loads(line) for line in _softground.train(ini)]
    return lines[:-1], lines[-1]


def oracle_checks(models=20, samples=100000, seeds=20, seed=0, negative_control=False):
    return json.loads(
        _softground.oracle_checks(models, samples, seeds, seed, negative_control)
    )
