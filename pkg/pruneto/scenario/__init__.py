# coding: utf-8

# Copyright 2024 The pruneto developers, all rights reserved.
#
# This file is part of pruneto.
#
# pruneto is free software: you can redistribute it and/or modify it under
# the terms of the GNU General Public License as published by the Free
# Software Foundation, either version 3.0 of the License, or any later version.
#
# pruneto is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License along
# with pruneto. If not, see <https://www.gnu.org/licenses/>.


from pruneto.scenario.config import Scenario, load_scenario, validate_scenario, select_nodes
from pruneto.scenario.generators import GENERATORS, generate
from pruneto.scenario.run import (
    EXIT_SUCCESS,
    EXIT_INFEASIBLE,
    EXIT_CONFIG_ERROR,
    RunResult,
    run_scenario,
    replay_manifest,
)

__all__ = [
    "Scenario",
    "load_scenario",
    "validate_scenario",
    "select_nodes",
    "GENERATORS",
    "generate",
    "EXIT_SUCCESS",
    "EXIT_INFEASIBLE",
    "EXIT_CONFIG_ERROR",
    "RunResult",
    "run_scenario",
    "replay_manifest",
]
