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

from pruneto.opt.tsf import (
    FrozenMask,
    compliance_tsf,
    augment_tsf,
    penalize_tsf,
    filter_tsf,
    find_tau,
)
from pruneto.opt.support import support_region, support_volume_fraction, support_tsf
from pruneto.opt.constraints import (
    Solvers,
    DesignState,
    KappaSchedule,
    ConstraintSpec,
    evaluate,
    deflection_bound,
    support_constraint,
    accessibility_constraint,
)
from pruneto.opt.loops import (
    CSV_COLUMNS,
    OuterLoopConfig,
    ParetoPoint,
    ParetoFront,
    build_tsf,
    inner_loop,
    outer_loop,
    volume_schedule,
)

__all__ = [
    "FrozenMask",
    "compliance_tsf",
    "augment_tsf",
    "penalize_tsf",
    "filter_tsf",
    "find_tau",
    "support_region",
    "support_volume_fraction",
    "support_tsf",
    "Solvers",
    "DesignState",
    "KappaSchedule",
    "ConstraintSpec",
    "evaluate",
    "deflection_bound",
    "support_constraint",
    "accessibility_constraint",
    "CSV_COLUMNS",
    "OuterLoopConfig",
    "ParetoPoint",
    "ParetoFront",
    "build_tsf",
    "inner_loop",
    "outer_loop",
    "volume_schedule",
]
