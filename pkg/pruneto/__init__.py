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


import plotly.io as pio

from pruneto.__version__ import __version__
from pruneto.field import (
    Grid,
    IndicatorField,
    ScalarField,
    boolean_op,
    volume_fraction,
    superlevel_set,
    regularize,
)
from pruneto.motion import RigidMotion2D, MotionSet, apply_motion, unsweep, sweep
from pruneto.cspace import (
    ToolAssembly,
    OrientationSet,
    convolve,
    inaccessibility_measure,
    accessible_maximal_set,
    t_tool,
)
from pruneto.prune import (
    PointwiseConstraint,
    PruneResult,
    prune_pointwise,
    containment_motion,
    accessibility_2axis,
    custom_pmc,
)
from pruneto.fea import Material, BoundaryConditions, FeaResult, solve_elasticity, compliance_of, max_displacement
from pruneto.opt import (
    ConstraintSpec,
    FrozenMask,
    OuterLoopConfig,
    ParetoPoint,
    ParetoFront,
    compliance_tsf,
    augment_tsf,
    penalize_tsf,
    filter_tsf,
    find_tau,
    inner_loop,
    outer_loop,
    support_volume_fraction,
)
from pruneto.io import read_pgm, write_pgm, write_csv, to_netcdf
from pruneto.scenario import load_scenario, validate_scenario, run_scenario

# load the pruneto plotly theme
import pruneto.plotly_theme  # noqa

pio.templates.default = "plotly+pruneto"

__all__ = [
    "__version__",
    "Grid",
    "IndicatorField",
    "ScalarField",
    "boolean_op",
    "volume_fraction",
    "superlevel_set",
    "regularize",
    "RigidMotion2D",
    "MotionSet",
    "apply_motion",
    "unsweep",
    "sweep",
    "ToolAssembly",
    "OrientationSet",
    "convolve",
    "inaccessibility_measure",
    "accessible_maximal_set",
    "t_tool",
    "PointwiseConstraint",
    "PruneResult",
    "prune_pointwise",
    "containment_motion",
    "accessibility_2axis",
    "custom_pmc",
    "Material",
    "BoundaryConditions",
    "FeaResult",
    "solve_elasticity",
    "compliance_of",
    "max_displacement",
    "ConstraintSpec",
    "FrozenMask",
    "OuterLoopConfig",
    "ParetoPoint",
    "ParetoFront",
    "compliance_tsf",
    "augment_tsf",
    "penalize_tsf",
    "filter_tsf",
    "find_tau",
    "inner_loop",
    "outer_loop",
    "support_volume_fraction",
    "read_pgm",
    "write_pgm",
    "write_csv",
    "to_netcdf",
    "load_scenario",
    "validate_scenario",
    "run_scenario",
]
