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

from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Dict, Optional, Sequence, Union

from pruneto.cspace import OrientationSet, ToolAssembly, inaccessibility_measure
from pruneto.fea import BoundaryConditions, FeaResult, Material, solve_elasticity
from pruneto.field import IndicatorField, ScalarField
from pruneto.opt.support import support_tsf, support_volume_fraction
from pruneto.utils import get_default


@dataclass(frozen=True)
class Solvers:
    """The forward problem every design is analysed with"""

    material: Material
    bc: BoundaryConditions

    def analyse(self, design: IndicatorField) -> FeaResult:
        return solve_elasticity(design, self.material, self.bc)


@dataclass
class DesignState:
    """A design with the outputs of every solver run on it

    Parameters
    ----------
    design: IndicatorField
    fea: FeaResult
    reference: IndicatorField
        reference of the volume fractions
    frozen: IndicatorField
    values: dict
        scalar output of each global constraint, by name
    fields: dict
        field output of each local constraint, by name
    """

    design: IndicatorField
    fea: FeaResult
    reference: IndicatorField
    frozen: IndicatorField
    values: Dict[str, float] = field(default_factory=dict)
    fields: Dict[str, ScalarField] = field(default_factory=dict)


@dataclass(frozen=True)
class KappaSchedule:
    """Weight growing linearly as the volume fraction drops from 1 to `v_min`"""

    start: float = field(default_factory=lambda: get_default("kappa-start"))
    end: float = field(default_factory=lambda: get_default("kappa-end"))

    def __post_init__(self):
        if self.start < 0 or self.end < 0:
            raise ValueError(f"weights must be non-negative, got {self.start} and {self.end}")

    def __call__(self, volume_fraction: float, v_min: float) -> float:
        if v_min >= 1:
            return self.start
        progress = min(max((1 - volume_fraction) / (1 - v_min), 0.0), 1.0)
        return self.start + (self.end - self.start) * progress


Evaluator = Callable[[DesignState], Union[float, ScalarField]]


@dataclass(frozen=True)
class ConstraintSpec:
    """A global (scalar) or local (field) constraint of the exploration phase

    Parameters
    ----------
    name: str
    kind: str
        'global' or 'local'
    evaluator: callable
        maps a DesignState to a float (global) or a ScalarField in [0, 1] (local)
    bound: float, optional
        upper bound of the global value
    weight: float or KappaSchedule
        augmentation weight (global) or penalty weight (local)
    hard_stop: bool
        stop tracing when the bound is exceeded
    sensitivity: callable, optional
        maps a DesignState to the sensitivity field of a global constraint,
        required for a positive global weight
    """

    name: str
    kind: str
    evaluator: Evaluator
    bound: Optional[float] = None
    weight: Union[float, KappaSchedule] = 0.0
    hard_stop: bool = False
    sensitivity: Optional[Callable[[DesignState], ScalarField]] = None

    def __post_init__(self):
        if self.kind not in ("global", "local"):
            raise ValueError(f"kind must be 'global' or 'local', '{self.kind}' given")
        if isinstance(self.weight, (int, float)) and self.weight < 0:
            raise ValueError(f"weight must be non-negative, got {self.weight}")
        if self.kind == "global" and self.max_weight > 0 and self.sensitivity is None:
            raise ValueError(f"global constraint '{self.name}' has a weight but no sensitivity")
        if self.hard_stop and self.bound is None:
            raise ValueError(f"hard stop constraint '{self.name}' needs a bound")

    @property
    def max_weight(self) -> float:
        """Largest weight over the whole tracing"""
        if isinstance(self.weight, KappaSchedule):
            return max(self.weight.start, self.weight.end)
        return float(self.weight)

    def weight_at(self, volume_fraction: float, v_min: float) -> float:
        if isinstance(self.weight, KappaSchedule):
            return self.weight(volume_fraction, v_min)
        return float(self.weight)

    def residual(self, value: float) -> float:
        """Signed distance to the bound, positive when violated"""
        return value if self.bound is None else value - self.bound


def evaluate(
    design: IndicatorField,
    specs: Sequence[ConstraintSpec],
    solvers: Solvers,
    reference: IndicatorField,
    frozen: IndicatorField,
) -> DesignState:
    """Run the forward solvers and every constraint evaluator on `design`"""
    state = DesignState(design, solvers.analyse(design), reference, frozen)
    for spec in specs:
        output = spec.evaluator(state)
        if spec.kind == "local":
            state.fields[spec.name] = output
            state.values[spec.name] = output.max_over(design)
        else:
            state.values[spec.name] = float(output)
    return state


def _max_deflection(state: DesignState) -> float:
    return state.fea.max_deflection


def deflection_bound(bound: float, name: str = "deflection") -> ConstraintSpec:
    """Largest displacement below `bound` (m); tracing stops once exceeded"""
    return ConstraintSpec(name, "global", _max_deflection, bound=bound, hard_stop=True)


def _support_fraction(state: DesignState, overhang_deg: float) -> float:
    return support_volume_fraction(state.design, "+y", overhang_deg, state.reference)


def _support_sensitivity(state: DesignState, overhang_deg: float) -> ScalarField:
    return support_tsf(state.design, overhang_deg)


def support_constraint(
    weight: float,
    overhang_deg: Optional[float] = None,
    bound: Optional[float] = None,
    name: str = "support",
) -> ConstraintSpec:
    """Support material volume along +y, coupled to the compliance sensitivity"""
    if overhang_deg is None:
        overhang_deg = get_default("overhang-deg")
    return ConstraintSpec(
        name,
        "global",
        partial(_support_fraction, overhang_deg=overhang_deg),
        bound=bound,
        weight=weight,
        sensitivity=partial(_support_sensitivity, overhang_deg=overhang_deg),
    )


def _inaccessibility(
    state: DesignState,
    tool: ToolAssembly,
    orientations: OrientationSet,
    fixtures: Optional[IndicatorField],
) -> ScalarField:
    obstacles = fixtures if fixtures is not None else IndicatorField.empty(state.design.grid)
    return inaccessibility_measure(state.design, obstacles, tool, orientations)


def accessibility_constraint(
    tool: ToolAssembly,
    orientations: OrientationSet,
    fixtures: Optional[IndicatorField] = None,
    weight: Union[float, KappaSchedule, None] = None,
    name: str = "accessibility",
) -> ConstraintSpec:
    """Local inaccessibility measure penalizing the sensitivity field

    The default weight is the κ schedule of the configuration.
    """

    return ConstraintSpec(
        name,
        "local",
        partial(_inaccessibility, tool=tool, orientations=orientations, fixtures=fixtures),
        weight=KappaSchedule() if weight is None else weight,
    )
