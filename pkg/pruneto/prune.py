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
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from pruneto.cspace import OrientationSet, accessible_maximal_set
from pruneto.exceptions import DimensionError
from pruneto.field import Grid, IndicatorField, expression, regularize
from pruneto.motion import MotionSet, unsweep
from pruneto.utils import LOGGER

KINDS = ("containment_motion", "accessibility_2axis", "custom_pmc")

PointTest = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class PointwiseConstraint:
    """A constraint decidable cell by cell, without knowing the design

    Parameters
    ----------
    name: str
        label used in diagnostics
    kind: str
        'containment_motion', 'accessibility_2axis' or 'custom_pmc'
    parameters: dict
        inputs of the matching maximal element solver
    """

    name: str
    kind: str
    parameters: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, '{self.kind}' given")

    def maximal_element(self, grid: Grid) -> IndicatorField:
        """Unregularized set of every cell of `grid` passing the constraint"""
        p = self.parameters
        if self.kind == "containment_motion":
            return unsweep(p["motion"], p["envelope"], grid, regularized=False)
        if self.kind == "accessibility_2axis":
            return accessible_maximal_set(
                p["head"],
                p["fixtures"],
                grid,
                p["orientations"],
                mu0_cells=p.get("mu0_cells"),
                regularized=False,
            )

        test = p["test"]
        if isinstance(test, str):
            return expression(grid, test)
        x, y = grid.centers()
        return IndicatorField(grid, np.asarray(test(x, y), dtype=bool))


def containment_motion(name: str, motion: MotionSet, envelope: IndicatorField) -> PointwiseConstraint:
    """The part must stay inside `envelope` during `motion`"""
    return PointwiseConstraint(name, "containment_motion", {"motion": motion, "envelope": envelope})


def accessibility_2axis(
    name: str,
    head: IndicatorField,
    fixtures: IndicatorField,
    orientations: OrientationSet,
    mu0_cells: Optional[float] = None,
) -> PointwiseConstraint:
    """Every point of the part must be reachable by a 2-axis tool without the head hitting the fixtures"""
    return PointwiseConstraint(
        name,
        "accessibility_2axis",
        {"head": head, "fixtures": fixtures, "orientations": orientations, "mu0_cells": mu0_cells},
    )


def custom_pmc(name: str, test: Union[str, PointTest]) -> PointwiseConstraint:
    """A user membership test, either a numexpr expression of ``x`` and ``y`` or a callable"""
    return PointwiseConstraint(name, "custom_pmc", {"test": test})


@dataclass
class PruneResult:
    """Outcome of the pruning phase

    Parameters
    ----------
    field: IndicatorField
        regularized intersection of every maximal element
    elements: dict
        maximal element of each constraint, by name
    """

    field: IndicatorField
    elements: Dict[str, IndicatorField]

    @property
    def infeasible(self) -> bool:
        return self.field.is_empty()

    def diagnosis(self) -> Dict[str, float]:
        """Fraction of the grid surviving each constraint on its own"""
        n = self.field.grid.n_cells
        return {name: element.count / n for name, element in self.elements.items()}


def prune_pointwise(
    constraints: Sequence[PointwiseConstraint],
    grid: Grid,
    domain: Optional[IndicatorField] = None,
) -> PruneResult:
    """Intersect the maximal elements of pointwise constraints

    The intersection is regularized once, at the end. Without any
    constraint the domain is returned unchanged. An empty result is reported
    through `PruneResult.infeasible` and a logged per-constraint diagnosis.

    Parameters
    ----------
    constraints: list of PointwiseConstraint
        in any order
    grid: Grid
    domain: IndicatorField, optional
        design domain the maximal elements are intersected with, the whole
        grid by default

    Returns
    -------
    result: PruneResult
    """

    names: List[str] = [c.name for c in constraints]
    if len(set(names)) != len(names):
        raise ValueError(f"constraint names must be unique, got {names}")

    elements = {}
    if domain is not None and domain.grid != grid:
        raise DimensionError(f"grid mismatch: {domain.grid} != {grid}")
    cells = np.ones(grid.shape, dtype=bool) if domain is None else np.array(domain.cells)
    for constraint in constraints:
        element = constraint.maximal_element(grid)
        elements[constraint.name] = element
        cells &= element.cells
        LOGGER.debug("maximal element '%s' holds %d cells", constraint.name, element.count)

    pruned = IndicatorField(grid, cells)
    if constraints:
        pruned = regularize(pruned)
    result = PruneResult(pruned, elements)

    if result.infeasible:
        LOGGER.warning(
            "pruning left no feasible cell; surviving fraction per constraint: %s",
            ", ".join(f"{name}={fraction:.3f}" for name, fraction in result.diagnosis().items()),
        )
    else:
        LOGGER.info("pruned design space holds %d/%d cells", pruned.count, grid.n_cells)
    return result
