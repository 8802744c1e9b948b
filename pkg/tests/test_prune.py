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


import itertools

import numpy as np
import pytest

from pruneto.exceptions import DimensionError
from pruneto.field import Grid, IndicatorField, disc, rect, regularize
from pruneto.motion import MotionSet
from pruneto.cspace import t_tool
from pruneto.prune import (
    PointwiseConstraint,
    accessibility_2axis,
    containment_motion,
    custom_pmc,
    prune_pointwise,
)


@pytest.fixture
def grid():
    return Grid(24, 24, 1.0)


@pytest.fixture
def constraints(grid):
    envelope = rect(grid, 2, 2, 21, 21)
    tool = t_tool(grid, (12, 12))
    return [
        containment_motion("swing", MotionSet.rotation((8.0, 12.0), -15, 0, n_samples=16), envelope),
        accessibility_2axis("reach", tool.head, rect(grid, 0, 0, 1, 23), tool.head_orientations([0.0])),
        custom_pmc("upper", "y >= 4"),
    ]


def test_prune_is_order_independent(grid, constraints):
    results = [prune_pointwise(list(order), grid).field for order in itertools.permutations(constraints)]
    assert all(r == results[0] for r in results)
    assert not results[0].is_empty()


def test_prune_is_the_regularized_intersection(grid, constraints):
    result = prune_pointwise(constraints, grid)
    intersection = IndicatorField.full(grid)
    for constraint in constraints:
        intersection = intersection & constraint.maximal_element(grid)
    assert result.field == regularize(intersection)
    assert set(result.elements) == {"swing", "reach", "upper"}
    for name, element in result.elements.items():
        assert result.field.issubset(element), name


def test_no_constraint_returns_the_domain(grid):
    domain = disc(grid, 12, 12, 3)
    assert prune_pointwise([], grid).field == IndicatorField.full(grid)
    # small shapes are not regularized away without constraints
    assert prune_pointwise([], grid, domain=domain).field == domain


def test_prune_within_domain(grid, constraints):
    domain = rect(grid, 0, 0, 23, 15)
    result = prune_pointwise(constraints, grid, domain=domain)
    assert result.field.issubset(domain)

    with pytest.raises(DimensionError):
        prune_pointwise(constraints, grid, domain=IndicatorField.full(Grid(4, 4, 1.0)))


def test_infeasible_prune(grid, constraints):
    result = prune_pointwise(constraints + [custom_pmc("nowhere", "x < -1")], grid)
    assert result.infeasible
    diagnosis = result.diagnosis()
    assert diagnosis["nowhere"] == 0
    assert diagnosis["upper"] == pytest.approx(20 / 24)


def test_callable_membership_test(grid):
    by_expression = custom_pmc("a", "(x - 12)**2 + (y - 12)**2 <= 36").maximal_element(grid)
    by_callable = custom_pmc("b", lambda x, y: np.hypot(x - 12, y - 12) <= 6).maximal_element(grid)
    assert by_expression == by_callable


def test_constraint_validation(grid):
    with pytest.raises(ValueError):
        PointwiseConstraint("bad", "unknown")
    with pytest.raises(ValueError):
        prune_pointwise([custom_pmc("a", "x > 1"), custom_pmc("a", "y > 1")], grid)
