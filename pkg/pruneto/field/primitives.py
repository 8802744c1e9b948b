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

"""Rasterized geometric primitives

A cell belongs to a primitive when its centre does.
"""

import numexpr
import numpy as np

from pruneto.field.fields import Grid, IndicatorField


def rect(grid: Grid, x0: float, y0: float, x1: float, y1: float) -> IndicatorField:
    x, y = grid.centers()
    eps = 1e-9 * grid.h
    return IndicatorField(
        grid,
        (x >= min(x0, x1) - eps) & (x <= max(x0, x1) + eps) & (y >= min(y0, y1) - eps) & (y <= max(y0, y1) + eps),
    )


def disc(grid: Grid, cx: float, cy: float, r: float) -> IndicatorField:
    x, y = grid.centers()
    return IndicatorField(grid, (x - cx) ** 2 + (y - cy) ** 2 <= r**2 * (1 + 1e-12))


def halfplane(grid: Grid, nx: float, ny: float, c: float) -> IndicatorField:
    """Cells with ``nx * x + ny * y >= c``"""
    x, y = grid.centers()
    return IndicatorField(grid, nx * x + ny * y >= c - 1e-9 * grid.h)


def expression(grid: Grid, expr: str) -> IndicatorField:
    """Cells whose centre satisfies a numexpr Boolean expression of ``x``, ``y`` and ``h``

    >>> grid = Grid(4, 1, 1.0)
    >>> expression(grid, "x >= 2").count
    2
    """

    x, y = grid.centers()
    result = numexpr.evaluate(expr, local_dict={"x": x, "y": y, "h": grid.h})
    result = np.broadcast_to(np.asarray(result), grid.shape)
    if result.dtype != bool:
        raise ValueError(f"expression '{expr}' does not evaluate to a Boolean field")
    return IndicatorField(grid, result)
