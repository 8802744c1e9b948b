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

"""Support material needed to print a design along +y

A material cell is down-facing when the cell right below it is void and it
does not sit on the floor (row 0). It is self-supported when a material cell
lies in the row below within a horizontal offset of ``tan(overhang)``
cells; the 45 degree staircase is therefore self-supported. Every other
down-facing cell needs the void column below it, down to the next
material cell or the floor.
"""

import numpy as np

from pruneto.field import IndicatorField, ScalarField

BUILD_DIRECTIONS = ("+y",)


def max_offset(overhang_deg: float) -> int:
    """Largest horizontal step (cells) per row a self-supported surface may take"""
    if not 0 < overhang_deg < 90:
        raise ValueError(f"overhang angle must be in (0, 90) degrees, got {overhang_deg}")
    return int(np.floor(np.tan(np.radians(overhang_deg)) + 1e-9))


def _needs_support(cells: np.ndarray, offset: int) -> np.ndarray:
    below = np.zeros_like(cells)
    below[1:] = cells[:-1]
    down = cells & ~below
    down[0] = False
    supported = np.zeros_like(cells)
    for c in range(1, offset + 1):
        supported[1:, c:] |= cells[:-1, :-c]
        supported[1:, :-c] |= cells[:-1, c:]
    return down & ~supported


def _support_mask(cells: np.ndarray, offset: int) -> np.ndarray:
    ny = cells.shape[0]
    rows = np.arange(ny)[:, None]
    # highest material row at or below each cell, -1 if none
    last = np.maximum.accumulate(np.where(cells, rows, -1), axis=0)
    needing = _needs_support(cells, offset)
    mask = np.zeros_like(cells)
    for j, i in zip(*np.nonzero(needing)):
        mask[last[j - 1, i] + 1 : j, i] = True
    return mask


def _support_counts(cells: np.ndarray, offset: int) -> np.ndarray:
    """Support cells per column"""
    return _support_mask(cells, offset).sum(axis=0)


def support_region(design: IndicatorField, overhang_deg: float = 45.0) -> IndicatorField:
    """The void cells that must be filled with support material"""
    return IndicatorField(design.grid, _support_mask(design.cells, max_offset(overhang_deg)))


def support_volume_fraction(
    design: IndicatorField,
    build_dir: str = "+y",
    overhang_deg: float = 45.0,
    ref: IndicatorField = None,
) -> float:
    """Volume of the support material relative to the volume of `ref`"""
    if build_dir not in BUILD_DIRECTIONS:
        raise ValueError(f"build direction must be one of {BUILD_DIRECTIONS}, '{build_dir}' given")
    if ref is None:
        raise ValueError("a reference field is needed")
    if ref.count == 0:
        raise ZeroDivisionError("reference field is empty")
    return support_region(design, overhang_deg).count / ref.count


def support_tsf(design: IndicatorField, overhang_deg: float = 45.0) -> ScalarField:
    """Change of the support volume caused by removing each material cell

    Positive values (removal adds support) mean keep. Values are scaled by
    their largest magnitude; void cells get 0.
    """

    offset = max_offset(overhang_deg)
    cells = design.cells
    nx = design.grid.nx
    counts = _support_counts(cells, offset)
    delta = np.zeros(design.grid.shape)
    for j, i in zip(*np.nonzero(cells)):
        # columns whose support changes, and the columns they depend on
        lo, hi = max(i - offset, 0), min(i + offset + 1, nx)
        wlo, whi = max(i - 2 * offset, 0), min(i + 2 * offset + 1, nx)
        window = np.array(cells[:, wlo:whi])
        window[j, i - wlo] = False
        after = _support_counts(window, offset)[lo - wlo : hi - wlo].sum()
        delta[j, i] = after - counts[lo:hi].sum()

    scale = np.abs(delta).max()
    if scale > 0:
        delta /= scale
    return ScalarField(design.grid, delta)
