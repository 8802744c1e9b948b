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

"""Configuration space analysis of a tool moving among obstacles

All overlaps are computed as correlations of indicator fields through real
FFTs. Because indicator overlaps are integer cell counts, transformed
results are rounded to the nearest integer, which removes round-off and
makes zero overlaps exact.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import fft

from pruneto.exceptions import DegenerateInputError, DimensionError
from pruneto.field import Grid, IndicatorField, ScalarField, regularize
from pruneto.utils import LOGGER, get_default, rotation_matrix

Cell = Tuple[int, int]


def correlate_full(A: np.ndarray, B: np.ndarray, integer: bool = True) -> np.ndarray:
    """Overlap of `A` with `B` translated by every relative shift

    ``out[sy + nBy - 1, sx + nBx - 1] = sum A[y, x] * B[y - sy, x - sx]``
    for shifts ``-(nB - 1) <= s <= nA - 1`` on each axis. Both arrays are
    zero-padded to at least ``nA + nB - 1`` per axis before transforming.

    Parameters
    ----------
    A, B: np.ndarray
        non-negative 2D arrays
    integer: bool
        round the result to integers (exact for indicator inputs)

    Returns
    -------
    out: np.ndarray
        array of shape ``(nAy + nBy - 1, nAx + nBx - 1)``, clamped at 0
    """

    out_shape = (A.shape[0] + B.shape[0] - 1, A.shape[1] + B.shape[1] - 1)
    fshape = tuple(fft.next_fast_len(n, real=True) for n in out_shape)
    spectrum = fft.rfft2(np.asarray(A, dtype=float), s=fshape)
    spectrum *= fft.rfft2(np.asarray(B, dtype=float)[::-1, ::-1], s=fshape)
    out = fft.irfft2(spectrum, s=fshape)[: out_shape[0], : out_shape[1]]
    if integer:
        out = np.rint(out)
    return np.clip(out, 0.0, None)


def convolve(A: IndicatorField, B: IndicatorField) -> ScalarField:
    """Overlap volume of `B` translated by each cell offset of the grid

    The value at cell x is ``sum_x' A(x') B(x' - x) h^2``.
    """

    if A.grid != B.grid:
        raise DimensionError(f"grid mismatch: {A.grid} != {B.grid}")
    full = correlate_full(A.cells, B.cells)
    ny, nx = A.grid.shape
    window = full[ny - 1 : 2 * ny - 1, nx - 1 : 2 * nx - 1]
    return ScalarField(A.grid, window * A.grid.cell_volume)


@dataclass(frozen=True)
class ToolAssembly:
    """Holder (`head`) and `cutter` drawn on a common grid

    `origin_cell` (column, row) is the reference cell of the tool frame,
    by convention the tip of the cutter.
    """

    head: IndicatorField
    cutter: IndicatorField
    origin_cell: Cell

    def __post_init__(self):
        if self.head.grid != self.cutter.grid:
            raise DimensionError("tool head and cutter must share a grid")
        i, j = self.origin_cell
        if not (0 <= i < self.grid.nx and 0 <= j < self.grid.ny):
            raise ValueError(f"tool origin {self.origin_cell} is off the grid")
        if self.volume_cells and not self.field.cells[j, i]:
            raise ValueError(f"tool origin {self.origin_cell} is not a tool cell")

    @property
    def grid(self) -> Grid:
        return self.head.grid

    @property
    def field(self) -> IndicatorField:
        return self.head | self.cutter

    @property
    def volume_cells(self) -> int:
        return self.field.count

    def orientations(self, angles: Sequence[float]) -> "OrientationSet":
        return OrientationSet.rasterize(self.field, self.origin_cell, angles)

    def head_orientations(self, angles: Sequence[float]) -> "OrientationSet":
        return OrientationSet.rasterize(self.head, self.origin_cell, angles)


@dataclass(frozen=True, eq=False)
class ToolKernel:
    """A rotated tool footprint; `origin` is the (row, column) of the tool origin"""

    angle: float
    cells: np.ndarray
    origin: Tuple[int, int]

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.cells))


@dataclass(frozen=True, eq=False)
class OrientationSet:
    """Tool rotations, each with its footprint resampled onto the grid lattice"""

    grid: Grid
    kernels: Tuple[ToolKernel, ...]

    def __post_init__(self):
        if not self.kernels:
            raise ValueError("an orientation set needs at least one angle")

    @property
    def angles(self) -> Tuple[float, ...]:
        return tuple(k.angle for k in self.kernels)

    @classmethod
    def rasterize(cls, field: IndicatorField, origin_cell: Cell, angles: Sequence[float]) -> "OrientationSet":
        """Rotate `field` about `origin_cell` by each angle (radians, counter-clockwise)

        Every target cell takes the value of the source cell nearest to its
        back-rotated centre.
        """

        oi, oj = origin_cell
        sj, si = np.nonzero(field.cells)
        offsets = np.column_stack([si - oi, sj - oj]).astype(float)
        kernels = []
        for angle in angles:
            if len(offsets):
                rotated = offsets @ rotation_matrix(angle).T
                lo = np.floor(rotated.min(axis=0)).astype(int) - 1
                hi = np.ceil(rotated.max(axis=0)).astype(int) + 1
            else:
                lo = hi = np.zeros(2, dtype=int)
            ti, tj = np.meshgrid(np.arange(lo[0], hi[0] + 1), np.arange(lo[1], hi[1] + 1))
            target = np.column_stack([ti.ravel(), tj.ravel()]).astype(float)
            source = np.rint(target @ rotation_matrix(-angle).T).astype(int)
            src_i = source[:, 0] + oi
            src_j = source[:, 1] + oj
            valid = (src_i >= 0) & (src_i < field.grid.nx) & (src_j >= 0) & (src_j < field.grid.ny)
            cells = np.zeros(len(target), dtype=bool)
            cells[valid] = field.cells[src_j[valid], src_i[valid]]
            kernels.append(ToolKernel(float(angle), cells.reshape(ti.shape), (int(-lo[1]), int(-lo[0]))))
        return cls(field.grid, tuple(kernels))


def _registered_overlap(obstacles: np.ndarray, kernel: ToolKernel) -> np.ndarray:
    """Cells of obstacles hit by the kernel when its origin sits on each grid cell"""
    full = correlate_full(obstacles, kernel.cells)
    ky, kx = kernel.cells.shape
    oy, ox = kernel.origin
    ny, nx = obstacles.shape
    row0, col0 = ky - 1 - oy, kx - 1 - ox
    return full[row0 : row0 + ny, col0 : col0 + nx]


def _min_overlap(obstacles: np.ndarray, orientations: OrientationSet) -> np.ndarray:
    overlap = None
    for kernel in orientations.kernels:
        this = _registered_overlap(obstacles, kernel)
        overlap = this if overlap is None else np.minimum(overlap, this)
    return overlap


def inaccessibility_measure(
    design: IndicatorField,
    fixtures: IndicatorField,
    tool: ToolAssembly,
    orientations: OrientationSet,
) -> ScalarField:
    """Smallest overlap between the tool and the obstacles, per tool position

    The tool is placed with its origin on each cell in turn, under every
    orientation; the minimum overlap with ``design | fixtures`` is
    normalized by the tool volume, so the result lies in [0, 1]. A zero
    value means a collision free placement exists.

    Parameters
    ----------
    design: IndicatorField
    fixtures: IndicatorField
    tool: ToolAssembly
    orientations: OrientationSet
        rotations of ``tool.field`` about ``tool.origin_cell``

    Returns
    -------
    mu: ScalarField
    """

    for other in (fixtures.grid, tool.grid, orientations.grid):
        if other != design.grid:
            raise DimensionError(f"grid mismatch: {other} != {design.grid}")
    if tool.volume_cells == 0:
        raise DegenerateInputError("the tool assembly is empty")

    obstacles = design.cells | fixtures.cells
    overlap = _min_overlap(obstacles, orientations)
    mu = np.minimum(overlap / tool.volume_cells, 1.0)
    return ScalarField(design.grid, mu)


def accessible_maximal_set(
    head: IndicatorField,
    fixtures: IndicatorField,
    grid: Grid,
    orientations: OrientationSet,
    mu0_cells: Optional[float] = None,
    regularized: bool = True,
) -> IndicatorField:
    """Cells the head origin can reach without hitting the fixtures

    This is the cross-section of the largest solid that a 2-axis tool
    (wire or beam along the normal of the grid) can cut out of the stock.

    Parameters
    ----------
    head: IndicatorField
        tool holder, drawn on `grid`
    fixtures: IndicatorField
        clamps and other obstacles, on `grid`
    grid: Grid
    orientations: OrientationSet
        rotations of `head` about the tool origin
    mu0_cells: float, optional
        tolerated overlap in cells, defaults to the `mu0-cells`
        configuration value (half a cell)
    regularized: bool
        regularize the zero-set

    Returns
    -------
    result: IndicatorField
        the regularized zero-set of the minimum overlap
    """

    for other in (head.grid, fixtures.grid, orientations.grid):
        if other != grid:
            raise DimensionError(f"grid mismatch: {other} != {grid}")
    if mu0_cells is None:
        mu0_cells = get_default("mu0-cells")

    overlap = _min_overlap(fixtures.cells, orientations)
    result = IndicatorField(grid, overlap <= mu0_cells)
    if regularized:
        result = regularize(result)
    LOGGER.debug("accessible maximal set holds %d/%d cells", result.count, grid.n_cells)
    return result


def t_tool(
    grid: Grid,
    origin_cell: Cell,
    shaft_length: int = 6,
    head_height: int = 5,
    head_width: int = 2,
) -> ToolAssembly:
    """T-shaped tool pointing towards +x, the cutter tip at `origin_cell`

    The cutter is a one cell wide shaft of `shaft_length` cells ending at the
    origin; the head is a bar of `head_height` x `head_width` cells centred on
    the shaft axis, right behind it.
    """

    oi, oj = origin_cell
    left = oi - shaft_length - head_width + 1
    half = head_height // 2
    if left < 0 or oj - half < 0 or oj + half >= grid.ny or oi >= grid.nx:
        raise ValueError(f"a T tool with origin {origin_cell} does not fit in the grid")

    cutter = np.zeros(grid.shape, dtype=bool)
    cutter[oj, oi - shaft_length + 1 : oi + 1] = True
    head = np.zeros(grid.shape, dtype=bool)
    head[oj - half : oj + half + 1, left : oi - shaft_length + 1] = True
    return ToolAssembly(IndicatorField(grid, head), IndicatorField(grid, cutter), origin_cell)
