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

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from pruneto.exceptions import DimensionError


@dataclass(frozen=True)
class Grid:
    """A regular 2D grid of square cells

    Cells are stored row-major: ``cells[j, i]`` is the cell of column ``i``
    (x index, growing to the right) and row ``j`` (y index, growing
    upwards). The flat index of a cell is ``j * nx + i``.

    Parameters
    ----------
    nx: int
        number of cells along x
    ny: int
        number of cells along y
    h: float
        cell spacing (length units, meters in all scenarios)
    origin: tuple of float
        world coordinates of the centre of cell (0, 0)
    """

    nx: int
    ny: int
    h: float
    origin: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError(f"grid needs at least one cell per axis, got {self.nx}x{self.ny}")
        if not self.h > 0:
            raise ValueError(f"cell spacing must be positive, got {self.h}")
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def n_cells(self) -> int:
        return self.nx * self.ny

    @property
    def cell_volume(self) -> float:
        return self.h * self.h

    @property
    def n_nodes(self) -> int:
        return (self.nx + 1) * (self.ny + 1)

    def cell_center(self, i: int, j: int) -> Tuple[float, float]:
        return (self.origin[0] + i * self.h, self.origin[1] + j * self.h)

    def world_to_cell(
        self, x: Union[float, np.ndarray], y: Union[float, np.ndarray]
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Nearest cell of world points

        Returns
        -------
        i, j: np.ndarray
            column and row of the nearest cell (clipped onto the grid)
        inside: np.ndarray
            False where the point falls outside every cell
        """

        fi = np.rint((np.asarray(x, dtype=float) - self.origin[0]) / self.h)
        fj = np.rint((np.asarray(y, dtype=float) - self.origin[1]) / self.h)
        inside = (fi >= 0) & (fi < self.nx) & (fj >= 0) & (fj < self.ny)
        i = np.clip(fi, 0, self.nx - 1).astype(int)
        j = np.clip(fj, 0, self.ny - 1).astype(int)
        return i, j, inside

    def centers(self) -> Tuple[np.ndarray, np.ndarray]:
        """World coordinates of every cell centre, as two (ny, nx) arrays"""
        x = self.origin[0] + self.h * np.arange(self.nx)
        y = self.origin[1] + self.h * np.arange(self.ny)
        return np.meshgrid(x, y)

    def node_xy(self, i: int, j: int) -> Tuple[float, float]:
        """World coordinates of the node at the lower left corner of cell (i, j)"""
        return (self.origin[0] + (i - 0.5) * self.h, self.origin[1] + (j - 0.5) * self.h)

    def node_index(self, i: Union[int, np.ndarray], j: Union[int, np.ndarray]):
        return j * (self.nx + 1) + i

    def nearest_node(self, x: float, y: float) -> int:
        i = int(np.clip(np.rint((x - self.origin[0]) / self.h + 0.5), 0, self.nx))
        j = int(np.clip(np.rint((y - self.origin[1]) / self.h + 0.5), 0, self.ny))
        return int(self.node_index(i, j))


def _check_same_grid(a, b):
    if a.grid != b.grid:
        raise DimensionError(f"grid mismatch: {a.grid} != {b.grid}")


@dataclass(frozen=True, eq=False)
class IndicatorField:
    """Binary cell field, 1 (True) where there is material

    The cell array is copied and made read-only on construction.
    """

    grid: Grid
    cells: np.ndarray

    def __post_init__(self):
        cells = np.array(self.cells, dtype=bool)
        if cells.shape != self.grid.shape:
            raise DimensionError(f"cells of shape {cells.shape} do not match grid shape {self.grid.shape}")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def empty(cls, grid: Grid) -> "IndicatorField":
        return cls(grid, np.zeros(grid.shape, dtype=bool))

    @classmethod
    def full(cls, grid: Grid) -> "IndicatorField":
        return cls(grid, np.ones(grid.shape, dtype=bool))

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.cells))

    @property
    def volume(self) -> float:
        return self.count * self.grid.cell_volume

    def is_empty(self) -> bool:
        return self.count == 0

    def issubset(self, other: "IndicatorField") -> bool:
        _check_same_grid(self, other)
        return not np.any(self.cells & ~other.cells)

    def __eq__(self, other):
        if not isinstance(other, IndicatorField):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.cells, other.cells)

    __hash__ = None  # type: ignore

    def __and__(self, other):
        return boolean_op("intersect", self, other)

    def __or__(self, other):
        return boolean_op("union", self, other)

    def __sub__(self, other):
        return boolean_op("difference", self, other)

    def __invert__(self):
        return boolean_op("complement", self)


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Real valued cell field. Every value must be finite."""

    grid: Grid
    cells: np.ndarray

    def __post_init__(self):
        cells = np.array(self.cells, dtype=float)
        if cells.shape != self.grid.shape:
            raise DimensionError(f"cells of shape {cells.shape} do not match grid shape {self.grid.shape}")
        if not np.all(np.isfinite(cells)):
            raise ValueError("scalar fields must only hold finite values")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def zeros(cls, grid: Grid) -> "ScalarField":
        return cls(grid, np.zeros(grid.shape))

    def max_over(self, region: IndicatorField) -> float:
        """Largest value over the cells of `region` (0 on an empty region)"""
        _check_same_grid(self, region)
        if region.is_empty():
            return 0.0
        return float(self.cells[region.cells].max())

    def normalized(self) -> "ScalarField":
        """Min-max rescaling onto [0, 1], a constant field maps to 0"""
        lo, hi = self.cells.min(), self.cells.max()
        if hi - lo <= 0:
            return ScalarField(self.grid, np.zeros(self.grid.shape))
        return ScalarField(self.grid, (self.cells - lo) / (hi - lo))


def boolean_op(op: str, A: IndicatorField, B: Optional[IndicatorField] = None) -> IndicatorField:
    """Cellwise Boolean operation, without regularization

    Parameters
    ----------
    op: str
        one of 'intersect', 'union', 'difference' or 'complement'
    A: IndicatorField
        first operand
    B: IndicatorField
        second operand, ignored (and optional) for 'complement'

    Returns
    -------
    result: IndicatorField
    """

    op = op.lower()
    if op == "complement":
        return IndicatorField(A.grid, ~A.cells)

    if B is None:
        raise ValueError(f"'{op}' needs two operands")
    _check_same_grid(A, B)

    if op == "intersect":
        cells = A.cells & B.cells
    elif op == "union":
        cells = A.cells | B.cells
    elif op == "difference":
        cells = A.cells & ~B.cells
    else:
        raise ValueError(f"op must be 'intersect', 'union', 'difference' or 'complement', '{op}' given")
    return IndicatorField(A.grid, cells)


def volume_fraction(A: IndicatorField, ref: IndicatorField) -> float:
    """Volume of `A` relative to the volume of `ref`, by cell counting"""
    _check_same_grid(A, ref)
    n_ref = ref.count
    if n_ref == 0:
        raise ZeroDivisionError("reference field is empty")
    return A.count / n_ref


def superlevel_set(f: ScalarField, tau: float) -> IndicatorField:
    """Cells where ``f >= tau``"""
    return IndicatorField(f.grid, f.cells >= tau)
