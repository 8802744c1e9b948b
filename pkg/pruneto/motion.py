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

"""Planar rigid motions, sweeps and unsweeps of cell sets"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from pruneto.field import Grid, IndicatorField, regularize
from pruneto.utils import LOGGER, get_default, rotation_matrix

Point = Tuple[float, float]


@dataclass(frozen=True)
class RigidMotion2D:
    """Rotation by `theta` (radians, counter-clockwise) about `pivot`, then translation"""

    theta: float = 0.0
    pivot: Point = (0.0, 0.0)
    translation: Point = (0.0, 0.0)

    @classmethod
    def identity(cls) -> "RigidMotion2D":
        return cls()

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Apply the motion to an (n, 2) array of world points"""
        points = np.asarray(points, dtype=float)
        pivot = np.asarray(self.pivot)
        rotated = (points - pivot) @ rotation_matrix(self.theta).T
        return rotated + pivot + np.asarray(self.translation)

    def inverse(self) -> "RigidMotion2D":
        back = rotation_matrix(-self.theta) @ np.asarray(self.translation)
        return RigidMotion2D(-self.theta, self.pivot, (-back[0], -back[1]))


def apply_motion(m: RigidMotion2D, x: Point) -> Point:
    """Image of the world point `x` under the motion `m`"""
    image = m.apply(np.atleast_2d(x))[0]
    return (float(image[0]), float(image[1]))


@dataclass(frozen=True)
class MotionSet:
    """Ordered samples of a one-parametric rigid motion"""

    samples: Tuple[RigidMotion2D, ...]

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        if not self.samples:
            raise ValueError("a motion set needs at least one sample")

    @property
    def n_samples(self) -> int:
        return len(self.samples)

    def inverse(self) -> "MotionSet":
        return MotionSet(tuple(m.inverse() for m in self.samples))

    @classmethod
    def rotation(
        cls,
        pivot: Point,
        start_deg: float,
        stop_deg: float,
        n_samples: Optional[int] = None,
    ) -> "MotionSet":
        """Uniform samples of a rotation about `pivot`, both end angles included

        When `n_samples` is not given, the `samples-per-21deg` density of the
        configuration is used.
        """

        if n_samples is None:
            density = get_default("samples-per-21deg") / 21.0
            n_samples = max(2, int(np.ceil(abs(stop_deg - start_deg) * density - 1e-9)))
        if n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {n_samples}")
        angles = np.radians(np.linspace(start_deg, stop_deg, n_samples))
        return cls(tuple(RigidMotion2D(float(a), pivot) for a in angles))

    @classmethod
    def from_motions(cls, motions: Sequence[RigidMotion2D]) -> "MotionSet":
        return cls(tuple(motions))


def _contained(points: np.ndarray, M: MotionSet, E: IndicatorField) -> np.ndarray:
    contained = np.ones(len(points), dtype=bool)
    for m in M.samples:
        images = m.apply(points)
        i, j, inside = E.grid.world_to_cell(images[:, 0], images[:, 1])
        contained &= inside & E.cells[j, i]
    return contained


def trajectory_contained(x: Point, M: MotionSet, E: IndicatorField) -> bool:
    """True when every sampled image of `x` falls in a material cell of `E`"""
    return bool(_contained(np.atleast_2d(np.asarray(x, dtype=float)), M, E)[0])


def unsweep(M: MotionSet, E: IndicatorField, grid: Grid, regularized: bool = True) -> IndicatorField:
    """Largest regularized cell set of `grid` whose motion stays inside `E`

    Parameters
    ----------
    M: MotionSet
        sampled motion, containment is only certified at the samples
    E: IndicatorField
        the envelope; images leaving the grid of `E` are not contained
    grid: Grid
        grid of the result
    regularized: bool
        regularize the contained cells (the pruning driver regularizes
        once, after intersecting every maximal element)

    Returns
    -------
    result: IndicatorField
    """

    x, y = grid.centers()
    points = np.column_stack([x.ravel(), y.ravel()])
    contained = _contained(points, M, E).reshape(grid.shape)
    result = IndicatorField(grid, contained)
    if regularized:
        result = regularize(result)
    LOGGER.debug(
        "unsweep over %d samples keeps %d/%d cells (%d before regularization)",
        M.n_samples,
        result.count,
        grid.n_cells,
        int(contained.sum()),
    )
    return result


def sweep(M: MotionSet, A: IndicatorField, grid: Optional[Grid] = None) -> IndicatorField:
    """Cells of `grid` hit by a sampled image of a cell centre of `A`

    Images landing off `grid` are dropped.
    """

    grid = grid or A.grid
    x, y = A.grid.centers()
    points = np.column_stack([x[A.cells], y[A.cells]])
    cells = np.zeros(grid.shape, dtype=bool)
    for m in M.samples:
        images = m.apply(points)
        i, j, inside = grid.world_to_cell(images[:, 0], images[:, 1])
        cells[j[inside], i[inside]] = True
    return IndicatorField(grid, cells)
