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

"""Bilinear quadrilateral (Q4) plane stress element on square cells

Element nodes are ordered counter-clockwise from the lower left corner
(y up): (i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1). Node ``(i, j)`` of
the grid has index ``j * (nx + 1) + i`` and owns the dofs ``2n`` (x) and
``2n + 1`` (y).
"""

from functools import lru_cache

import numpy as np

from pruneto.field import Grid

# natural coordinates of the element nodes
XI = np.array([-1.0, 1.0, 1.0, -1.0])
ETA = np.array([-1.0, -1.0, 1.0, 1.0])

GAUSS_2 = np.array([-1.0, 1.0]) / np.sqrt(3.0)


def plane_stress_matrix(young_modulus: float, poisson_ratio: float) -> np.ndarray:
    nu = poisson_ratio
    return young_modulus / (1 - nu**2) * np.array([[1, nu, 0], [nu, 1, 0], [0, 0, (1 - nu) / 2]])


def strain_displacement(xi: float, eta: float, h: float = 1.0) -> np.ndarray:
    """The 3x8 B matrix of a square element of side `h` at (xi, eta)"""
    dn_dxi = XI * (1 + ETA * eta) / 4
    dn_deta = ETA * (1 + XI * xi) / 4
    dn_dx = dn_dxi * 2 / h
    dn_dy = dn_deta * 2 / h
    B = np.zeros((3, 8))
    B[0, 0::2] = dn_dx
    B[1, 1::2] = dn_dy
    B[2, 0::2] = dn_dy
    B[2, 1::2] = dn_dx
    return B


@lru_cache(maxsize=16)
def element_stiffness(poisson_ratio: float) -> np.ndarray:
    """Stiffness of a square Q4 element for a unit Young's modulus and thickness

    Full 2x2 Gauss integration. In 2D the result does not depend on the
    element size.
    """

    D = plane_stress_matrix(1.0, poisson_ratio)
    Ke = np.zeros((8, 8))
    for xi in GAUSS_2:
        for eta in GAUSS_2:
            B = strain_displacement(xi, eta, h=1.0)
            Ke += B.T @ D @ B * 0.25  # det(J) = h^2 / 4
    Ke = (Ke + Ke.T) / 2
    Ke.flags.writeable = False
    return Ke


def element_dofs(grid: Grid) -> np.ndarray:
    """(n_cells, 8) dof table of every cell, cells in flat order"""
    jj, ii = np.mgrid[0 : grid.ny, 0 : grid.nx]
    ii = ii.ravel()
    jj = jj.ravel()
    nodes = np.column_stack(
        [
            grid.node_index(ii, jj),
            grid.node_index(ii + 1, jj),
            grid.node_index(ii + 1, jj + 1),
            grid.node_index(ii, jj + 1),
        ]
    )
    dofs = np.empty((grid.n_cells, 8), dtype=np.int64)
    dofs[:, 0::2] = 2 * nodes
    dofs[:, 1::2] = 2 * nodes + 1
    return dofs


def cell_nodes(grid: Grid, i: int, j: int) -> np.ndarray:
    """The four node indices of cell (i, j)"""
    return np.array(
        [
            grid.node_index(i, j),
            grid.node_index(i + 1, j),
            grid.node_index(i + 1, j + 1),
            grid.node_index(i, j + 1),
        ]
    )
