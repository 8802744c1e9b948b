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
from typing import Iterable, List, Mapping, Sequence, Tuple

import numpy as np
from scipy.sparse import csc_array
from scipy.sparse.linalg import spsolve

from pruneto.exceptions import DegenerateInputError, DimensionError, SolverError
from pruneto.fea.elements import element_dofs, element_stiffness
from pruneto.field import Grid, IndicatorField, ScalarField
from pruneto.utils import LOGGER, get_default

# share of the strain energy stored in void cells above which the load is
# considered cut off from the restraints
DISCONNECTED_ENERGY_SHARE = 0.5


def _default_ersatz() -> float:
    return get_default("ersatz")


@dataclass(frozen=True)
class Material:
    """Isotropic linear elastic material

    Parameters
    ----------
    young_modulus: float
        Young's modulus (Pa)
    poisson_ratio: float
        Poisson's ratio, in [0, 0.5)
    ersatz: float
        stiffness factor of void cells
    """

    young_modulus: float
    poisson_ratio: float
    ersatz: float = field(default_factory=_default_ersatz)

    def __post_init__(self):
        if not self.young_modulus > 0:
            raise ValueError(f"young_modulus must be positive, got {self.young_modulus}")
        if not 0 <= self.poisson_ratio < 0.5:
            raise ValueError(f"poisson_ratio must be in [0, 0.5), got {self.poisson_ratio}")
        if not 0 < self.ersatz < 1e-2:
            raise ValueError(f"ersatz must be a small positive factor, got {self.ersatz}")


Load = Tuple[int, Tuple[float, float]]


@dataclass(frozen=True, eq=False)
class BoundaryConditions:
    """Nodal restraints and nodal forces on the nodes of a grid

    Parameters
    ----------
    grid: Grid
    restraints: dict
        node index -> (x restrained, y restrained)
    loads: list
        (node index, (fx, fy)) pairs, forces in N; repeated nodes add up
    """

    grid: Grid
    restraints: Mapping[int, Tuple[bool, bool]]
    loads: Sequence[Load]

    def __post_init__(self):
        object.__setattr__(self, "restraints", dict(self.restraints))
        object.__setattr__(self, "loads", tuple((int(n), (float(f[0]), float(f[1]))) for n, f in self.loads))
        for node in list(self.restraints) + [n for n, _ in self.loads]:
            if not 0 <= node < self.grid.n_nodes:
                raise ValueError(f"node {node} is not a node of the grid")

    @property
    def fixed_dofs(self) -> np.ndarray:
        dofs = []
        for node, (fix_x, fix_y) in self.restraints.items():
            if fix_x:
                dofs.append(2 * node)
            if fix_y:
                dofs.append(2 * node + 1)
        return np.unique(np.array(dofs, dtype=np.int64))

    @property
    def load_nodes(self) -> List[int]:
        return sorted({node for node, force in self.loads if force != (0.0, 0.0)})

    def force_vector(self) -> np.ndarray:
        f = np.zeros(2 * self.grid.n_nodes)
        for node, (fx, fy) in self.loads:
            f[2 * node] += fx
            f[2 * node + 1] += fy
        return f


def nodes_of(region: IndicatorField) -> np.ndarray:
    """Sorted indices of the nodes at the corners of the cells of `region`"""
    grid = region.grid
    jj, ii = np.nonzero(region.cells)
    nodes = np.concatenate(
        [
            grid.node_index(ii, jj),
            grid.node_index(ii + 1, jj),
            grid.node_index(ii + 1, jj + 1),
            grid.node_index(ii, jj + 1),
        ]
    )
    return np.unique(nodes)


def cells_of_nodes(grid: Grid, nodes: Iterable[int]) -> IndicatorField:
    """Cells having at least one of `nodes` as a corner"""
    cells = np.zeros(grid.shape, dtype=bool)
    for node in nodes:
        j, i = divmod(int(node), grid.nx + 1)
        cells[max(j - 1, 0) : min(j + 1, grid.ny), max(i - 1, 0) : min(i + 1, grid.nx)] = True
    return IndicatorField(grid, cells)


def lump(nodes: Sequence[int], total_force: Tuple[float, float]) -> List[Load]:
    """Spread a total force evenly over `nodes`"""
    n = len(nodes)
    if n == 0:
        raise ValueError("cannot lump a force on an empty node set")
    share = (total_force[0] / n, total_force[1] / n)
    return [(int(node), share) for node in nodes]


@dataclass
class FeaResult:
    """Solution of a plane stress problem on a design

    Parameters
    ----------
    displacement: np.ndarray
        (n_nodes, 2) nodal displacements (m)
    compliance: float
        f . u (J)
    energy_density: ScalarField
        strain energy per unit volume of each cell (J/m3), void cells included;
        twice its integral is the compliance
    solid_energy_density: ScalarField
        the energy density each cell would store at the full Young's modulus
        under the same strain
    max_deflection: float
        largest nodal displacement magnitude over the nodes of the material cells (m)
    force: np.ndarray
        the assembled load vector
    residual: float
        relative residual of the linear solve
    void_energy_share: float
        share of the strain energy stored in void cells
    """

    displacement: np.ndarray
    compliance: float
    energy_density: ScalarField
    solid_energy_density: ScalarField
    max_deflection: float
    force: np.ndarray
    residual: float = 0.0
    void_energy_share: float = 0.0

    @property
    def disconnected(self) -> bool:
        """True when the load path runs through void cells"""
        return self.void_energy_share > DISCONNECTED_ENERGY_SHARE


def _element_moduli(design: IndicatorField, mat: Material) -> np.ndarray:
    return np.where(design.cells.ravel(), mat.young_modulus, mat.ersatz * mat.young_modulus)


def assemble_stiffness(design: IndicatorField, mat: Material) -> csc_array:
    """Global stiffness matrix, ersatz material on void cells"""
    grid = design.grid
    Ke = element_stiffness(mat.poisson_ratio)
    dofs = element_dofs(grid)
    moduli = _element_moduli(design, mat)
    values = (Ke[None, :, :] * moduli[:, None, None]).ravel()
    rows = np.repeat(dofs, 8, axis=1).ravel()
    cols = np.tile(dofs, (1, 8)).ravel()
    ndof = 2 * grid.n_nodes
    return csc_array((values, (rows, cols)), shape=(ndof, ndof))


def solve_elasticity(design: IndicatorField, mat: Material, bc: BoundaryConditions) -> FeaResult:
    """Linear plane stress analysis of `design` (unit thickness)

    Parameters
    ----------
    design: IndicatorField
        material cells, the other cells get ``mat.ersatz`` times the stiffness
    mat: Material
    bc: BoundaryConditions

    Returns
    -------
    result: FeaResult
    """

    grid = design.grid
    if bc.grid != grid:
        raise DimensionError(f"grid mismatch: {bc.grid} != {grid}")
    if design.is_empty():
        raise DegenerateInputError("cannot analyse an empty design")
    fixed = bc.fixed_dofs
    if fixed.size == 0:
        raise SolverError("no restraint: the stiffness matrix is singular")

    ndof = 2 * grid.n_nodes
    f = bc.force_vector()
    u = np.zeros(ndof)
    residual = 0.0
    K = assemble_stiffness(design, mat)
    if np.any(f != 0):
        free = np.setdiff1d(np.arange(ndof), fixed)
        K_free = K[free, :][:, free]
        u[free] = spsolve(K_free, f[free])
        if not np.all(np.isfinite(u)):
            raise SolverError("the stiffness matrix is singular, check the restraints")
        residual = float(np.linalg.norm(K_free @ u[free] - f[free]) / np.linalg.norm(f[free]))
        if residual > get_default("solver-rtol"):
            LOGGER.warning("linear solve residual %.3g above tolerance", residual)

    Ke = element_stiffness(mat.poisson_ratio)
    ue = u[element_dofs(grid)]
    solid = 0.5 * mat.young_modulus * np.einsum("ni,ij,nj->n", ue, Ke, ue).reshape(grid.shape)
    energy = np.where(design.cells, solid, mat.ersatz * solid)
    total = energy.sum()
    void_share = float(energy[~design.cells].sum() / total) if total > 0 else 0.0

    displacement = u.reshape(-1, 2)
    material_nodes = nodes_of(design)
    magnitudes = np.linalg.norm(displacement[material_nodes], axis=1)
    result = FeaResult(
        displacement=displacement,
        compliance=float(f @ u),
        energy_density=ScalarField(grid, energy / grid.cell_volume),
        solid_energy_density=ScalarField(grid, solid / grid.cell_volume),
        max_deflection=float(magnitudes.max()) if magnitudes.size else 0.0,
        force=f,
        residual=residual,
        void_energy_share=void_share,
    )
    if result.disconnected:
        LOGGER.warning("%.0f%% of the strain energy sits in void cells: the load path is cut", 100 * void_share)
    return result


def compliance_of(result: FeaResult) -> float:
    """Compliance ``f . u`` of a solution"""
    return float(result.force @ result.displacement.ravel())


def max_displacement(result: FeaResult) -> float:
    """Largest nodal displacement magnitude over the material region (m)"""
    return result.max_deflection
