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


import numpy as np
import pytest
from scipy.linalg import null_space

from pruneto.exceptions import DegenerateInputError, DimensionError, SolverError
from pruneto.fea import (
    BoundaryConditions,
    Material,
    assemble_stiffness,
    cells_of_nodes,
    compliance_of,
    element_stiffness,
    lump,
    max_displacement,
    nodes_of,
    solve_elasticity,
)
from pruneto.field import Grid, IndicatorField, rect
from pruneto.opt import compliance_tsf

MATERIAL = Material(1e9, 0.3)


def _cantilever(nx, ny, h, depth_cells):
    """A slender beam across the grid, clamped on the left, loaded at the tip"""
    grid = Grid(nx, ny, h, (h / 2, h / 2))
    lo = (ny - depth_cells) // 2
    cells = np.zeros(grid.shape, dtype=bool)
    cells[lo : lo + depth_cells, :] = True
    beam = IndicatorField(grid, cells)
    restraints = {grid.node_index(0, j): (True, True) for j in range(ny + 1)}
    bc = BoundaryConditions(grid, restraints, [(grid.node_index(nx, ny // 2), (0.0, -1.0))])
    return beam, bc


def _uniform_stretch(nx=4, ny=2, force=1.0):
    grid = Grid(nx, ny, 1e-3)
    restraints = {grid.node_index(0, j): (True, j == 0) for j in range(ny + 1)}
    edge = [grid.node_index(nx, j) for j in range(ny + 1)]
    loads = [(node, (force * (0.5 if j in (0, ny) else 1.0), 0.0)) for j, node in enumerate(edge)]
    return IndicatorField.full(grid), BoundaryConditions(grid, restraints, loads)


def test_element_stiffness():
    Ke = element_stiffness(0.3)
    np.testing.assert_allclose(Ke, Ke.T)
    # two translations and a rotation
    assert null_space(Ke, rcond=1e-10).shape[1] == 3
    assert np.all(np.linalg.eigvalsh(Ke) > -1e-12)
    with pytest.raises(ValueError):
        Ke[0, 0] = 1.0


def test_global_stiffness_is_symmetric():
    design = rect(Grid(6, 4, 1e-3), 0, 0, 3e-3, 4e-3)
    K = assemble_stiffness(design, MATERIAL).toarray()
    assert K.shape == (70, 70)
    np.testing.assert_allclose(K, K.T, atol=1e-6)


def test_cantilever_tip_deflection():
    beam, bc = _cantilever(64, 32, 1e-3, 8)
    fea = solve_elasticity(beam, MATERIAL, bc)
    inertia = (8e-3) ** 3 / 12
    expected = 1.0 * 0.064**3 / (3 * 1e9 * inertia)
    assert expected == pytest.approx(2.048e-3, rel=1e-3)
    tip = fea.displacement[bc.grid.node_index(64, 16)]
    assert -tip[1] == pytest.approx(expected, rel=0.15)
    assert max_displacement(fea) == pytest.approx(np.hypot(*tip), rel=0.05)
    assert fea.compliance == pytest.approx(-tip[1])
    assert compliance_of(fea) == pytest.approx(fea.compliance)
    assert fea.residual < 1e-8
    assert not fea.disconnected


def test_cantilever_mesh_refinement():
    coarse_beam, coarse_bc = _cantilever(64, 32, 1e-3, 8)
    fine_beam, fine_bc = _cantilever(128, 64, 5e-4, 16)
    coarse = solve_elasticity(coarse_beam, MATERIAL, coarse_bc).compliance
    fine = solve_elasticity(fine_beam, MATERIAL, fine_bc).compliance
    assert coarse <= fine
    assert coarse == pytest.approx(fine, rel=0.05)


def test_uniform_stretch():
    design, bc = _uniform_stretch()
    fea = solve_elasticity(design, MATERIAL, bc)
    # 1 N per mm of height
    strain = 1.0 / 1e-3 / 1e9
    ux = fea.displacement[[bc.grid.node_index(4, j) for j in range(3)], 0]
    np.testing.assert_allclose(ux, strain * 4e-3, rtol=1e-6)
    np.testing.assert_allclose(fea.energy_density.cells, 0.5 * strain * 1e9 * strain, rtol=1e-6)
    tsf = compliance_tsf(design, fea, IndicatorField.empty(design.grid))
    np.testing.assert_allclose(tsf.cells, 1.0, rtol=1e-6)


def test_solver_errors():
    design, bc = _uniform_stretch()
    with pytest.raises(SolverError):
        solve_elasticity(design, MATERIAL, BoundaryConditions(design.grid, {}, bc.loads))
    with pytest.raises(DegenerateInputError):
        solve_elasticity(IndicatorField.empty(design.grid), MATERIAL, bc)
    with pytest.raises(DimensionError):
        solve_elasticity(IndicatorField.full(Grid(3, 3, 1e-3)), MATERIAL, bc)


def test_unloaded_design():
    design, bc = _uniform_stretch(force=0.0)
    fea = solve_elasticity(design, MATERIAL, bc)
    assert fea.compliance == 0
    assert fea.max_deflection == 0
    with pytest.raises(DegenerateInputError):
        compliance_tsf(design, fea, IndicatorField.empty(design.grid))


def test_disconnected_island():
    grid = Grid(8, 2, 1e-3)
    cells = np.ones(grid.shape, dtype=bool)
    cells[:, 3:5] = False
    design = IndicatorField(grid, cells)
    restraints = {grid.node_index(0, j): (True, True) for j in range(3)}
    bc = BoundaryConditions(grid, restraints, lump([grid.node_index(8, j) for j in range(3)], (1.0, 0.0)))
    fea = solve_elasticity(design, MATERIAL, bc)
    assert fea.disconnected
    assert fea.void_energy_share > 0.5


def test_compliance_is_twice_the_strain_energy():
    beam, bc = _cantilever(16, 8, 1e-3, 8)
    cells = np.array(beam.cells)
    cells[0:2, 4:12] = False
    design = IndicatorField(beam.grid, cells)
    fea = solve_elasticity(design, MATERIAL, bc)
    energy = fea.energy_density.cells.sum() * beam.grid.cell_volume
    assert 2 * energy == pytest.approx(fea.compliance, rel=1e-8)
    # void cells store the ersatz share of the solid energy
    void = ~design.cells
    np.testing.assert_allclose(
        fea.energy_density.cells[void], MATERIAL.ersatz * fea.solid_energy_density.cells[void], rtol=1e-12
    )
    np.testing.assert_array_equal(fea.energy_density.cells[design.cells], fea.solid_energy_density.cells[design.cells])


def test_max_displacement_scans_the_material_nodes():
    beam, bc = _cantilever(12, 6, 1e-3, 4)
    fea = solve_elasticity(beam, MATERIAL, bc)
    grid = beam.grid
    expected = 0.0
    for j in range(grid.ny):
        for i in range(grid.nx):
            if not beam.cells[j, i]:
                continue
            for di, dj in ((0, 0), (1, 0), (0, 1), (1, 1)):
                ux, uy = fea.displacement[grid.node_index(i + di, j + dj)]
                expected = max(expected, float(np.hypot(ux, uy)))
    assert max_displacement(fea) == pytest.approx(expected, rel=1e-12)
    # the ersatz band outside the beam moves too, but is not part of the design
    assert np.linalg.norm(fea.displacement, axis=1).max() >= expected


def test_material_validation():
    with pytest.raises(ValueError):
        Material(0.0, 0.3)
    with pytest.raises(ValueError):
        Material(1e9, 0.5)
    with pytest.raises(ValueError):
        Material(1e9, 0.3, ersatz=0.5)
    assert Material(1e9, 0.3).ersatz == pytest.approx(1e-6)


def test_boundary_condition_helpers():
    grid = Grid(4, 3, 1.0)
    with pytest.raises(ValueError):
        BoundaryConditions(grid, {grid.n_nodes: (True, True)}, [])
    bc = BoundaryConditions(grid, {0: (True, False), 5: (False, True)}, [(7, (1.0, 0.0)), (7, (0.0, 2.0)), (8, (0.0, 0.0))])
    np.testing.assert_array_equal(bc.fixed_dofs, [0, 11])
    assert bc.load_nodes == [7]
    f = bc.force_vector()
    assert (f[14], f[15]) == (1.0, 2.0)

    corner = IndicatorField(grid, np.eye(3, 4, dtype=bool) & (np.arange(4) == 0))
    np.testing.assert_array_equal(nodes_of(corner), [0, 1, 5, 6])
    assert cells_of_nodes(grid, [6]).count == 4
    assert cells_of_nodes(grid, [0]).count == 1
    assert lump([1, 2], (2.0, -4.0)) == [(1, (1.0, -2.0)), (2, (1.0, -2.0))]
    with pytest.raises(ValueError):
        lump([], (1.0, 0.0))


def test_compliance_grows_as_material_goes():
    grid = Grid(12, 6, 1e-3)
    restraints = {grid.node_index(0, j): (True, True) for j in range(grid.ny + 1)}
    bc = BoundaryConditions(grid, restraints, [(grid.node_index(12, 3), (0.0, -1.0))])
    rng = np.random.default_rng(7)
    for _ in range(10):
        bigger = IndicatorField(grid, rng.random(grid.shape) < 0.9)
        smaller = bigger & IndicatorField(grid, rng.random(grid.shape) < 0.9)
        if smaller.is_empty():
            continue
        c_big = solve_elasticity(bigger, MATERIAL, bc).compliance
        c_small = solve_elasticity(smaller, MATERIAL, bc).compliance
        assert c_small >= c_big * (1 - 1e-9)


def test_stiffness_is_self_adjoint():
    grid = Grid(7, 5, 1e-3)
    rng = np.random.default_rng(8)
    K = assemble_stiffness(IndicatorField(grid, rng.random(grid.shape) < 0.6), MATERIAL)
    u, v = rng.standard_normal((2, 2 * grid.n_nodes))
    assert u @ (K @ v) == pytest.approx(v @ (K @ u), rel=1e-10)
