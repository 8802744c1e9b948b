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
import plotly.io as pio
import pytest

import pruneto  # noqa
from pruneto.fea import BoundaryConditions, Material
from pruneto.field import Grid, IndicatorField, ScalarField
from pruneto.opt import OuterLoopConfig, ParetoFront, Solvers, outer_loop
from pruneto.plots import plot_field, plot_front, plot_snapshots


@pytest.fixture(scope="module")
def front():
    grid = Grid(8, 4, 1e-3, (5e-4, 5e-4))
    restraints = {grid.node_index(0, j): (True, True) for j in range(grid.ny + 1)}
    bc = BoundaryConditions(grid, restraints, [(grid.node_index(8, 2), (0.0, -1.0))])
    cfg = OuterLoopConfig(delta=0.25, v_min=0.5, max_inner_iters=10)
    return outer_loop(IndicatorField.full(grid), [], cfg, Solvers(Material(1e9, 0.3), bc))


def test_template_is_registered():
    assert "pruneto" in pio.templates
    assert pio.templates.default == "plotly+pruneto"
    template = pio.templates["pruneto"]
    assert template.data.scatter[0].mode == "lines+markers"
    assert template.layout.hovermode == "x unified"


def test_plot_front(front):
    fig = plot_front(front)
    assert len(fig.data) == 1
    np.testing.assert_allclose(fig.data[0].x, [p.volume_fraction for p in front])
    assert fig.layout.xaxis.autorange == "reversed"

    fig = plot_front({"a": front, "b": front}, y="max_disp", relative=True)
    assert [trace.name for trace in fig.data] == ["a", "b"]
    assert fig.data[1].y[0] == 1.0
    assert fig.layout.yaxis.title.text == "relative max_disp"


def test_plot_front_unknown_column(front):
    with pytest.raises(ValueError):
        plot_front(front, y="cost")


def test_plot_field():
    grid = Grid(5, 3, 1.0)
    fig = plot_field(ScalarField(grid, np.arange(15, dtype=float).reshape(3, 5)), title="tsf")
    assert fig.layout.title.text == "tsf"
    assert fig.data[0].z.shape == (3, 5)
    # scalar fields take the sequential scale of the template
    assert fig.layout.coloraxis.colorscale[0][1].lower() == "#440154"
    fig = plot_field(IndicatorField.full(grid))
    assert fig.layout.coloraxis.showscale is False


def test_plot_snapshots(front):
    fig = plot_snapshots(front)
    assert len(fig.frames) == len(front)
    assert len(plot_snapshots(front, every=2).frames) == 2
    with pytest.raises(ValueError):
        plot_snapshots(front, every=0)
    with pytest.raises(ValueError):
        plot_snapshots(ParetoFront())
