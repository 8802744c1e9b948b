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


"""Figures of traced fronts and fields"""

from typing import Mapping, Optional, Union

import numpy as np
import plotly.express as px
import plotly.graph_objects as go

from pruneto.field import IndicatorField, ScalarField
from pruneto.opt.loops import ParetoFront


def plot_front(
    fronts: Union[ParetoFront, Mapping[str, ParetoFront]],
    y: str = "compliance",
    relative: bool = False,
) -> go.Figure:
    """
    Plot one or several traced fronts against the volume fraction

    Parameters
    ----------
    fronts:
        a front, or fronts by label to compare constrained runs
    y:
        column of the front table on the vertical axis
    relative:
        divide each curve by its value at the first point

    Returns
    -------
    fig: the plotly figure
    """

    if isinstance(fronts, ParetoFront):
        fronts = {"front": fronts}

    fig = go.Figure()
    for label, front in fronts.items():
        table = front.to_dataframe()
        if y not in table.columns:
            raise ValueError(f"unknown column '{y}', expected one of {list(table.columns)}")
        values = table[y].to_numpy(dtype=float)
        if relative and len(values):
            values = values / values[0]
        fig.add_trace(
            go.Scatter(
                x=table["volfrac"],
                y=values,
                name=label,
                text=table["status"],
            )
        )
    fig.update_layout(
        xaxis_title="volume fraction",
        yaxis_title=f"relative {y}" if relative else y,
    )
    # the front is traced from full volume downwards
    fig.update_xaxes(autorange="reversed")
    return fig


def plot_field(field: Union[IndicatorField, ScalarField], title: Optional[str] = None) -> go.Figure:
    """Heatmap of a field, y up, one pixel per cell"""
    grid = field.grid
    x, y = grid.centers()
    values = field.cells.astype(float)
    color_scale = "gray_r" if isinstance(field, IndicatorField) else None
    fig = px.imshow(
        values,
        x=x[0],
        y=y[:, 0],
        origin="lower",
        color_continuous_scale=color_scale,
        aspect="equal",
    )
    if isinstance(field, IndicatorField):
        fig.update_coloraxes(showscale=False)
    if title:
        fig.update_layout(title=title)
    fig.update_layout(xaxis_title="x", yaxis_title="y")
    return fig


def plot_snapshots(front: ParetoFront, every: int = 1) -> go.Figure:
    """The designs of a front side by side, as an animation over the steps"""
    if every < 1:
        raise ValueError(f"every must be >= 1, got {every}")
    points = front.points[::every]
    if not points:
        raise ValueError("cannot plot an empty front")
    stack = np.stack([p.design.cells.astype(float) for p in points])
    fig = px.imshow(
        stack,
        animation_frame=0,
        origin="lower",
        color_continuous_scale="gray_r",
        labels=dict(animation_frame="step"),
    )
    fig.update_coloraxes(showscale=False)
    return fig
