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

"""Plot defaults registered as the ``pruneto`` plotly template

Fronts are drawn as lines with open markers on every traced step, fields
use a sequential scale, and comparisons of several runs hover on the
volume fraction.
"""

import plotly.graph_objects as go
import plotly.io as pio

pio.templates["pruneto"] = go.layout.Template(
    layout=dict(
        colorway=["#1f4e79", "#c0504d", "#9bbb59", "#8064a2"],
        colorscale=dict(sequential="Viridis"),
        hovermode="x unified",
        legend=dict(title_text="run"),
    ),
    data_scatter=[go.Scatter(mode="lines+markers", marker=dict(size=7, symbol="circle-open"), line=dict(width=1.5))],
)
