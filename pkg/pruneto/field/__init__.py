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

from pruneto.field.fields import (
    Grid,
    IndicatorField,
    ScalarField,
    boolean_op,
    volume_fraction,
    superlevel_set,
)
from pruneto.field.morphology import regularize, remove_small_components
from pruneto.field.primitives import rect, disc, halfplane, expression

__all__ = [
    "Grid",
    "IndicatorField",
    "ScalarField",
    "boolean_op",
    "volume_fraction",
    "superlevel_set",
    "regularize",
    "remove_small_components",
    "rect",
    "disc",
    "halfplane",
    "expression",
]
