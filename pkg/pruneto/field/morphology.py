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

from typing import Optional

import numpy as np
from scipy import ndimage

from pruneto.field.fields import IndicatorField
from pruneto.utils import get_default

STRUCTURES = {
    "cross": ndimage.generate_binary_structure(2, 1),
    "square": ndimage.generate_binary_structure(2, 2),
}


def remove_small_components(A: IndicatorField, min_cells: int) -> IndicatorField:
    """Drop the 4-connected components of `A` holding fewer than `min_cells` cells"""
    labels, n_labels = ndimage.label(A.cells, structure=STRUCTURES["cross"])
    if n_labels == 0:
        return A
    sizes = np.bincount(labels.ravel())
    keep = sizes >= min_cells
    keep[0] = False
    return IndicatorField(A.grid, keep[labels])


def regularize(
    A: IndicatorField,
    min_component: Optional[int] = None,
    structure: str = "square",
) -> IndicatorField:
    """Approximate closure of the interior of a cell set

    The set is opened (eroded then dilated) with a 3x3 structuring element
    and the connected components smaller than `min_component` cells are
    removed afterwards. Opening is idempotent and anti-extensive, so the
    result is a subset of `A`.

    On a union of closed cells the exact closure of the interior is the set
    itself. Opening with the square element differs from it only by dropping
    features thinner than two cells; convex corners survive.

    Parameters
    ----------
    A: IndicatorField
        the set to regularize
    min_component: int, optional
        smallest component size kept, defaults to the `min-component-cells`
        configuration value (4)
    structure: str
        'square' (default, keeps the convex corners of rectangles) or
        'cross' (also trims every convex corner cell)

    Returns
    -------
    result: IndicatorField
    """

    if min_component is None:
        min_component = int(get_default("min-component-cells"))
    try:
        element = STRUCTURES[structure]
    except KeyError:
        raise ValueError(f"structure must be one of {sorted(STRUCTURES)}, '{structure}' given")

    opened = ndimage.binary_opening(A.cells, structure=element)
    return remove_small_components(IndicatorField(A.grid, opened), min_component)
