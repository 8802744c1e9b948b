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

"""Topological sensitivity fields and threshold selection

Every field follows the same convention: the higher the value of a cell,
the more the cell is worth keeping. Thresholding removes the lowest cells.
"""

from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage

from pruneto.exceptions import DegenerateInputError, DimensionError, InfeasibleTargetError
from pruneto.fea import FeaResult
from pruneto.field import IndicatorField, ScalarField
from pruneto.utils import LOGGER, disc_offsets

# cells that must never be removed
FrozenMask = IndicatorField


def _check_grids(*fields):
    grid = fields[0].grid
    for other in fields[1:]:
        if other.grid != grid:
            raise DimensionError(f"grid mismatch: {other.grid} != {grid}")


def compliance_tsf(
    design: IndicatorField,
    fea: FeaResult,
    frozen: FrozenMask,
    candidates: Optional[IndicatorField] = None,
) -> ScalarField:
    """Compliance sensitivity of each cell, as normalized strain energy density

    Material cells get their energy density divided by the largest one and
    frozen cells get 1. Cells of `candidates` that `design` lacks are rated
    with the energy density they would store if they were solid again, so
    that a cell whose removal cut the load path ranks high and comes back.
    The other cells get 0.

    Parameters
    ----------
    design: IndicatorField
        the analysed design
    fea: FeaResult
        the analysis of `design`
    frozen: FrozenMask
    candidates: IndicatorField, optional
        the cells the next threshold chooses from, `design` by default
    """

    candidates = design if candidates is None else candidates
    _check_grids(design, fea.energy_density, frozen, candidates)
    density = np.where(design.cells, fea.energy_density.cells, 0.0)
    density = np.where(candidates.cells & ~design.cells, fea.solid_energy_density.cells, density)
    top = density.max()
    if not top > 0:
        raise DegenerateInputError("the strain energy vanishes on every material cell (no load?)")
    tsf = density / top
    tsf[frozen.cells & (design.cells | candidates.cells)] = 1.0
    return ScalarField(design.grid, tsf)


def augment_tsf(fields: Sequence[Tuple[ScalarField, float]]) -> ScalarField:
    """Weighted sum of sensitivity fields, rescaled so that its maximum is 1

    Parameters
    ----------
    fields: list of (ScalarField, float)
        each field with its non-negative weight

    Returns
    -------
    tsf: ScalarField
    """

    if not fields:
        raise DegenerateInputError("nothing to augment")
    _check_grids(*[f for f, _ in fields])
    weights = [w for _, w in fields]
    if any(w < 0 for w in weights):
        raise ValueError(f"weights must be non-negative, got {weights}")
    if not any(w > 0 for w in weights):
        raise DegenerateInputError("every augmentation weight is zero")

    total = sum(w * f.cells for f, w in fields if w > 0)
    top = total.max()
    scale = top if top > 0 else np.abs(total).max()
    if scale > 0:
        total = total / scale
    return ScalarField(fields[0][0].grid, total)


def penalize_tsf(tsf: ScalarField, locals: Sequence[Tuple[ScalarField, float]]) -> ScalarField:
    """Add non-negative multiples of local constraint fields, without rescaling"""
    _check_grids(tsf, *[g for g, _ in locals])
    total = np.array(tsf.cells)
    for g, kappa in locals:
        if kappa < 0:
            raise ValueError(f"penalty weights must be non-negative, got {kappa}")
        total += kappa * g.cells
    return ScalarField(tsf.grid, total)


def filter_tsf(tsf: ScalarField, radius: float, design: Optional[IndicatorField] = None) -> ScalarField:
    """Mean of the field over the material cells within `radius` of each cell

    Filtering bounds the size of the features the thresholding can carve.
    Cells with no material cell in reach keep their value. A radius below
    one cell spacing leaves the field unchanged.

    Parameters
    ----------
    tsf: ScalarField
    radius: float
        filter radius (length units)
    design: IndicatorField, optional
        material cells, every cell by default
    """

    if radius < 0:
        raise ValueError(f"radius must be non-negative, got {radius}")
    if radius < tsf.grid.h:
        return tsf
    mask = np.ones(tsf.grid.shape) if design is None else design.cells.astype(float)
    if design is not None:
        _check_grids(tsf, design)

    dj, di = disc_offsets(radius / tsf.grid.h)
    r = int(max(np.abs(dj).max(), np.abs(di).max()))
    footprint = np.zeros((2 * r + 1, 2 * r + 1))
    footprint[dj + r, di + r] = 1.0

    total = ndimage.correlate(tsf.cells * mask, footprint, mode="constant", cval=0.0)
    weight = ndimage.correlate(mask, footprint, mode="constant", cval=0.0)
    filtered = np.where(weight > 0, total / np.where(weight > 0, weight, 1.0), tsf.cells)
    return ScalarField(tsf.grid, filtered)


def find_tau(
    design: IndicatorField,
    tsf: ScalarField,
    target_fraction: float,
    ref: IndicatorField,
    frozen: FrozenMask,
) -> Tuple[float, IndicatorField]:
    """Threshold removing the least sensitive cells down to a volume target

    The removable cells (material, not frozen) are sorted by increasing
    sensitivity, ties broken by increasing flat cell index, and the first
    ones are removed until ``round(target_fraction * |ref|)`` cells remain.

    Parameters
    ----------
    design: IndicatorField
        the cells that may be kept
    tsf: ScalarField
    target_fraction: float
        in (0, volume_fraction(design, ref)]
    ref: IndicatorField
        reference volume of the fractions
    frozen: FrozenMask
        cells always kept, a subset of `design`

    Returns
    -------
    tau: float
        the sensitivity of the least sensitive kept cell (``-inf`` when no
        removable cell exists, ``inf`` when every removable cell goes)
    design: IndicatorField
        frozen cells plus the kept cells
    """

    _check_grids(design, tsf, ref, frozen)
    if not frozen.issubset(design):
        raise ValueError("frozen cells must belong to the design")
    n_ref = ref.count
    if n_ref == 0:
        raise ZeroDivisionError("reference field is empty")
    current = design.count / n_ref
    if not 0 < target_fraction <= current + 0.5 / n_ref:
        raise ValueError(f"target fraction must be in (0, {current:.4f}], got {target_fraction}")
    if target_fraction * n_ref < frozen.count - 0.5:
        raise InfeasibleTargetError(
            f"target fraction {target_fraction:.4f} is below the frozen fraction {frozen.count / n_ref:.4f}"
        )

    n_target = min(max(int(round(target_fraction * n_ref)), frozen.count), design.count)
    removable = np.flatnonzero(design.cells & ~frozen.cells)
    values = tsf.cells.ravel()[removable]
    order = np.lexsort((removable, values))
    n_remove = len(removable) - (n_target - frozen.count)

    if len(removable) == 0:
        tau = -np.inf
    elif n_remove >= len(removable):
        tau = np.inf
    else:
        tau = float(values[order[n_remove]])

    cells = np.array(frozen.cells).ravel()
    cells[removable[order[n_remove:]]] = True
    result = IndicatorField(design.grid, cells.reshape(design.grid.shape))
    LOGGER.debug("tau=%.6g keeps %d cells (target %d)", tau, result.count, n_target)
    return tau, result
