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

"""Reading and writing fields and traced fronts

Images are written top row first, so cell row ``ny - 1`` is the first
image row and y points up on screen.
"""

from pathlib import Path
from typing import TYPE_CHECKING, Union

import cv2
import numpy as np
import pandas as pd
import xarray

from pruneto.exceptions import DimensionError
from pruneto.field import Grid, IndicatorField, ScalarField

if TYPE_CHECKING:
    from pruneto.opt.loops import ParetoFront

PathLike = Union[str, Path]


def _to_gray(field: Union[IndicatorField, ScalarField]) -> np.ndarray:
    if isinstance(field, IndicatorField):
        gray = np.where(field.cells, 255, 0)
    else:
        gray = np.rint(255 * field.normalized().cells)
    return np.flipud(gray).astype(np.uint8)


def write_pgm(field: Union[IndicatorField, ScalarField], path: PathLike) -> Path:
    """Write an 8-bit binary (P5) PGM image of a field

    Material cells of an IndicatorField are white (255). A ScalarField is
    min-max normalized onto [0, 255].
    """

    path = Path(path)
    if not cv2.imwrite(str(path), _to_gray(field), [cv2.IMWRITE_PXM_BINARY, 1]):
        raise OSError(f"{path}: could not write the image")
    return path


def read_pgm(path: PathLike) -> np.ndarray:
    """Read a P5 or P2 PGM image into an (ny, nx) array of cells

    Rows are flipped so that ``array[j, i]`` is the cell of row ``j``
    counted from the bottom of the image. Gray levels are on [0, 255]
    whatever the maximum value of the image.
    """

    image = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if image is None:
        raise ValueError(f"{path}: not a readable image")
    if image.ndim != 2:
        raise ValueError(f"{path}: not a gray-level image (shape {image.shape})")
    gray = image.astype(float) * (255.0 / np.iinfo(image.dtype).max)
    return np.flipud(gray)


def read_indicator(path: PathLike, grid: Grid) -> IndicatorField:
    """Read a PGM bitmap as an indicator field on `grid`, gray >= 128 is material"""
    gray = read_pgm(path)
    if gray.shape != grid.shape:
        raise DimensionError(f"{path}: image of shape {gray.shape} does not match grid shape {grid.shape}")
    return IndicatorField(grid, gray >= 128)


def write_csv(field: Union[IndicatorField, ScalarField], path: PathLike) -> Path:
    """Write the cell values, one line per grid row, top row first"""
    path = Path(path)
    values = field.cells.astype(int) if isinstance(field, IndicatorField) else field.cells
    pd.DataFrame(np.flipud(values)).to_csv(path, header=False, index=False)
    return path


def write_front_csv(front: "ParetoFront", path: PathLike) -> Path:
    """Write one row per traced point, columns as `pruneto.opt.CSV_COLUMNS`

    The step that ended the tracing, if refused, comes last with the stop
    reason as status.
    """
    path = Path(path)
    front.to_dataframe(include_rejected=True).to_csv(path, index=False, float_format="%.10g", na_rep="nan", lineterminator="\n")
    return path


def front_to_dataset(front: "ParetoFront") -> xarray.Dataset:
    """Stack the designs and sensitivity fields of a front along a `step` dimension"""
    if not len(front):
        raise ValueError("cannot export an empty front")
    grid = front[0].design.grid
    x, y = grid.centers()
    table = front.to_dataframe().set_index("step")

    data_vars = {
        "design": (("step", "y", "x"), np.stack([p.design.cells.astype(np.int8) for p in front])),
        "tsf": (("step", "y", "x"), np.stack([p.tsf.cells for p in front])),
    }
    if all(p.mu is not None for p in front):
        data_vars["mu"] = (("step", "y", "x"), np.stack([p.mu.cells for p in front]))
    for column in table.columns:
        if column == "status":
            data_vars[column] = ("step", table[column].astype(str).to_numpy())
        else:
            data_vars[column] = ("step", table[column].to_numpy())

    dataset = xarray.Dataset(
        data_vars,
        coords={"step": table.index.to_numpy(), "y": y[:, 0], "x": x[0]},
        attrs={"h": grid.h, "stop_reason": front.stop_reason},
    )
    dataset["design"].attrs["description"] = "1 where there is material"
    dataset["tsf"].attrs["description"] = "sensitivity field the design was thresholded from"
    return dataset


def to_netcdf(front: "ParetoFront", path: PathLike) -> Path:
    """Write a traced front to a netCDF3 file (scipy engine)"""
    path = Path(path)
    front_to_dataset(front).to_netcdf(path, engine="scipy")
    return path
