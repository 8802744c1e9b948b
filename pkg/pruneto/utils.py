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

import os
import sys
import configparser
import functools
import logging
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

CONFIG_FILEPATHS = [
    os.environ.get("PRUNETO_CONFIG_FILEPATH"),
    "./pruneto.ini",
    "~/.config/pruneto.ini",
    f"{sys.prefix}/etc/pruneto/config.ini",
]

# values used when no config file overrides them
DEFAULTS = {
    "ersatz": "1e-6",
    "mu0-cells": "0.5",
    "samples-per-21deg": "64",
    "max-inner-iters": "50",
    "filter-radius": "0",
    "overhang-deg": "45",
    "kappa-start": "0.01",
    "kappa-end": "0.2",
    "min-component-cells": "4",
    "solver-rtol": "1e-8",
}

LOGGER = logging.getLogger("pruneto.default")
LOGGER.addHandler(logging.StreamHandler())
LOGGER.setLevel(os.environ.get("PRUNETO_LOG_THRESHOLD", "WARNING"))


@functools.lru_cache(maxsize=None)
def _read_config(filepaths: Tuple[Optional[str], ...]) -> configparser.ConfigParser:
    config = configparser.ConfigParser()
    config.read_dict({"default": DEFAULTS})
    for config_filepath in filepaths:
        LOGGER.debug("try reading config from %s", config_filepath)
        if not config_filepath:
            continue

        config_filepath = Path(config_filepath).expanduser()
        if not config_filepath.exists():
            continue

        config.read(config_filepath)
        LOGGER.info("config loaded from %s", config_filepath)
        break
    else:
        LOGGER.debug("no config file was found, using built-in defaults")
    return config


def get_config() -> configparser.ConfigParser:
    """The library configuration, parsed once per list of candidate files"""
    return _read_config(tuple(CONFIG_FILEPATHS))


def get_default(key: str) -> float:
    """Return the numerical library default named `key`"""
    return get_config().getfloat("default", key)


def rotation_matrix(theta: float) -> np.ndarray:
    """Counter-clockwise planar rotation by `theta` radians"""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def disc_offsets(radius_cells: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integer cell offsets lying in a disc.

    Parameters
    ----------
    radius_cells:
        radius of the disc, in cell units. A cell offset belongs to the
        disc when the distance between cell centres is at most the radius.

    Returns
    -------
    dj, di:
        row and column offsets of the cells in the disc
    """

    r = int(np.floor(radius_cells))
    dj, di = np.mgrid[-r : r + 1, -r : r + 1]
    inside = dj**2 + di**2 <= radius_cells**2 + 1e-12
    return dj[inside], di[inside]
