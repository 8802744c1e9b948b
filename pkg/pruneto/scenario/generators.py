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

"""Built-in scenarios

Each generator writes ``<name>.ini`` (and the bitmaps it references) into
a directory and returns the path of the scenario file.
"""

import configparser
from pathlib import Path
from typing import Callable, Dict, Optional, Union

from pruneto.cspace import t_tool
from pruneto.fea import solve_elasticity
from pruneto.field import Grid
from pruneto.io import write_pgm
from pruneto.scenario.config import load_scenario
from pruneto.utils import LOGGER

PathLike = Union[str, Path]

# 0.03 in
LATCH_DEFLECTION_BOUND = 7.62e-4


def _fmt(*values: float) -> str:
    return ", ".join(f"{v:.9g}" for v in values)


def _write(directory: PathLike, name: str, sections: Dict[str, Dict[str, str]]) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    config = configparser.ConfigParser(interpolation=None)
    config.read_dict(sections)
    path = directory / f"{name}.ini"
    with open(path, "w") as fobj:
        config.write(fobj)
    LOGGER.info("scenario '%s' written to %s", name, path)
    return path


def _grid(nx: int, ny: int, h: float) -> Dict[str, str]:
    return {"nx": str(nx), "ny": str(ny), "h": _fmt(h), "corner": "0, 0"}


def cantilever(
    directory: PathLike,
    nx: int = 64,
    ny: int = 32,
    h: float = 1e-3,
    delta: float = 0.05,
    v_min: float = 0.5,
) -> Path:
    """Clamped on the left edge, unit tip load at mid-height of the right edge

    E = 1 GPa, nu = 0.3.
    """

    length, depth = nx * h, ny * h
    sections = {
        "grid": _grid(nx, ny, h),
        "domain": {"shape": "full"},
        "material": {"young_modulus": "1e9", "poisson_ratio": "0.3"},
        "restraint.clamp": {"box": _fmt(0, 0, 0, depth), "x": "yes", "y": "yes"},
        "load.tip": {"point": _fmt(length, depth / 2), "force": "0, -1"},
        "outer": {"delta": _fmt(delta), "v_min": _fmt(v_min), "max_inner_iters": "50"},
        "output": {"directory": "out", "snapshot_every": "1"},
    }
    return _write(directory, "cantilever", sections)


def _latch_sections(nx: int, force: float, accessibility: bool, deflection_bound: Optional[float]):
    size = 80e-3
    h = size / nx
    mm = 1e-3
    pivot = (25 * mm, 40 * mm)
    stock = _fmt(5 * mm, 5 * mm, 75 * mm, 75 * mm)
    hole = f"disc({_fmt(*pivot, 4 * mm)})"
    sections = {
        "grid": _grid(nx, nx, h),
        "domain": {"shape": f"rect({stock}) - {hole}"},
        "envelope": {"shape": f"rect({stock})"},
        "frozen": {"shape": f"disc({_fmt(*pivot, 7 * mm)}) - {hole}", "boundary_cells": "yes"},
        "material": {"young_modulus": "193e9", "poisson_ratio": "0.29"},
        "motion": {"pivot": _fmt(*pivot), "start_deg": "-21", "stop_deg": "0"},
        "constraint.containment": {"kind": "containment_motion"},
        "restraint.pivot": {"disc": _fmt(*pivot, 4 * mm + h / 2), "x": "yes", "y": "yes"},
        "load.hook": {"point": _fmt(62 * mm, 40 * mm), "force": _fmt(0, -force)},
        "load.stop": {"point": _fmt(45 * mm, 62 * mm), "force": _fmt(-force / 2, 0)},
        "outer": {"delta": "0.05", "v_min": "0.2", "max_inner_iters": "50"},
        "output": {"directory": "out", "snapshot_every": "1"},
    }
    if deflection_bound is not None:
        sections["outer"]["deflection_bound"] = _fmt(deflection_bound)
    if accessibility:
        sections["tool"] = {"kind": "t", "origin": f"{nx // 2}, {nx // 2}", "angles_deg": "0, 180"}
        sections["constraint.access"] = {"kind": "accessibility", "kappa_start": "0.01", "kappa_end": "0.2"}
    return sections


def latch(
    directory: PathLike,
    nx: int = 80,
    accessibility: bool = False,
    deflection_bound: Optional[float] = LATCH_DEFLECTION_BOUND,
) -> Path:
    """A latch rotating clockwise by up to 21 degrees about its pivot pin

    The 80 mm square envelope is discretized with `nx` cells per side. The
    pivot hole is restrained and surrounded by a frozen ring; a hook load
    and a stop load act on the arm. Stainless steel 304 (E = 193 GPa,
    nu = 0.29). The load magnitude is scaled so that the solid part
    deflects a quarter of `deflection_bound` (0.03 in by default).
    """

    path = _write(directory, "latch", _latch_sections(nx, 1.0, accessibility, deflection_bound))
    scenario = load_scenario(path)
    unit = solve_elasticity(scenario.domain, scenario.material, scenario.bc).max_deflection
    bound = LATCH_DEFLECTION_BOUND if deflection_bound is None else deflection_bound
    force = 0.25 * bound / unit
    LOGGER.debug("latch load scaled to %.6g N", force)
    return _write(directory, "latch", _latch_sections(nx, force, accessibility, deflection_bound))


def fixture2axis(directory: PathLike, nx: int = 64, h: float = 1e-3) -> Path:
    """A square stock held by six clamps, cut by a 2-axis tool

    Two clamps press on the left side and two on the bottom, one on each of
    the other sides. The tool reaches the stock along +x and +y only; its
    head must clear the clamps. The tool bitmaps are written next to the
    scenario. Steel (E = 200 GPa, nu = 0.33), load on the right edge.
    """

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    size = nx * h
    grid = Grid(nx, nx, h, (h / 2, h / 2))
    origin = (nx // 2, nx // 2)
    tool = t_tool(grid, origin, shaft_length=10, head_height=5, head_width=2)
    write_pgm(tool.head, directory / "tool_head.pgm")
    write_pgm(tool.cutter, directory / "tool_cutter.pgm")

    lo, hi = 0.125 * size, 0.875 * size
    jaw = 0.115 * size
    clamps = [
        (0, 0.2 * size, jaw, 0.3 * size),
        (0, 0.6 * size, jaw, 0.7 * size),
        (0.2 * size, 0, 0.3 * size, jaw),
        (0.6 * size, 0, 0.7 * size, jaw),
        (size - jaw, 0.45 * size, size, 0.55 * size),
        (0.45 * size, size - jaw, 0.55 * size, size),
    ]
    sections = {
        "grid": _grid(nx, nx, h),
        "domain": {"shape": f"rect({_fmt(lo, lo, hi, hi)})"},
        "fixtures": {"shape": " + ".join(f"rect({_fmt(*box)})" for box in clamps)},
        "tool": {
            "kind": "bitmap",
            "head": 'pgm("tool_head.pgm")',
            "cutter": 'pgm("tool_cutter.pgm")',
            "origin": f"{origin[0]}, {origin[1]}",
            "angles_deg": "0, 90",
        },
        "constraint.reach": {"kind": "accessibility_2axis"},
        "material": {"young_modulus": "200e9", "poisson_ratio": "0.33"},
        "restraint.jaw": {"box": _fmt(lo, 0.2 * size, lo, 0.8 * size), "x": "yes", "y": "yes"},
        "load.edge": {"point": _fmt(hi, size / 2), "force": "0, -1000"},
        "outer": {"delta": "0.05", "v_min": "0.4", "max_inner_iters": "50"},
        "output": {"directory": "out", "snapshot_every": "1"},
    }
    return _write(directory, "fixture2axis", sections)


def beam_accessibility(
    directory: PathLike,
    orientations: str = "one",
    nx: int = 48,
    ny: int = 16,
    h: float = 1e-3,
    v_min: float = 0.55,
) -> Path:
    """Simply supported beam with a top mid-span load, cut by a T-shaped tool

    `orientations` is 'none' (no accessibility constraint), 'one' (the tool
    only comes from the left) or 'two' (from the left or the right).
    E = 1 GPa, nu = 0.3.
    """

    angles = {"none": None, "one": "0", "two": "0, 180"}
    if orientations not in angles:
        raise ValueError(f"orientations must be one of {sorted(angles)}, '{orientations}' given")
    length, depth = nx * h, ny * h
    sections = {
        "grid": _grid(nx, ny, h),
        "domain": {"shape": "full"},
        "material": {"young_modulus": "1e9", "poisson_ratio": "0.3"},
        "restraint.pin": {"point": _fmt(0, 0), "x": "yes", "y": "yes"},
        "restraint.roller": {"point": _fmt(length, 0), "x": "no", "y": "yes"},
        "load.top": {"point": _fmt(length / 2, depth), "force": "0, -1"},
        "outer": {"delta": "0.05", "v_min": _fmt(v_min), "max_inner_iters": "50"},
        "output": {"directory": "out", "snapshot_every": "1"},
    }
    if angles[orientations] is not None:
        sections["tool"] = {
            "kind": "t",
            "origin": f"{nx // 2}, {ny // 2}",
            "shaft_length": "6",
            "head_height": "5",
            "head_width": "2",
            "angles_deg": angles[orientations],
        }
        sections["constraint.access"] = {"kind": "accessibility", "kappa_start": "1.0", "kappa_end": "2.0"}
    return _write(directory, f"beam-accessibility-{orientations}", sections)


def bridge(
    directory: PathLike,
    nx: int = 64,
    ny: int = 32,
    h: float = 1e-3,
    support_weight: float = 0.5,
    v_min: float = 0.3,
) -> Path:
    """Deck loaded uniformly, pinned at both bottom corners, printed along +y

    A positive `support_weight` couples the support material volume to the
    compliance sensitivity.
    """

    length, depth = nx * h, ny * h
    sections = {
        "grid": _grid(nx, ny, h),
        "domain": {"shape": "full"},
        "material": {"young_modulus": "1e9", "poisson_ratio": "0.3"},
        "restraint.left": {"point": _fmt(0, 0), "x": "yes", "y": "yes"},
        "restraint.right": {"point": _fmt(length, 0), "x": "yes", "y": "yes"},
        "load.deck": {"box": _fmt(0, depth, length, depth), "force": _fmt(0, -nx)},
        "outer": {"delta": "0.05", "v_min": _fmt(v_min), "max_inner_iters": "50"},
        "output": {"directory": "out", "snapshot_every": "1"},
    }
    if support_weight > 0:
        sections["constraint.support"] = {"kind": "support", "weight": _fmt(support_weight), "overhang_deg": "45"}
    return _write(directory, "bridge", sections)


GENERATORS: Dict[str, Callable[..., Path]] = {
    "cantilever": cantilever,
    "latch": latch,
    "fixture2axis": fixture2axis,
    "beam-accessibility": beam_accessibility,
    "bridge": bridge,
}


def generate(name: str, directory: PathLike, **options) -> Path:
    """Write the built-in scenario `name` into `directory`"""
    try:
        generator = GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown scenario '{name}', expected one of {sorted(GENERATORS)}")
    return generator(directory, **options)
