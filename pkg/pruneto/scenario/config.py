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

"""Scenario files

A scenario is an INI file. Lengths are in meters, forces in newtons (per
unit thickness) and angles in degrees. Geometry values are Boolean
combinations of primitives::

    rect(x0, y0, x1, y1)   disc(cx, cy, r)   halfplane(nx, ny, c)
    expr("x**2 + y**2 < 1e-4")   pgm("bitmap.pgm")   full   empty

joined with ``+`` (union), ``*`` (intersection), ``-`` (difference) and
parentheses. ``pgm:<path>`` is a shortcut for a single bitmap. Paths are
relative to the scenario file.

Sections: ``[grid]``, ``[domain]``, ``[frozen]``, ``[envelope]``,
``[fixtures]``, ``[material]``, ``[restraint.<name>]``, ``[load.<name>]``,
``[motion]``, ``[tool]``, ``[constraint.<name>]``, ``[outer]`` and
``[output]``.
"""

import ast
import configparser
import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from pruneto.cspace import ToolAssembly, t_tool
from pruneto.exceptions import ConfigError, DimensionError
from pruneto.fea import BoundaryConditions, Material, cells_of_nodes, lump
from pruneto.field import Grid, IndicatorField, disc, expression, halfplane, rect
from pruneto.io import read_indicator
from pruneto.motion import MotionSet
from pruneto.opt import (
    ConstraintSpec,
    KappaSchedule,
    OuterLoopConfig,
    Solvers,
    accessibility_constraint,
    deflection_bound,
    support_constraint,
)
from pruneto.prune import PointwiseConstraint, accessibility_2axis, containment_motion, custom_pmc

POINTWISE_KINDS = ("containment_motion", "accessibility_2axis", "custom_pmc")
EXPLORATION_KINDS = ("deflection", "support", "accessibility")

PathLike = Union[str, Path]


def _floats(text: str, count: int) -> Tuple[float, ...]:
    values = tuple(float(v) for v in text.replace(",", " ").split())
    if len(values) != count:
        raise ValueError(f"expected {count} numbers, got '{text}'")
    return values


def _angles(text: str) -> Tuple[float, ...]:
    """Angles in degrees, separated by commas or spaces, returned in radians"""
    return tuple(float(np.radians(float(v))) for v in text.replace(",", " ").split())


class _GeometryParser:
    """Evaluate geometry values on a grid"""

    def __init__(self, grid: Grid, base_dir: Path):
        self.grid = grid
        self.base_dir = base_dir

    def __call__(self, text: str) -> IndicatorField:
        text = text.strip()
        if text.startswith("pgm:"):
            return read_indicator(self.base_dir / text[4:].strip(), self.grid)
        try:
            tree = ast.parse(text, mode="eval")
        except SyntaxError:
            raise ValueError(f"cannot parse geometry '{text}'")
        return self._evaluate(tree.body)

    def _evaluate(self, node: ast.AST) -> IndicatorField:
        if isinstance(node, ast.BinOp):
            left, right = self._evaluate(node.left), self._evaluate(node.right)
            if isinstance(node.op, ast.Add):
                return left | right
            if isinstance(node.op, ast.Mult):
                return left & right
            if isinstance(node.op, ast.Sub):
                return left - right
        elif isinstance(node, ast.Name):
            if node.id == "full":
                return IndicatorField.full(self.grid)
            if node.id == "empty":
                return IndicatorField.empty(self.grid)
        elif isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            args = [ast.literal_eval(arg) for arg in node.args]
            return self._primitive(node.func.id, args)
        raise ValueError(f"unsupported geometry element '{ast.unparse(node)}'")

    def _primitive(self, name: str, args: list) -> IndicatorField:
        arity = {"rect": 4, "disc": 3, "halfplane": 3, "expr": 1, "pgm": 1}
        if name not in arity:
            raise ValueError(f"unknown primitive '{name}', expected one of {sorted(arity)}")
        if len(args) != arity[name]:
            raise ValueError(f"{name} takes {arity[name]} arguments, {len(args)} given")
        if name == "rect":
            return rect(self.grid, *args)
        if name == "disc":
            return disc(self.grid, *args)
        if name == "halfplane":
            return halfplane(self.grid, *args)
        if name == "expr":
            return expression(self.grid, str(args[0]))
        return read_indicator(self.base_dir / str(args[0]), self.grid)


def select_nodes(grid: Grid, section: configparser.SectionProxy) -> np.ndarray:
    """Nodes picked by a `point`, `box` or `disc` key, sorted"""
    jj, ii = np.mgrid[0 : grid.ny + 1, 0 : grid.nx + 1]
    x = grid.origin[0] + (ii - 0.5) * grid.h
    y = grid.origin[1] + (jj - 0.5) * grid.h
    eps = 1e-6 * grid.h
    if "point" in section:
        px, py = _floats(section["point"], 2)
        return np.array([grid.nearest_node(px, py)])
    if "box" in section:
        x0, y0, x1, y1 = _floats(section["box"], 4)
        inside = (x >= min(x0, x1) - eps) & (x <= max(x0, x1) + eps)
        inside &= (y >= min(y0, y1) - eps) & (y <= max(y0, y1) + eps)
    elif "disc" in section:
        cx, cy, r = _floats(section["disc"], 3)
        inside = (x - cx) ** 2 + (y - cy) ** 2 <= r**2 + eps
    else:
        raise ValueError("one of 'point', 'box' or 'disc' is required")
    return np.flatnonzero(inside.ravel())


@dataclass
class OutputSettings:
    directory: Path
    snapshot_every: int = 1
    netcdf: bool = False


@dataclass
class Scenario:
    """Everything a run needs, parsed from a scenario file"""

    path: Path
    text: str
    grid: Grid
    domain: IndicatorField
    frozen: IndicatorField
    material: Material
    bc: BoundaryConditions
    load_nodes: Dict[str, np.ndarray]
    restraint_nodes: Dict[str, np.ndarray]
    outer: OuterLoopConfig
    output: OutputSettings
    envelope: Optional[IndicatorField] = None
    fixtures: Optional[IndicatorField] = None
    motion: Optional[MotionSet] = None
    tool: Optional[ToolAssembly] = None
    angles: Tuple[float, ...] = ()
    pointwise: List[PointwiseConstraint] = field(default_factory=list)
    specs: List[ConstraintSpec] = field(default_factory=list)
    freeze_boundary: bool = True

    @property
    def sha256(self) -> str:
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()

    def solvers(self) -> Solvers:
        return Solvers(self.material, self.bc)

    def boundary_cells(self) -> IndicatorField:
        """Domain cells touching a loaded or restrained node"""
        nodes = [n for group in (self.load_nodes, self.restraint_nodes) for ns in group.values() for n in ns]
        return cells_of_nodes(self.grid, nodes) & self.domain


class _Reader:
    """Collect every problem of a scenario file instead of stopping at the first"""

    def __init__(self, path: Path):
        self.path = path
        self.messages: List[str] = []
        self.config = configparser.ConfigParser(interpolation=None)
        self.text = path.read_text()
        try:
            self.config.read_string(self.text, source=str(path))
        except configparser.Error as error:
            raise ConfigError([f"syntax: {error}"], str(path))

    def error(self, where: str, message: str):
        self.messages.append(f"[{where}] {message}")

    def attempt(self, where: str, func, *args, default=None):
        try:
            return func(*args)
        except DimensionError as error:
            self.error(where, f"DimensionError: {error}")
        except (ValueError, KeyError, TypeError, OSError) as error:
            self.error(where, str(error) if not isinstance(error, KeyError) else f"missing key {error}")
        return default

    def sections(self, prefix: str) -> List[str]:
        return [s for s in self.config.sections() if s.startswith(prefix + ".")]


def _read_grid(section: configparser.SectionProxy) -> Grid:
    h = section.getfloat("h")
    corner = _floats(section.get("corner", "0, 0"), 2)
    return Grid(section.getint("nx"), section.getint("ny"), h, (corner[0] + h / 2, corner[1] + h / 2))


def _read_material(section: configparser.SectionProxy) -> Material:
    kwargs = dict(young_modulus=section.getfloat("young_modulus"), poisson_ratio=section.getfloat("poisson_ratio"))
    if "ersatz" in section:
        kwargs["ersatz"] = section.getfloat("ersatz")
    return Material(**kwargs)


def _read_outer(section: configparser.SectionProxy) -> OuterLoopConfig:
    kwargs = {}
    for key in ("delta", "v_min", "deflection_bound", "filter_radius", "compliance_weight", "overhang_deg"):
        if key in section:
            kwargs[key] = section.getfloat(key)
    if "max_inner_iters" in section:
        kwargs["max_inner_iters"] = section.getint("max_inner_iters")
    if "history_averaging" in section:
        kwargs["history_averaging"] = section.getboolean("history_averaging")
    return OuterLoopConfig(**kwargs)


def _read_motion(section: configparser.SectionProxy) -> MotionSet:
    samples = section.getint("samples") if "samples" in section else None
    return MotionSet.rotation(
        _floats(section["pivot"], 2),
        section.getfloat("start_deg"),
        section.getfloat("stop_deg"),
        samples,
    )


def _read_tool(section: configparser.SectionProxy, grid: Grid, geometry: _GeometryParser) -> ToolAssembly:
    origin = tuple(int(v) for v in _floats(section["origin"], 2))
    kind = section.get("kind", "t")
    if kind == "t":
        return t_tool(
            grid,
            origin,
            shaft_length=section.getint("shaft_length", 6),
            head_height=section.getint("head_height", 5),
            head_width=section.getint("head_width", 2),
        )
    if kind == "bitmap":
        return ToolAssembly(geometry(section["head"]), geometry(section["cutter"]), origin)
    raise ValueError(f"kind must be 't' or 'bitmap', '{kind}' given")


def _check_on_material(reader: _Reader, where: str, grid: Grid, nodes: np.ndarray, domain: IndicatorField):
    if nodes.size == 0:
        reader.error(where, "selects no node of the grid")
        return
    touching = cells_of_nodes(grid, nodes)
    if not (touching & domain).is_empty():
        return
    j, i = np.argwhere(touching.cells)[0]
    node = int(nodes[0])
    reader.error(
        where,
        f"applied on void: node {node} only touches cells outside the domain, e.g. cell (i={i}, j={j})",
    )


def _read(path: PathLike) -> Tuple[_Reader, Optional[Scenario]]:
    path = Path(path)
    if not path.exists():
        raise ConfigError([f"no such file: {path}"], str(path))
    reader = _Reader(path)
    config = reader.config
    base_dir = path.parent

    for required in ("grid", "material", "outer"):
        if not config.has_section(required):
            reader.error(required, "missing section")
    if not config.has_section("grid"):
        return reader, None

    grid = reader.attempt("grid", _read_grid, config["grid"])
    if grid is None:
        return reader, None
    geometry = _GeometryParser(grid, base_dir)

    def shape_of(name: str) -> Optional[IndicatorField]:
        if not config.has_section(name):
            return None
        return reader.attempt(name, geometry, config[name].get("shape", "full"))

    domain = shape_of("domain") or IndicatorField.full(grid)
    if domain.is_empty():
        reader.error("domain", "the design domain is empty")
    frozen = shape_of("frozen") or IndicatorField.empty(grid)
    if not frozen.issubset(domain):
        j, i = np.argwhere((frozen - domain).cells)[0]
        reader.error("frozen", f"{(frozen - domain).count} frozen cells lie outside the domain, e.g. cell (i={i}, j={j})")
    envelope = shape_of("envelope")
    fixtures = shape_of("fixtures")

    material = reader.attempt("material", _read_material, config["material"]) if config.has_section("material") else None
    outer = reader.attempt("outer", _read_outer, config["outer"]) if config.has_section("outer") else None
    motion = reader.attempt("motion", _read_motion, config["motion"]) if config.has_section("motion") else None
    tool, angles = None, ()
    if config.has_section("tool"):
        tool = reader.attempt("tool", _read_tool, config["tool"], grid, geometry)
        angles = reader.attempt("tool", _angles, config["tool"].get("angles_deg", "0"), default=())

    restraints: Dict[int, Tuple[bool, bool]] = {}
    restraint_nodes = {}
    for name in reader.sections("restraint"):
        section = config[name]
        nodes = reader.attempt(name, select_nodes, grid, section)
        if nodes is None:
            continue
        _check_on_material(reader, name, grid, nodes, domain)
        flags = (section.getboolean("x", True), section.getboolean("y", True))
        restraint_nodes[name] = nodes
        for node in nodes:
            previous = restraints.get(int(node), (False, False))
            restraints[int(node)] = (previous[0] or flags[0], previous[1] or flags[1])
    if not reader.sections("restraint"):
        reader.error("restraint", "at least one [restraint.<name>] section is required")

    loads = []
    load_nodes = {}
    for name in reader.sections("load"):
        section = config[name]
        nodes = reader.attempt(name, select_nodes, grid, section)
        force = reader.attempt(name, _floats, section.get("force", ""), 2)
        if nodes is None or force is None:
            continue
        _check_on_material(reader, name, grid, nodes, domain)
        if nodes.size:
            load_nodes[name] = nodes
            loads.extend(lump(nodes, force))
    if not reader.sections("load"):
        reader.error("load", "at least one [load.<name>] section is required")

    pointwise = []
    specs = []
    for name in reader.sections("constraint"):
        section = config[name]
        label = name.split(".", 1)[1]
        kind = section.get("kind", "")
        if kind == "containment_motion":
            if envelope is None or motion is None:
                reader.error(name, "containment_motion needs the [envelope] and [motion] sections")
                continue
            pointwise.append(containment_motion(label, motion, envelope))
        elif kind == "accessibility_2axis":
            if tool is None or fixtures is None:
                reader.error(name, "accessibility_2axis needs the [tool] and [fixtures] sections")
                continue
            mu0 = section.getfloat("mu0_cells") if "mu0_cells" in section else None
            orientations = reader.attempt(name, tool.head_orientations, angles)
            if orientations is not None:
                pointwise.append(accessibility_2axis(label, tool.head, fixtures, orientations, mu0))
        elif kind == "custom_pmc":
            if "expr" not in section:
                reader.error(name, "custom_pmc needs an 'expr' key")
                continue
            test = reader.attempt(name, expression, grid, section["expr"])
            if test is not None:
                pointwise.append(custom_pmc(label, section["expr"]))
        elif kind == "deflection":
            spec = reader.attempt(name, lambda: deflection_bound(section.getfloat("bound"), label))
            if spec is not None:
                specs.append(spec)
        elif kind == "support":
            spec = reader.attempt(
                name,
                lambda: support_constraint(
                    section.getfloat("weight"),
                    section.getfloat("overhang_deg") if "overhang_deg" in section else None,
                    section.getfloat("bound") if "bound" in section else None,
                    label,
                ),
            )
            if spec is not None:
                specs.append(spec)
        elif kind == "accessibility":
            if tool is None:
                reader.error(name, "accessibility needs the [tool] section")
                continue

            def build():
                if "weight" in section:
                    weight = section.getfloat("weight")
                elif "kappa_start" in section or "kappa_end" in section:
                    default = KappaSchedule()
                    weight = KappaSchedule(
                        section.getfloat("kappa_start", default.start), section.getfloat("kappa_end", default.end)
                    )
                else:
                    weight = None
                return accessibility_constraint(tool, tool.orientations(angles), fixtures, weight, label)

            spec = reader.attempt(name, build)
            if spec is not None:
                specs.append(spec)
        else:
            reader.error(name, f"kind must be one of {POINTWISE_KINDS + EXPLORATION_KINDS}, '{kind}' given")

    output_section = config["output"] if config.has_section("output") else {}
    output = reader.attempt(
        "output",
        lambda: OutputSettings(
            directory=base_dir / output_section.get("directory", "out"),
            snapshot_every=int(output_section.get("snapshot_every", "1")),
            netcdf=str(output_section.get("netcdf", "no")).lower() in ("1", "yes", "true", "on"),
        ),
    )
    if output is not None and output.snapshot_every < 1:
        reader.error("output", f"snapshot_every must be >= 1, got {output.snapshot_every}")

    if reader.messages or material is None or outer is None or output is None:
        return reader, None

    bc = BoundaryConditions(grid, restraints, loads)
    freeze = config["frozen"].getboolean("boundary_cells", True) if config.has_section("frozen") else True
    scenario = Scenario(
        path=path,
        text=reader.text,
        grid=grid,
        domain=domain,
        frozen=frozen,
        material=material,
        bc=bc,
        load_nodes=load_nodes,
        restraint_nodes=restraint_nodes,
        outer=outer,
        output=output,
        envelope=envelope,
        fixtures=fixtures,
        motion=motion,
        tool=tool,
        angles=angles,
        pointwise=pointwise,
        specs=specs,
        freeze_boundary=freeze,
    )
    return reader, scenario


def validate_scenario(path: PathLike) -> List[str]:
    """Every problem found in a scenario file, an empty list when it is valid

    Nothing is solved: the checks cover the syntax, the values and the cross
    references (geometry on the grid, loads and restraints on material,
    sections needed by each constraint).
    """

    try:
        reader, _ = _read(path)
    except ConfigError as error:
        return error.messages
    return reader.messages


def load_scenario(path: PathLike) -> Scenario:
    """Parse and validate a scenario file

    Raises
    ------
    ConfigError
        listing every problem found
    """

    reader, scenario = _read(path)
    if scenario is None:
        raise ConfigError(reader.messages or ["invalid scenario"], str(path))
    return scenario
