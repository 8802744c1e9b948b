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

import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd
import scipy
import xarray

from pruneto.__version__ import __version__
from pruneto.exceptions import ConfigError
from pruneto.field import IndicatorField
from pruneto.io import to_netcdf, write_front_csv, write_pgm
from pruneto.opt import ParetoFront, ParetoPoint, outer_loop
from pruneto.prune import prune_pointwise
from pruneto.scenario.config import Scenario, load_scenario
from pruneto.utils import LOGGER

EXIT_SUCCESS = 0
EXIT_INFEASIBLE = 2
EXIT_CONFIG_ERROR = 3

PathLike = Union[str, Path]


@dataclass
class RunResult:
    """Outcome of a scenario run

    Parameters
    ----------
    status: int
        process exit status, 0 on success, 2 when pruning leaves nothing,
        3 on a configuration error
    out: Path, optional
        directory of the artifacts
    front: ParetoFront, optional
    pruned: IndicatorField, optional
        the initial design of the exploration
    artifacts: list of Path
    messages: list of str
        configuration errors
    """

    status: int
    out: Optional[Path] = None
    front: Optional[ParetoFront] = None
    pruned: Optional[IndicatorField] = None
    artifacts: List[Path] = field(default_factory=list)
    messages: List[str] = field(default_factory=list)


def _versions() -> dict:
    return {
        "pruneto": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "xarray": xarray.__version__,
    }


def _point_summary(point: ParetoPoint) -> dict:
    return {
        "step": point.step,
        "volfrac": point.volume_fraction,
        "compliance": point.compliance,
        "max_disp": point.max_displacement,
        "status": point.status,
    }


def _write_manifest(
    out: Path,
    scenario: Scenario,
    status: int,
    seed: Optional[int],
    snapshot_every: int,
    netcdf: bool,
    started: float,
    artifacts: List[Path],
    stop_reason: Optional[str],
    front: Optional[ParetoFront] = None,
) -> Path:
    manifest = {
        "config": str(scenario.path.resolve()),
        "config_sha256": scenario.sha256,
        "versions": _versions(),
        "seed": seed,
        "snapshot_every": snapshot_every,
        "netcdf": netcdf,
        "exit_status": status,
        "stop_reason": stop_reason,
        "points": len(front) if front is not None else 0,
        "rejected": _point_summary(front.rejected) if front is not None and front.rejected is not None else None,
        "artifacts": [p.name for p in artifacts],
        "wall_time_s": round(time.perf_counter() - started, 3),
    }
    path = out / "manifest.json"
    with open(path, "w") as fobj:
        json.dump(manifest, fobj, indent=2, sort_keys=True)
    return path


def _snapshot_writer(out: Path, every: int, artifacts: List[Path]):
    def on_point(point: ParetoPoint):
        if point.step % every:
            return
        artifacts.append(write_pgm(point.design, out / f"design_{point.step:04d}.pgm"))
        artifacts.append(write_pgm(point.tsf, out / f"tsf_{point.step:04d}.pgm"))
        if point.mu is not None:
            artifacts.append(write_pgm(point.mu, out / f"mu_{point.step:04d}.pgm"))

    return on_point


def run_scenario(
    path: PathLike,
    out: Optional[PathLike] = None,
    snapshot_every: Optional[int] = None,
    seed: Optional[int] = None,
    netcdf: Optional[bool] = None,
) -> RunResult:
    """Prune the design space of a scenario, then trace its Pareto front

    Parameters
    ----------
    path: str or Path
        scenario file
    out: str or Path, optional
        artifact directory, the `[output]` directory by default
    snapshot_every: int, optional
        write the field snapshots of one step out of `snapshot_every`
    seed: int, optional
        recorded in the manifest; the run itself is deterministic
    netcdf: bool, optional
        also export the front to ``front.nc``

    Returns
    -------
    result: RunResult
    """

    started = time.perf_counter()
    try:
        scenario = load_scenario(path)
    except ConfigError as error:
        for message in error.messages:
            LOGGER.error("%s: %s", path, message)
        return RunResult(EXIT_CONFIG_ERROR, messages=error.messages)

    out = Path(out) if out is not None else scenario.output.directory
    out.mkdir(parents=True, exist_ok=True)
    every = snapshot_every or scenario.output.snapshot_every
    if every < 1:
        message = f"snapshot_every must be >= 1, got {every}"
        LOGGER.error("%s: %s", path, message)
        return RunResult(EXIT_CONFIG_ERROR, messages=[message])
    netcdf = scenario.output.netcdf if netcdf is None else netcdf
    artifacts: List[Path] = []

    pruning = prune_pointwise(scenario.pointwise, scenario.grid, domain=scenario.domain)
    initial = pruning.field
    artifacts.append(write_pgm(initial, out / "pruned.pgm"))
    if pruning.infeasible:
        artifacts.append(
            _write_manifest(out, scenario, EXIT_INFEASIBLE, seed, every, netcdf, started, artifacts, "infeasible")
        )
        return RunResult(EXIT_INFEASIBLE, out, pruned=initial, artifacts=artifacts)

    frozen = scenario.frozen
    if scenario.freeze_boundary:
        frozen = frozen | scenario.boundary_cells()
    shaved = frozen - initial
    if not shaved.is_empty():
        j, i = np.argwhere(shaved.cells)[0]
        LOGGER.warning("pruning removed %d frozen cells, e.g. cell (i=%d, j=%d)", shaved.count, i, j)
        frozen = frozen & initial

    front = outer_loop(
        initial,
        scenario.specs,
        scenario.outer,
        scenario.solvers(),
        frozen=frozen,
        on_point=_snapshot_writer(out, every, artifacts),
    )
    artifacts.append(write_front_csv(front, out / "pareto.csv"))
    if netcdf and len(front):
        artifacts.append(to_netcdf(front, out / "front.nc"))
    elif netcdf:
        LOGGER.warning("tracing stopped at the first step (%s), front.nc is not written", front.stop_reason)
    artifacts.append(
        _write_manifest(
            out, scenario, EXIT_SUCCESS, seed, every, netcdf, started, artifacts, front.stop_reason, front
        )
    )
    LOGGER.info("%d points traced, artifacts written to %s", len(front), out)
    return RunResult(EXIT_SUCCESS, out, front=front, pruned=initial, artifacts=artifacts)


def replay_manifest(manifest_path: PathLike, out: Optional[PathLike] = None) -> RunResult:
    """Run again the scenario recorded in a manifest, with the same options

    The scenario file must not have changed since the recorded run.
    """

    manifest_path = Path(manifest_path)
    with open(manifest_path) as fobj:
        manifest = json.load(fobj)
    config = Path(manifest["config"])
    if not config.exists():
        raise ConfigError([f"recorded scenario {config} no longer exists"], str(manifest_path))
    digest = hashlib.sha256(config.read_text().encode("utf-8")).hexdigest()
    if digest != manifest["config_sha256"]:
        raise ConfigError([f"scenario {config} changed since the recorded run"], str(manifest_path))
    return run_scenario(
        config,
        out=manifest_path.parent if out is None else out,
        snapshot_every=manifest["snapshot_every"],
        seed=manifest["seed"],
        netcdf=manifest["netcdf"],
    )
