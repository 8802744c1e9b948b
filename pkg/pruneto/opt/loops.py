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

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from pruneto.exceptions import DegenerateInputError
from pruneto.field import IndicatorField, ScalarField, volume_fraction
from pruneto.opt.constraints import ConstraintSpec, DesignState, Solvers, deflection_bound, evaluate
from pruneto.opt.support import support_volume_fraction
from pruneto.opt.tsf import FrozenMask, augment_tsf, compliance_tsf, filter_tsf, find_tau, penalize_tsf
from pruneto.utils import LOGGER, get_default

CSV_COLUMNS = [
    "step",
    "volfrac",
    "compliance",
    "max_disp",
    "support_frac",
    "inaccess_max",
    "inner_iters",
    "status",
]


def _default_inner_iters() -> int:
    return int(get_default("max-inner-iters"))


def _default_filter_radius() -> float:
    return get_default("filter-radius")


@dataclass(frozen=True)
class OuterLoopConfig:
    """Settings of the Pareto tracing

    Parameters
    ----------
    delta: float
        volume fraction removed at each step
    v_min: float
        smallest volume fraction traced
    deflection_bound: float, optional
        largest allowed displacement (m), tracing stops once exceeded
    max_inner_iters: int
        fixed-point iterations allowed per step
    filter_radius: float
        radius of the sensitivity filter (length units), 0 disables it
    compliance_weight: float
        augmentation weight of the compliance sensitivity
    history_averaging: bool
        average each sensitivity field with the previous one of the step
    overhang_deg: float
        overhang angle of the reported support fraction
    """

    delta: float = 0.05
    v_min: float = 0.5
    deflection_bound: Optional[float] = None
    max_inner_iters: int = field(default_factory=_default_inner_iters)
    filter_radius: float = field(default_factory=_default_filter_radius)
    compliance_weight: float = 1.0
    history_averaging: bool = True
    overhang_deg: float = 45.0

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if not 0 < self.v_min <= 1:
            raise ValueError(f"v_min must be in (0, 1], got {self.v_min}")
        if self.max_inner_iters < 1:
            raise ValueError(f"max_inner_iters must be >= 1, got {self.max_inner_iters}")


@dataclass
class ParetoPoint:
    """A traced design and its performance

    Parameters
    ----------
    step: int
        outer step, 0 for the initial design
    target: float
        scheduled volume fraction
    volume_fraction: float
        achieved volume fraction
    compliance: float
    max_displacement: float
    support_fraction: float
        support material needed to print along +y, relative to the reference
    inaccess_max: float
        largest inaccessibility of the cells removed during the step, NaN
        without accessibility constraint
    residuals: dict
        signed distance to the bound of each constraint
    inner_iterations: int
    status: str
        'converged', 'max_iter', or 'disconnected' when the load path of the
        design runs through void cells
    design: IndicatorField
    tsf: ScalarField
        the sensitivity field the design was thresholded from
    mu: ScalarField, optional
        inaccessibility measure on the design
    """

    step: int
    target: float
    volume_fraction: float
    compliance: float
    max_displacement: float
    support_fraction: float
    inaccess_max: float
    residuals: Dict[str, float]
    inner_iterations: int
    status: str
    design: IndicatorField
    tsf: ScalarField
    mu: Optional[ScalarField] = None


@dataclass
class ParetoFront:
    """Points of a traced front, by decreasing volume fraction

    `stop_reason` is one of 'v_min', 'hard_stop', 'disconnected' and
    'frozen'. When a step is refused, its point is kept as `rejected`, with
    the stop reason as status, out of the front.
    """

    points: List[ParetoPoint] = field(default_factory=list)
    stop_reason: str = "v_min"
    rejected: Optional[ParetoPoint] = None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, index):
        return self.points[index]

    def at(self, target: float, tol: Optional[float] = None) -> ParetoPoint:
        """The point whose scheduled target is closest to `target`

        With `tol`, a `KeyError` is raised when no point lies within `tol`.
        """
        if not self.points:
            raise KeyError("the front is empty")
        point = min(self.points, key=lambda p: abs(p.target - target))
        if tol is not None and abs(point.target - target) > tol:
            raise KeyError(f"no traced point within {tol} of volume fraction {target} (closest {point.target:.4f})")
        return point

    def to_dataframe(self, include_rejected: bool = False) -> pd.DataFrame:
        points = self.points + [self.rejected] if include_rejected and self.rejected is not None else self.points
        rows = [
            [
                p.step,
                p.volume_fraction,
                p.compliance,
                p.max_displacement,
                p.support_fraction,
                p.inaccess_max,
                p.inner_iterations,
                p.status,
            ]
            for p in points
        ]
        return pd.DataFrame(rows, columns=CSV_COLUMNS)


def _local_specs(specs: Sequence[ConstraintSpec]) -> List[ConstraintSpec]:
    return [s for s in specs if s.kind == "local"]


def build_tsf(
    state: DesignState,
    specs: Sequence[ConstraintSpec],
    cfg: OuterLoopConfig,
    target_fraction: float,
    candidates: Optional[IndicatorField] = None,
) -> ScalarField:
    """Compliance sensitivity, augmented, penalized and filtered

    `candidates` are the cells the threshold chooses from (the design of
    `state` by default); the filter averages over them.
    """
    candidates = state.design if candidates is None else candidates
    augmented = [(compliance_tsf(state.design, state.fea, state.frozen, candidates), cfg.compliance_weight)]
    for spec in specs:
        weight = spec.weight_at(target_fraction, cfg.v_min)
        if spec.kind == "global" and weight > 0:
            augmented.append((spec.sensitivity(state), weight))
    tsf = augment_tsf(augmented)

    penalties = [(state.fields[s.name], s.weight_at(target_fraction, cfg.v_min)) for s in _local_specs(specs)]
    if penalties:
        tsf = penalize_tsf(tsf, penalties)
    return filter_tsf(tsf, cfg.filter_radius, design=candidates)


def _make_point(
    state: DesignState,
    previous: IndicatorField,
    specs: Sequence[ConstraintSpec],
    cfg: OuterLoopConfig,
    tsf: ScalarField,
    step: int,
    target: float,
    iterations: int,
    status: str,
) -> ParetoPoint:
    mu = None
    inaccess_max = float("nan")
    locals_ = _local_specs(specs)
    if locals_:
        mu = state.fields[locals_[0].name]
        removed = previous - state.design
        inaccess_max = mu.max_over(removed)
    residuals = {spec.name: spec.residual(state.values[spec.name]) for spec in specs}
    return ParetoPoint(
        step=step,
        target=target,
        volume_fraction=volume_fraction(state.design, state.reference),
        compliance=state.fea.compliance,
        max_displacement=state.fea.max_deflection,
        support_fraction=support_volume_fraction(state.design, "+y", cfg.overhang_deg, state.reference),
        inaccess_max=inaccess_max,
        residuals=residuals,
        inner_iterations=iterations,
        status=status,
        design=state.design,
        tsf=tsf,
        mu=mu,
    )


def inner_loop(
    design: IndicatorField,
    target_fraction: float,
    specs: Sequence[ConstraintSpec],
    cfg: OuterLoopConfig,
    solvers: Solvers,
    ref: Optional[IndicatorField] = None,
    frozen: Optional[FrozenMask] = None,
    step: int = 0,
) -> Tuple[IndicatorField, ParetoPoint]:
    """Fixed-point search of the design of a given volume fraction

    Each iteration analyses the current design, rebuilds the sensitivity
    field and thresholds `design` again at the target. The loop ends when
    two consecutive designs are identical, or after ``cfg.max_inner_iters``
    iterations (status 'max_iter').

    Parameters
    ----------
    design: IndicatorField
        design at the start of the step; every returned cell belongs to it
    target_fraction: float
        volume fraction to reach, relative to `ref`
    specs: list of ConstraintSpec
    cfg: OuterLoopConfig
    solvers: Solvers
    ref: IndicatorField, optional
        reference of the volume fractions, `design` by default
    frozen: IndicatorField, optional
        cells never removed, none by default
    step: int
        outer step number, reported in the point

    Returns
    -------
    design: IndicatorField
    point: ParetoPoint
    """

    ref = design if ref is None else ref
    frozen = IndicatorField.empty(design.grid) if frozen is None else frozen

    current = design
    previous_tsf = None
    status = "max_iter"
    for iteration in range(1, cfg.max_inner_iters + 1):
        state = evaluate(current, specs, solvers, ref, frozen)
        tsf = build_tsf(state, specs, cfg, target_fraction, candidates=design)
        if cfg.history_averaging and previous_tsf is not None:
            tsf = ScalarField(tsf.grid, (tsf.cells + previous_tsf.cells) / 2)
        previous_tsf = tsf
        _, candidate = find_tau(design, tsf, target_fraction, ref, frozen)
        if candidate == current:
            status = "converged"
            break
        current = candidate
    else:
        LOGGER.warning(
            "step %d: no fixed point after %d iterations at target %.3f",
            step,
            cfg.max_inner_iters,
            target_fraction,
        )
        state = evaluate(current, specs, solvers, ref, frozen)

    if state.fea.disconnected:
        status = "disconnected"
    LOGGER.debug("step %d: %s after %d iterations", step, status, iteration)
    point = _make_point(state, design, specs, cfg, tsf, step, target_fraction, iteration, status)
    return current, point


def outer_loop(
    initial: IndicatorField,
    specs: Sequence[ConstraintSpec],
    cfg: OuterLoopConfig,
    solvers: Solvers,
    frozen: Optional[FrozenMask] = None,
    on_point: Optional[Callable[[ParetoPoint], None]] = None,
) -> ParetoFront:
    """Trace the compliance/volume Pareto front from `initial` downwards

    The volume fraction (relative to `initial`) starts at 1 and decreases by
    ``cfg.delta`` at each step until ``cfg.v_min``. Tracing stops early when
    a hard stop constraint is violated, when the design of a step cuts the
    load path (its strain energy sits mostly in void cells), or when the
    frozen cells alone exceed the next target. The refused design is never
    part of the front; it is kept as `front.rejected`.

    Parameters
    ----------
    initial: IndicatorField
        pruned design space, or the design domain
    specs: list of ConstraintSpec
    cfg: OuterLoopConfig
    solvers: Solvers
    frozen: IndicatorField, optional
        cells kept in every design
    on_point: callable, optional
        called with each point as soon as it is accepted

    Returns
    -------
    front: ParetoFront
    """

    if initial.is_empty():
        raise DegenerateInputError("the initial design is empty")
    frozen = IndicatorField.empty(initial.grid) if frozen is None else frozen
    if not frozen.issubset(initial):
        raise ValueError("frozen cells must belong to the initial design")
    specs = list(specs)
    if cfg.deflection_bound is not None:
        specs.append(deflection_bound(cfg.deflection_bound))

    front = ParetoFront()
    n_ref = initial.count
    design = initial
    step = 0
    target = 1.0
    while True:
        design_next, point = inner_loop(design, target, specs, cfg, solvers, ref=initial, frozen=frozen, step=step)
        if point.status == "disconnected":
            LOGGER.warning("step %d cuts the load path at volume fraction %.3f, tracing stops", step, target)
            front.stop_reason = "disconnected"
            front.rejected = point
            break
        violated = [s.name for s in specs if s.hard_stop and point.residuals[s.name] > 0]
        if violated:
            LOGGER.warning("step %d violates %s, tracing stops", step, ", ".join(violated))
            front.stop_reason = "hard_stop"
            point.status = "hard_stop"
            front.rejected = point
            break

        front.points.append(point)
        LOGGER.info(
            "step %d: volume fraction %.3f, compliance %.6g, %d inner iterations",
            step,
            point.volume_fraction,
            point.compliance,
            point.inner_iterations,
        )
        if on_point is not None:
            on_point(point)
        design = design_next

        step += 1
        target = 1.0 - step * cfg.delta
        if target < cfg.v_min - 1e-9:
            break
        n_target = min(int(round(target * n_ref)), design.count - 1)
        if n_target < max(frozen.count, 1):
            front.stop_reason = "frozen"
            break
        target = n_target / n_ref

    return front


def volume_schedule(cfg: OuterLoopConfig) -> np.ndarray:
    """Scheduled targets of a full run"""
    n = int(np.floor((1 - cfg.v_min) / cfg.delta + 1e-9))
    return 1.0 - cfg.delta * np.arange(n + 1)
