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


import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.extra.numpy import arrays

from pruneto.field import Grid, IndicatorField, disc, rect, regularize
from pruneto.motion import MotionSet, RigidMotion2D, apply_motion, sweep, trajectory_contained, unsweep

MM = 1e-3

SMALL = Grid(12, 10, 1.0)
TURN = MotionSet.rotation((6.0, 5.0), -21, 0, n_samples=8)
envelopes = arrays(dtype=bool, shape=SMALL.shape)


@pytest.fixture(scope="module")
def latch():
    grid = Grid(40, 40, 2 * MM, (MM, MM))
    envelope = rect(grid, 5 * MM, 5 * MM, 75 * MM, 75 * MM)
    motion = MotionSet.rotation((25 * MM, 40 * MM), -21, 0)
    return grid, envelope, motion


def test_rigid_motion():
    quarter = RigidMotion2D(np.pi / 2)
    np.testing.assert_allclose(apply_motion(quarter, (1.0, 0.0)), (0.0, 1.0), atol=1e-12)

    m = RigidMotion2D(0.3, pivot=(1.0, 2.0), translation=(0.5, -0.25))
    points = np.array([[0.0, 0.0], [3.0, -1.0], [1.0, 2.0]])
    np.testing.assert_allclose(m.inverse().apply(m.apply(points)), points, atol=1e-12)
    np.testing.assert_allclose(apply_motion(RigidMotion2D(0.7, (1.0, 2.0)), (1.0, 2.0)), (1.0, 2.0))


def test_rotation_samples():
    motion = MotionSet.rotation((0.0, 0.0), -21, 0)
    assert motion.n_samples == 64
    assert motion.samples[0].theta == pytest.approx(np.radians(-21))
    assert motion.samples[-1].theta == 0
    assert MotionSet.rotation((0.0, 0.0), 0, 42).n_samples == 128
    assert MotionSet.rotation((0.0, 0.0), 0, 90, n_samples=3).n_samples == 3

    with pytest.raises(ValueError):
        MotionSet.from_motions([])


def test_identity_unsweep():
    grid = Grid(16, 16, 1.0)
    block = rect(grid, 4, 4, 11, 11)
    identity = MotionSet.from_motions([RigidMotion2D.identity()])
    assert unsweep(identity, block, grid) == block
    assert sweep(identity, block) == block


def test_translation_unsweep():
    grid = Grid(16, 16, 1.0)
    block = rect(grid, 4, 4, 11, 11)
    slide = MotionSet.from_motions([RigidMotion2D(translation=(float(k), 0.0)) for k in range(3)])
    result = unsweep(slide, block, grid)
    assert result.count == 8 * 6
    assert result == rect(grid, 4, 4, 9, 11)


def test_latch_unsweep(latch):
    grid, envelope, motion = latch
    contained = unsweep(motion, envelope, grid)
    assert contained.issubset(envelope)
    assert contained.count < envelope.count
    # the arm sweeping past the right side of the envelope is lost
    assert not trajectory_contained((74 * MM, 74 * MM), motion, envelope)
    assert trajectory_contained((25 * MM, 40 * MM), motion, envelope)


def test_unsweep_regularized_subsets_stay_inside(latch):
    grid, envelope, motion = latch
    contained = unsweep(motion, envelope, grid)
    rng = np.random.default_rng(0)
    for _ in range(100):
        noise = IndicatorField(grid, rng.random(grid.shape) < 0.8)
        subset = regularize(contained & noise, min_component=1)
        assert sweep(motion, subset).issubset(envelope)


def test_unsweep_sampling_converges(latch):
    grid, envelope, _ = latch
    coarse = unsweep(MotionSet.rotation((25 * MM, 40 * MM), -21, 0, n_samples=64), envelope, grid)
    fine = unsweep(MotionSet.rotation((25 * MM, 40 * MM), -21, 0, n_samples=128), envelope, grid)
    assert (coarse.cells != fine.cells).sum() <= 0.01 * grid.n_cells


def test_unsweep_around_a_hole():
    grid = Grid(20, 20, 1.0)
    ring = disc(grid, 9.5, 9.5, 9) - disc(grid, 9.5, 9.5, 3)
    spin = MotionSet.rotation((9.5, 9.5), 0, 360, n_samples=180)
    contained = unsweep(spin, ring, grid, regularized=False)
    assert contained.issubset(ring)
    assert not contained.is_empty()


def test_more_motion_contains_less(latch):
    grid, envelope, motion = latch
    rng = np.random.default_rng(3)
    for _ in range(5):
        keep = sorted(rng.choice(motion.n_samples, size=motion.n_samples // 3, replace=False))
        fewer = MotionSet.from_motions([motion.samples[k] for k in keep])
        assert unsweep(motion, envelope, grid, regularized=False).issubset(
            unsweep(fewer, envelope, grid, regularized=False)
        )
        assert unsweep(motion, envelope, grid).issubset(unsweep(fewer, envelope, grid))


@settings(deadline=None)
@given(envelopes, envelopes)
def test_unsweep_of_an_intersection(a, b):
    E1, E2 = IndicatorField(SMALL, a), IndicatorField(SMALL, b)
    both = unsweep(TURN, E1 & E2, SMALL, regularized=False)
    assert both == unsweep(TURN, E1, SMALL, regularized=False) & unsweep(TURN, E2, SMALL, regularized=False)


def _arc_margin(point, pivot, start, stop, box):
    """Signed distance from the exact arc of `point` to the outside of `box`

    The arc is swept by rotating `point` about `pivot` from `start` to `stop`
    radians; the coordinate extremes are at the end angles or at the axis
    crossings in between.
    """

    vx, vy = point[0] - pivot[0], point[1] - pivot[1]
    r, phi = np.hypot(vx, vy), np.arctan2(vy, vx)
    lo, hi = phi + start, phi + stop
    quarters = np.arange(np.ceil(lo / (np.pi / 2)), np.floor(hi / (np.pi / 2)) + 1) * (np.pi / 2)
    angles = np.concatenate([[lo, hi], quarters])
    x, y = pivot[0] + r * np.cos(angles), pivot[1] + r * np.sin(angles)
    x0, y0, x1, y1 = box
    return min(x.min() - x0, x1 - x.max(), y.min() - y0, y1 - y.max())


def test_arc_against_a_square():
    grid = Grid(80, 80, 0.5, (0.25, 0.25))
    box = (5.0, 5.0, 35.0, 35.0)
    square = rect(grid, *box)
    pivot = (20.0, 2.0)
    contained = unsweep(MotionSet.rotation(pivot, -21, 0), square, grid, regularized=False)

    x, y = grid.centers()
    start, stop = np.radians(-21), 0.0
    crossing = 0
    for j in range(grid.ny):
        for i in range(grid.nx):
            point = (x[j, i], y[j, i])
            margin = _arc_margin(point, pivot, start, stop, box)
            if abs(margin) < 0.1:
                continue
            assert contained.cells[j, i] == (margin > 0), point
            ends = min(_arc_margin(point, pivot, a, a, box) for a in (start, stop))
            crossing += margin < 0 and ends > 0.1
    # both ends of these arcs are inside, only the middle of the sweep leaves
    assert crossing == 4
