"""Torus metric, ball-volume constants, and point-set construction."""

from __future__ import annotations

import math

import numpy as np
import pytest

from oracles import gamma_ball_volume
from rgg_spectra.geometry import (
    INFINITY,
    MetricSpec,
    PointSet,
    ball_volume_theta,
    grid_points,
    sample_uniform,
    torus_coordinate_delta,
    torus_distance,
    torus_distance_matrix,
)


def test_coordinate_delta_wraps():
    assert torus_coordinate_delta(0.1, 0.9) == pytest.approx(0.2, abs=1e-15)
    assert torus_coordinate_delta(0.9, 0.1) == pytest.approx(0.2, abs=1e-15)
    assert torus_coordinate_delta(0.25, 0.75) == pytest.approx(0.5, abs=1e-15)
    assert torus_coordinate_delta(0.3, 0.3) == 0.0


def test_distance_matches_hand_values():
    a = np.array([0.1, 0.2])
    b = np.array([0.8, 0.6])
    # wrapped deltas: (0.3, 0.4)
    assert torus_distance(a, b, MetricSpec(d=2, p=1)) == pytest.approx(0.7, abs=1e-15)
    assert torus_distance(a, b, MetricSpec(d=2, p=2)) == pytest.approx(0.5, abs=1e-15)
    assert torus_distance(a, b, MetricSpec(d=2, p=INFINITY)) == pytest.approx(0.4, abs=1e-15)
    assert torus_distance(a, b, MetricSpec(d=2, p=3)) == pytest.approx(
        (0.3**3 + 0.4**3) ** (1.0 / 3.0), abs=1e-15
    )


def test_distance_matrix_shape_and_symmetry():
    rng = np.random.default_rng(5)
    pts = PointSet(d=2, coords=rng.random((7, 2)), kind="sample")
    m = MetricSpec(d=2, p=2)
    D = torus_distance_matrix(pts, pts, m)
    assert D.shape == (7, 7)
    assert np.allclose(D, D.T)
    assert np.all(np.diag(D) == 0.0)
    # no pair on the unit torus is farther than (d * 0.5^p)^(1/p)
    assert D.max() <= math.sqrt(2 * 0.25) + 1e-12


def test_metric_spec_validation():
    with pytest.raises(ValueError):
        MetricSpec(d=0, p=2)
    with pytest.raises(ValueError):
        MetricSpec(d=1, p=0.5)
    MetricSpec(d=1, p=1)
    MetricSpec(d=3, p=INFINITY)


def test_ball_volume_matches_gamma_formula():
    for d in range(1, 13):
        assert ball_volume_theta(d) == pytest.approx(gamma_ball_volume(d), rel=1e-13)
    assert ball_volume_theta(1) == 2.0
    assert ball_volume_theta(2) == pytest.approx(math.pi, rel=1e-15)
    assert ball_volume_theta(3) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)


def test_sample_uniform_deterministic_and_in_range():
    a = sample_uniform(50, 3, 123)
    b = sample_uniform(50, 3, 123)
    c = sample_uniform(50, 3, 124)
    assert np.array_equal(a.coords, b.coords)
    assert not np.array_equal(a.coords, c.coords)
    assert a.coords.shape == (50, 3)
    assert np.all(a.coords >= 0.0) and np.all(a.coords < 1.0)
    assert a.kind == "sample"


def test_grid_points_row_major_layout():
    g = grid_points(3, 2)
    assert g.kind == "grid"
    assert g.coords.shape == (9, 2)
    expected = np.array(
        [[i / 3.0, j / 3.0] for i in range(3) for j in range(3)]
    )
    assert np.array_equal(g.coords, expected)


def test_grid_points_size_guard():
    with pytest.raises(ValueError):
        grid_points(2, 40)  # 2^40 points


def test_point_set_validation():
    with pytest.raises(ValueError):
        PointSet(d=1, coords=np.array([[0.0], [1.0]]), kind="sample")  # 1.0 excluded
    with pytest.raises(ValueError):
        PointSet(d=2, coords=np.array([[0.0, -0.1]]), kind="sample")
    pts = PointSet(d=1, coords=np.array([[0.0], [0.5]]), kind="sample")
    with pytest.raises(ValueError):
        pts.coords[0, 0] = 0.7  # frozen buffer
