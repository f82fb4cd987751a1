"""Lattice graph analytics: gate, degree, closed-form and DFT spectra."""

from __future__ import annotations

import numpy as np
import pytest

from rgg_spectra.dgg import (
    ANALYTIC_RANGE_EXCEEDED,
    AnalyticRangeError,
    dgg_degree,
    dgg_eigenvalues_closed_form,
    dgg_eigenvalues_dft,
    dgg_spec,
)
from rgg_spectra.geometry import INFINITY, MetricSpec, grid_points
from rgg_spectra.graph import build_adjacency
from rgg_spectra.spectra import sym_eigenvalues


def test_spec_reach_and_degree():
    spec = dgg_spec(10, 1, 0.25)
    assert spec.k == 2
    assert spec.degree == 4
    spec = dgg_spec(8, 2, 0.2)
    assert spec.k == 1
    assert spec.degree == 8
    assert dgg_degree(7, 3, 0.5) == 7**3 - 1  # k = 3


def test_gate_raises_with_code():
    with pytest.raises(AnalyticRangeError) as excinfo:
        dgg_spec(5, 1, 0.7)  # k = 3, 2k+1 = 7 > 5
    assert excinfo.value.code == ANALYTIC_RANGE_EXCEEDED
    # boundary case 2k+1 == N is allowed
    spec = dgg_spec(5, 1, 0.45)  # k = 2, 2k+1 = 5
    assert spec.k == 2


def test_closed_form_known_cycle_values():
    # N=4, k=1 ring: adjacency eigenvalues {-2, 0, 0, 2}
    values = dgg_eigenvalues_closed_form(dgg_spec(4, 1, 0.25))
    assert np.allclose(values, [-2.0, 0.0, 0.0, 2.0], atol=1e-12)


def test_closed_form_sum_rules():
    # trace(A) = 0 and trace(A^2) = n * degree for any regular graph
    for N, d, r in ((7, 1, 0.3), (6, 2, 0.25), (5, 3, 0.21)):
        spec = dgg_spec(N, d, r)
        values = dgg_eigenvalues_closed_form(spec)
        assert values.shape == (N**d,)
        assert np.all(np.diff(values) >= 0)
        assert abs(values.sum()) < 1e-8
        assert np.sum(values**2) == pytest.approx(N**d * spec.degree, rel=1e-12)


def test_zero_reach_gives_empty_graph():
    values = dgg_eigenvalues_closed_form(dgg_spec(6, 2, 0.05))  # k = 0
    assert np.allclose(values, 0.0, atol=1e-14)


def test_dft_matches_closed_form():
    for N, d, r in ((5, 1, 0.3), (8, 2, 0.2), (7, 2, 0.45), (4, 3, 0.3)):
        spec = dgg_spec(N, d, r)
        closed = dgg_eigenvalues_closed_form(spec)
        dft = dgg_eigenvalues_dft(spec)
        assert np.max(np.abs(closed - dft)) <= 1e-9


def test_closed_form_matches_explicit_eigensolver():
    for N, d, r in ((9, 1, 0.3), (6, 2, 0.25), (4, 3, 0.3)):
        spec = dgg_spec(N, d, r)
        closed = dgg_eigenvalues_closed_form(spec)
        grid = grid_points(N, d)
        A = build_adjacency(grid, r, MetricSpec(d=d, p=INFINITY))
        explicit = sym_eigenvalues(A)
        assert np.max(np.abs(closed - explicit)) <= 1e-8
