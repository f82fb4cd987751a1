"""Exact minimum bottleneck matching between a sample and the grid.

The optimum threshold is found by binary search over the sorted multiset of
the n^2 pairwise torus distances; feasibility of a threshold is a maximum
bipartite matching question on the graph of pairs within it.  Also provides
the d-dependent rate envelopes used for empirical rate regressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .geometry import MetricSpec, PointSet, torus_distance_matrix


@dataclass(frozen=True)
class BottleneckResult:
    """Optimal bottleneck value m_n and a witnessing sample->grid bijection."""

    m_n: float
    assignment: np.ndarray = field(repr=False)


def _full_matching(D: np.ndarray, threshold: float) -> np.ndarray | None:
    """A perfect row->column matching using only D <= threshold, or None."""
    mask = csr_matrix(D <= threshold)
    matched_col = maximum_bipartite_matching(mask, perm_type="column")
    if np.any(matched_col < 0):
        return None
    return matched_col.astype(np.int64)


def bottleneck_matching(sample: PointSet, grid: PointSet, m: MetricSpec) -> BottleneckResult:
    """Exact minimum bottleneck matching distance M_n and an optimal assignment."""
    if sample.n != grid.n:
        raise ValueError(f"sample and grid sizes differ: {sample.n} vs {grid.n}")
    D = torus_distance_matrix(sample, grid, m)
    values = np.unique(D)
    # Every row and every column must be covered, so the optimum is at least
    # the largest of the row/column minima; start the search there.
    lower = max(D.min(axis=1).max(), D.min(axis=0).max())
    lo = int(np.searchsorted(values, lower))
    hi = len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _full_matching(D, values[mid]) is not None:
            hi = mid
        else:
            lo = mid + 1
    assignment = _full_matching(D, values[lo])
    assert assignment is not None  # feasible at the max pairwise distance
    return BottleneckResult(m_n=float(values[lo]), assignment=assignment)


def bottleneck_rate_envelope(n: float, d: int, eps: float = 0.5) -> float:
    """Unscaled asymptotic rate for M_n (constant 1, natural logs).

    d >= 3: (log n / n)^(1/d);  d = 2: (log^{3/2} n / n)^{1/2};
    d = 1: sqrt(log(1/eps) / n), eps the exceedance probability in (0, 1).
    """
    if not n >= 2:
        raise ValueError(f"need n >= 2, got {n}")
    if d == 1:
        if not 0.0 < eps < 1.0:
            raise ValueError(f"d=1 envelope needs eps in (0,1), got {eps}")
        return math.sqrt(math.log(1.0 / eps) / n)
    if d == 2:
        return math.sqrt(math.log(n) ** 1.5 / n)
    return (math.log(n) / n) ** (1.0 / d)
