"""Exact Levy distance between step CDFs, a grid-scan oracle, and the
cubed-distance trace bound.

The Levy distance between CDFs F and G is the infimum of all eps > 0 with
F(x - eps) - eps <= G(x) <= F(x + eps) + eps for every x.  For step CDFs the
worst x of each one-sided inequality is a jump point of the CDF on its outer
side (between jumps that side is constant while the other side is
nondecreasing), so feasibility at a given eps reduces to finitely many atom
checks, and the infimum itself is found by bisection over the monotone
feasibility predicate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import AdjacencyMatrix
from .spectra import Esd


@dataclass(frozen=True)
class LevyResult:
    """Distance plus a diagnostic x where feasibility is tight (NaN at 0)."""

    distance: float
    certificate_x: float


def _feasible(F: np.ndarray, G: np.ndarray, eps: float) -> bool:
    """Exact Definition check at eps for sorted atom vectors F and G."""
    nf, ng = len(F), len(G)
    F_at_own = np.arange(1, nf + 1) / nf
    G_at_own = np.arange(1, ng + 1) / ng
    # F(f) - eps <= G(f + eps) at every atom f of F (lower inequality),
    # G(g) - eps <= F(g + eps) at every atom g of G (upper inequality).
    G_shift = np.searchsorted(G, F + eps, side="right") / ng
    if np.any(F_at_own - eps > G_shift):
        return False
    F_shift = np.searchsorted(F, G + eps, side="right") / nf
    return not np.any(G_at_own - eps > F_shift)


def _violation_x(F: np.ndarray, G: np.ndarray, eps: float) -> float:
    """The atom with the largest Definition violation at an infeasible eps."""
    nf, ng = len(F), len(G)
    gaps_f = np.arange(1, nf + 1) / nf - eps - np.searchsorted(G, F + eps, side="right") / ng
    gaps_g = np.arange(1, ng + 1) / ng - eps - np.searchsorted(F, G + eps, side="right") / nf
    if gaps_f.max() >= gaps_g.max():
        return float(F[int(np.argmax(gaps_f))])
    return float(G[int(np.argmax(gaps_g))])


def levy_distance(F: Esd, G: Esd, tol: float = 1e-9) -> LevyResult:
    """Levy distance between two ESDs to within tol, by bisection."""
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    f, g = F.eigenvalues, G.eigenvalues
    if _feasible(f, g, 0.0):
        return LevyResult(distance=0.0, certificate_x=math.nan)
    lo = 0.0
    hi = max(f[-1], g[-1]) - min(f[0], g[0]) + 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _feasible(f, g, mid):
            hi = mid
        else:
            lo = mid
    return LevyResult(distance=hi, certificate_x=_violation_x(f, g, lo))


def levy_distance_oracle(F: Esd, G: Esd, grid_step: float = 1e-3) -> float:
    """First feasible eps on the grid {step, 2*step, ...} by dense x-scan.

    Independent of levy_distance: feasibility is checked by brute force over
    a dense x grid (all atoms, their +-eps shifts, midpoints, and pads beyond
    the support) rather than the reduced atom conditions.
    """
    if not grid_step > 0:
        raise ValueError(f"grid_step must be positive, got {grid_step}")
    f, g = F.eigenvalues, G.eigenvalues
    nf, ng = len(f), len(g)
    spread = max(f[-1], g[-1]) - min(f[0], g[0])
    eps = grid_step
    while True:
        xs = np.unique(np.concatenate([f, g, f - eps, f + eps, g - eps, g + eps]))
        xs = np.concatenate([xs, (xs[:-1] + xs[1:]) / 2.0, [xs[0] - 1.0, xs[-1] + 1.0]])
        F_x = np.searchsorted(f, xs, side="right") / nf
        G_x = np.searchsorted(g, xs, side="right") / ng
        F_left = np.searchsorted(f, xs - eps, side="right") / nf
        F_right = np.searchsorted(f, xs + eps, side="right") / nf
        if np.all(F_left - eps <= G_x) and np.all(G_x <= F_right + eps):
            return eps
        if eps > spread + 1.0:
            return eps
        eps += grid_step


def trace_bound(A, B) -> float:
    """(1/n) tr(A - B)^2 = (1/n) sum_ij (A_ij - B_ij)^2, the L^3 upper bound."""
    Ma = A.entries if isinstance(A, AdjacencyMatrix) else np.asarray(A)
    Mb = B.entries if isinstance(B, AdjacencyMatrix) else np.asarray(B)
    if Ma.shape != Mb.shape or Ma.ndim != 2 or Ma.shape[0] != Ma.shape[1]:
        raise ValueError(f"matrix orders differ or are not square: {Ma.shape} vs {Mb.shape}")
    diff = Ma.astype(float) - Mb.astype(float)
    return float((diff * diff).sum()) / Ma.shape[0]
