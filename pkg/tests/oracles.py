"""Independent brute-force reference routines used only by the tests.

Everything here is deliberately naive (factorial search, double loops,
textbook formulas via the gamma function) so that it cannot share a bug
with the production implementations it checks.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from rgg_spectra.geometry import MetricSpec, PointSet, torus_distance_matrix


def brute_bottleneck(a: PointSet, b: PointSet, m: MetricSpec) -> float:
    """Minimize the maximum matched distance over all n! permutations."""
    D = torus_distance_matrix(a, b, m)
    n = D.shape[0]
    best = math.inf
    for perm in itertools.permutations(range(n)):
        worst = max(D[i, perm[i]] for i in range(n))
        if worst < best:
            best = worst
    return best


def brute_cross_edge_count(a_entries: np.ndarray, b_entries: np.ndarray, matching: np.ndarray) -> int:
    """Unordered pairs {i, j} adjacent in A and whose matched images are adjacent in B."""
    n = a_entries.shape[0]
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if a_entries[i, j] and b_entries[matching[i], matching[j]]:
                count += 1
    return count


def brute_trace_quadratic(a_entries: np.ndarray, b_entries: np.ndarray) -> float:
    """(1/n) trace((A - B)^2) accumulated entrywise in Python floats."""
    n = a_entries.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            diff = float(a_entries[i, j]) - float(b_entries[i, j])
            total += diff * diff
    return total / n


def gamma_ball_volume(d: int) -> float:
    """Unit l_2 ball volume via the gamma function, pi^{d/2} / Gamma(d/2 + 1)."""
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0)


def splitmix64_reference(state: int, count: int) -> list[int]:
    """First `count` outputs of the standard splitmix64 stream from `state`."""
    outputs = []
    mask = (1 << 64) - 1
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        outputs.append(z ^ (z >> 31))
    return outputs


def random_symmetric_01(n: int, density: float, rng: np.random.Generator) -> np.ndarray:
    """Random symmetric 0/1 matrix with zero diagonal, uint8 entries."""
    upper = rng.random((n, n)) < density
    entries = np.triu(upper, k=1)
    entries = (entries | entries.T).astype(np.uint8)
    return entries
