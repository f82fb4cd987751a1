"""Numeric evaluators for the degree bound, the cubed-Levy decomposition, the
edge-count variance bound, and the three-term tail bound, plus a Monte Carlo
binomial-tail oracle.

Every evaluator computes exactly the printed expression; nothing is clamped
or substituted.  Degenerate parameter regions are surfaced as flags
(`vacuous`) or errors, never silently repaired.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import INFINITY, MetricSpec, PointSet, ball_volume_theta
from .graph import build_adjacency, cross_neighbor_count, degree_summary
from .levy import levy_distance, trace_bound
from .spectra import esd_from_eigenvalues, sym_eigenvalues


def d_power(d: int, exponent_over_p: float, p: float) -> float:
    """d^(exponent/p), with the p = INFINITY limit value 1."""
    if p == INFINITY:
        return 1.0
    return float(d) ** (exponent_over_p / p)


def lemma1_degree_bound(d: int, p: float, a_n: float) -> float:
    """Upper bound d^{1/p} 2^d a_n (1 + 1/(2 a_n^{1/d}))^d on the lattice degree."""
    if not a_n > 0:
        raise ValueError(f"need a_n > 0, got {a_n}")
    return d_power(d, 1.0, p) * 2**d * a_n * (1.0 + 1.0 / (2.0 * a_n ** (1.0 / d))) ** d


def lemma6_variance_bound(d: int, a_n: float) -> float:
    """Printed edge-count variance bound theta^(d) + 2 theta^(d) a_n."""
    if not a_n > 0:
        raise ValueError(f"need a_n > 0, got {a_n}")
    theta = ball_volume_theta(d)
    return theta + 2.0 * theta * a_n


@dataclass(frozen=True)
class Lemma4Terms:
    """Instance values of the cubed-Levy decomposition chain.

    t0 is (1/n) tr(A_X - A_D)^2 under the alignment; t1 the identical
    degree/cross-count form; t_degree + t_L + t_aprime the triangle-inequality
    aggregate with the empirical cross counts standing in for the binomial
    variables.  The chain levy_cubed <= t0 = t1 <= eq1_total holds on every
    instance.
    """

    t0: float
    t1: float
    t_degree: float
    t_L: float
    t_aprime: float
    levy_cubed: float

    @property
    def eq1_total(self) -> float:
        return self.t_degree + self.t_L + self.t_aprime


def lemma4_decomposition(
    sample: PointSet, grid: PointSet, matching: np.ndarray, r: float, m: MetricSpec
) -> Lemma4Terms:
    """Evaluate the decomposition chain on one (sample, grid, matching) instance."""
    if sample.n != grid.n:
        raise ValueError(f"sample and grid sizes differ: {sample.n} vs {grid.n}")
    n = sample.n
    matching = np.asarray(matching, dtype=np.int64)
    if matching.shape != (n,) or not np.array_equal(np.sort(matching), np.arange(n)):
        raise ValueError("matching must be a permutation of 0..n-1")
    A_X = build_adjacency(sample, r, m)
    A_D = build_adjacency(grid, r, m)
    aligned = A_D.entries[np.ix_(matching, matching)].astype(np.int64)
    diff = A_X.entries.astype(np.int64) - aligned
    t0 = float((diff * diff).sum()) / n

    mean_degree = float(A_X.degrees().mean())
    aprime_emp = float(A_D.degrees().mean())
    cross = cross_neighbor_count(A_X, A_D, matching)
    t1 = mean_degree + aprime_emp - 2.0 * float(cross.sum()) / n

    a_n = degree_summary(A_X, n, m.d, r).average_degree_theoretical
    coeff = d_power(m.d, 1.0, m.p) * 2 ** (m.d + 1)
    t_degree = coeff * abs(mean_degree - a_n)
    t_L = coeff * abs(a_n - 2.0 * float(cross.sum()) / n)

    esd_sample = esd_from_eigenvalues(sym_eigenvalues(A_X))
    esd_grid = esd_from_eigenvalues(sym_eigenvalues(A_D))
    levy_cubed = levy_distance(esd_sample, esd_grid).distance ** 3

    return Lemma4Terms(
        t0=t0, t1=t1, t_degree=t_degree, t_L=t_L, t_aprime=aprime_emp, levy_cubed=levy_cubed
    )


@dataclass(frozen=True)
class Theorem1Report:
    """The three-term tail bound at one parameter point, log-space safe.

    term2 is reported as exp(term2_log) with saturation to +inf flagged;
    term2_volume is the alternative reading of the binomial parameter with
    the d-th power (reported alongside, never substituted into total).
    """

    term1: float
    term2: float
    term3: float
    total: float
    epsilon: float
    c: float
    vacuous: bool
    term2_log: float
    term2_saturated: bool
    term2_volume: float
    t: float
    a_parameter: float


def theorem1_rhs(
    t: float, n: int, d: int, p: float, r: float, a_n: float, M_n: float, a: float
) -> Theorem1Report:
    """Evaluate the three-term tail bound exactly as printed.

    epsilon <= 0 sets the vacuous flag (bound exceeds 1, still reported);
    r <= 2 M_n is a hard error since the bound's derivation needs r > 2 M_n.
    """
    if not t > 0:
        raise ValueError(f"need t > 0, got {t}")
    if not a >= 1:
        raise ValueError(f"need a >= 1, got {a}")
    if not r > 2.0 * M_n:
        raise ValueError(f"need r > 2*M_n, got r={r}, M_n={M_n}")
    if not a_n > 0:
        raise ValueError(f"need a_n > 0, got {a_n}")

    theta = ball_volume_theta(d)
    c = (1.0 + 1.0 / (2.0 * a_n ** (1.0 / d))) ** d
    shrink = 1.0 - 2.0 * M_n / r
    epsilon = t / (d_power(d, 1.0, p) * 2 ** (d + 2) * a_n) + (2.0 - c) / 4.0 - 2.0 * M_n / r
    vacuous = epsilon <= 0.0

    term1 = 2.0 * n * math.exp(-a_n * epsilon * epsilon * shrink / 3.0)

    exponent = t / (d_power(d, 1.0, p) * 2 ** (d + 3)) + a_n * (2.0 - c) / 4.0

    def generating_term(success_prob_base: float) -> tuple[float, float, bool]:
        log_value = math.log(n) + n * math.log1p(success_prob_base * (a - 1.0)) - exponent * math.log(a)
        try:
            value = math.exp(log_value)
            saturated = False
        except OverflowError:
            value = math.inf
            saturated = True
        return value, log_value, saturated

    term2, term2_log, term2_saturated = generating_term(theta * (r - 2.0 * M_n))
    term2_volume, _, _ = generating_term(theta * (r - 2.0 * M_n) ** d)

    term3 = d_power(d, 2.0, p) * 2 ** (2 * d + 6) * lemma6_variance_bound(d, a_n) / (n * n * t * t)

    return Theorem1Report(
        term1=term1,
        term2=term2,
        term3=term3,
        total=term1 + term2 + term3,
        epsilon=epsilon,
        c=c,
        vacuous=vacuous,
        term2_log=term2_log,
        term2_saturated=term2_saturated,
        term2_volume=term2_volume,
        t=t,
        a_parameter=a,
    )


def binomial_tail_oracle(n: int, prob: float, threshold: float, trials: int, seed: int) -> float:
    """Monte Carlo estimate of P{|X - n*prob| >= threshold}, X ~ Bin(n, prob)."""
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"need prob in [0,1], got {prob}")
    if trials < 1:
        raise ValueError(f"need trials >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    draws = rng.binomial(n, prob, size=trials)
    return float(np.mean(np.abs(draws - n * prob) >= threshold))


@dataclass(frozen=True)
class BoundReport:
    """All bound values for one configuration, JSON-stable field names."""

    lemma1: float
    lemma6: float
    theorem1: Theorem1Report
    trace: Optional[float] = None
    lemma4: Optional[Lemma4Terms] = None

    def to_json_dict(self) -> dict:
        lemma4 = None
        if self.lemma4 is not None:
            lemma4 = {
                "t_degree": self.lemma4.t_degree,
                "t_L": self.lemma4.t_L,
                "t_aprime": self.lemma4.t_aprime,
            }
        return {
            "lemma1": self.lemma1,
            "trace": self.trace,
            "lemma4": lemma4,
            "lemma6": self.lemma6,
            "theorem1": {
                "term1": self.theorem1.term1,
                "term2": self.theorem1.term2,
                "term3": self.theorem1.term3,
                "total": self.theorem1.total,
                "epsilon": self.theorem1.epsilon,
                "c": self.theorem1.c,
                "vacuous": self.theorem1.vacuous,
                "term2_log": self.theorem1.term2_log,
                "term2_saturated": self.theorem1.term2_saturated,
                "term2_volume": self.theorem1.term2_volume,
                "t": self.theorem1.t,
                "a": self.theorem1.a_parameter,
            },
        }
