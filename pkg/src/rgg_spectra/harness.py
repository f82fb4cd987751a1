"""Seeded Monte Carlo harness: trials, tail-probability estimation, and the
paired-CDF comparison experiment.

Each trial samples points, builds the random-graph adjacency, compares its
spectrum against the analytic lattice spectrum (closed form under l_infinity,
explicit eigensolve otherwise), and evaluates the bottleneck matching and the
trace bound.  Per-trial seeds are a documented splitmix64 mix of the master
seed and the trial index, so every aggregate is reproducible bit-for-bit.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .dgg import dgg_eigenvalues_closed_form, dgg_spec
from .geometry import INFINITY, MetricSpec, PointSet, ball_volume_theta, grid_points, sample_uniform
from .graph import build_adjacency
from .levy import levy_distance, trace_bound
from .matching import bottleneck_matching
from .spectra import Esd, esd_from_eigenvalues, sym_eigenvalues

EXPLICIT = "explicit"
CONNECTIVITY = "connectivity"

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def trial_seed(master_seed: int, trial_index: int) -> int:
    """splitmix64 output number (trial_index + 1) from state master_seed.

    The state after i+1 increments is master + (i+1)*GAMMA mod 2^64 with
    GAMMA = 0x9E3779B97F4A7C15; the output is its standard 64-bit finalizer
    (xor-shift/multiply twice, final xor-shift).
    """
    z = (master_seed + (trial_index + 1) * _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: lattice side N, dimension d, metric p, radius rule,
    tail threshold t, Chernoff parameter a, trial count, and master seed.

    radius_rule EXPLICIT uses the given r; CONNECTIVITY derives
    r = log(n)/sqrt(n) from n = N^d.  sample_from_grid is a test hook that
    replaces the random sample by the grid itself.
    """

    N: int
    d: int
    p: float
    radius_rule: str = EXPLICIT
    r: float | None = None
    t: float = 1.0
    a: float = 2.0
    trials: int = 1
    seed: int = 0
    sample_from_grid: bool = False

    def __post_init__(self) -> None:
        if self.radius_rule not in (EXPLICIT, CONNECTIVITY):
            raise ValueError(f"unknown radius rule {self.radius_rule!r}")
        if self.radius_rule == EXPLICIT and (self.r is None or not self.r > 0):
            raise ValueError("EXPLICIT radius rule needs r > 0")
        if self.trials < 1:
            raise ValueError(f"need trials >= 1, got {self.trials}")

    @property
    def n(self) -> int:
        return self.N**self.d

    @property
    def radius(self) -> float:
        if self.radius_rule == CONNECTIVITY:
            return math.log(self.n) / math.sqrt(self.n)
        return float(self.r)

    @property
    def metric(self) -> MetricSpec:
        return MetricSpec(d=self.d, p=self.p)


@dataclass(frozen=True)
class TrialResult:
    """Per-trial outcomes; timings are diagnostic only and excluded from
    equality so that replayed trials compare equal."""

    levy_cubed: float
    trace_bound: float
    m_n: float
    xi_n: int
    esd_rgg: Esd
    timings: dict = field(compare=False, repr=False)


@lru_cache(maxsize=32)
def _dgg_esd(N: int, d: int, p: float, r: float) -> Esd:
    """Analytic lattice ESD when p = INFINITY, explicit eigensolve otherwise."""
    if p == INFINITY:
        return esd_from_eigenvalues(dgg_eigenvalues_closed_form(dgg_spec(N, d, r)))
    grid = grid_points(N, d)
    return esd_from_eigenvalues(sym_eigenvalues(build_adjacency(grid, r, MetricSpec(d=d, p=p))))


def run_trial(cfg: ExperimentConfig, trial_index: int) -> TrialResult:
    """Execute one fully deterministic trial of the comparison pipeline."""
    timings: dict[str, float] = {}
    n, r, metric = cfg.n, cfg.radius, cfg.metric

    tic = time.perf_counter()
    grid = grid_points(cfg.N, cfg.d)
    if cfg.sample_from_grid:
        sample = PointSet(d=cfg.d, coords=grid.coords, kind="sample")
    else:
        sample = sample_uniform(n, cfg.d, trial_seed(cfg.seed, trial_index))
    timings["sample"] = time.perf_counter() - tic

    tic = time.perf_counter()
    A_X = build_adjacency(sample, r, metric)
    timings["adjacency"] = time.perf_counter() - tic

    tic = time.perf_counter()
    esd_rgg = esd_from_eigenvalues(sym_eigenvalues(A_X))
    esd_dgg = _dgg_esd(cfg.N, cfg.d, cfg.p, r)
    timings["spectrum"] = time.perf_counter() - tic

    tic = time.perf_counter()
    levy = levy_distance(esd_rgg, esd_dgg).distance
    timings["levy"] = time.perf_counter() - tic

    tic = time.perf_counter()
    bottleneck = bottleneck_matching(sample, grid, metric)
    timings["matching"] = time.perf_counter() - tic

    tic = time.perf_counter()
    A_D = build_adjacency(grid, r, metric)
    aligned = A_D.entries[np.ix_(bottleneck.assignment, bottleneck.assignment)]
    trace = trace_bound(A_X.entries, aligned)
    xi_n = int(A_X.degrees().sum()) // 2
    timings["bounds"] = time.perf_counter() - tic

    return TrialResult(
        levy_cubed=levy**3,
        trace_bound=trace,
        m_n=bottleneck.m_n,
        xi_n=xi_n,
        esd_rgg=esd_rgg,
        timings=timings,
    )


def _worker_count() -> int:
    raw = os.environ.get("RGG_SPECTRA_THREADS", "1")
    try:
        count = int(raw)
    except ValueError as exc:
        raise ValueError(f"RGG_SPECTRA_THREADS must be an integer, got {raw!r}") from exc
    if count == 0:
        return os.cpu_count() or 1
    return max(1, count)


def run_trials(cfg: ExperimentConfig, trials: int) -> list[TrialResult]:
    """All trial results in trial-index order (parallelism never reorders)."""
    workers = _worker_count()
    if workers == 1:
        return [run_trial(cfg, i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: run_trial(cfg, i), range(trials)))


def estimate_probability(cfg: ExperimentConfig, trials: int) -> tuple[float, float]:
    """Monte Carlo estimate of P{L^3 > t} with its binomial standard error."""
    results = run_trials(cfg, trials)
    return probability_from_results(results, cfg.t, trials)


def probability_from_results(results: list[TrialResult], t: float, trials: int) -> tuple[float, float]:
    """p_hat and stderr for P{L^3 > t} from already-computed trials."""
    exceed = sum(1 for res in results[:trials] if res.levy_cubed > t)
    p_hat = exceed / trials
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return p_hat, stderr


@dataclass(frozen=True)
class Figure1Result:
    """Paired-CDF table: merged x grid, both CDFs, and their Levy distance."""

    x: np.ndarray = field(repr=False)
    cdf_rgg: np.ndarray = field(repr=False)
    cdf_dgg: np.ndarray = field(repr=False)
    levy: float
    n: int
    d: int
    r: float
    a_n_implied: float
    k: int
    esd_rgg: Esd = field(repr=False)
    esd_dgg: Esd = field(repr=False)


def figure1_experiment(n: int = 2000, d: int = 1, seed: int = 1) -> Figure1Result:
    """Connectivity-regime CDF comparison at r = log(n)/sqrt(n), l_infinity.

    n must be a perfect d-th power so the lattice has the same size.  Emits
    the union-of-atoms x grid, the random-graph empirical CDF, the analytic
    lattice CDF, and their Levy distance.
    """
    N = round(n ** (1.0 / d))
    if N**d != n:
        raise ValueError(f"n = {n} is not a perfect {d}-th power")
    r = math.log(n) / math.sqrt(n)
    metric = MetricSpec(d=d, p=INFINITY)

    sample = sample_uniform(n, d, seed)
    esd_rgg = esd_from_eigenvalues(sym_eigenvalues(build_adjacency(sample, r, metric)))
    spec = dgg_spec(N, d, r)
    esd_dgg = esd_from_eigenvalues(dgg_eigenvalues_closed_form(spec))

    x = np.unique(np.concatenate([esd_rgg.eigenvalues, esd_dgg.eigenvalues]))
    cdf_rgg = np.searchsorted(esd_rgg.eigenvalues, x, side="right") / esd_rgg.n
    cdf_dgg = np.searchsorted(esd_dgg.eigenvalues, x, side="right") / esd_dgg.n
    levy = levy_distance(esd_rgg, esd_dgg).distance

    a_n_implied = ball_volume_theta(d) * n * r**d
    return Figure1Result(
        x=x,
        cdf_rgg=cdf_rgg,
        cdf_dgg=cdf_dgg,
        levy=levy,
        n=n,
        d=d,
        r=r,
        a_n_implied=a_n_implied,
        k=spec.k,
        esd_rgg=esd_rgg,
        esd_dgg=esd_dgg,
    )
