"""Spectra of random geometric graphs on the torus versus their lattice twins.

The package builds geometric graphs from uniform samples or regular grids
on [0, 1)^d with wrap-around l_p metrics, computes adjacency spectra
(dense eigensolver, analytic product form, or DFT of the circulant symbol),
measures Levy distance between empirical spectral distributions, solves the
bottleneck point-to-grid matching, and evaluates the concentration bounds
that tie those quantities together.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    Lemma4Terms,
    Theorem1Report,
    binomial_tail_oracle,
    lemma1_degree_bound,
    lemma4_decomposition,
    lemma6_variance_bound,
    theorem1_rhs,
)
from .dgg import ANALYTIC_RANGE_EXCEEDED, AnalyticRangeError, DggSpec, dgg_degree, dgg_eigenvalues_closed_form, dgg_eigenvalues_dft, dgg_spec
from .geometry import (
    INFINITY,
    MetricSpec,
    PointSet,
    ball_volume_theta,
    grid_points,
    sample_uniform,
    torus_distance,
    torus_distance_matrix,
)
from .graph import AdjacencyMatrix, DegreeSummary, build_adjacency, build_adjacency_reference, cross_neighbor_count, degree_summary, edge_list_text
from .harness import (
    CONNECTIVITY,
    EXPLICIT,
    ExperimentConfig,
    Figure1Result,
    TrialResult,
    estimate_probability,
    figure1_experiment,
    probability_from_results,
    run_trial,
    run_trials,
    trial_seed,
)
from .levy import LevyResult, levy_distance, levy_distance_oracle, trace_bound
from .matching import BottleneckResult, bottleneck_matching, bottleneck_rate_envelope
from .spectra import MAX_EIG_ORDER, Esd, esd_eval, esd_from_eigenvalues, jacobi_eigenvalues, sym_eigenvalues

__all__ = [
    "__version__",
    "ANALYTIC_RANGE_EXCEEDED",
    "AnalyticRangeError",
    "AdjacencyMatrix",
    "BottleneckResult",
    "BoundReport",
    "CONNECTIVITY",
    "DegreeSummary",
    "DggSpec",
    "Esd",
    "EXPLICIT",
    "ExperimentConfig",
    "Figure1Result",
    "INFINITY",
    "Lemma4Terms",
    "LevyResult",
    "MAX_EIG_ORDER",
    "MetricSpec",
    "PointSet",
    "Theorem1Report",
    "TrialResult",
    "ball_volume_theta",
    "binomial_tail_oracle",
    "bottleneck_matching",
    "bottleneck_rate_envelope",
    "build_adjacency",
    "build_adjacency_reference",
    "cross_neighbor_count",
    "degree_summary",
    "dgg_degree",
    "dgg_eigenvalues_closed_form",
    "dgg_eigenvalues_dft",
    "dgg_spec",
    "edge_list_text",
    "esd_eval",
    "esd_from_eigenvalues",
    "estimate_probability",
    "figure1_experiment",
    "grid_points",
    "jacobi_eigenvalues",
    "lemma1_degree_bound",
    "lemma4_decomposition",
    "lemma6_variance_bound",
    "levy_distance",
    "levy_distance_oracle",
    "probability_from_results",
    "run_trial",
    "run_trials",
    "sample_uniform",
    "sym_eigenvalues",
    "theorem1_rhs",
    "torus_distance",
    "torus_distance_matrix",
    "trace_bound",
    "trial_seed",
]
