"""Analytic spectra of the lattice graph (DGG) under the l_infinity metric.

On the N^d torus lattice with reach k = floor(N*r), the adjacency is a
d-level circulant: every vertex joins the (2k+1)^d - 1 others within k lattice
steps per axis.  Its eigenvalues have two equivalent analytic forms, a
product of Dirichlet-kernel ratios and a d-dimensional DFT of the first-row
indicator tensor; both are only meaningful while the neighborhood does not
wrap onto itself, 2k+1 <= N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ANALYTIC_RANGE_EXCEEDED = "ANALYTIC_RANGE_EXCEEDED"


class AnalyticRangeError(ValueError):
    """Raised when 2k+1 > N: the analytic degree/spectrum formulas overcount."""

    code = ANALYTIC_RANGE_EXCEEDED


@dataclass(frozen=True)
class DggSpec:
    """Lattice-graph parameters with derived reach k and analytic degree."""

    N: int
    d: int
    r: float
    k: int
    degree: int

    def __post_init__(self) -> None:
        if self.N < 1 or self.d < 1 or not self.r > 0:
            raise ValueError(f"need N >= 1, d >= 1, r > 0, got N={self.N}, d={self.d}, r={self.r}")
        if self.k != math.floor(self.N * self.r) or self.degree != (2 * self.k + 1) ** self.d - 1:
            raise ValueError("k and degree must be the derived values; use dgg_spec()")
        if 2 * self.k + 1 > self.N:
            raise AnalyticRangeError(
                f"{ANALYTIC_RANGE_EXCEEDED}: 2k+1 = {2 * self.k + 1} exceeds N = {self.N}"
            )

    @property
    def n(self) -> int:
        return self.N**self.d


def dgg_spec(N: int, d: int, r: float) -> DggSpec:
    """Build a DggSpec, deriving k = floor(N*r) and the analytic degree."""
    k = math.floor(N * r)
    return DggSpec(N=N, d=d, r=r, k=k, degree=(2 * k + 1) ** d - 1)


def dgg_degree(N: int, d: int, r: float) -> int:
    """Analytic lattice degree (2*floor(N*r)+1)^d - 1, gated on 2k+1 <= N."""
    return dgg_spec(N, d, r).degree


def _dirichlet_factors(N: int, k: int) -> np.ndarray:
    """Per-axis factors D(m) = sin(pi*m*(2k+1)/N) / sin(pi*m/N), D(0) = 2k+1."""
    m = np.arange(N)
    factors = np.empty(N, dtype=float)
    factors[0] = 2 * k + 1
    if N > 1:
        factors[1:] = np.sin(np.pi * m[1:] * (2 * k + 1) / N) / np.sin(np.pi * m[1:] / N)
    return factors


def dgg_eigenvalues_closed_form(spec: DggSpec) -> np.ndarray:
    """All N^d eigenvalues prod_s D(m_s) - 1, ascending."""
    factors = _dirichlet_factors(spec.N, spec.k)
    product = factors
    for _ in range(spec.d - 1):
        product = np.multiply.outer(product, factors)
    return np.sort(product.ravel() - 1.0)


def dgg_eigenvalues_dft(spec: DggSpec) -> np.ndarray:
    """All N^d eigenvalues via the d-dimensional DFT of the first-row tensor.

    The tensor c over {0..N-1}^d is the adjacency indicator of lattice offset
    h from the origin: c_h = 1 iff h != 0 and every coordinate h_s lies in the
    reach band [0, k] union [N-k, N-1].
    """
    N, d, k = spec.N, spec.d, spec.k
    axis_band = (np.arange(N) <= k) | (np.arange(N) >= N - k)
    c = np.ones((N,) * d, dtype=float)
    for axis in range(d):
        shape = [1] * d
        shape[axis] = N
        c = c * axis_band.reshape(shape)
    c[(0,) * d] = 0.0
    transformed = np.fft.fftn(c)
    worst_imag = float(np.abs(transformed.imag).max())
    if worst_imag > 1e-8:
        raise ArithmeticError(f"DFT of a symmetric real tensor left imaginary residue {worst_imag:.3e}")
    return np.sort(transformed.real.ravel())
