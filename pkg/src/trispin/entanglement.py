"""Negativity-based entanglement measures and W-state fidelity."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import PAULI, DensityMatrix, as_matrix, hermitian_eigenvalues, partial_transpose
from .basis import w_state

N123_W = 2 * math.sqrt(2) / 3
NOISE_FLOOR = 1e-12
TRACE_TOL = 1e-6


@dataclass(frozen=True)
class NegativityReport:
    n1: float
    n2: float
    n3: float
    n123: float
    w_fidelity: float


def _unit_trace(rho) -> np.ndarray:
    m = as_matrix(rho, PAULI)
    tr = np.trace(m).real
    if abs(tr - 1) > TRACE_TOL:
        raise ValueError(f"negativity needs a unit-trace state (trace = {tr:.8g}); normalize first")
    return m


def bipartite_negativity(rho, qubit: int) -> float:
    """``2 sum |min(0, lambda)|`` over the spectrum of the partial transpose on ``qubit``."""
    m = _unit_trace(rho)
    vals = hermitian_eigenvalues(partial_transpose(m, qubit))
    neg = vals[vals < -NOISE_FLOOR]
    return float(-2 * neg.sum())


def geometric_mean(n1: float, n2: float, n3: float) -> float:
    if min(n1, n2, n3) <= 0:
        return 0.0
    return float((n1 * n2 * n3) ** (1 / 3))


def tripartite_negativity(rho) -> float:
    """Geometric mean of the three one-versus-two bipartite negativities."""
    return geometric_mean(*(bipartite_negativity(rho, j) for j in (1, 2, 3)))


def w_fidelity(rho, chi_target: int = 0) -> float:
    """Overlap ``<W_chi| rho |W_chi>`` with the S^z = +1/2 chiral state (rho normalized)."""
    m = as_matrix(rho, PAULI)
    w = w_state(0.5, chi_target)
    return float(np.real(w.conj() @ m @ w) / np.trace(m).real)


def measures(rho, chi_target: int = 0) -> NegativityReport:
    n = [bipartite_negativity(rho, j) for j in (1, 2, 3)]
    return NegativityReport(n[0], n[1], n[2], geometric_mean(*n), w_fidelity(rho, chi_target))


def negativity_from_fidelity(F: float) -> float:
    """Tripartite negativity of ``F |W0><W0| + (1 - F) |uuu><uuu|``."""
    if not 0.0 <= F <= 1.0:
        raise ValueError(f"fidelity must lie in [0, 1], got {F}")
    rest = 1.0 - F
    return math.sqrt((N123_W * F) ** 2 + rest**2) - rest


def _closed_form(rest: float, x: float) -> float:
    return math.sqrt(rest * rest + x) - rest


def analytic_negativity_product_init(t: float, rates) -> NegativityReport:
    """Closed-form negativities for the |duu> start at zero temperature.

    ``rates`` is a :class:`trispin.analytic.SectorRates`.
    """
    from .analytic import s_amplitude

    s = [abs(s_amplitude(k, t, rates)) ** 2 for k in range(3)]
    rest = 1.0 - sum(math.exp(-g * t) for g in rates.gamma) / 3
    n1 = _closed_form(rest, 4 / 81 * s[0] * (s[1] + s[2]))
    n2 = _closed_form(rest, 4 / 81 * s[1] * (s[0] + s[2]))
    n3 = _closed_form(rest, 4 / 81 * s[2] * (s[0] + s[1]))
    fid = math.exp(-rates.gamma[0] * t) / 3
    return NegativityReport(n1, n2, n3, geometric_mean(n1, n2, n3), fid)


def as_density(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho, PAULI)
