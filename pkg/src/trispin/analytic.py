"""Closed-form zero-temperature evolution in the (S^z, chirality) eigenbasis.

Three initial-state classes have closed forms: a block in the S^z = +1/2
sector, a block in the S^z = -1/2 sector, and weight on |ddd>. Any weight
not in the initial block sits in |uuu> (fixed by trace closure).

Slot conventions inside the W sectors follow the eigenbasis order
``chi = (0, -1, +1)``:

* S^z = +1/2: slot decay rates ``(g0, g1, g-1)`` and energies ``(f0, f1, f-1)``
  (the rate index is ``-chi``),
* S^z = -1/2: slot decay rates ``a + (g0, g-1, g1)`` and energies
  ``(f0, f-1, f1)``.

Coherences evolve as ``exp(-i (E_p - E_q) t)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .algebra import EIGEN, DensityMatrix
from .basis import ETA, SECTOR_SLICES
from .model import CoherentModel, CPViolationError, NoiseModel, gamma_rates

SINGULAR_TOL = 1e-9

# Slot -> index into the (k = 0, 1, -1) rate/frequency tuples.
_UPPER_SLOT = (0, 1, 2)  # +1/2 slots use g_{-chi}: chi=(0,-1,1) -> k=(0,1,-1)
_LOWER_SLOT = (0, 2, 1)  # -1/2 slots use g_{chi}:  chi=(0,-1,1) -> k=(0,-1,1)
_K_INDEX = {0: 0, 1: 1, -1: 2}

# +1/2 coherence (r, s) fed by -1/2 coherence (p, q) through jump k with
# prefactor weight * gamma_k / 3.
_OFFDIAG_FEEDS = {
    (0, 1): ((-2, 0, (0, 1)), (1, -1, (2, 0)), (-2, 1, (1, 2))),
    (0, 2): ((-2, 0, (0, 2)), (1, 1, (1, 0)), (-2, -1, (2, 1))),
    (1, 2): ((1, 0, (1, 2)), (-2, 1, (2, 0)), (-2, -1, (0, 1))),
}


class AnalyticUnsupported(ValueError):
    """The requested configuration has no closed-form solution here."""


@dataclass(frozen=True)
class SectorRates:
    a: float
    gamma: tuple[float, float, float]  # (g0, g1, g-1)
    f: tuple[float, float, float]  # (f0, f1, f-1)
    upsilon32: np.ndarray
    upsilon21: np.ndarray
    gamma32: np.ndarray
    gamma21: np.ndarray

    def g(self, k: int) -> float:
        return self.gamma[_K_INDEX[k]]

    @property
    def upper_decay(self) -> np.ndarray:
        return np.array([self.gamma[i] for i in _UPPER_SLOT])

    @property
    def upper_energy(self) -> np.ndarray:
        return np.array([self.f[i] for i in _UPPER_SLOT])

    @property
    def lower_decay(self) -> np.ndarray:
        return self.a + np.array([self.gamma[i] for i in _LOWER_SLOT])

    @property
    def lower_energy(self) -> np.ndarray:
        return np.array([self.f[i] for i in _LOWER_SLOT])


def f_rates(J: float, psi: float) -> tuple[float, float, float]:
    """Coherent shifts ``(f0, f1, f-1)``, ``f_j = 2 J cos(psi + 2 pi j / 3)``."""
    return tuple(2 * J * math.cos(psi + 2 * math.pi * j / 3) for j in (0, 1, -1))


def make_rates(a: float, gamma: tuple[float, float, float], f: tuple[float, float, float]) -> SectorRates:
    g0, g1, gm = gamma
    upsilon32 = np.array([g0, gm, g1])
    upsilon21 = np.array(
        [
            [4 * g0, g1, gm],
            [gm, g0, 4 * g1],
            [g1, 4 * gm, g0],
        ]
    ) / 3
    gamma32 = upsilon32 - 2 * a
    gamma21 = np.array(
        [
            [-a, g0 - gm - a, g0 - g1 - a],
            [g1 - g0 - a, g1 - gm - a, -a],
            [gm - g0 - a, -a, gm - g1 - a],
        ]
    )
    return SectorRates(a, tuple(gamma), tuple(f), upsilon32, upsilon21, gamma32, gamma21)


def sector_rates(noise: NoiseModel, coherent: CoherentModel | None = None) -> SectorRates:
    """Rates for the closed forms; only homogeneous, zero-temperature, undriven models."""
    if not noise.homogeneous:
        raise AnalyticUnsupported("closed forms need homogeneous noise (deltaA12 = 0)")
    if noise.boltzmann != 0.0:
        raise AnalyticUnsupported("closed forms are zero-temperature only")
    J, psi = 0.0, 0.0
    if coherent is not None:
        if coherent.deltaJ12 != 0:
            raise AnalyticUnsupported("closed forms need deltaJ12 = 0")
        if coherent.drive is not None:
            raise AnalyticUnsupported("closed forms do not cover a drive")
        J, psi = coherent.J, coherent.psi
    if noise.a < 2 * noise.A_abs - 1e-12:
        raise CPViolationError("complete positivity violated (a < 2|A|)")
    gamma = tuple(max(g, 0.0) for g in gamma_rates(noise.a, noise.A))
    return make_rates(noise.a, gamma, f_rates(J, psi))


def _growth(x: complex, t: float, scale: float) -> complex:
    """``(1 - exp(x t)) / (-x)``, continued through ``x = 0``."""
    if abs(x) < SINGULAR_TOL * max(scale, 1e-300):
        return t + x * t * t / 2 + x * x * t**3 / 6
    return np.expm1(x * t) / x


def _triple_convolution(r1: float, r2: float, r3: float, t: float) -> float:
    """``int_0^t int_0^s e^{-r3 (t-s)} e^{-r2 (s-u)} e^{-r1 u} du ds``."""
    m = np.array([[-r1, 1.0, 0.0], [0.0, -r2, 1.0], [0.0, 0.0, -r3]]) * t
    return float(expm(m)[0, 2]) * t * t


def _check_block(block: np.ndarray) -> np.ndarray:
    block = np.asarray(block, dtype=complex)
    if block.shape != (3, 3):
        raise ValueError(f"sector block must be 3x3, got {block.shape}")
    if np.max(np.abs(block - block.conj().T)) > 1e-10:
        raise ValueError("sector block must be Hermitian")
    tr = np.trace(block).real
    if tr > 1 + 1e-10 or np.linalg.eigvalsh(0.5 * (block + block.conj().T))[0] < -1e-10:
        raise ValueError("sector block must be positive semidefinite with trace <= 1")
    return block


def _coherent_decay(block: np.ndarray, decay: np.ndarray, energy: np.ndarray, t: float) -> np.ndarray:
    rate = (decay[:, None] + decay[None, :]) / 2
    phase = energy[:, None] - energy[None, :]
    return block * np.exp(-rate * t - 1j * phase * t)


def _assemble(upper: np.ndarray, lower: np.ndarray, lowest: float) -> DensityMatrix:
    rho = np.zeros((8, 8), dtype=complex)
    rho[SECTOR_SLICES[0.5], SECTOR_SLICES[0.5]] = upper
    rho[SECTOR_SLICES[-0.5], SECTOR_SLICES[-0.5]] = lower
    rho[7, 7] = lowest
    rho[0, 0] = 1.0 - np.trace(upper).real - np.trace(lower).real - lowest
    return DensityMatrix(rho, EIGEN)


def evolve_from_half(rho0_block, rates: SectorRates, t: float) -> DensityMatrix:
    """Start with a block in the S^z = +1/2 sector (rest in |uuu>)."""
    block = _check_block(rho0_block)
    upper = _coherent_decay(block, rates.upper_decay, rates.upper_energy, t)
    return _assemble(upper, np.zeros((3, 3)), 0.0)


def evolve_from_minus_half(rho0_block, rates: SectorRates, t: float) -> DensityMatrix:
    """Start with a block in the S^z = -1/2 sector (rest in |uuu>)."""
    block = _check_block(rho0_block)
    kappa, e_low = rates.lower_decay, rates.lower_energy
    lam, e_up = rates.upper_decay, rates.upper_energy
    lower = _coherent_decay(block, kappa, e_low, t)
    scale = rates.a if rates.a > 0 else 1.0

    upper = np.zeros((3, 3), dtype=complex)
    for r in range(3):
        upper[r, r] = sum(
            rates.upsilon21[r, p] * _decayed_fraction(rates.gamma21[r, p], t, scale) * lower[p, p].real
            for p in range(3)
        )

    for (r, s), feeds in _OFFDIAG_FEEDS.items():
        nu = (lam[r] + lam[s]) / 2 + 1j * (e_up[r] - e_up[s])
        value = 0j
        for weight, k, (p, q) in feeds:
            mu = (kappa[p] + kappa[q]) / 2 + 1j * (e_low[p] - e_low[q])
            x = mu - nu
            value += weight * rates.g(k) / 3 * lower[p, q] * _growth(x, t, scale)
        upper[r, s] = value
        upper[s, r] = np.conj(value)
    return _assemble(upper, lower, 0.0)


def _decayed_fraction(rate: float, t: float, scale: float) -> float:
    """``(1 - exp(-rate t)) / rate``, continued through ``rate = 0``."""
    return _growth(-rate, t, scale).real


def _cascade(g32: float, g21: float, t: float, scale: float) -> float:
    # [1 - e^{-g32 t} - g32/(g32+g21) (1 - e^{-(g32+g21) t})] / (g32 g21)
    tol = SINGULAR_TOL * scale
    if min(abs(g32), abs(g21), abs(g32 + g21)) < tol:
        return math.nan
    return (
        (-math.expm1(-g32 * t)) - g32 / (g32 + g21) * (-math.expm1(-(g32 + g21) * t))
    ) / (g32 * g21)


def evolve_from_lowest(rho0_weight: float, rates: SectorRates, t: float) -> DensityMatrix:
    """Start with weight ``rho0_weight`` on |ddd> (rest in |uuu>).

    Populations cascade down the ladder; no coherence is ever created.
    """
    w = float(rho0_weight)
    if not 0.0 <= w <= 1.0 + 1e-12:
        raise ValueError(f"initial |ddd> weight must lie in [0, 1], got {w}")
    a = rates.a
    scale = a if a > 0 else 1.0
    top = math.exp(-3 * a * t) * w
    kappa, lam = rates.lower_decay, rates.upper_decay

    lower = np.zeros((3, 3), dtype=complex)
    for p in range(3):
        lower[p, p] = rates.upsilon32[p] * _decayed_fraction(rates.gamma32[p], t, scale) * top

    upper = np.zeros((3, 3), dtype=complex)
    for r in range(3):
        total = 0.0
        for p in range(3):
            amp = rates.upsilon32[p] * rates.upsilon21[r, p]
            if amp == 0.0:
                continue
            shape = _cascade(rates.gamma32[p], rates.gamma21[r, p], t, scale)
            if math.isnan(shape):
                # removable singularity: exact nested convolution instead
                total += amp * _triple_convolution(3 * a, kappa[p], lam[r], t) * w
            else:
                total += amp * shape * top
        upper[r, r] = total
    return _assemble(upper, lower, top)


def s_amplitude(k: int, t: float, rates: SectorRates) -> complex:
    """``S_k(t) = sum_j exp(-g_j t / 2) exp(-i f_j t) eta^(-k j)``, j = 0, 1, -1.

    For the |duu> start the Pauli-basis S^z = +1/2 block is
    ``S_i S_j^* / 9`` in the listing duu, udu, uud.
    """
    if k not in (0, 1, 2):
        raise ValueError(f"k must be 0, 1 or 2, got {k}")
    return sum(
        math.exp(-g * t / 2) * np.exp(-1j * f * t) * ETA ** (-k * j)
        for j, g, f in zip((0, 1, -1), rates.gamma, rates.f)
    )


def classify(rho0: np.ndarray, tol: float = 1e-12) -> str:
    """Which closed-form class an eigenbasis density matrix belongs to.

    Returns ``"half"``, ``"minus_half"`` or ``"lowest"``; raises
    :class:`AnalyticUnsupported` otherwise.
    """
    m = np.asarray(rho0, dtype=complex)
    mask = np.zeros((8, 8), dtype=bool)
    for sl in SECTOR_SLICES.values():
        mask[sl, sl] = True
    if np.max(np.abs(m[~mask]), initial=0.0) > tol:
        raise AnalyticUnsupported("initial state has coherences between S^z sectors")
    w_half = np.max(np.abs(m[1:4, 1:4]), initial=0.0) > tol
    w_minus = np.max(np.abs(m[4:7, 4:7]), initial=0.0) > tol
    w_low = abs(m[7, 7]) > tol
    occupied = [name for name, on in (("half", w_half), ("minus_half", w_minus), ("lowest", w_low)) if on]
    if len(occupied) > 1:
        raise AnalyticUnsupported(f"initial state spans several sectors: {occupied}")
    return occupied[0] if occupied else "half"


def evolve(rho0, rates: SectorRates, t: float) -> DensityMatrix:
    """Dispatch an eigenbasis initial state to the matching closed form."""
    m = rho0.data if isinstance(rho0, DensityMatrix) else np.asarray(rho0, dtype=complex)
    kind = classify(m)
    if kind == "half":
        return evolve_from_half(m[1:4, 1:4], rates, t)
    if kind == "minus_half":
        return evolve_from_minus_half(m[4:7, 4:7], rates, t)
    return evolve_from_lowest(m[7, 7].real, rates, t)
