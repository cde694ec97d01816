"""Rate matrices, jump operators and Hamiltonians of the three-qubit model.

Units: hbar = 1 and every rate or energy is measured in units of the local
decay rate ``a``.

Dissipator convention. For ladder operators ``X_i`` and a rate matrix ``M``
the dissipator is

    D[rho] = sum_ij M_ij (X_i rho X_j^+ - 1/2 {X_j^+ X_i, rho})

with ``X = sigma^+`` and ``M = gamma`` for decay, ``X = sigma^-`` and
``M = gamma~ = exp(-beta Delta) gamma^T`` for excitation. With this index
order the closed-form operators

    J_k = sqrt(gamma_k / 3) (eta^k s1+ + eta^-k s2+ + s3+)

diagonalize the decay part exactly for any phase of ``A``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z, dagger, single
from .basis import ETA

CP_TOL = 1e-12


class ModelError(ValueError):
    """Raised for parameter sets that do not define a valid master equation."""


class CPViolationError(ModelError):
    """The rate matrix is not positive semidefinite."""


@dataclass(frozen=True)
class NoiseModel:
    a: float = 1.0
    A_abs: float = 0.5
    phi: float = math.pi
    deltaA12: complex = 0j
    beta_delta: float = math.inf

    def __post_init__(self):
        if self.a < 0:
            raise ModelError(f"local rate a must be >= 0, got {self.a}")
        if self.A_abs < 0:
            raise ModelError(f"|A| must be >= 0, got {self.A_abs}")
        if not self.beta_delta > 0:
            raise ModelError(f"beta*hbar*Delta must be positive, got {self.beta_delta}")

    @property
    def A(self) -> complex:
        return self.A_abs * np.exp(1j * self.phi)

    @property
    def homogeneous(self) -> bool:
        return self.deltaA12 == 0

    @property
    def boltzmann(self) -> float:
        return 0.0 if math.isinf(self.beta_delta) else math.exp(-self.beta_delta)


@dataclass(frozen=True)
class Drive:
    amplitude: float
    omega: float
    duration: float = math.inf

    def __post_init__(self):
        if self.amplitude < 0:
            raise ModelError("drive amplitude |C| must be >= 0")
        if self.duration < 0:
            raise ModelError("drive duration must be >= 0")


@dataclass(frozen=True)
class CoherentModel:
    Delta: float = 100.0
    J: float = 0.0
    psi: float = 0.0
    deltaJ12: float = 0.0
    drive: Drive | None = None

    def __post_init__(self):
        if not self.Delta > 0:
            raise ModelError(f"qubit splitting Delta must be > 0, got {self.Delta}")
        if self.J < 0:
            raise ModelError(f"coupling J must be >= 0, got {self.J}")


@dataclass(frozen=True)
class JumpSet:
    decay_ops: tuple[np.ndarray, ...]
    excite_ops: tuple[np.ndarray, ...]
    rates: tuple[float, ...]
    tilde_rates: tuple[float, ...]
    labels: tuple[int, ...] = field(default=(0, 1, -1))

    @property
    def all_ops(self) -> tuple[np.ndarray, ...]:
        return self.decay_ops + self.excite_ops

    def damping(self, include_excitation: bool = True) -> np.ndarray:
        """``sum_k L_k^+ L_k`` over the active jump operators."""
        ops = self.all_ops if include_excitation else self.decay_ops
        out = np.zeros((8, 8), dtype=complex)
        for L in ops:
            out += dagger(L) @ L
        return out


def gamma_matrix(noise: NoiseModel) -> np.ndarray:
    """3x3 decay-rate matrix with the (1,2) link shifted by ``deltaA12``."""
    a, A, d = noise.a, noise.A, noise.deltaA12
    return np.array(
        [
            [a, A - d, np.conj(A)],
            [np.conj(A) - np.conj(d), a, A],
            [A, np.conj(A), a],
        ],
        dtype=complex,
    )


def gamma_tilde_matrix(noise: NoiseModel) -> np.ndarray:
    """Excitation-rate matrix ``exp(-beta Delta) gamma^T``."""
    return noise.boltzmann * gamma_matrix(noise).T


def gamma_rates(a: float, A: complex) -> tuple[float, float, float]:
    """Eigenvalues ``(gamma_0, gamma_1, gamma_-1)`` of the homogeneous rate matrix."""
    mag, phase = abs(A), np.angle(A)
    return tuple(a + 2 * mag * math.cos(phase + 2 * math.pi * k / 3) for k in (0, 1, -1))


def validate_cp(noise: NoiseModel) -> tuple[bool, float]:
    """Complete-positivity check; returns ``(ok, smallest rate eigenvalue)``."""
    if noise.homogeneous:
        margin = noise.a - 2 * noise.A_abs
        lowest = min(gamma_rates(noise.a, noise.A))
        return margin >= -CP_TOL, lowest
    lowest = float(np.linalg.eigvalsh(gamma_matrix(noise))[0])
    return lowest >= -CP_TOL, lowest


def _ladder_ops(op: np.ndarray) -> list[np.ndarray]:
    return [single(op, q) for q in (1, 2, 3)]


def _fixed_gauge(vecs: np.ndarray) -> np.ndarray:
    # largest-magnitude component of each eigenvector made real-positive
    out = vecs.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        i = int(np.argmax(np.abs(col)))
        out[:, k] = col * (abs(col[i]) / col[i])
    return out


def _numeric_jumps(m: np.ndarray, ladders: list[np.ndarray]) -> tuple[list[np.ndarray], list[float]]:
    vals, vecs = np.linalg.eigh(m)
    if vals[0] < -CP_TOL * max(1.0, abs(vals[-1])):
        raise CPViolationError(f"rate matrix not positive semidefinite (eigenvalue {vals[0]:.3e})")
    vecs = _fixed_gauge(vecs)
    ops, rates = [], []
    for k, g in enumerate(vals):
        g = max(float(g), 0.0)
        L = sum(vecs[i, k] * ladders[i] for i in range(3))
        ops.append(math.sqrt(g) * L)
        rates.append(g)
    return ops, rates


def jump_operators(noise: NoiseModel) -> JumpSet:
    """Decay and excitation jump operators diagonalizing the dissipator.

    Homogeneous noise uses the closed-form chiral operators, labeled
    ``k = 0, 1, -1``; otherwise the rate matrices are diagonalized numerically.
    """
    ok, lowest = validate_cp(noise)
    if not ok:
        raise CPViolationError(f"complete positivity violated: smallest rate eigenvalue {lowest:.6g}")
    plus, minus = _ladder_ops(SIGMA_PLUS), _ladder_ops(SIGMA_MINUS)
    if noise.homogeneous:
        rates = tuple(max(g, 0.0) for g in gamma_rates(noise.a, noise.A))
        w = noise.boltzmann
        decay, excite = [], []
        for k, g in zip((0, 1, -1), rates):
            shape = ETA**k * plus[0] + ETA ** (-k) * plus[1] + plus[2]
            decay.append(math.sqrt(g / 3) * shape)
            excite.append(math.sqrt(w * g / 3) * dagger(shape))
        tilde = tuple(w * g for g in rates)
        if w == 0.0:
            excite = [np.zeros((8, 8), dtype=complex) for _ in excite]
        return JumpSet(tuple(decay), tuple(excite), rates, tilde, (0, 1, -1))
    decay, rates = _numeric_jumps(gamma_matrix(noise), plus)
    excite, tilde = _numeric_jumps(gamma_tilde_matrix(noise), minus)
    return JumpSet(tuple(decay), tuple(excite), tuple(rates), tuple(tilde), (0, 1, 2))


def dissipator_double_sum(rho: np.ndarray, noise: NoiseModel) -> np.ndarray:
    """Dissipator evaluated directly from the rate matrices (no diagonalization)."""
    out = np.zeros((8, 8), dtype=complex)
    for m, ladders in (
        (gamma_matrix(noise), _ladder_ops(SIGMA_PLUS)),
        (gamma_tilde_matrix(noise), _ladder_ops(SIGMA_MINUS)),
    ):
        for i in range(3):
            for j in range(3):
                if m[i, j] == 0:
                    continue
                xi, xj_d = ladders[i], dagger(ladders[j])
                out += m[i, j] * (xi @ rho @ xj_d - 0.5 * (xj_d @ xi @ rho + rho @ xj_d @ xi))
    return out


def dissipator(rho: np.ndarray, jumps: JumpSet) -> np.ndarray:
    out = np.zeros((8, 8), dtype=complex)
    for L in jumps.all_ops:
        Ld = dagger(L)
        LdL = Ld @ L
        out += L @ rho @ Ld - 0.5 * (LdL @ rho + rho @ LdL)
    return out


def hamiltonian_system(c: CoherentModel) -> np.ndarray:
    """Zeeman term ``-(Delta/2) sum_i sigma_i^z``."""
    return -0.5 * c.Delta * sum(single(SIGMA_Z, q) for q in (1, 2, 3))


def _hop(i: int, j: int, psi: float) -> np.ndarray:
    term = np.exp(1j * psi) * single(SIGMA_PLUS, i) @ single(SIGMA_MINUS, j)
    return term + dagger(term)


def hamiltonian_effective(c: CoherentModel) -> np.ndarray:
    """Noise-induced exchange ``J sum_i (e^{i psi} s_i+ s_{i+1}- + h.c.)``, cyclic in i."""
    if c.J == 0:
        return np.zeros((8, 8), dtype=complex)
    return c.J * sum(_hop(i, i % 3 + 1, c.psi) for i in (1, 2, 3))


def hamiltonian_asymmetry(c: CoherentModel) -> np.ndarray:
    """Extra exchange on the (1,2) link, ``dJ12 (e^{i psi} s1+ s2- + h.c.)``."""
    if c.deltaJ12 == 0:
        return np.zeros((8, 8), dtype=complex)
    return c.deltaJ12 * _hop(1, 2, c.psi)


def drive_operator() -> np.ndarray:
    """Collective raising operator ``sum_i sigma_i^+``."""
    return sum(_ladder_ops(SIGMA_PLUS))


def drive_coupling() -> np.ndarray:
    """Time-independent factor ``J_drive + J_drive^+`` of the drive term."""
    jd = drive_operator()
    return jd + dagger(jd)


def hamiltonian_drive(c: CoherentModel, t: float) -> np.ndarray:
    if c.drive is None:
        raise ModelError("no drive configured")
    d = c.drive
    if t > d.duration:
        return np.zeros((8, 8), dtype=complex)
    return d.amplitude * math.cos(d.omega * t) * drive_coupling()


def hamiltonian_static(c: CoherentModel) -> np.ndarray:
    return hamiltonian_system(c) + hamiltonian_effective(c) + hamiltonian_asymmetry(c)


def achiral_resonance(c: CoherentModel) -> float:
    """Transition frequency from |uuu> to the achiral W state."""
    return c.Delta + 2 * c.J * math.cos(c.psi)
