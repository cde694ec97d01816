"""Dense matrix algebra for three spin-1/2 qubits.

States use plain binary ordering with qubit 1 as the slowest index and
``|up> = (1, 0)``, so the eight basis kets are uuu, uud, udu, udd, duu,
dud, ddu, ddd. Relabeling to other listings is done in :mod:`trispin.basis`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# raising: |down> -> |up>
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = SIGMA_PLUS.T.copy()

PAULI = "pauli"
EIGEN = "eigen"


@dataclass(frozen=True)
class DensityMatrix:
    """An 8x8 density matrix tagged with the basis it is written in."""

    data: np.ndarray
    basis: str = PAULI

    def __post_init__(self):
        if self.basis not in (PAULI, EIGEN):
            raise ValueError(f"unknown basis tag {self.basis!r}")
        m = np.asarray(self.data, dtype=complex)
        if m.shape != (8, 8):
            raise ValueError(f"density matrix must be 8x8, got {m.shape}")
        object.__setattr__(self, "data", m)

    @property
    def trace(self) -> float:
        return float(np.trace(self.data).real)

    def normalized(self) -> "DensityMatrix":
        return DensityMatrix(self.data / np.trace(self.data).real, self.basis)


def as_matrix(rho, basis: str = PAULI) -> np.ndarray:
    """Return the raw array of ``rho``, checking its basis tag.

    Bare arrays are taken to be in the Pauli basis.
    """
    if isinstance(rho, DensityMatrix):
        if rho.basis != basis:
            raise ValueError(f"expected a {basis}-basis density matrix, got {rho.basis}")
        return rho.data
    return np.asarray(rho, dtype=complex)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def tensor3(m1, m2, m3) -> np.ndarray:
    """Kronecker product ``m1 (x) m2 (x) m3`` of three 2x2 operators."""
    mats = [np.asarray(m, dtype=complex) for m in (m1, m2, m3)]
    for m in mats:
        if m.shape != (2, 2):
            raise ValueError(f"tensor3 expects 2x2 factors, got {m.shape}")
    return np.kron(np.kron(mats[0], mats[1]), mats[2])


def single(op: np.ndarray, qubit: int) -> np.ndarray:
    """Embed a one-qubit operator acting on ``qubit`` (1-based)."""
    if qubit not in (1, 2, 3):
        raise ValueError(f"qubit index must be 1, 2 or 3, got {qubit}")
    factors = [IDENTITY, IDENTITY, IDENTITY]
    factors[qubit - 1] = op
    return tensor3(*factors)


def ket(label: str) -> np.ndarray:
    """Product ket from a string of 'u'/'d' characters, e.g. ``"duu"``."""
    label = label.lower()
    if len(label) != 3 or set(label) - {"u", "d"}:
        raise ValueError(f"product state label must be three of 'u'/'d', got {label!r}")
    index = int(label.replace("u", "0").replace("d", "1"), 2)
    v = np.zeros(8, dtype=complex)
    v[index] = 1.0
    return v


def projector(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(m - dagger(m)), initial=0.0) <= tol)


def partial_transpose(rho, qubit: int) -> np.ndarray:
    """Partial transpose of a three-qubit operator with respect to ``qubit``.

    Accepts a Pauli-basis :class:`DensityMatrix` or a bare 8x8 array; the
    eigenbasis is rejected because the chiral basis change is non-local and
    would give a different spectrum.
    """
    m = as_matrix(rho, PAULI)
    if qubit not in (1, 2, 3):
        raise ValueError(f"qubit index must be 1, 2 or 3, got {qubit}")
    t = m.reshape(2, 2, 2, 2, 2, 2)
    row, col = qubit - 1, qubit + 2
    return np.swapaxes(t, row, col).reshape(8, 8)


def hermitian_eigenvalues(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not is_hermitian(m, tol):
        dev = np.max(np.abs(m - dagger(m)))
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return np.linalg.eigvalsh(0.5 * (m + dagger(m)))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a
