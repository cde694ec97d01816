"""Pauli product basis, the (S^z, chirality) eigenbasis and the map between them.

Eigenbasis ordering::

    0: |uuu>          (S^z = +3/2)
    1-3: |+1/2, chi>  chi = 0, -1, +1
    4-6: |-1/2, chi>  chi = 0, -1, +1
    7: |ddd>          (S^z = -3/2)

The chirality order ``(0, -1, +1)`` inside each W sector is the one used by
the jump-amplitude matrices in :mod:`trispin.analytic`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (
    EIGEN,
    PAULI,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DensityMatrix,
    as_matrix,
    dagger,
    ket,
    single,
)

ETA = np.exp(2j * np.pi / 3)

SECTOR_CHIRALITIES = (0, -1, 1)


@dataclass(frozen=True)
class SectorLabel:
    sz: float
    chi: int

    def __post_init__(self):
        if self.sz not in (1.5, 0.5, -0.5, -1.5):
            raise ValueError(f"invalid S^z {self.sz}")
        if abs(self.chi) > 1.5 - abs(self.sz):
            raise ValueError(f"chirality {self.chi} not allowed in sector S^z={self.sz}")


LABELS: tuple[SectorLabel, ...] = (
    SectorLabel(1.5, 0),
    *(SectorLabel(0.5, c) for c in SECTOR_CHIRALITIES),
    *(SectorLabel(-0.5, c) for c in SECTOR_CHIRALITIES),
    SectorLabel(-1.5, 0),
)

# short names used for init strings and CSV columns
LABEL_NAMES = ("uuu", "W0", "Wm", "Wp", "V0", "Vm", "Vp", "ddd")

# sector slices in the eigenbasis
SECTOR_SLICES = {1.5: slice(0, 1), 0.5: slice(1, 4), -0.5: slice(4, 7), -1.5: slice(7, 8)}

# Listing of the product basis used for block displays:
# uuu, duu, udu, uud, udd, dud, ddu, ddd  (binary indices below)
DISPLAY_ORDER = np.array([0, 4, 2, 1, 3, 5, 6, 7])


def wrap_chirality(chi: int) -> int:
    """Map an integer onto {-1, 0, 1} modulo 3."""
    return (chi + 1) % 3 - 1


def label_index(sz: float, chi: int = 0) -> int:
    return LABELS.index(SectorLabel(sz, wrap_chirality(chi)))


def w_state(sz: float, chi: int) -> np.ndarray:
    """The chiral W state ``|sz, chi>`` for ``sz = +-1/2`` in the Pauli basis."""
    if sz == 0.5:
        a, b, c = ket("uud"), ket("udu"), ket("duu")
    elif sz == -0.5:
        a, b, c = ket("ddu"), ket("dud"), ket("udd")
    else:
        raise ValueError("W states live in the S^z = +-1/2 sectors")
    return (ETA ** (-chi) * a + ETA**chi * b + c) / np.sqrt(3)


@lru_cache(maxsize=None)
def _transform() -> np.ndarray:
    cols = [ket("uuu")]
    cols += [w_state(0.5, c) for c in SECTOR_CHIRALITIES]
    cols += [w_state(-0.5, c) for c in SECTOR_CHIRALITIES]
    cols.append(ket("ddd"))
    u = np.column_stack(cols)
    u.setflags(write=False)
    return u


def basis_transform() -> np.ndarray:
    """Unitary whose columns are the eigenbasis states in the Pauli basis."""
    return _transform()


def eigenbasis_states() -> list[np.ndarray]:
    u = _transform()
    return [u[:, i].copy() for i in range(8)]


def state(name: str) -> np.ndarray:
    """Pauli-basis ket from a product label ("duu") or an eigenstate name ("W0")."""
    key = name.strip()
    if key in LABEL_NAMES:
        return _transform()[:, LABEL_NAMES.index(key)].copy()
    low = key.lower()
    if low == "ghz":
        return (ket("uuu") - ket("ddd")) / np.sqrt(2)
    if low in ("down3",):
        return ket("ddd")
    return ket(low)


def density(name: str) -> np.ndarray:
    """Pauli-basis projector onto :func:`state` ``(name)``."""
    v = state(name)
    return np.outer(v, v.conj())


def total_sz_operator() -> np.ndarray:
    return 0.5 * sum(single(SIGMA_Z, q) for q in (1, 2, 3))


def chirality_operator() -> np.ndarray:
    """Scalar spin chirality ``s1 . (s2 x s3) / (2 sqrt 3)``."""
    s = (SIGMA_X, SIGMA_Y, SIGMA_Z)
    out = np.zeros((8, 8), dtype=complex)
    for i, j, k, sign in ((0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1), (0, 2, 1, -1), (2, 1, 0, -1), (1, 0, 2, -1)):
        out += sign * single(s[i], 1) @ single(s[j], 2) @ single(s[k], 3)
    return out / (2 * np.sqrt(3))


def eigen_to_pauli(rho) -> DensityMatrix:
    u = _transform()
    m = as_matrix(rho, EIGEN) if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    return DensityMatrix(u @ m @ dagger(u), PAULI)


def pauli_to_eigen(rho) -> DensityMatrix:
    u = _transform()
    m = as_matrix(rho, PAULI)
    return DensityMatrix(dagger(u) @ m @ u, EIGEN)


def operator_to_eigen(op: np.ndarray) -> np.ndarray:
    u = _transform()
    return dagger(u) @ op @ u


def to_display_order(m: np.ndarray) -> np.ndarray:
    """Reorder a Pauli-basis matrix into the uuu, duu, udu, uud, ... listing."""
    p = DISPLAY_ORDER
    return np.asarray(m)[np.ix_(p, p)]


def populations(rho) -> np.ndarray:
    """Occupations of the eight eigenstates (eigenbasis order)."""
    m = as_matrix(rho, PAULI)
    u = _transform()
    return np.real(np.einsum("ia,ij,ja->a", u.conj(), m, u))
