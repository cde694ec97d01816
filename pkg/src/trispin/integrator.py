"""Fixed-step RK4 propagation of the master equation.

The generator covers the full Lindblad equation (``alpha = 0``) and the
hybrid Liouvillian used for post-selection,

    drho/dt = -i (H_non rho - rho H_non^+) + (1 - alpha) sum_k L_k rho L_k^+,
    H_non = H - (i/2) sum_k L_k^+ L_k,

with an optional cosine drive switched off after its duration. Density
matrices are flattened row-major, so ``vec(A rho B) = kron(A, B^T) vec(rho)``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import basis
from .algebra import PAULI, DensityMatrix, as_matrix, dagger
from .entanglement import measures
from .model import (
    CoherentModel,
    JumpSet,
    ModelError,
    NoiseModel,
    drive_coupling,
    hamiltonian_static,
    jump_operators,
)

logger = logging.getLogger(__name__)

STEP_RESOLUTION = 0.05
_EYE8 = np.eye(8)


class IntegrationError(RuntimeError):
    pass


class CalibrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class EvolutionSpec:
    hamiltonian: np.ndarray
    jumps: JumpSet
    alpha: float = 0.0
    drive_amplitude: float = 0.0
    drive_omega: float = 0.0
    drive_duration: float = math.inf
    t_max: float = 20.0
    dt: float | None = None
    sample_count: int = 401
    resolution_scale: float = 0.0  # max(Delta + 2J, gamma_k, omega) for the step bound

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ModelError(f"post-selection level alpha must lie in [0, 1], got {self.alpha}")
        if self.t_max <= 0:
            raise ModelError("t_max must be positive")
        if self.sample_count < 2:
            raise ModelError("sample_count must be at least 2")

    @property
    def driven(self) -> bool:
        return self.drive_amplitude != 0.0 and self.drive_duration > 0

    @property
    def active_jumps(self) -> tuple[np.ndarray, ...]:
        # post-selection is defined at zero temperature only
        if self.alpha > 0:
            return self.jumps.decay_ops
        return self.jumps.all_ops

    def drive_factor(self, t: float) -> float:
        if not self.driven or t > self.drive_duration:
            return 0.0
        return self.drive_amplitude * math.cos(self.drive_omega * t)

    @classmethod
    def from_models(
        cls,
        noise: NoiseModel,
        coherent: CoherentModel,
        *,
        alpha: float = 0.0,
        t_max: float = 20.0,
        dt: float | None = None,
        sample_count: int = 401,
    ) -> "EvolutionSpec":
        jumps = jump_operators(noise)
        if alpha > 0 and any(g > 0 for g in jumps.tilde_rates):
            logger.warning("excitation jumps are ignored for alpha > 0 (post-selection is defined at T = 0)")
        drive = coherent.drive
        scale = max([coherent.Delta + 2 * coherent.J, *jumps.rates])
        kwargs = {}
        if drive is not None:
            scale = max(scale, drive.omega)
            kwargs = dict(
                drive_amplitude=drive.amplitude,
                drive_omega=drive.omega,
                drive_duration=drive.duration,
            )
        return cls(
            hamiltonian=hamiltonian_static(coherent),
            jumps=jumps,
            alpha=alpha,
            t_max=t_max,
            dt=dt,
            sample_count=sample_count,
            resolution_scale=scale,
            **kwargs,
        )


@dataclass
class TimeSeries:
    times: np.ndarray
    rho: np.ndarray  # (n, 8, 8), Pauli basis, raw (unnormalized under post-selection)
    trace: np.ndarray
    n123: np.ndarray
    bipartite: np.ndarray  # (n, 3)
    w_fidelity: np.ndarray
    populations: np.ndarray  # (n, 8), eigenbasis order, normalized state
    min_eigenvalue: np.ndarray = field(default=None)

    def __len__(self) -> int:
        return len(self.times)

    @classmethod
    def from_states(cls, times, states) -> "TimeSeries":
        times = np.asarray(times, dtype=float)
        states = np.asarray(states, dtype=complex)
        n = len(times)
        trace = np.real(np.trace(states, axis1=1, axis2=2))
        n123 = np.zeros(n)
        bip = np.zeros((n, 3))
        fid = np.zeros(n)
        pops = np.zeros((n, 8))
        mins = np.zeros(n)
        for i, rho in enumerate(states):
            norm = rho / trace[i]
            rep = measures(norm)
            n123[i], bip[i], fid[i] = rep.n123, (rep.n1, rep.n2, rep.n3), rep.w_fidelity
            pops[i] = basis.populations(norm)
            mins[i] = np.linalg.eigvalsh(0.5 * (norm + dagger(norm)))[0]
        return cls(times, states, trace, n123, bip, fid, pops, mins)

    def normalized(self, i: int) -> DensityMatrix:
        return DensityMatrix(self.rho[i] / self.trace[i], PAULI)


def _superop_left_right(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator of ``rho -> a rho b``."""
    return np.kron(a, b.T)


def generator_matrices(spec: EvolutionSpec) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(L0, L1)`` with ``L(t) = L0 + drive_factor(t) L1`` on vec(rho)."""
    ops = spec.active_jumps
    damping = np.zeros((8, 8), dtype=complex)
    for L in ops:
        damping += dagger(L) @ L
    h_non = spec.hamiltonian - 0.5j * damping
    L0 = -1j * _superop_left_right(h_non, _EYE8) + 1j * _superop_left_right(_EYE8, dagger(h_non))
    recycle = 1.0 - spec.alpha
    if recycle:
        for L in ops:
            L0 += recycle * _superop_left_right(L, dagger(L))
    v = drive_coupling()
    L1 = -1j * (_superop_left_right(v, _EYE8) - _superop_left_right(_EYE8, v))
    return L0, L1


def liouvillian_apply(rho, spec: EvolutionSpec, t: float = 0.0) -> np.ndarray:
    """Time derivative of ``rho`` (Pauli basis) under ``spec`` at time ``t``."""
    m = as_matrix(rho, PAULI)
    ops = spec.active_jumps
    h = spec.hamiltonian
    c = spec.drive_factor(t)
    if c:
        h = h + c * drive_coupling()
    damping = np.zeros((8, 8), dtype=complex)
    for L in ops:
        damping += dagger(L) @ L
    h_non = h - 0.5j * damping
    out = -1j * (h_non @ m - m @ dagger(h_non))
    recycle = 1.0 - spec.alpha
    if recycle:
        for L in ops:
            out += recycle * (L @ m @ dagger(L))
    return out


def _taylor4(L: np.ndarray, h: float) -> np.ndarray:
    # one classical RK4 step of a linear autonomous ODE is exactly this polynomial
    x = h * L
    x2 = x @ x
    return np.eye(64) + x + x2 / 2 + x2 @ x / 6 + x2 @ x2 / 24


def resolve_dt(spec: EvolutionSpec) -> float:
    """Step size: user value (checked against the resolution bound) or automatic."""
    bound = STEP_RESOLUTION / spec.resolution_scale if spec.resolution_scale > 0 else math.inf
    if spec.dt is not None:
        if spec.dt <= 0:
            raise ModelError("dt must be positive")
        if spec.dt > bound * (1 + 1e-12):
            raise IntegrationError(
                f"dt={spec.dt:g} too large: need dt <= {bound:.3g} to resolve the fastest scale "
                f"{spec.resolution_scale:g}"
            )
        return spec.dt
    # resolve the full spread of Bohr frequencies, not only the single-flip one
    energies = np.linalg.eigvalsh(spec.hamiltonian)
    fastest = max(spec.resolution_scale, energies[-1] - energies[0], 1.0)
    if spec.driven:
        fastest = max(fastest, spec.drive_omega + energies[-1] - energies[0])
    return min(bound, STEP_RESOLUTION / fastest)


def _symmetrize(v: np.ndarray) -> np.ndarray:
    m = v.reshape(8, 8)
    return (0.5 * (m + m.conj().T)).reshape(64)


class _Stepper:
    def __init__(self, spec: EvolutionSpec):
        self.spec = spec
        self.L0, self.L1 = generator_matrices(spec)
        self._poly = lru_cache(maxsize=8)(lambda h: _taylor4(self.L0, h))
        self._power = lru_cache(maxsize=16)(lambda h, n: np.linalg.matrix_power(self._poly(h), n))
        self.max_hermitian_drift = 0.0

    def _track(self, v: np.ndarray):
        m = v.reshape(8, 8)
        drift = float(np.max(np.abs(m - m.conj().T)))
        if drift > self.max_hermitian_drift:
            self.max_hermitian_drift = drift

    def _rhs(self, v: np.ndarray, t: float) -> np.ndarray:
        out = self.L0 @ v
        c = self.spec.drive_factor(t)
        if c:
            out = out + c * (self.L1 @ v)
        return out

    def advance(self, v: np.ndarray, t0: float, t1: float, dt: float) -> np.ndarray:
        span = t1 - t0
        if span <= 0:
            return v
        n = max(1, math.ceil(span / dt - 1e-9))
        h = span / n
        autonomous = not self.spec.driven or t0 >= self.spec.drive_duration
        if autonomous:
            # n identical steps of a linear map: apply its n-th power once
            v = self._power(round(h, 15), n) @ v
            self._track(v)
            v = _symmetrize(v)
            if not np.all(np.isfinite(v)):
                raise IntegrationError(f"non-finite density matrix between t={t0:g} and t={t1:g} (step {h:g})")
            return v
        for i in range(n):
            t = t0 + i * h
            k1 = self._rhs(v, t)
            k2 = self._rhs(v + 0.5 * h * k1, t + 0.5 * h)
            k3 = self._rhs(v + 0.5 * h * k2, t + 0.5 * h)
            k4 = self._rhs(v + h * k3, t + h)
            v = v + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
            self._track(v)
            v = _symmetrize(v)
        if not np.all(np.isfinite(v)):
            raise IntegrationError(f"non-finite density matrix between t={t0:g} and t={t1:g} (step {h:g})")
        return v


def sample_times(spec: EvolutionSpec) -> np.ndarray:
    return np.linspace(0.0, spec.t_max, spec.sample_count)


def propagate_states(rho0, spec: EvolutionSpec, times=None, diagnostics: dict | None = None):
    """Propagate and return ``(times, states)`` without computing observables.

    If ``diagnostics`` is a dict it receives the step size and the largest
    Hermiticity drift seen before each symmetrization.
    """
    m = as_matrix(rho0, PAULI)
    if m.shape != (8, 8):
        raise ValueError("initial state must be an 8x8 density matrix")
    times = sample_times(spec) if times is None else np.asarray(times, dtype=float)
    if np.any(np.diff(times) <= 0) or times[0] < 0:
        raise ValueError("sample times must be non-negative and strictly increasing")
    dt = resolve_dt(spec)
    stepper = _Stepper(spec)
    # the pulse end is a kink in the generator; step onto it exactly
    breaks = [spec.drive_duration] if spec.driven and spec.drive_duration < times[-1] else []
    v = m.reshape(64).astype(complex)
    t = 0.0
    states = np.empty((len(times), 8, 8), dtype=complex)
    for i, target in enumerate(times):
        for b in breaks:
            if t < b < target:
                v = stepper.advance(v, t, b, dt)
                t = b
        v = stepper.advance(v, t, target, dt)
        t = target
        states[i] = v.reshape(8, 8)
    if diagnostics is not None:
        diagnostics.update(dt=dt, hermitian_drift=stepper.max_hermitian_drift)
    if stepper.max_hermitian_drift > 1e-10:
        logger.warning("Hermiticity drift %.2e before symmetrization", stepper.max_hermitian_drift)
    return times, states


def propagate(rho0, spec: EvolutionSpec, times=None, diagnostics: dict | None = None) -> TimeSeries:
    """Deterministic trajectory with observables at each sample.

    Under post-selection (``alpha > 0``) the observables refer to the
    normalized conditional state; the raw trace is kept in ``trace``.
    """
    times, states = propagate_states(rho0, spec, times, diagnostics)
    series = TimeSeries.from_states(times, states)
    if spec.alpha == 0 and np.max(np.abs(series.trace - 1)) > 1e-8:
        logger.warning("trace drift %.2e", np.max(np.abs(series.trace - 1)))
    return series


@dataclass(frozen=True)
class PulseCalibration:
    tau: float
    fidelity: float
    initial_fidelity: float
    tau_rwa: float
    times: np.ndarray
    fidelities: np.ndarray

    @property
    def in_pi_pulses(self) -> float:
        """Duration in units of the rotating-wave full-transfer time."""
        return self.tau / self.tau_rwa

    @property
    def in_half_pi_pulses(self) -> float:
        return 2 * self.tau / self.tau_rwa


def calibrate_pulse(
    noise: NoiseModel,
    coherent: CoherentModel,
    *,
    samples: int = 400,
    target_chi: int = 0,
    max_scan: float = 1e3,
    dt: float | None = None,
) -> PulseCalibration:
    """Pick the drive duration that maximizes the W-state fidelity at pulse end.

    Starts from |uuu> with the drive configured on ``coherent`` and scans
    ``tau`` over ``[0, 4 pi / (sqrt(3) |C|)]``. A pulse that ends at ``tau``
    has the same history up to ``tau`` as an unending one, so a single
    trajectory sampled on the scan grid covers every candidate.
    """
    drive = coherent.drive
    if drive is None:
        raise CalibrationError("no drive configured")
    if drive.amplitude <= 0:
        raise CalibrationError("drive amplitude is zero; no transfer possible")
    tau_rwa = math.pi / (math.sqrt(3) * drive.amplitude)
    scan_end = 4 * tau_rwa
    if scan_end > max_scan:
        raise CalibrationError(f"scan window {scan_end:.3g} exceeds limit {max_scan:g}; drive too weak")
    samples = max(samples, 200)
    always_on = replace(coherent, drive=replace(drive, duration=math.inf))
    spec = EvolutionSpec.from_models(noise, always_on, t_max=scan_end, dt=dt, sample_count=samples + 1)
    rho0 = basis.density("uuu")
    times, states = propagate_states(rho0, spec)
    target = basis.w_state(0.5, target_chi)
    fids = np.real(np.einsum("i,nij,j->n", target.conj(), states, target)) / np.real(
        np.trace(states, axis1=1, axis2=2)
    )
    best = int(np.argmax(fids))
    if fids[best] <= fids[0] + 1e-12:
        raise CalibrationError("fidelity never exceeds its initial value")
    return PulseCalibration(float(times[best]), float(fids[best]), float(fids[0]), tau_rwa, times, fids)
