"""Acceptance criteria, one test per criterion.

Each criterion prints a single PASS/FAIL line with the measured numbers and
its runtime. Run directly (``python3 tests/test_acceptance.py``) for the plain
report, or through pytest where the lines are repeated in the summary.
"""
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from trispin import analytic, basis  # noqa: E402
from trispin.entanglement import negativity_from_fidelity, tripartite_negativity  # noqa: E402
from trispin.integrator import EvolutionSpec, calibrate_pulse, propagate  # noqa: E402
from trispin.model import CoherentModel, Drive, NoiseModel, jump_operators  # noqa: E402

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # pragma: no cover
    ACCEPTANCE_LINES = []

DARK = NoiseModel(a=1.0, A_abs=0.5, phi=math.pi)


def numeric(init, noise=DARK, coherent=None, t_max=20.0, n=201, alpha=0.0):
    spec = EvolutionSpec.from_models(noise, coherent or CoherentModel(), alpha=alpha, t_max=t_max, sample_count=n)
    return propagate(basis.density(init), spec)


def analytic_state(init, t, noise=DARK, coherent=None):
    rates = analytic.sector_rates(noise, coherent or CoherentModel())
    rho0 = basis.pauli_to_eigen(basis.density(init)).data
    return basis.eigen_to_pauli(analytic.evolve(rho0, rates, t)).data


def report(number, title, budget):
    """Decorator: time a criterion, print its line, then assert."""

    def wrap(fn):
        def test():
            t0 = time.perf_counter()
            ok, detail = fn()
            elapsed = time.perf_counter() - t0
            in_time = elapsed < budget
            status = "PASS" if ok and in_time else "FAIL"
            line = f"[{status}] criterion {number:>2}: {title}: {detail} ({elapsed:.1f}s, budget {budget:g}s)"
            ACCEPTANCE_LINES.append(line)
            print(line)
            assert ok, line
            assert in_time, line

        test.__name__ = fn.__name__
        test.__doc__ = fn.__doc__
        return test

    return wrap


@report(1, "measure calibration", 1)
def test_c01_measure_calibration():
    ghz = tripartite_negativity(basis.density("ghz"))
    w = tripartite_negativity(basis.density("W0"))
    ok = abs(ghz - 1) < 1e-10 and abs(w - 2 * math.sqrt(2) / 3) < 1e-10
    return ok, f"GHZ={ghz:.12f} W={w:.12f}"


@report(2, "dark-state plateau", 5)
def test_c02_dark_plateau():
    target = negativity_from_fidelity(1 / 3)
    ana = tripartite_negativity(analytic_state("duu", 20.0))
    num = numeric("duu", n=21).n123[-1]
    ok = abs(ana - target) < 1e-3 and abs(num - target) < 1e-3
    return ok, f"target={target:.6f} analytic={ana:.6f} numeric={num:.6f}"


@report(3, "sector initializations", 10)
def test_c03_sector_inits():
    minus = numeric("udd")
    lowest = numeric("ddd")
    n_minus = tripartite_negativity(analytic_state("udd", 20.0))
    n_low = tripartite_negativity(analytic_state("ddd", 20.0))
    burst_start, burst_peak = lowest.n123[0], lowest.n123.max()
    ok = (
        abs(minus.n123[-1] - 0.009) <= 0.002
        and abs(n_minus - 0.009) <= 0.002
        and abs(lowest.n123[-1] - 0.02) <= 0.005
        and abs(n_low - 0.02) <= 0.005
        and burst_start == 0.0
        and burst_peak > 0.01
    )
    return ok, (
        f"S^z=-1/2: {minus.n123[-1]:.5f} (analytic {n_minus:.5f}); ddd: {lowest.n123[-1]:.5f} "
        f"(analytic {n_low:.5f}); ddd N(0)={burst_start:g}, peak={burst_peak:.4f}"
    )


@report(4, "no-correlation null", 5)
def test_c04_no_correlation():
    noise = NoiseModel(a=1.0, A_abs=0.0)
    worst = 0.0
    for bits in ("uuu", "uud", "udu", "duu", "udd", "dud", "ddu", "ddd"):
        ts = numeric(bits, noise=noise, t_max=10.0, n=41)
        worst = max(worst, float(ts.n123.max()))
    return worst < 1e-9, f"max N123 over 8 product inits = {worst:.2e}"


@report(5, "lifetime scaling", 20)
def test_c05_lifetime():
    parts, ok = [], True
    for A in (0.30, 0.40, 0.45):
        ts = numeric("duu", noise=NoiseModel(a=1.0, A_abs=A, phi=math.pi), t_max=20.0, n=201)
        mask = ts.times >= 5.0
        slope = np.polyfit(ts.times[mask], np.log(ts.populations[mask, 1]), 1)[0]
        expected = 1 - 2 * A
        err = abs(-slope - expected) / expected
        ok &= err < 0.05
        parts.append(f"|A|={A}: fit {-slope:.5f} vs {expected:.2f} ({100 * err:.2g}%)")
    return ok, "; ".join(parts)


@report(6, "oracle equivalence", 60)
def test_c06_oracle():
    worst = 0.0
    for init in ("duu", "udd", "ddd"):
        for J in (0.0, 1.0):
            for phi in (math.pi, math.pi / 2):
                noise = NoiseModel(a=1.0, A_abs=0.5, phi=phi)
                coh = CoherentModel(J=J)
                ts = numeric(init, noise=noise, coherent=coh, t_max=10.0, n=51)
                for t, rho in zip(ts.times, ts.rho):
                    worst = max(worst, float(np.max(np.abs(rho - analytic_state(init, t, noise, coh)))))
    return worst < 1e-6, f"max entrywise deviation over 12 runs = {worst:.2e}"


@report(7, "coupling independence of the plateau", 30)
def test_c07_j_independence():
    # chiral coherences decay as exp(-3t/2); t = 30 puts them below 1e-18
    values = [numeric("duu", coherent=CoherentModel(J=J), t_max=30.0, n=7).n123[-1] for J in (0.0, 1.0, 10.0)]
    spread = max(values) - min(values)
    return spread < 1e-6, "N123(t=30) = " + ", ".join(f"{v:.9f}" for v in values) + f"; spread {spread:.1e}"


@report(8, "post-selection law", 60)
def test_c08_post_selection():
    parts, ok = [], True
    for alpha in (0.0, 0.25, 0.5, 0.75, 1.0):
        F = numeric("duu", alpha=alpha, t_max=20.0, n=11).w_fidelity[-1]
        target = 1 / (3 - 2 * alpha)
        ok &= abs(F - target) < 1e-3
        parts.append(f"a={alpha}: {F:.6f}/{target:.6f}")
    return ok, "; ".join(parts)


@report(9, "driving protocol", 300)
def test_c09_drive():
    fids = {}
    for A in (0.5, 0.25):
        coh = CoherentModel(Delta=100.0, J=10.0, drive=Drive(1.0, 120.0))
        cal = calibrate_pulse(NoiseModel(a=1.0, A_abs=A, phi=math.pi), coh)
        fids[A] = cal
    hi, lo = fids[0.5], fids[0.25]
    ok = hi.fidelity > 0.99 and lo.fidelity < hi.fidelity
    return ok, (
        f"|A|=0.5: F={hi.fidelity:.5f} at tau={hi.tau:.4f} ({hi.in_pi_pulses:.3f} x pi/(sqrt3|C|)); "
        f"|A|=0.25: F={lo.fidelity:.5f}"
    )


@report(10, "detailed balance and selection rules", 1)
def test_c10_balance_selection():
    worst_balance = 0.0
    for bd in (1.0, 5.0, 10.0):
        js = jump_operators(NoiseModel(a=1.0, A_abs=0.4, phi=0.7, beta_delta=bd))
        worst_balance = max(worst_balance, max(abs(gt - math.exp(-bd) * g) for g, gt in zip(js.rates, js.tilde_rates)))
    js = jump_operators(NoiseModel(a=1.0, A_abs=0.4, phi=0.7))
    leak, hits = 0.0, 0
    for k, L in zip(js.labels, js.decay_ops):
        Le = basis.operator_to_eigen(L)
        for col, lab in enumerate(basis.LABELS):
            if lab.sz == 1.5:
                continue
            target_sz = lab.sz + 1
            chi = basis.wrap_chirality(lab.chi + k)
            out = Le[:, col].copy()
            # J_k leaves |1/2, chi> dark unless chi + k = 0 (mod 3)
            if not (target_sz == 1.5 and chi != 0):
                allowed = basis.label_index(target_sz, chi)
                hits += abs(out[allowed]) > 1e-6
                out[allowed] = 0
            leak = max(leak, float(np.max(np.abs(out))))
    ok = worst_balance < 1e-12 and leak < 1e-12
    return ok, f"balance error {worst_balance:.1e}; off-target support {leak:.1e}; {hits} allowed transitions"


@report(11, "finite temperature", 60)
def test_c11_temperature():
    values = []
    for bd in (math.inf, 10.0, 3.0, 1.0):
        ts = numeric("W0", noise=NoiseModel(a=1.0, A_abs=0.5, phi=math.pi, beta_delta=bd), t_max=10.0, n=11)
        values.append(ts.n123[-1])
    monotone = all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
    ok = monotone and values[1] > 0.9
    return ok, "N123(t=10) at beta*Delta = inf, 10, 3, 1: " + ", ".join(f"{v:.5f}" for v in values)


@report(12, "non-homogeneity robustness", 60)
def test_c12_inhomogeneity():
    A = DARK.A
    finals = []
    for r in (0.0, 0.1, 0.2):
        ts = numeric("duu", noise=NoiseModel(a=1.0, A_abs=0.5, phi=math.pi, deltaA12=r * A), n=11)
        finals.append(ts.n123[-1])
    ordered = finals[0] > finals[1] > finals[2]
    slopes = []
    for psi in (0.0, math.pi / 3):
        coh = CoherentModel(J=1.0, psi=psi, deltaJ12=0.1)
        ts = numeric("W0", coherent=coh, t_max=12.05, n=242)
        slopes.append((ts.n123[-1] - ts.n123[-3]) / (ts.times[-1] - ts.times[-3]))
    ok = ordered and abs(slopes[0]) < abs(slopes[1])
    return ok, (
        "N123(t=20) for |dA12|/|A| = 0, 0.1, 0.2: " + ", ".join(f"{v:.5f}" for v in finals)
        + f"; slope at t=12 (dJ12=0.1): psi=0 {slopes[0]:.2e}, psi=pi/3 {slopes[1]:.2e}"
    )


CRITERIA = [
    test_c01_measure_calibration,
    test_c02_dark_plateau,
    test_c03_sector_inits,
    test_c04_no_correlation,
    test_c05_lifetime,
    test_c06_oracle,
    test_c07_j_independence,
    test_c08_post_selection,
    test_c09_drive,
    test_c10_balance_selection,
    test_c11_temperature,
    test_c12_inhomogeneity,
]

# the drive criterion integrates a fast-oscillating generator
test_c09_drive = pytest.mark.slow(test_c09_drive)


if __name__ == "__main__":
    failed = 0
    for crit in CRITERIA:
        try:
            crit()
        except AssertionError:
            failed += 1
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria passed")
    sys.exit(1 if failed else 0)
