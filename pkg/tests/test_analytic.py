
import numpy as np
import pytest

from trispin import analytic, basis
from trispin.integrator import EvolutionSpec, propagate_states
from trispin.model import CoherentModel, Drive, NoiseModel


def _deviation(init, noise, coherent, t_max=4.0, n=9):
    rates = analytic.sector_rates(noise, coherent)
    spec = EvolutionSpec.from_models(noise, coherent, t_max=t_max, sample_count=n)
    times, states = propagate_states(basis.density(init), spec)
    rho0 = basis.pauli_to_eigen(basis.density(init)).data
    dev = 0.0
    for t, st in zip(times, states):
        exact = basis.eigen_to_pauli(analytic.evolve(rho0, rates, t)).data
        dev = max(dev, np.max(np.abs(exact - st)))
    return dev


@pytest.mark.parametrize("init", ["duu", "W0", "udd", "V0", "ddd"])
def test_matches_integrator(init):
    assert _deviation(init, NoiseModel(phi=1.0, A_abs=0.4), CoherentModel(J=0.8, psi=0.5)) < 1e-9


@pytest.mark.parametrize("init", ["udd", "ddd"])
def test_degenerate_rates_use_series(init):
    # A = 0 makes every exponent difference vanish; the 0/0 limits must hold
    assert _deviation(init, NoiseModel(A_abs=0.0), CoherentModel()) < 1e-9


@pytest.mark.parametrize("init", ["duu", "udd", "ddd"])
def test_trace_and_positivity(init):
    rates = analytic.sector_rates(NoiseModel(), CoherentModel(J=1.0))
    rho0 = basis.pauli_to_eigen(basis.density(init)).data
    for t in (0.0, 0.5, 3.0, 30.0):
        m = analytic.evolve(rho0, rates, t).data
        assert np.isclose(np.trace(m).real, 1, atol=1e-12)
        assert np.linalg.eigvalsh(m)[0] > -1e-12


def test_dark_plateau_fidelity():
    rates = analytic.sector_rates(NoiseModel(), CoherentModel())
    rho0 = basis.pauli_to_eigen(basis.density("duu")).data
    m = analytic.evolve(rho0, rates, 50.0).data
    assert np.isclose(m[1, 1].real, 1 / 3, atol=1e-12)
    assert np.isclose(m[0, 0].real, 2 / 3, atol=1e-12)


def test_rate_tables():
    r = analytic.sector_rates(NoiseModel(phi=0.9, A_abs=0.3))
    g0, g1, gm = r.gamma
    assert np.allclose(r.upsilon32, [g0, gm, g1])
    # every -1/2 decay lands in the +1/2 sector
    assert np.allclose(r.upsilon21.sum(axis=0), r.lower_decay)
    assert np.allclose(r.gamma32, r.upsilon32 - 2 * r.a)
    # Gamma21_rp = (upper decay of r) - (lower decay of p)
    assert np.allclose(r.gamma21, r.upper_decay[:, None] - r.lower_decay[None, :])


def test_s_amplitude_at_zero():
    rates = analytic.sector_rates(NoiseModel(), CoherentModel(J=1))
    assert np.isclose(analytic.s_amplitude(0, 0.0, rates), 3)
    assert abs(analytic.s_amplitude(1, 0.0, rates)) < 1e-12
    with pytest.raises(ValueError):
        analytic.s_amplitude(3, 0.0, rates)


def test_unsupported_inputs():
    with pytest.raises(analytic.AnalyticUnsupported):
        analytic.sector_rates(NoiseModel(beta_delta=2.0))
    with pytest.raises(analytic.AnalyticUnsupported):
        analytic.sector_rates(NoiseModel(deltaA12=0.05), CoherentModel())
    with pytest.raises(analytic.AnalyticUnsupported):
        analytic.sector_rates(NoiseModel(), CoherentModel(deltaJ12=0.1))
    with pytest.raises(analytic.AnalyticUnsupported):
        analytic.sector_rates(NoiseModel(), CoherentModel(drive=Drive(1, 100)))
    ghz = basis.pauli_to_eigen(basis.density("ghz")).data
    with pytest.raises(analytic.AnalyticUnsupported):
        analytic.classify(ghz)
    mixed = np.diag([0, 0.5, 0, 0, 0.5, 0, 0, 0]).astype(complex)
    with pytest.raises(analytic.AnalyticUnsupported):
        analytic.classify(mixed)
