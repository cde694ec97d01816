import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from trispin import basis
from trispin.algebra import tensor3
from trispin.entanglement import (
    N123_W,
    bipartite_negativity,
    measures,
    negativity_from_fidelity,
    tripartite_negativity,
    w_fidelity,
)


def test_reference_states():
    assert tripartite_negativity(basis.density("ghz")) == pytest.approx(1.0, abs=1e-12)
    assert tripartite_negativity(basis.density("W0")) == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-12)
    assert tripartite_negativity(basis.density("duu")) == 0.0
    assert tripartite_negativity(np.eye(8) / 8) == 0.0


def test_biseparable_state_has_zero_tripartite_value():
    bell = np.zeros(4)
    bell[[0, 3]] = 1 / math.sqrt(2)
    psi = np.kron(bell, [1, 0])
    rho = np.outer(psi, psi)
    assert bipartite_negativity(rho, 1) == pytest.approx(1.0)
    assert bipartite_negativity(rho, 3) == 0.0
    assert tripartite_negativity(rho) == 0.0


def test_trace_guard():
    with pytest.raises(ValueError):
        bipartite_negativity(2 * basis.density("W0"), 1)


def test_fidelity_formula_limits():
    assert negativity_from_fidelity(1.0) == pytest.approx(N123_W)
    assert negativity_from_fidelity(0.0) == 0.0
    assert negativity_from_fidelity(1 / 3) == pytest.approx(0.070361, abs=1e-6)
    with pytest.raises(ValueError):
        negativity_from_fidelity(1.2)


@settings(max_examples=40, deadline=None)
@given(F=st.floats(0, 1))
def test_fidelity_formula_matches_direct_computation(F):
    rho = F * basis.density("W0") + (1 - F) * basis.density("uuu")
    rep = measures(rho)
    assert rep.w_fidelity == pytest.approx(F, abs=1e-12)
    assert rep.n123 == pytest.approx(negativity_from_fidelity(F), abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(F1=st.floats(0, 1), F2=st.floats(0, 1))
def test_fidelity_formula_is_monotone(F1, F2):
    lo, hi = sorted((F1, F2))
    assert negativity_from_fidelity(lo) <= negativity_from_fidelity(hi) + 1e-15


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), F=st.floats(0.05, 1))
def test_local_unitary_invariance(seed, F):
    rho = F * basis.density("W0") + (1 - F) * basis.density("uuu")
    us = [unitary_group.rvs(2, random_state=seed + i) for i in range(3)]
    U = tensor3(*us)
    rotated = U @ rho @ U.conj().T
    assert tripartite_negativity(rotated) == pytest.approx(tripartite_negativity(rho), abs=1e-9)


def test_w_fidelity_target():
    assert w_fidelity(basis.density("Wp"), 1) == pytest.approx(1.0)
    assert w_fidelity(basis.density("Wp"), 0) == pytest.approx(0.0, abs=1e-15)
