import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinbath.errors import CapacityError, StateError
from spinbath.model import NAMED_STATES, Bath, BathMode, BathSpec, GhzBlocks, SystemSpec, sample_bath
from spinbath.oracle import (IDENTITY2, SIGMA_X, SIGMA_Z, block_trace_factor, dephasing_exact,
                             ghz_state, mode_trace_factor, rdm_exact, rdm_full_space, su2_exp)

from conftest import density_matrices, times


@given(st.floats(-20, 20), st.floats(-20, 20))
def test_su2_exp_matches_expm(u, v):
    expm = pytest.importorskip("scipy.linalg").expm
    ref = expm(1j * (u * SIGMA_Z + v * SIGMA_X))
    got = su2_exp(u, v)
    assert np.allclose(got, ref, atol=1e-12)
    assert np.allclose(got @ got.conj().T, IDENTITY2, atol=1e-13)


def test_su2_exp_broadcasts_and_handles_zero():
    out = su2_exp(np.zeros(3), np.array([0.0, 1.0, 2.0]))
    assert out.shape == (3, 2, 2)
    assert np.allclose(out[0], IDENTITY2)


@given(st.floats(0, 3), st.floats(-1, 1), times, st.floats(0, 1))
def test_mode_trace_factor_equal_index_is_one(w, c, t, n):
    rho = np.diag([n, 1 - n]).astype(complex)
    for e in (1, -1, 2, 0, -2):
        assert mode_trace_factor(BathMode(w, c), rho, e, e, t) == pytest.approx(1, abs=1e-13)


def test_mode_trace_factor_rejects_bad_state():
    with pytest.raises(StateError):
        mode_trace_factor(BathMode(1, 0.1), np.eye(2), 1, -1, 0.5)


def test_block_trace_of_product_state_factorizes():
    a, b = BathMode(1.2, 0.3), BathMode(0.7, -0.2)
    ra = np.array([[0.7, 0.2], [0.2, 0.3]], dtype=complex)
    rb = np.array([[0.4, -0.1j], [0.1j, 0.6]], dtype=complex)
    t = np.linspace(0, 10, 7)
    joint = block_trace_factor([a, b], np.kron(ra, rb), 1, -1, t)
    split = mode_trace_factor(a, ra, 1, -1, t) * mode_trace_factor(b, rb, 1, -1, t)
    assert np.allclose(joint, split, atol=1e-14)


def test_block_capacity_guard():
    block = [BathMode(1, 0.1)] * 13
    with pytest.raises(CapacityError):
        block_trace_factor(block, None, 1, -1, 1.0)


def test_ghz_state():
    rho = ghz_state(3)
    assert rho[0, 0] == rho[-1, -1] == rho[0, -1] == pytest.approx(0.5)
    assert np.trace(rho) == pytest.approx(1)


@pytest.mark.parametrize("topology", ["local", "global"])
@pytest.mark.parametrize("family", ["mixed", "pure", "ghz"])
def test_table_structure(topology, family):
    bath = sample_bath(11, 4, topology=topology, family=family)
    table = dephasing_exact(bath, np.linspace(0, 20, 30))
    assert np.all(table.diagonal(axis1=-2, axis2=-1) == 1)
    assert np.all(np.abs(table) <= 1 + 1e-12)
    if topology == "global":
        # equal system energies: |ud> and |du> never dephase
        assert np.all(table[:, 1, 2] == 1)


@pytest.mark.parametrize("topology,n", [("local", 3), ("global", 6)])
@pytest.mark.parametrize("family", ["mixed", "pure", "ghz"])
def test_full_space_agrees_with_factorized_oracle(topology, family, n):
    if family == "ghz" and n % 2:
        n += 1
    bath = sample_bath(5, n if family != "ghz" or topology == "global" else 2,
                       topology=topology, family=family)
    t = np.linspace(0, 20, 25)
    rho0 = NAMED_STATES["separable_plus_plus"]
    a = rdm_full_space(bath, SystemSpec(1.3), rho0, t)
    b = rdm_exact(bath, SystemSpec(1.3), rho0, t)
    assert np.max(np.abs(a - b)) < 1e-10


@given(density_matrices())
def test_full_space_random_system_state(rho0):
    bath = BathSpec("global", (Bath((BathMode(1.1, 0.3), BathMode(0.4, -0.5)),
                                    GhzBlocks(2)),))
    t = np.array([0.0, 1.7, 9.2])
    a = rdm_full_space(bath, SystemSpec(), rho0, t)
    assert np.max(np.abs(a - rdm_exact(bath, SystemSpec(), rho0, t))) < 1e-10
    assert np.allclose(a[0], rho0)


def test_full_space_capacity_guard():
    bath = sample_bath(1, 6, topology="local")
    with pytest.raises(CapacityError):
        rdm_full_space(bath, SystemSpec(), NAMED_STATES["bell_phi_plus"], 1.0)


def test_rdm_exact_rejects_invalid_state():
    bath = sample_bath(1, 2)
    with pytest.raises(StateError):
        rdm_exact(bath, SystemSpec(), np.eye(4), 1.0)


def test_system_phase_convention():
    # a decoupled bath leaves only the free system rotation exp(-i w (E_m - E_n) t)
    bath = BathSpec("global", (Bath((BathMode(1.0, 0.0),), GhzBlocks(1)),))
    rho = rdm_exact(bath, SystemSpec(0.5), NAMED_STATES["bell_phi_plus"], math.pi)
    assert rho[0, 3] == pytest.approx(0.5 * np.exp(-4j * 0.5 * math.pi))
