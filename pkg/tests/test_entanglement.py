import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinbath.entanglement import (ConcurrenceSeries, _charpoly, concurrence, concurrence_series,
                                   concurrence_xstate, eigenvalues_4x4, is_xstate,
                                   spin_flip_tilde)
from spinbath.errors import NumericError, StateError
from spinbath.model import NAMED_STATES

from conftest import random_density

PSI_MINUS = np.array([0, 1, -1, 0]) / math.sqrt(2)


def werner(p):
    return p * np.outer(PSI_MINUS, PSI_MINUS) + (1 - p) * np.eye(4) / 4


def random_xstate(rng):
    d = rng.dirichlet(np.ones(4))
    z = rng.uniform() * math.sqrt(d[0] * d[3]) * np.exp(2j * np.pi * rng.uniform())
    w = rng.uniform() * math.sqrt(d[1] * d[2]) * np.exp(2j * np.pi * rng.uniform())
    rho = np.diag(d).astype(complex)
    rho[0, 3], rho[3, 0], rho[1, 2], rho[2, 1] = z, np.conj(z), w, np.conj(w)
    return rho


def random_local_unitary(rng):
    def su2():
        q, r = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        return q * (np.diag(r) / np.abs(np.diag(r)))
    return np.kron(su2(), su2())


@pytest.mark.parametrize("p", [0, 0.25, 1 / 3, 0.5, 0.75, 1])
def test_werner_sweep(p):
    expected = max(0.0, (3 * p - 1) / 2)
    assert abs(concurrence(werner(p)) - expected) <= 1e-10


@pytest.mark.parametrize("name,value", [("bell_phi_plus", 1), ("bell_phi_minus", 1),
                                        ("bell_psi_plus", 1), ("bell_psi_minus", 1),
                                        ("separable_plus_plus", 0)])
def test_named_states(name, value):
    assert concurrence(NAMED_STATES[name]) == pytest.approx(value, abs=1e-10)


def test_pure_state_formula():
    rng = np.random.default_rng(3)
    for _ in range(200):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        v /= np.linalg.norm(v)
        # pure states: C = 2 |ad - bc|
        expected = 2 * abs(v[0] * v[3] - v[1] * v[2])
        assert concurrence(np.outer(v, v.conj())) == pytest.approx(expected, abs=1e-13)
        assert concurrence(np.outer(v, v.conj()), "eig") == pytest.approx(expected, abs=1e-7)


def test_xstate_fast_path_matches_general():
    rng = np.random.default_rng(11)
    states = [random_xstate(rng) for _ in range(1000)]
    for method in ("svd", "eig"):
        worst = max(abs(concurrence(r, method) - concurrence_xstate(r)) for r in states)
        assert worst <= 1e-10


def test_series_vectorized_x_path():
    rng = np.random.default_rng(5)
    stack = np.array([random_xstate(rng) for _ in range(50)])
    fast = concurrence_series(stack)
    slow = concurrence_series(stack, xstate=False)
    assert np.max(np.abs(fast - slow)) <= 1e-10


def test_local_unitary_invariance():
    rng = np.random.default_rng(8)
    bell = NAMED_STATES["bell_phi_plus"]
    for _ in range(200):
        rho = 0.7 * bell + 0.3 * random_density(rng)
        u = random_local_unitary(rng)
        assert concurrence(u @ rho @ u.conj().T) == pytest.approx(concurrence(rho), abs=1e-9)


@given(st.integers(0, 2**32 - 1))
def test_svd_and_spectrum_routes_agree(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, rank=4)
    assert concurrence(rho) == pytest.approx(concurrence(rho, "eig"), abs=1e-9)


def test_product_states_have_zero_concurrence():
    rng = np.random.default_rng(21)
    for _ in range(200):
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        b = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
        assert concurrence(np.outer(v, v.conj())) <= 1e-14


def test_unknown_method():
    with pytest.raises(ValueError):
        concurrence(NAMED_STATES["bell_phi_plus"], "lapack")


def test_x_detection():
    assert is_xstate(NAMED_STATES["bell_phi_plus"])
    assert not is_xstate(NAMED_STATES["separable_plus_plus"])
    with pytest.raises(StateError):
        concurrence_xstate(NAMED_STATES["separable_plus_plus"])


def test_spin_flip_of_bell_state_is_itself():
    rho = NAMED_STATES["bell_psi_minus"]
    assert np.allclose(spin_flip_tilde(rho), rho)


# --- eigenvalue solver -------------------------------------------------------

def _match(a, b):
    return max(min(abs(x - y) for y in b) for x in a)


@given(st.integers(0, 2**32 - 1))
def test_eigenvalues_against_companion_oracle(seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    got = eigenvalues_4x4(m)
    roots = np.roots(_charpoly(m))
    assert _match(got, roots) < 1e-8
    assert _match(got, np.linalg.eigvals(m)) < 1e-12 * max(1, np.abs(m).max())


@given(st.integers(0, 2**32 - 1))
def test_eigenvalues_of_spin_flip_products(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, rank=int(rng.integers(1, 5)))
    zeta = rho @ spin_flip_tilde(rho)
    assert _match(eigenvalues_4x4(zeta), np.linalg.eigvals(zeta)) < 1e-7


def test_eigenvalues_of_tiny_entry_matrix():
    # column entries near 1e-158 once drove the Householder norm subnormal
    m = np.array([[0.5, 1e-73, 1e-73, 4.5e-12],
                  [-1e-73, 1.0, 1.0, -1e-73],
                  [-1e-73, 1.0, 1.0, -1e-73],
                  [4.5e-12, 1e-73, 1e-73, 0.5]], dtype=complex)
    got = np.sort(eigenvalues_4x4(m).real)
    assert np.allclose(got, [0, 0.5, 0.5, 2], atol=1e-11)


def test_charpoly_coefficients():
    m = np.diag([1.0, 2.0, 3.0, 4.0]).astype(complex)
    assert np.allclose(_charpoly(m), np.poly([1, 2, 3, 4]))


def test_eigen_solver_reports_nonconvergence():
    m = np.array([[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], dtype=complex)
    with pytest.raises(NumericError):
        eigenvalues_4x4(m, max_iter=1)
    assert np.allclose(np.sort_complex(eigenvalues_4x4(m)), np.sort_complex(np.roots([1, 0, 0, 0, -1])))


def test_zero_matrix():
    assert np.all(eigenvalues_4x4(np.zeros((4, 4))) == 0)


def test_series_range_guard():
    with pytest.raises(NumericError):
        ConcurrenceSeries(np.arange(2.0), np.array([0.5, 1.5]))
