import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from spinbath.model import BathMode, NAMED_STATES

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

finite = dict(allow_nan=False, allow_infinity=False)

omegas = st.floats(0.05, 3.0, **finite)
couplings = st.floats(-0.6, 0.6, **finite)
modes = st.builds(BathMode, omegas, couplings)
mode_lists = st.lists(modes, min_size=1, max_size=8)
times = st.floats(0.0, 20.0, **finite)
alphas = st.floats(0.0, math.pi, **finite)
deltas = st.floats(-1.0, 1.0, **finite)


@st.composite
def pair_lists(draw, max_pairs=4):
    """Even-length mode lists; consecutive modes form a GHZ pair."""
    n = draw(st.integers(1, max_pairs))
    return [draw(modes) for _ in range(2 * n)]


@st.composite
def density_matrices(draw, rank=None):
    """Random 4x4 density matrix from a seeded Gaussian factor."""
    seed = draw(st.integers(0, 2**32 - 1))
    r = rank if rank is not None else draw(st.integers(1, 4))
    return random_density(np.random.default_rng(seed), r)


def random_density(rng, rank=4):
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def grid():
    return np.linspace(0.0, 20.0, 200)


@pytest.fixture(params=sorted(NAMED_STATES))
def named_state(request):
    return NAMED_STATES[request.param]


# --- acceptance summary --------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
