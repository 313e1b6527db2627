"""Domain types, bath sampling and density-matrix validation.

Units: frequencies are measured in units of the qubit frequency ``omega_s``,
couplings are dimensionless. The two central qubits use the basis order
``|uu>, |ud>, |du>, |dd>`` throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import ConfigurationError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10

# sigma_z^A + sigma_z^B eigenvalue for each system basis state
SYSTEM_E = (2, 0, 0, -2)
# (sigma_z^A, sigma_z^B) eigenvalues for each system basis state
LOCAL_E = ((1, 1), (1, -1), (-1, 1), (-1, -1))

DEFAULT_DELTA = 0.9


@dataclass(frozen=True)
class BathMode:
    """One environment spin with frequency ``omega`` and coupling ``c``."""

    omega: float
    c: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and math.isfinite(self.c)):
            raise ConfigurationError("mode parameters must be finite")
        # omega = 0 is allowed: several analytic checks use a zero-frequency spin
        if self.omega < 0:
            raise ConfigurationError(f"mode frequency must be >= 0, got {self.omega}")

    @property
    def p(self) -> float:
        return math.hypot(self.omega, self.c)

    @property
    def q(self) -> float:
        return math.hypot(self.omega, 2.0 * self.c)


@dataclass(frozen=True)
class MixedDiagonal:
    """Each spin diagonal in the sigma_z basis with up-population ``n_plus``."""

    n_plus: tuple[float, ...]

    def __post_init__(self):
        for n in self.n_plus:
            if not 0.0 <= n <= 1.0:
                raise ConfigurationError(f"population {n} outside [0, 1]")

    @property
    def n_minus(self) -> tuple[float, ...]:
        return tuple(1.0 - n for n in self.n_plus)

    @property
    def deltas(self) -> tuple[float, ...]:
        # (N+ - N-)/(N+ + N-) with N+ + N- = 1
        return tuple(2.0 * n - 1.0 for n in self.n_plus)

    @classmethod
    def from_deltas(cls, deltas: Sequence[float]) -> "MixedDiagonal":
        for d in deltas:
            if not -1.0 <= d <= 1.0:
                raise ConfigurationError(f"delta {d} outside [-1, 1]")
        return cls(tuple(0.5 * (1.0 + d) for d in deltas))


@dataclass(frozen=True)
class Pure:
    """Each spin in ``cos(alpha)|u> + sin(alpha)|d>``."""

    alpha: tuple[float, ...]


@dataclass(frozen=True)
class GhzBlocks:
    """Consecutive groups of ``block_size`` spins, each in (|d..d> + |u..u>)/sqrt(2).

    ``signs`` records the coupling convention of each block ('equal' or
    'opposite'); the signed couplings themselves live in the modes.
    """

    block_size: int
    signs: tuple[str, ...] = ()

    def __post_init__(self):
        if self.block_size < 1:
            raise ConfigurationError("GHZ block size must be a positive integer")
        for s in self.signs:
            if s not in ("equal", "opposite"):
                raise ConfigurationError(f"unknown coupling sign convention {s!r}")


BathInitialState = Union[MixedDiagonal, Pure, GhzBlocks]


@dataclass(frozen=True)
class Bath:
    """A list of modes together with their joint initial state."""

    modes: tuple[BathMode, ...]
    state: BathInitialState

    def __post_init__(self):
        if not self.modes:
            raise ConfigurationError("a bath needs at least one mode")
        n = len(self.modes)
        st = self.state
        if isinstance(st, MixedDiagonal) and len(st.n_plus) != n:
            raise ConfigurationError("one population per mode required")
        if isinstance(st, Pure) and len(st.alpha) != n:
            raise ConfigurationError("one alpha per mode required")
        if isinstance(st, GhzBlocks):
            if n % st.block_size:
                raise ConfigurationError(
                    f"{n} modes not divisible into blocks of {st.block_size}")
            if st.signs and len(st.signs) != n // st.block_size:
                raise ConfigurationError("one sign convention per block required")

    @property
    def omegas(self) -> np.ndarray:
        return np.array([m.omega for m in self.modes], dtype=float)

    @property
    def couplings(self) -> np.ndarray:
        return np.array([m.c for m in self.modes], dtype=float)

    @property
    def deltas(self) -> np.ndarray:
        if isinstance(self.state, MixedDiagonal):
            return np.array(self.state.deltas)
        raise ConfigurationError("deltas are only defined for mixed baths")

    def blocks(self) -> list[tuple[BathMode, ...]]:
        size = self.state.block_size if isinstance(self.state, GhzBlocks) else 1
        return [self.modes[i:i + size] for i in range(0, len(self.modes), size)]

    @property
    def family(self) -> str:
        return {MixedDiagonal: "mixed", Pure: "pure", GhzBlocks: "ghz"}[type(self.state)]


@dataclass(frozen=True)
class BathSpec:
    """Full environment: ``local`` (two baths, A then B) or ``global`` (one)."""

    topology: str
    baths: tuple[Bath, ...]

    def __post_init__(self):
        expected = {"local": 2, "global": 1}.get(self.topology)
        if expected is None:
            raise ConfigurationError(f"unknown topology {self.topology!r}")
        if len(self.baths) != expected:
            raise ConfigurationError(
                f"{self.topology} topology needs {expected} bath(s), got {len(self.baths)}")

    @property
    def n_spins(self) -> int:
        return sum(len(b.modes) for b in self.baths)


@dataclass(frozen=True)
class SystemSpec:
    omega_s: float = 1.0

    def __post_init__(self):
        if not self.omega_s > 0:
            raise ConfigurationError("omega_s must be positive")


@dataclass(frozen=True)
class OhmicSpec:
    """Ohmic bath with strength ``eta`` and cutoff ``omega_c``."""

    eta: float
    omega_c: float

    def __post_init__(self):
        # eta = 0 is accepted as the decoupled limit
        if self.eta < 0 or not self.omega_c > 0:
            raise ConfigurationError("need eta >= 0 and omega_c > 0")

    def weight(self, omega):
        """Spectral weight of c^2: eta * omega * exp(-omega/omega_c)."""
        omega = np.asarray(omega, dtype=float)
        return self.eta * omega * np.exp(-omega / self.omega_c)


# ---------------------------------------------------------------------------
# sampling


def stream(seed, *keys) -> np.random.Generator:
    """PCG64 generator for the independent stream ``keys`` under ``seed``."""
    if isinstance(seed, np.random.SeedSequence):
        ss = np.random.SeedSequence(seed.entropy, spawn_key=tuple(seed.spawn_key) + keys)
    else:
        ss = np.random.SeedSequence(int(seed), spawn_key=keys)
    return np.random.Generator(np.random.PCG64(ss))


def _check_interval(name, interval):
    lo, hi = (float(x) for x in interval)
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise ConfigurationError(f"degenerate or invalid interval {interval}", name)
    return lo, hi


def _open_uniform(rng, lo, hi, n):
    # strictly inside (lo, hi): redraw the measure-zero endpoint hits
    x = rng.uniform(lo, hi, n)
    bad = (x <= lo) | (x >= hi)
    while bad.any():
        x[bad] = rng.uniform(lo, hi, int(bad.sum()))
        bad = (x <= lo) | (x >= hi)
    return x


def _sample_bath_modes(rng, n_modes, omega_range, c_range, family, *,
                       block_size, sign, shared_blocks, alpha, delta):
    if family == "ghz":
        n_blocks = n_modes // block_size
        if shared_blocks:
            w = np.repeat(_open_uniform(rng, *omega_range, n_blocks), block_size)
            c = np.repeat(_open_uniform(rng, *c_range, n_blocks), block_size)
        else:
            w = _open_uniform(rng, *omega_range, n_modes)
            c = _open_uniform(rng, *c_range, n_modes)
        if sign == "opposite":
            c[1::block_size] *= -1.0
        state = GhzBlocks(block_size, (sign,) * n_blocks)
    else:
        w = _open_uniform(rng, *omega_range, n_modes)
        c = _open_uniform(rng, *c_range, n_modes)
        if family == "mixed":
            state = MixedDiagonal.from_deltas([delta] * n_modes)
        elif family == "pure":
            state = Pure((float(alpha),) * n_modes)
        else:
            raise ConfigurationError(f"unknown bath family {family!r}", "family")
    modes = tuple(BathMode(float(a), float(b)) for a, b in zip(w, c))
    return Bath(modes, state)


def sample_bath(seed, n_modes: int, omega_range=(1.0, 2.0), c_range=(0.1, 0.2),
                topology: str = "local", family: str = "mixed", *,
                alpha: float = math.pi / 4, delta: float = DEFAULT_DELTA,
                block_size: int = 2, sign: str = "equal",
                shared_blocks: bool | None = None) -> BathSpec:
    """Draw a random bath with uniform, independent frequencies and couplings.

    ``n_modes`` is the size of each local bath, or of the single global bath.
    For the ``ghz`` family the modes are grouped into blocks of
    ``block_size``; by default local blocks share one (omega, c) draw (the
    pair closed forms assume it) while global blocks draw every spin
    independently. ``sign='opposite'`` negates the coupling of the second
    spin of each block.

    The same ``seed`` (an int or a SeedSequence) always yields the same
    BathSpec; the A and B baths of a local topology use separate streams.
    """
    if n_modes < 1:
        raise ConfigurationError("n_modes must be >= 1", "n_modes")
    omega_range = _check_interval("omega_range", omega_range)
    c_range = _check_interval("c_range", c_range)
    if omega_range[0] < 0:
        raise ConfigurationError("frequencies must be non-negative", "omega_range")
    if topology not in ("local", "global"):
        raise ConfigurationError(f"unknown topology {topology!r}", "topology")
    if family == "ghz":
        if block_size < 1 or n_modes % block_size:
            raise ConfigurationError(
                f"n_modes={n_modes} not divisible into GHZ blocks of {block_size}", "n_modes")
        if sign not in ("equal", "opposite"):
            raise ConfigurationError(f"unknown sign convention {sign!r}", "sign")
        if sign == "opposite" and block_size != 2:
            raise ConfigurationError("opposite couplings are defined for pairs only", "sign")
    if not -1.0 <= delta <= 1.0:
        raise ConfigurationError(f"delta {delta} outside [-1, 1]", "delta")
    if shared_blocks is None:
        shared_blocks = topology == "local"

    n_baths = 2 if topology == "local" else 1
    baths = tuple(
        _sample_bath_modes(stream(seed, i), n_modes, omega_range, c_range, family,
                           block_size=block_size, sign=sign, shared_blocks=shared_blocks,
                           alpha=alpha, delta=delta)
        for i in range(n_baths))
    return BathSpec(topology, baths)


def thermal_populations(beta: float, omega: float) -> tuple[float, float]:
    """Thermal (n_plus, n_minus) of a spin with energy splitting 2*omega."""
    if beta < 0 or math.isnan(beta):
        raise ConfigurationError(f"beta must be >= 0, got {beta}", "beta")
    if math.isinf(beta):
        return (0.0, 1.0) if omega > 0 else (0.5, 0.5)
    # n_+ = e^{-x}/(e^{x}+e^{-x}) = 1/(1 + e^{2x}); logistic form avoids overflow
    x = 2.0 * beta * omega
    if x >= 0:
        e = math.exp(-x)
        n_plus = e / (1.0 + e)
    else:
        n_plus = 1.0 / (1.0 + math.exp(x))
    return n_plus, 1.0 - n_plus


def ohmic_discretize(spec: OhmicSpec, m_modes: int, omega_max: float,
                     topology: str = "local") -> BathSpec:
    """Discretize an Ohmic bath on the grid omega_i = i * d_omega, i = 1..m.

    Couplings satisfy c_i^2 = eta * omega_i * exp(-omega_i/omega_c) * d_omega,
    so sums of c_k^2 h(omega_k) are right-endpoint quadratures of
    the integral of eta * omega * exp(-omega/omega_c) * h(omega). Spins start
    unpolarized; a local topology gets two copies of the same spectrum.
    """
    if m_modes < 100:
        raise ConfigurationError(f"need at least 100 modes, got {m_modes}", "m_modes")
    if not omega_max >= 5 * spec.omega_c:
        raise ConfigurationError("omega_max must be at least 5 * omega_c", "omega_max")
    d_omega = omega_max / m_modes
    omega = d_omega * np.arange(1, m_modes + 1)
    c = np.sqrt(spec.weight(omega) * d_omega)
    modes = tuple(BathMode(float(w), float(x)) for w, x in zip(omega, c))
    bath = Bath(modes, MixedDiagonal((0.5,) * m_modes))
    return BathSpec(topology, (bath, bath) if topology == "local" else (bath,))


# ---------------------------------------------------------------------------
# density matrices


@dataclass(frozen=True)
class DensityReport:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    passed: bool = field(init=False)

    def __post_init__(self):
        ok = (self.hermiticity_defect <= HERMITIAN_TOL
              and self.trace_defect <= TRACE_TOL
              and self.min_eigenvalue >= PSD_TOL)
        object.__setattr__(self, "passed", bool(ok))


def validate_density_matrix(rho) -> DensityReport:
    """Hermiticity, trace and positivity diagnostics for a square matrix."""
    rho = np.asarray(rho, dtype=complex)
    herm = float(np.max(np.abs(rho - rho.conj().T))) if rho.size else 0.0
    trace = abs(complex(np.trace(rho)) - 1.0)
    hpart = 0.5 * (rho + rho.conj().T)
    min_eig = float(np.linalg.eigvalsh(hpart).min())
    return DensityReport(herm, trace, min_eig)


def as_density_matrix(rho, dim: int = 4) -> np.ndarray:
    """Coerce to a (dim, dim) complex array and check its invariants."""
    from .errors import StateError

    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise StateError(f"expected a {dim}x{dim} matrix, got shape {rho.shape}")
    report = validate_density_matrix(rho)
    if not report.passed:
        raise StateError(f"invalid density matrix: {report}")
    return rho


def ket(*amplitudes) -> np.ndarray:
    v = np.asarray(amplitudes, dtype=complex)
    return v / np.linalg.norm(v)


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


_S = 1 / math.sqrt(2)
NAMED_STATES = {
    "bell_phi_plus": projector([_S, 0, 0, _S]),
    "bell_phi_minus": projector([_S, 0, 0, -_S]),
    "bell_psi_plus": projector([0, _S, _S, 0]),
    "bell_psi_minus": projector([0, _S, -_S, 0]),
    "separable_plus_plus": projector([0.5, 0.5, 0.5, 0.5]),
}
