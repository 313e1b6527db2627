"""Closed-form dephasing coefficients f(t), g(t) for every bath family.

All kernels accept a scalar time (returning a Python complex) or an array
of times (returning a complex array of the same shape). Mode lists are
sequences of :class:`BathMode`.

Local topology, per bath: ``f = f_{+-}`` multiplies rho_12 of a single qubit.
Global topology: ``f = f_{14}`` multiplies rho_14 and ``g = f_{12} = f_{13}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigurationError
from .model import BathMode, OhmicSpec

# above this many factors products are accumulated as log|.| + phase
LOG_PRODUCT_THRESHOLD = 1000
MODULUS_TOL = 1e-12


@dataclass(frozen=True)
class DephasingCoefficients:
    times: np.ndarray
    f: np.ndarray
    g: Optional[np.ndarray] = None

    def check(self, tol: float = MODULUS_TOL) -> None:
        t = np.asarray(self.times)
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ConfigurationError("time grid must be ascending")
        for name in ("f", "g"):
            v = getattr(self, name)
            if v is None:
                continue
            if np.any(np.abs(v) > 1 + tol):
                raise ConfigurationError(f"|{name}(t)| exceeds 1")
            if t.size and t[0] == 0 and abs(v[0] - 1) > tol:
                raise ConfigurationError(f"{name}(0) != 1")


def _modes(modes: Sequence[BathMode]):
    if len(modes) == 0:
        raise ConfigurationError("empty mode list")
    w = np.fromiter((m.omega for m in modes), float, len(modes))
    c = np.fromiter((m.c for m in modes), float, len(modes))
    return w, c


def _times(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ConfigurationError("times must be non-negative")
    return t, t[..., None]


def _product(factors: np.ndarray) -> np.ndarray:
    """Product over the last axis, in log form for long products."""
    if factors.shape[-1] <= LOG_PRODUCT_THRESHOLD:
        return np.prod(factors, axis=-1)
    with np.errstate(divide="ignore"):
        log_mod = np.sum(np.log(np.abs(factors)), axis=-1)
    phase = np.sum(np.angle(factors), axis=-1)
    return np.exp(log_mod) * np.exp(1j * phase)


def _out(value, t):
    value = np.asarray(value, dtype=complex)
    return complex(value) if np.ndim(t) == 0 else value


def _ratio(num, den):
    # num/den with the 0/0 limit of a decoupled zero-frequency spin set to 0
    with np.errstate(invalid="ignore", divide="ignore"):
        r = num / den
    return np.where(den == 0, 0.0, r)


def local_f_mixed(modes: Sequence[BathMode], t):
    """prod_k [1 - 2 c_k^2 sin^2(p_k t) / p_k^2]; independent of populations."""
    w, c = _modes(modes)
    t0, tt = _times(t)
    p = np.hypot(w, c)
    x = _ratio(c * c, p * p)
    factors = 1.0 - 2.0 * x * np.sin(p * tt) ** 2
    return _out(_product(factors.astype(complex)), t0)


def local_f_pure(modes: Sequence[BathMode], alphas: Sequence[float], t):
    """Pure bath spins cos(a)|u> + sin(a)|d>.

    prod_k [1 - 2 (c_k/p_k)^2 sin^2(p_k t) - i (c_k/p_k) sin(2 p_k t) sin(2 a_k)]
    """
    w, c = _modes(modes)
    a = np.asarray(alphas, dtype=float)
    if a.shape != w.shape:
        raise ConfigurationError(f"need {w.size} alphas, got {a.size}")
    t0, tt = _times(t)
    p = np.hypot(w, c)
    r = _ratio(c, p)
    factors = (1.0 - 2.0 * r * r * np.sin(p * tt) ** 2
               - 1j * r * np.sin(2 * p * tt) * np.sin(2 * a))
    return _out(_product(factors), t0)


def local_f_pairs(blocks: Sequence[BathMode], mode: str, t):
    """Blocks of two GHZ-entangled spins sharing (omega_j, |c_j|).

    ``blocks`` holds one representative mode per block. ``mode='equal'``
    means c_{j1} = c_{j2}; ``'opposite'`` means c_{j1} = -c_{j2}.
    """
    w, c = _modes(blocks)
    t0, tt = _times(t)
    p = np.hypot(w, c)
    if mode == "equal":
        factors = 1.0 - 2.0 * _ratio(c * c, p * p) * np.sin(2 * p * tt) ** 2
    elif mode == "opposite":
        factors = 1.0 - 8.0 * _ratio(w * w * c * c, p ** 4) * np.sin(p * tt) ** 4
    else:
        raise ConfigurationError(f"unknown pair mode {mode!r}")
    return _out(_product(factors.astype(complex)), t0)


def local_block_trace(block: Sequence[BathMode], e_m: int, e_n: int, t):
    """Trace factor of one N-spin GHZ block in the local convention.

    e_m, e_n are sigma_z eigenvalues (+1 or -1) of the qubit.
    """
    if e_m not in (1, -1) or e_n not in (1, -1):
        raise ConfigurationError("local eigenvalues must be +1 or -1")
    w, c = _modes(block)
    t0, tt = _times(t)
    n = w.size
    p = np.hypot(w, c)
    x = _ratio(c * c, p * p)
    diag = np.prod(1.0 - x * np.sin(p * tt) ** 2 * (1 - e_m * e_n), axis=-1)
    if e_m == e_n:
        return _out(diag, t0)
    re = (1.0 - np.cos(2 * p * tt)) * _ratio(w * c, p * p)
    im = np.sin(2 * p * tt) * _ratio(c, p)
    prefactor = ((e_n - e_m) / 2) ** n
    off = 0.5 * prefactor * (np.prod(re + 1j * im, axis=-1)
                             + np.prod(-re + 1j * im, axis=-1))
    return _out(diag + off, t0)


def local_f_blocks(blocks: Sequence[Sequence[BathMode]], t):
    """f(t) = product of N-spin GHZ block trace factors (e_m=+1, e_n=-1)."""
    if len(blocks) == 0:
        raise ConfigurationError("empty block list")
    t0, _ = _times(t)
    out = np.ones(np.shape(t0), dtype=complex)
    for block in blocks:
        out = out * np.asarray(local_block_trace(block, 1, -1, t0))
    return _out(out, t0)


def _global_parts(w, c, tt):
    q = np.sqrt(w * w + 4 * c * c)
    cq, sq = np.cos(q * tt), np.sin(q * tt)
    cw, sw = np.cos(w * tt), np.sin(w * tt)
    rw, rc = _ratio(w, q), _ratio(c, q)
    f_base = 1.0 - 8.0 * rc * rc * sq * sq
    g_real = cq * cw + rw * sq * sw
    g_pop = cq * sw - rw * sq * cw
    g_coh = 2.0 * rc * sq * cw
    return q, f_base, g_real, g_pop, g_coh


def global_fg_mixed(modes: Sequence[BathMode], deltas: Sequence[float], t):
    """(f, g) for a shared bath of diagonal spins with polarizations ``deltas``."""
    w, c = _modes(modes)
    d = np.asarray(deltas, dtype=float)
    if d.shape != w.shape:
        raise ConfigurationError(f"need {w.size} deltas, got {d.size}")
    if np.any(np.abs(d) > 1):
        raise ConfigurationError("delta outside [-1, 1]")
    t0, tt = _times(t)
    _, f_base, g_real, g_pop, _ = _global_parts(w, c, tt)
    f = _product(f_base.astype(complex))
    g = _product(g_real + 1j * d * g_pop)
    return _out(f, t0), _out(g, t0)


def global_fg_pure(modes: Sequence[BathMode], t, alphas: Sequence[float] | None = None):
    """(f, g) for a shared bath of pure spins, alpha_k = pi/4 by default.

    For general alpha the polarization cos(2a) enters g like delta does for
    mixed spins and sin(2a) weights the coherent terms.
    """
    w, c = _modes(modes)
    a = np.full(w.shape, np.pi / 4) if alphas is None else np.asarray(alphas, dtype=float)
    if a.shape != w.shape:
        raise ConfigurationError(f"need {w.size} alphas, got {a.size}")
    t0, tt = _times(t)
    q, f_base, g_real, g_pop, g_coh = _global_parts(w, c, tt)
    s2a, c2a = np.sin(2 * a), np.cos(2 * a)
    f = _product(f_base - 2j * _ratio(c, q) * np.sin(2 * q * tt) * s2a)
    g = _product(g_real + 1j * c2a * g_pop - 1j * s2a * g_coh)
    return _out(f, t0), _out(g, t0)


def global_g_lower(modes: Sequence[BathMode], t, alphas: Sequence[float] | None = None):
    """Coefficient of rho_24 and rho_34 for a shared bath of pure spins.

    Equals conj(g) with every alpha_k negated; at alpha = pi/4 this is g
    itself rather than conj(g).
    """
    w, _ = _modes(modes)
    a = np.full(w.shape, np.pi / 4) if alphas is None else np.asarray(alphas, dtype=float)
    _, g = global_fg_pure(modes, t, -a)
    return np.conj(g)


def global_fg_pairs(modes: Sequence[BathMode], t):
    """(f, g) for a shared bath of GHZ pairs (modes 2j, 2j+1 form block j)."""
    w, c = _modes(modes)
    if w.size % 2:
        raise ConfigurationError("GHZ pairs need an even number of modes")
    t0, tt = _times(t)
    q = np.sqrt(w * w + 4 * c * c)
    C = np.cos(q * tt)
    S = _ratio(np.sin(q * tt), q)
    C0, S0 = np.cos(w * tt), np.sin(w * tt)
    c1, c2 = c[0::2], c[1::2]
    w1, w2 = w[0::2], w[1::2]
    C1, C2, S1, S2 = C[..., 0::2], C[..., 1::2], S[..., 0::2], S[..., 1::2]
    C10, C20, S10, S20 = C0[..., 0::2], C0[..., 1::2], S0[..., 0::2], S0[..., 1::2]

    f = ((1 - 8 * c1 ** 2 * S1 ** 2) * (1 - 8 * c2 ** 2 * S2 ** 2)
         + 16 * c1 * c2 * (w1 * w2 * S1 ** 2 * S2 ** 2 - C1 * C2 * S1 * S2))
    # per spin: e^{i w t} <u|e^{-i(w sz + 2c sx)t}|u> = a_re + i a_im
    a1_re, a1_im = C10 * C1 + S10 * S1 * w1, S10 * C1 - C10 * S1 * w1
    a2_re, a2_im = C20 * C2 + S20 * S2 * w2, S20 * C2 - C20 * S2 * w2
    g = (a1_re * a2_re - a1_im * a2_im
         - 4 * c1 * c2 * S1 * S2 * np.cos((w1 + w2) * tt))
    return _out(_product(f.astype(complex)), t0), _out(_product(g.astype(complex)), t0)


def ohmic_closed_form(spec: OhmicSpec, variant: str, t):
    """Continuum-limit coherence of an Ohmic bath (weak coupling).

    Long-time behaviour, for reference: local_mixed ~ (2 w_c t)^-eta,
    pairs_equal ~ (4 w_c t)^-eta, pairs_opposite ~ (4 w_c^3 t^3)^-eta.
    """
    t = np.asarray(t, dtype=float)
    x = (spec.omega_c * t) ** 2
    eta = spec.eta
    if variant == "local_mixed":
        out = (1 + 4 * x) ** (-eta / 2)
    elif variant == "pairs_equal":
        out = (1 + 16 * x) ** (-eta / 2)
    elif variant == "pairs_opposite":
        out = (1 + 16 * x) ** (eta / 2) * (1 + 4 * x) ** (-2 * eta)
    else:
        raise ConfigurationError(f"unknown Ohmic variant {variant!r}")
    return float(out) if out.ndim == 0 else out
