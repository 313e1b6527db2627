"""Exact reference engine built from explicit small-matrix algebra.

Nothing here uses the closed forms in :mod:`spinbath.kernels`. Every trace
factor Tr[exp(-i X(E_m) t) rho exp(+i X(E_n) t)] with
X(E) = omega sigma_z + E c sigma_x is evaluated from SU(2) exponentials and
explicit matrix products, so the kernels can be checked against it.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import CapacityError, StateError
from .model import (LOCAL_E, SYSTEM_E, Bath, BathMode, BathSpec, GhzBlocks,
                    MixedDiagonal, Pure, SystemSpec, as_density_matrix,
                    validate_density_matrix)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

MAX_BLOCK_SIZE = 12
MAX_FULL_SPACE_SPINS = 10


def su2_exp(u, v):
    """exp(i (u sigma_z + v sigma_x)); broadcasts over array u, v to (..., 2, 2)."""
    u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
    r = np.hypot(u, v)
    with np.errstate(invalid="ignore", divide="ignore"):
        sinc = np.where(r == 0, 1.0, np.sin(r) / r)
    cos = np.cos(r)
    out = np.empty(u.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = cos + 1j * sinc * u
    out[..., 1, 1] = cos - 1j * sinc * u
    out[..., 0, 1] = 1j * sinc * v
    out[..., 1, 0] = 1j * sinc * v
    return out


def _evolvers(mode: BathMode, e_m, e_n, t):
    t = np.asarray(t, dtype=float)
    left = su2_exp(-mode.omega * t, -e_m * mode.c * t)   # exp(-i X(E_m) t)
    right = su2_exp(mode.omega * t, e_n * mode.c * t)    # exp(+i X(E_n) t)
    return left, right


def _check_state(rho, dim):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise StateError(f"bath state must be {dim}x{dim}, got {rho.shape}")
    report = validate_density_matrix(rho)
    if not report.passed:
        raise StateError(f"invalid bath density matrix: {report}")
    return rho


def mode_trace_factor(mode: BathMode, rho_k, e_m, e_n, t):
    """Tr[exp(-i X(E_m) t) rho_k exp(+i X(E_n) t)] for a single spin."""
    rho_k = _check_state(rho_k, 2)
    left, right = _evolvers(mode, e_m, e_n, t)
    value = np.trace(left @ rho_k @ right, axis1=-2, axis2=-1)
    return complex(value) if np.ndim(t) == 0 else value


def _apply_on_axis(tensor, op, axis):
    # tensor has a leading time axis; op[t, a, b] acts on leg ``axis`` from the left
    moved = np.moveaxis(tensor, axis + 1, 1)
    moved = np.einsum("tab,tb...->ta...", op, moved)
    return np.moveaxis(moved, 1, axis + 1)


def block_trace_factor(block, rho_block, e_m, e_n, t):
    """Trace factor of an N-spin block with arbitrary joint state.

    Applies each spin's evolver to its own tensor leg of ``rho_block``,
    which equals conjugation by the full tensor-product unitaries.
    """
    n = len(block)
    if n > MAX_BLOCK_SIZE:
        raise CapacityError(f"block of {n} spins exceeds the guard of {MAX_BLOCK_SIZE}")
    dim = 2 ** n
    rho_block = _check_state(rho_block, dim)
    times = np.atleast_1d(np.asarray(t, dtype=float)).ravel()
    tensor = np.broadcast_to(rho_block.reshape((1,) + (2,) * (2 * n)),
                             (times.size,) + (2,) * (2 * n))
    for k, mode in enumerate(block):
        left, right = _evolvers(mode, e_m, e_n, times)
        tensor = _apply_on_axis(tensor, left, k)
        # right multiplication by R on the column leg: sum_b T[.., b, ..] R[b, a]
        tensor = _apply_on_axis(tensor, np.swapaxes(right, -1, -2), n + k)
    out = np.trace(tensor.reshape(times.size, dim, dim), axis1=-2, axis2=-1)
    return complex(out[0]) if np.ndim(t) == 0 else out.reshape(np.shape(t))


def ghz_state(n: int) -> np.ndarray:
    v = np.zeros(2 ** n, dtype=complex)
    v[0] = v[-1] = 1 / math.sqrt(2)
    return np.outer(v, v.conj())


def mode_states(bath: Bath) -> list[np.ndarray]:
    """Per-mode (or per-block) initial density matrices of a bath."""
    st = bath.state
    if isinstance(st, MixedDiagonal):
        return [np.diag([n, 1 - n]).astype(complex) for n in st.n_plus]
    if isinstance(st, Pure):
        out = []
        for a in st.alpha:
            v = np.array([math.cos(a), math.sin(a)], dtype=complex)
            out.append(np.outer(v, v.conj()))
        return out
    if isinstance(st, GhzBlocks):
        return [ghz_state(st.block_size) for _ in bath.blocks()]
    raise StateError(f"unsupported bath state {st!r}")


def bath_factor(bath: Bath, e_m, e_n, t):
    """Product over modes/blocks of a bath's trace factors, in fixed order."""
    if e_m == e_n:
        return np.ones(np.shape(t), dtype=complex)
    out = np.ones(np.shape(t), dtype=complex)
    states = mode_states(bath)
    if isinstance(bath.state, GhzBlocks):
        for block, rho in zip(bath.blocks(), states):
            if len(block) == 1:
                out = out * mode_trace_factor(block[0], rho, e_m, e_n, t)
            else:
                out = out * block_trace_factor(block, rho, e_m, e_n, t)
    else:
        for mode, rho in zip(bath.modes, states):
            out = out * mode_trace_factor(mode, rho, e_m, e_n, t)
    return out


def dephasing_exact(bath: BathSpec, t) -> np.ndarray:
    """Table f_mn(t) over the two-qubit basis, shape (..., 4, 4)."""
    t = np.asarray(t, dtype=float)
    table = np.ones(t.shape + (4, 4), dtype=complex)
    cache = {}
    for m in range(4):
        for n in range(4):
            if m == n:
                continue
            if bath.topology == "global":
                key = (SYSTEM_E[m], SYSTEM_E[n])
                if key not in cache:
                    cache[key] = bath_factor(bath.baths[0], *key, t)
                table[..., m, n] = cache[key]
            else:
                value = np.ones(t.shape, dtype=complex)
                for q, sub in enumerate(bath.baths):
                    key = (q, LOCAL_E[m][q], LOCAL_E[n][q])
                    if key not in cache:
                        cache[key] = bath_factor(sub, key[1], key[2], t)
                    value = value * cache[key]
                table[..., m, n] = value
    return table


def system_phases(sys: SystemSpec, t) -> np.ndarray:
    """exp(-i omega_s (E_m - E_n) t) for every basis pair, shape (..., 4, 4)."""
    e = np.array(SYSTEM_E, dtype=float)
    t = np.asarray(t, dtype=float)[..., None, None]
    return np.exp(-1j * sys.omega_s * (e[:, None] - e[None, :]) * t)


def rdm_exact(bath: BathSpec, sys: SystemSpec, rho0, t) -> np.ndarray:
    """rho_mn(t) = exp(-i omega_s (E_m - E_n) t) rho_mn(0) f_mn(t)."""
    rho0 = as_density_matrix(rho0)
    return system_phases(sys, t) * rho0 * dephasing_exact(bath, t)


# ---------------------------------------------------------------------------
# full Hilbert-space cross-check


def _embed(op, k, n):
    out = np.ones((1, 1), dtype=complex)
    for j in range(n):
        out = np.kron(out, op if j == k else IDENTITY2)
    return out


def _full_bath_state(bath: Bath) -> np.ndarray:
    rho = np.ones((1, 1), dtype=complex)
    for r in mode_states(bath):
        rho = np.kron(rho, r)
    return rho


def rdm_full_space(bath: BathSpec, sys: SystemSpec, rho0, t) -> np.ndarray:
    """Reduced state from unitary evolution on the complete bath Hilbert space.

    Each system basis sector m evolves the bath with
    H_B(m) = sum_k omega_k sz_k + E_k(m) c_k sx_k; the system coherence
    rho_mn picks up Tr[U_m rho_B U_n^dagger]. Limited to 10 bath spins.
    """
    rho0 = as_density_matrix(rho0)
    n = bath.n_spins
    if n > MAX_FULL_SPACE_SPINS:
        raise CapacityError(f"{n} bath spins exceed the full-space guard of "
                            f"{MAX_FULL_SPACE_SPINS}")
    modes = [m for b in bath.baths for m in b.modes]
    owner = [q for q, b in enumerate(bath.baths) for _ in b.modes]
    rho_b = np.ones((1, 1), dtype=complex)
    for b in bath.baths:
        rho_b = np.kron(rho_b, _full_bath_state(b))

    h_free = sum(m.omega * _embed(SIGMA_Z, k, n) for k, m in enumerate(modes))
    sx = [m.c * _embed(SIGMA_X, k, n) for k, m in enumerate(modes)]

    def bath_hamiltonian(index):
        if bath.topology == "global":
            e = [SYSTEM_E[index]] * n
        else:
            e = [LOCAL_E[index][q] for q in owner]
        return h_free + sum(ek * s for ek, s in zip(e, sx))

    spectra = [np.linalg.eigh(bath_hamiltonian(i)) for i in range(4)]
    times = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(times.shape + (4, 4), dtype=complex)
    for ti, tv in enumerate(times):
        us = [vec @ np.diag(np.exp(-1j * val * tv)) @ vec.conj().T for val, vec in spectra]
        f = np.array([[np.trace(us[m] @ rho_b @ us[k].conj().T) for k in range(4)]
                      for m in range(4)])
        out[ti] = rho0 * f
    out = out * system_phases(sys, times)
    return out[0] if np.ndim(t) == 0 else out.reshape(np.shape(t) + (4, 4))
