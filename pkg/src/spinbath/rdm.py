"""Analytic two-qubit reduced density matrices.

Local baths: the single-qubit Kraus pair of each qubit composed into four
two-qubit Kraus operators, plus an element-wise form of the same map.
Global bath: element-wise scaling of the initial state by f and g.

Every function broadcasts over a leading time axis: pass arrays ``f``, ``t``
of shape (T,) to get (T, 4, 4) states.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StateError

MODULUS_TOL = 1e-12


def _check_modulus(*coeffs):
    for c in coeffs:
        if np.any(np.abs(c) > 1 + MODULUS_TOL):
            raise StateError(f"dephasing coefficient with |f| > 1: max {np.max(np.abs(c))}")


def kraus_pair(f, omega, t):
    """Single-qubit Kraus operators (K1, K2) of the dephasing channel.

    K1 = diag(1, exp(+2i omega t) conj(f)), K2 = diag(0, sqrt(1 - |f|^2)),
    so that rho_12 -> exp(-2i omega t) f rho_12.
    """
    _check_modulus(f)
    f = np.asarray(f, dtype=complex)
    t = np.asarray(t, dtype=float)
    shape = np.broadcast_shapes(f.shape, t.shape)
    k1 = np.zeros(shape + (2, 2), dtype=complex)
    k2 = np.zeros(shape + (2, 2), dtype=complex)
    k1[..., 0, 0] = 1.0
    k1[..., 1, 1] = np.exp(2j * omega * t) * np.conj(f)
    k2[..., 1, 1] = np.sqrt(np.clip(1.0 - np.abs(f) ** 2, 0.0, None))
    return k1, k2


@dataclass(frozen=True)
class KrausSet:
    """Composite operators K_ij = K_i^A (x) K_j^B."""

    k11: np.ndarray
    k12: np.ndarray
    k21: np.ndarray
    k22: np.ndarray

    @classmethod
    def from_pairs(cls, pair_a, pair_b) -> "KrausSet":
        def kron(x, y):
            return np.einsum("...ij,...kl->...ikjl", x, y).reshape(
                np.broadcast_shapes(x.shape[:-2], y.shape[:-2]) + (4, 4))
        (a1, a2), (b1, b2) = pair_a, pair_b
        return cls(kron(a1, b1), kron(a1, b2), kron(a2, b1), kron(a2, b2))

    @property
    def operators(self):
        return (self.k11, self.k12, self.k21, self.k22)

    def completeness_defect(self):
        """Frobenius norm of sum K^dag K - I."""
        total = sum(np.swapaxes(k.conj(), -1, -2) @ k for k in self.operators)
        return np.linalg.norm(total - np.eye(4), axis=(-2, -1))

    def apply(self, rho0):
        rho0 = np.asarray(rho0, dtype=complex)
        return sum(k @ rho0 @ np.swapaxes(k.conj(), -1, -2) for k in self.operators)


def kraus_set(f_a, f_b, omega_s, t) -> KrausSet:
    return KrausSet.from_pairs(kraus_pair(f_a, omega_s, t), kraus_pair(f_b, omega_s, t))


def rdm_local_kraus(rho0, f_a, f_b, omega_s, t):
    """sum_ij K_ij rho0 K_ij^dag."""
    return kraus_set(f_a, f_b, omega_s, t).apply(rho0)


def rdm_local(rho0, f_a, f_b, omega_s, t):
    """Element-wise two-qubit state for independent local baths.

    Qubit A (B) coherences pick up exp(-2i omega_s t) f_A (f_B); the
    |ud><du| entry carries f_A conj(f_B). Populations are unchanged.
    """
    _check_modulus(f_a, f_b)
    rho0 = np.asarray(rho0, dtype=complex)
    f_a = np.asarray(f_a, dtype=complex)[..., None]
    f_b = np.asarray(f_b, dtype=complex)[..., None]
    phase = np.exp(-2j * omega_s * np.asarray(t, dtype=float))[..., None]
    # per-qubit coherence factor for (row bit, column bit); bits 0=up, 1=down
    qa = np.stack([np.ones_like(f_a), phase * f_a, np.conj(phase * f_a), np.ones_like(f_a)], -1)
    qb = np.stack([np.ones_like(f_b), phase * f_b, np.conj(phase * f_b), np.ones_like(f_b)], -1)
    scale = np.empty(np.broadcast_shapes(qa.shape, qb.shape)[:-2] + (4, 4), dtype=complex)
    for m in range(4):
        for n in range(4):
            ia = 2 * (m >> 1) + (n >> 1)
            ib = 2 * (m & 1) + (n & 1)
            scale[..., m, n] = qa[..., 0, ia] * qb[..., 0, ib]
    return scale * rho0


def rdm_global(rho0, f, g, omega_s, t, g_lower=None):
    """Two-qubit state for a shared bath.

    rho_14 -> exp(-4i omega_s t) f rho_14; rho_12, rho_13 -> exp(-2i omega_s t) g;
    rho_24, rho_34 -> exp(-2i omega_s t) g_lower. ``g_lower`` defaults to
    conj(g), which is exact for baths diagonal in sigma_z (mixed, GHZ
    pairs). Coherent bath spins need the value returned by
    :func:`spinbath.kernels.global_g_lower`.
    """
    _check_modulus(f, g)
    if g_lower is None:
        g_lower = np.conj(g)
    else:
        _check_modulus(g_lower)
    rho0 = np.asarray(rho0, dtype=complex)
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    h = np.asarray(g_lower, dtype=complex)
    t = np.asarray(t, dtype=float)
    shape = np.broadcast_shapes(f.shape, g.shape, h.shape, t.shape)
    p2 = np.exp(-2j * omega_s * t)
    scale = np.ones(shape + (4, 4), dtype=complex)
    scale[..., 0, 3] = p2 * p2 * f
    scale[..., 0, 1] = scale[..., 0, 2] = p2 * g
    scale[..., 1, 3] = scale[..., 2, 3] = p2 * h
    upper = np.triu_indices(4, 1)
    scale[..., upper[1], upper[0]] = np.conj(scale[..., upper[0], upper[1]])
    return scale * rho0
