"""Wootters concurrence of two-qubit states.

The square roots of the spectrum of rho (sy x sy) rho* (sy x sy) are the
singular values of tau = Y^T (sy x sy) Y for any factor rho = Y Y^H. The
default general route takes those singular values directly, which keeps
near-separable states accurate to rounding. The spectrum route
(``method="eig"``) uses a small self-contained shifted QR iteration
(:func:`eigenvalues_4x4`) and loses about sqrt(eps) there. X-shaped states
use the closed form in :func:`concurrence_xstate`.
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericError, StateError

log = logging.getLogger(__name__)

SY_SY = np.array([[0, 0, 0, -1],
                  [0, 0, 1, 0],
                  [0, 1, 0, 0],
                  [-1, 0, 0, 0]], dtype=complex)

X_OFF = ((0, 1), (0, 2), (1, 3), (2, 3))
MAX_QR_ITERATIONS = 200
DEFLATION_TOL = 1e-13
RESIDUAL_TOL = 1e-9
CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class ConcurrenceSeries:
    times: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        if np.any((self.c < 0) | (self.c > 1)):
            raise NumericError("concurrence outside [0, 1]")


def spin_flip_tilde(rho) -> np.ndarray:
    """(sy x sy) conj(rho) (sy x sy)."""
    rho = np.asarray(rho, dtype=complex)
    return SY_SY @ rho.conj() @ SY_SY


# ---------------------------------------------------------------------------
# 4x4 eigenvalues


def _hessenberg(a):
    """In-place Householder reduction of a list-of-lists complex matrix."""
    n = len(a)
    for k in range(n - 2):
        x = [a[i][k] for i in range(k + 1, n)]
        # rescale so squares of tiny entries do not go subnormal
        xmax = max(abs(z) for z in x)
        if xmax == 0.0:
            continue
        x = [z / xmax for z in x]
        norm = math.sqrt(sum(abs(z) ** 2 for z in x))
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = list(x)
        v[0] += phase * norm
        vnorm2 = sum(abs(z) ** 2 for z in v)
        if vnorm2 == 0.0:
            continue
        rows = range(k + 1, n)
        # A <- (I - 2 v v^H / |v|^2) A
        for j in range(n):
            s = sum(v[i].conjugate() * a[r][j] for i, r in enumerate(rows)) * 2 / vnorm2
            for i, r in enumerate(rows):
                a[r][j] -= v[i] * s
        # A <- A (I - 2 v v^H / |v|^2)
        for r in range(n):
            s = sum(a[r][c] * v[i] for i, c in enumerate(rows)) * 2 / vnorm2
            for i, c in enumerate(rows):
                a[r][c] -= s * v[i].conjugate()
        for r in range(k + 2, n):
            a[r][k] = 0j


def _wilkinson(a, lo, hi):
    p, q = a[hi - 1][hi - 1], a[hi - 1][hi]
    r, s = a[hi][hi - 1], a[hi][hi]
    mean, half = 0.5 * (p + s), 0.5 * (p - s)
    disc = cmath.sqrt(half * half + q * r)
    mu1, mu2 = mean + disc, mean - disc
    return mu1 if abs(mu1 - s) < abs(mu2 - s) else mu2


def _qr_step(a, lo, hi, mu):
    """One explicitly shifted QR step on the Hessenberg block a[lo:hi+1]."""
    for i in range(lo, hi + 1):
        a[i][i] -= mu
    rotations = []
    for k in range(lo, hi):
        x, y = a[k][k], a[k + 1][k]
        r = math.hypot(abs(x), abs(y))
        if r == 0.0:
            c, s = 1.0 + 0j, 0j
        else:
            c, s = x / r, y / r
        rotations.append((c, s))
        for j in range(k, hi + 1):
            u, w = a[k][j], a[k + 1][j]
            a[k][j] = c.conjugate() * u + s.conjugate() * w
            a[k + 1][j] = -s * u + c * w
    for k, (c, s) in zip(range(lo, hi), rotations):
        for i in range(lo, k + 2):
            u, w = a[i][k], a[i][k + 1]
            a[i][k] = u * c + w * s
            a[i][k + 1] = -u * s.conjugate() + w * c.conjugate()
    for i in range(lo, hi + 1):
        a[i][i] += mu


def _charpoly(m: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients by Faddeev-LeVerrier."""
    n = m.shape[0]
    coeffs = [1.0 + 0j]
    mk = np.zeros_like(m)
    for k in range(1, n + 1):
        mk = m @ mk + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(m @ mk) / k)
    return np.array(coeffs)


def eigenvalues_4x4(m, max_iter: int = MAX_QR_ITERATIONS, tol: float = DEFLATION_TOL):
    """Eigenvalues of a small dense complex matrix by shifted QR iteration.

    Reduces to Hessenberg form, then applies Wilkinson-shifted QR steps with
    deflation once a subdiagonal falls below ``tol`` relative to its
    diagonal neighbours. Each root is checked against the characteristic
    polynomial; failures raise :class:`NumericError`.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("square matrix required")
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    if scale == 0.0:
        return np.zeros(n, dtype=complex)
    mn = m / scale
    a = [[complex(x) for x in row] for row in mn]
    _hessenberg(a)

    eigs = [0j] * n
    hi = n - 1
    iterations = since_deflation = 0
    while hi >= 0:
        if hi == 0:
            eigs[0] = a[0][0]
            break
        lo = hi
        while lo > 0:
            sub = abs(a[lo][lo - 1])
            if sub <= tol * (abs(a[lo - 1][lo - 1]) + abs(a[lo][lo])) or sub <= 1e-300:
                a[lo][lo - 1] = 0j
                break
            lo -= 1
        if lo == hi:
            eigs[hi] = a[hi][hi]
            hi -= 1
            since_deflation = 0
            continue
        if iterations >= max_iter:
            raise NumericError(f"QR iteration did not converge in {max_iter} steps",
                               residual=abs(a[hi][hi - 1]))
        if since_deflation and since_deflation % 11 == 0:
            # exceptional shift breaks symmetric stagnation cycles
            mu = a[hi][hi] + 0.75 * abs(a[hi][hi - 1])
        else:
            mu = _wilkinson(a, lo, hi)
        _qr_step(a, lo, hi, mu)
        iterations += 1
        since_deflation += 1

    eigs = np.array(eigs)
    coeffs = _charpoly(mn)
    residual = float(np.max(np.abs(np.polyval(coeffs, eigs))))
    if residual > RESIDUAL_TOL:
        raise NumericError("eigenvalues fail the characteristic-polynomial check", residual)
    return eigs * scale


# ---------------------------------------------------------------------------
# concurrence


def _roots_svd(rho) -> np.ndarray:
    herm = 0.5 * (rho + rho.conj().T)
    d, v = np.linalg.eigh(herm)
    if d[0] < -CLAMP_TOL:
        log.warning("clamping negative eigenvalue %.3e", d[0])
    y = v * np.sqrt(np.clip(d, 0.0, None))
    return np.linalg.svd(y.T @ SY_SY @ y, compute_uv=False)


def _roots_eig(rho) -> np.ndarray:
    lam = eigenvalues_4x4(rho @ spin_flip_tilde(rho))
    scale = max(1.0, float(np.max(np.abs(lam))))
    worst = max(float(np.max(np.abs(lam.imag))), float(-np.min(lam.real)), 0.0)
    if worst > CLAMP_TOL * scale:
        log.warning("clamping spin-flip spectrum defect of %.3e", worst)
    return np.sqrt(np.sort(np.clip(lam.real, 0.0, None))[::-1])


def concurrence(rho, method: str = "svd") -> float:
    """max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)), l_i the ordered
    eigenvalues of rho (sy x sy) rho* (sy x sy).

    ``method="svd"`` (default) or ``"eig"`` for the QR spectrum route.
    """
    rho = np.asarray(rho, dtype=complex)
    if method == "svd":
        root = _roots_svd(rho)
    elif method == "eig":
        root = _roots_eig(rho)
    else:
        raise ValueError(f"unknown concurrence method {method!r}")
    return float(min(1.0, max(0.0, root[0] - root[1] - root[2] - root[3])))


def is_xstate(rho, tol: float = 1e-12) -> bool:
    rho = np.asarray(rho)
    return all(abs(rho[..., i, j]).max() <= tol and abs(rho[..., j, i]).max() <= tol
               for i, j in X_OFF)


def concurrence_xstate(rho) -> float:
    """2 max(0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44))."""
    rho = np.asarray(rho, dtype=complex)
    if not is_xstate(rho):
        raise StateError("state is not X-shaped")
    d = rho.diagonal().real.clip(0.0, None)
    value = 2 * max(0.0, abs(rho[0, 3]) - math.sqrt(d[1] * d[2]),
                    abs(rho[1, 2]) - math.sqrt(d[0] * d[3]))
    return float(min(1.0, value))


def concurrence_series(rhos, xstate: bool | None = None) -> np.ndarray:
    """Concurrence of each state in a (T, 4, 4) stack.

    ``xstate=None`` picks the closed form when every state is X-shaped.
    """
    rhos = np.asarray(rhos, dtype=complex)
    if xstate is None:
        xstate = is_xstate(rhos)
    if xstate:
        d = rhos.diagonal(axis1=-2, axis2=-1).real.clip(0.0, None)
        a = np.abs(rhos[:, 0, 3]) - np.sqrt(d[:, 1] * d[:, 2])
        b = np.abs(rhos[:, 1, 2]) - np.sqrt(d[:, 0] * d[:, 3])
        return np.minimum(1.0, 2 * np.maximum(0.0, np.maximum(a, b)))
    return np.array([concurrence(r) for r in rhos])
