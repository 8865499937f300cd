"""Floating-point inner loops for sampling the signature function.

Two interchangeable implementations: a numba ``@njit`` kernel (symmetric
indefinite LDL^T with Bunch-Parlett pivoting on the realified Hermitian
matrix) and a pure numpy path (batched ``eigvalsh``).  The numba kernel is used when numba
imports and ``CONCORDKIT_DISABLE_NUMBA`` is not set to a truthy value.
"""
from __future__ import annotations

import os

import numpy as np

__all__ = [
    "USE_NUMBA",
    "HAVE_NUMBA",
    "signature_samples",
    "signature_samples_numpy",
    "signature_samples_numba",
    "circle_profile",
    "circle_profile_numpy",
    "circle_profile_numba",
]

_DISABLE = os.environ.get("CONCORDKIT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLE

_CHUNK = 1 << 15


def _tolerance(v: np.ndarray) -> float:
    return 1e-9 * max(1.0, float(np.abs(v).sum()))


def signature_samples_numpy(v: np.ndarray, turns: np.ndarray) -> np.ndarray:
    """sigma at omega = exp(2 pi i * turn) for each turn, by batched eigvalsh."""
    v = np.asarray(v, dtype=np.float64)
    turns = np.asarray(turns, dtype=np.float64)
    n = v.shape[0]
    out = np.empty(turns.shape[0], dtype=np.int64)
    if n == 0:
        out[:] = 0
        return out
    tol = _tolerance(v)
    vt = v.T
    for start in range(0, turns.shape[0], _CHUNK):
        w = np.exp(2j * np.pi * turns[start:start + _CHUNK])
        h = (1 - w)[:, None, None] * v + (1 - np.conj(w))[:, None, None] * vt
        ev = np.linalg.eigvalsh(h)
        out[start:start + _CHUNK] = (ev > tol).sum(axis=1) - (ev < -tol).sum(axis=1)
    return out


def circle_profile_numpy(coeffs: np.ndarray, turns: np.ndarray) -> np.ndarray:
    """Real function exp(-i d theta) f(exp(i theta)) for a palindromic f of degree 2d.

    ``coeffs`` is constant term first.  Its sign changes locate the roots
    of f on the unit circle.
    """
    c = np.asarray(coeffs, dtype=np.float64)
    d = (c.shape[0] - 1) // 2
    theta = 2 * np.pi * np.asarray(turns, dtype=np.float64)
    out = np.full(theta.shape, c[d])
    for k in range(1, d + 1):
        out += 2 * c[d + k] * np.cos(k * theta)
    return out


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _inertia(a, m, tol):
        # Bunch-Parlett symmetric pivoting on a (destroyed); returns the signature
        alpha = (1.0 + np.sqrt(17.0)) / 8.0
        sig = 0
        k = 0
        while k < m:
            mu0 = 0.0
            p = k
            for i in range(k, m):
                if abs(a[i, i]) > mu0:
                    mu0 = abs(a[i, i])
                    p = i
            mu1 = 0.0
            q = k
            r = k + 1
            for i in range(k, m):
                for j in range(i + 1, m):
                    if abs(a[i, j]) > mu1:
                        mu1 = abs(a[i, j])
                        q = i
                        r = j
            if mu0 <= tol and mu1 <= tol:
                break
            if mu0 >= alpha * mu1:
                _sym_swap(a, m, k, p)
                d = a[k, k]
                sig += 1 if d > 0 else -1
                for i in range(k + 1, m):
                    f = a[i, k] / d
                    if f != 0.0:
                        for j in range(k + 1, m):
                            a[i, j] -= f * a[k, j]
                k += 1
            else:
                _sym_swap(a, m, k, q)
                if r == k:
                    r = q
                _sym_swap(a, m, k + 1, r)
                e00 = a[k, k]
                e01 = a[k, k + 1]
                e11 = a[k + 1, k + 1]
                det = e00 * e11 - e01 * e01
                # |e00|, |e11| < alpha |e01| forces det < 0: one positive, one negative
                i00 = e11 / det
                i01 = -e01 / det
                i11 = e00 / det
                for i in range(k + 2, m):
                    ci0 = a[i, k]
                    ci1 = a[i, k + 1]
                    w0 = ci0 * i00 + ci1 * i01
                    w1 = ci0 * i01 + ci1 * i11
                    for j in range(k + 2, m):
                        a[i, j] -= w0 * a[k, j] + w1 * a[k + 1, j]
                k += 2
        return sig

    @numba.njit(cache=True)
    def _sym_swap(a, m, i, j):
        if i == j:
            return
        for c in range(m):
            t = a[i, c]
            a[i, c] = a[j, c]
            a[j, c] = t
        for c in range(m):
            t = a[c, i]
            a[c, i] = a[c, j]
            a[c, j] = t

    @numba.njit(cache=True)
    def _signature_kernel(v, turns, tol):
        n = v.shape[0]
        m = turns.shape[0]
        out = np.zeros(m, dtype=np.int64)
        if n == 0:
            return out
        big = np.empty((2 * n, 2 * n), dtype=np.float64)
        for k in range(m):
            th = 2.0 * np.pi * turns[k]
            c = np.cos(th)
            sn = np.sin(th)
            # (1-w)V + (1-conj w)V^T = X + iY, X = (1-c)(V+V^T), Y = sn(V^T - V)
            for i in range(n):
                for j in range(n):
                    x = (1.0 - c) * (v[i, j] + v[j, i])
                    y = sn * (v[j, i] - v[i, j])
                    big[i, j] = x
                    big[n + i, n + j] = x
                    big[i, n + j] = -y
                    big[n + i, j] = y
            out[k] = _inertia(big, 2 * n, tol) // 2
        return out

    @numba.njit(cache=True)
    def _profile_kernel(c, turns):
        d = (c.shape[0] - 1) // 2
        m = turns.shape[0]
        out = np.empty(m, dtype=np.float64)
        for i in range(m):
            th = 2.0 * np.pi * turns[i]
            acc = c[d]
            for k in range(1, d + 1):
                acc += 2.0 * c[d + k] * np.cos(k * th)
            out[i] = acc
        return out

    def signature_samples_numba(v: np.ndarray, turns: np.ndarray) -> np.ndarray:
        v = np.ascontiguousarray(v, dtype=np.float64)
        return _signature_kernel(v, np.ascontiguousarray(turns, dtype=np.float64), _tolerance(v))

    def circle_profile_numba(coeffs: np.ndarray, turns: np.ndarray) -> np.ndarray:
        return _profile_kernel(
            np.ascontiguousarray(coeffs, dtype=np.float64),
            np.ascontiguousarray(turns, dtype=np.float64),
        )

else:  # pragma: no cover
    signature_samples_numba = None
    circle_profile_numba = None


if USE_NUMBA:
    signature_samples = signature_samples_numba
    circle_profile = circle_profile_numba
else:
    signature_samples = signature_samples_numpy
    circle_profile = circle_profile_numpy
