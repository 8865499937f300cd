"""Dense exact linear algebra over Q and Z on plain lists of lists."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = [
    "rational_det",
    "integer_det",
    "rref",
    "nullspace",
    "rank",
    "symmetric_signature",
    "integer_elementary_divisors",
]


def _copy_frac(rows):
    return [[Fraction(x) for x in r] for r in rows]


def rational_det(rows) -> Fraction:
    """Determinant by Gaussian elimination with exact rationals."""
    a = _copy_frac(rows)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        piv = a[k][k]
        det *= piv
        rk = a[k]
        for i in range(k + 1, n):
            f = a[i][k]
            if f:
                f /= piv
                ri = a[i]
                for j in range(k + 1, n):
                    if rk[j]:
                        ri[j] -= f * rk[j]
    return det


def integer_det(rows) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rref(rows):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    a = _copy_frac(rows)
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : rows @ x = 0}."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, piv):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def symmetric_signature(rows) -> int:
    """Signature of a real symmetric rational matrix by exact congruence.

    Diagonal pivots are used when available; otherwise a 2x2 block
    ``[[0, b], [b, 0]]`` is split off, which contributes 0 to the signature.
    """
    a = _copy_frac(rows)
    n = len(a)
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    sig = 0
    idx = list(range(n))
    while idx:
        k = next((i for i in idx if a[i][i]), None)
        if k is not None:
            piv = a[k][k]
            sig += 1 if piv > 0 else -1
            idx.remove(k)
            rk = a[k]
            for i in idx:
                f = a[i][k]
                if f:
                    f /= piv
                    ri = a[i]
                    for j in idx:
                        if rk[j]:
                            ri[j] -= f * rk[j]
            continue
        pair = next(((i, j) for i in idx for j in idx if j > i and a[i][j]), None)
        if pair is None:
            break
        i0, j0 = pair
        b = a[i0][j0]
        idx.remove(i0)
        idx.remove(j0)
        # Schur complement of [[0, b], [b, 0]]: A - (u v^T + v u^T)/b
        u = {i: a[i][i0] for i in idx}
        v = {i: a[i][j0] for i in idx}
        for i in idx:
            ui, vi = u[i], v[i]
            if not ui and not vi:
                continue
            ri = a[i]
            for j in idx:
                delta = ui * v[j] + vi * u[j]
                if delta:
                    ri[j] -= delta / b
    return sig


def integer_elementary_divisors(rows) -> list[int]:
    """Nonzero elementary divisors of an integer matrix (Smith form over Z)."""
    a = [list(map(int, r)) for r in rows]
    if not a or not a[0]:
        return []
    m, n = len(a), len(a[0])
    out = []
    for k in range(min(m, n)):
        while True:
            cells = [(abs(a[i][j]), i, j) for i in range(k, m) for j in range(k, n) if a[i][j]]
            if not cells:
                return out
            _, pi, pj = min(cells)
            a[k], a[pi] = a[pi], a[k]
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            p = a[k][k]
            clean = True
            for i in range(k + 1, m):
                q = a[i][k] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[k])]
                if a[i][k]:
                    clean = False
            for j in range(k + 1, n):
                q = a[k][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[k]
                if a[k][j]:
                    clean = False
            if not clean:
                continue
            bad = next((i for i in range(k + 1, m) for j in range(k + 1, n) if a[i][j] % p), None)
            if bad is not None:
                a[k] = [x + y for x, y in zip(a[k], a[bad])]
                continue
            out.append(abs(p))
            break
    return out
