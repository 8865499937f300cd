"""Matrices over Q[t, t^-1]: determinants and Smith normal form."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polynomial import LaurentPoly, Poly

__all__ = ["PolyMatrix", "SNFResult", "det_laurent", "smith_normal_form"]

_ONE = Poly((1,))
_ZERO = Poly()


class PolyMatrix:
    """Rectangular grid of :class:`LaurentPoly` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        grid = tuple(tuple(LaurentPoly.of(x) for x in row) for row in entries)
        if grid and any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("ragged matrix")
        self.entries = grid
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else 0

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_integers(cls, rows) -> "PolyMatrix":
        return cls([[Fraction(x) for x in r] for r in rows])

    @classmethod
    def presentation(cls, seifert_rows) -> "PolyMatrix":
        """``V^T - t V`` for an integer matrix V."""
        n = len(seifert_rows)
        return cls(
            [[Poly((seifert_rows[j][i], -seifert_rows[i][j])) for j in range(n)] for i in range(n)]
        )

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        zero = LaurentPoly()
        ocols = [[other.entries[k][j] for k in range(other.rows)] for j in range(other.cols)]
        for row in self.entries:
            out_row = []
            for col in ocols:
                acc = zero
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        if not self.entries:
            out = []
        elif other.cols == 0:
            out = [[] for _ in range(self.rows)]
        return PolyMatrix(out)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def conj(self) -> "PolyMatrix":
        return PolyMatrix([[x.conj() for x in row] for row in self.entries])

    def is_diagonal(self) -> bool:
        return all(
            not self.entries[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def row_shifts(self) -> list[int]:
        """Per-row exponent k such that t^k * row lies in Q[t] with some entry t-free."""
        out = []
        for row in self.entries:
            lows = [x.low for x in row if x]
            out.append(-min(lows) if lows else 0)
        return out

    def to_polys(self) -> list[list[Poly]]:
        """Entries as elements of Q[t]; fails on negative exponents."""
        return [[x.to_poly() for x in row] for row in self.entries]

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"


# -- determinants --------------------------------------------------------------

def _cofactor_det(a: list[list[Poly]]) -> Poly:
    n = len(a)
    if n == 0:
        return _ONE
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = _ZERO
    for j in range(n):
        if a[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * _cofactor_det(minor)
        total = total - term if j % 2 else total + term
    return total


def _bareiss_det(a: list[list[Poly]]) -> Poly:
    a = [list(r) for r in a]
    n = len(a)
    if n == 0:
        return _ONE
    sign, prev = 1, _ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return _ZERO
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * akk - aik * a[k][j]
                a[i][j] = num.exquo(prev) if prev != _ONE else num
        prev = akk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_laurent(m: PolyMatrix, method: str = "auto") -> LaurentPoly:
    """Exact determinant of a square Laurent matrix.

    Rows are first cleared into Q[t] by unit powers of t.  ``method`` is
    ``"cofactor"``, ``"bareiss"`` or ``"auto"`` (cofactor up to 4x4).
    """
    if m.rows != m.cols:
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    shifts = m.row_shifts()
    a = [[x.shift(s).to_poly() for x in row] for row, s in zip(m.entries, shifts)]
    if method == "auto":
        method = "cofactor" if m.rows <= 4 else "bareiss"
    if method == "cofactor":
        d = _cofactor_det(a)
    elif method == "bareiss":
        d = _bareiss_det(a)
    else:
        raise ValueError(f"unknown method {method!r}")
    return LaurentPoly(d, -sum(shifts))


# -- Smith normal form -----------------------------------------------------------

@dataclass(frozen=True)
class SNFResult:
    """``left @ M @ right == diag(diagonal)`` with unit-determinant transforms."""

    diagonal: tuple[Poly, ...]
    left_transform: PolyMatrix
    right_transform: PolyMatrix
    left_inverse: PolyMatrix
    right_inverse: PolyMatrix

    def diagonal_matrix(self, rows: int, cols: int) -> PolyMatrix:
        return PolyMatrix(
            [[self.diagonal[i] if i == j and i < len(self.diagonal) else 0 for j in range(cols)]
             for i in range(rows)]
        )

    def nontrivial_factors(self) -> tuple[Poly, ...]:
        return tuple(d for d in self.diagonal if d.degree != 0)


class _Elim:
    """Mutable working state for the Smith reduction over Q[t]."""

    def __init__(self, a):
        self.a = a
        m = len(a)
        n = len(a[0]) if a else 0
        self.m, self.n = m, n
        self.L = [[_ONE if i == j else _ZERO for j in range(m)] for i in range(m)]
        self.Linv = [[_ONE if i == j else _ZERO for j in range(m)] for i in range(m)]
        self.R = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
        self.Rinv = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]

    @staticmethod
    def _axpy(dst, src, q):
        for k, s in enumerate(src):
            if s:
                dst[k] = dst[k] + q * s

    def row_add(self, i, j, q):
        # row_i += q * row_j
        self._axpy(self.a[i], self.a[j], q)
        self._axpy(self.L[i], self.L[j], q)
        for row in self.Linv:
            if row[i]:
                row[j] = row[j] - q * row[i]

    def col_add(self, j, i, q):
        # col_j += q * col_i
        for row in self.a:
            if row[i]:
                row[j] = row[j] + q * row[i]
        for row in self.R:
            if row[i]:
                row[j] = row[j] + q * row[i]
        self._axpy(self.Rinv[i], self.Rinv[j], -q)

    def row_swap(self, i, j):
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.L[i], self.L[j] = self.L[j], self.L[i]
        for row in self.Linv:
            row[i], row[j] = row[j], row[i]

    def col_swap(self, i, j):
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        for row in self.R:
            row[i], row[j] = row[j], row[i]
        self.Rinv[i], self.Rinv[j] = self.Rinv[j], self.Rinv[i]

    def row_scale(self, i, c: Fraction):
        self.a[i] = [x * c for x in self.a[i]]
        self.L[i] = [x * c for x in self.L[i]]
        inv = 1 / c
        for row in self.Linv:
            row[i] = row[i] * inv


def _pick_pivot(a, k):
    best = None
    for i in range(k, len(a)):
        row = a[i]
        for j in range(k, len(row)):
            x = row[j]
            if x and (best is None or x.degree < best[0]):
                best = (x.degree, i, j)
                if best[0] == 0:
                    return best
    return best


def smith_normal_form(m: PolyMatrix) -> SNFResult:
    """Smith normal form over Q[t] of a Laurent matrix.

    Rows are first multiplied by unit powers of t so that every entry is a
    polynomial; that scaling is folded into the left transform.  Pivots are
    chosen by minimal degree, ties broken by lowest row then column.
    Invariant factors are monic and form a divisibility chain.
    """
    shifts = m.row_shifts()
    a = [[x.shift(s).to_poly() for x in row] for row, s in zip(m.entries, shifts)]
    st = _Elim(a)
    rows, cols = st.m, st.n
    diag = []
    for k in range(min(rows, cols)):
        while True:
            piv = _pick_pivot(st.a, k)
            if piv is None:
                break
            _, pi, pj = piv
            st.row_swap(k, pi)
            st.col_swap(k, pj)
            p = st.a[k][k]
            clean = True
            for i in range(k + 1, rows):
                x = st.a[i][k]
                if x:
                    q, r = divmod(x, p)
                    if q:
                        st.row_add(i, k, -q)
                    if r:
                        clean = False
            for j in range(k + 1, cols):
                x = st.a[k][j]
                if x:
                    q, r = divmod(x, p)
                    if q:
                        st.col_add(j, k, -q)
                    if r:
                        clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, rows) for j in range(k + 1, cols)
                 if st.a[i][j] and not (st.a[i][j] % p).is_zero()),
                None,
            )
            if bad is not None:
                st.row_add(k, bad, _ONE)
                continue
            break
        if piv is None:
            break
        lead = st.a[k][k].lead
        if lead != 1:
            st.row_scale(k, 1 / lead)
        diag.append(st.a[k][k])
    diag += [_ZERO] * (min(rows, cols) - len(diag))

    unit = [LaurentPoly.monomial(s) for s in shifts]
    left = PolyMatrix([[LaurentPoly(x) * unit[j] for j, x in enumerate(row)] for row in st.L])
    left_inv = PolyMatrix(
        [[LaurentPoly(x).shift(-shifts[i]) for x in row] for i, row in enumerate(st.Linv)]
    )
    return SNFResult(
        diagonal=tuple(diag),
        left_transform=left,
        right_transform=PolyMatrix(st.R),
        left_inverse=left_inv,
        right_inverse=PolyMatrix(st.Rinv),
    )
