"""Seifert matrices and their classical invariants."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import gcd
from typing import Sequence

from .errors import SeifertError
from .linalg import integer_det, integer_elementary_divisors
from .polymatrix import PolyMatrix, det_laurent
from .polynomial import LaurentPoly, Poly, strip_cyclotomic

__all__ = [
    "SeifertMatrix",
    "validate_seifert",
    "build_paper_matrix",
    "alexander_polynomial",
    "connected_sum",
    "reverse_mirror",
    "arf_invariant",
    "fox_milnor_check",
    "is_metabolizer",
    "find_metabolizer",
    "UNKNOT",
    "TREFOIL",
    "GRANNY",
]


@dataclass(frozen=True)
class SeifertMatrix:
    """Square integer matrix V of even size with det(V - V^T) = 1.

    Construction validates; use :func:`validate_seifert` for arbitrary input.
    """

    entries: tuple[tuple[int, ...], ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise SeifertError(f"matrix is not square ({n} rows, row lengths {sorted({len(r) for r in rows})})")
        if n % 2:
            raise SeifertError(f"size {n} is odd")
        d = integer_det([[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)])
        if d != 1:
            raise SeifertError(f"det(V - V^T) = {d}, expected 1")

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose_rows(self) -> list[list[int]]:
        n = self.size
        return [[self.entries[j][i] for j in range(n)] for i in range(n)]

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        """The Seifert form x^T V y."""
        return sum(x[i] * v * y[j] for i, row in enumerate(self.entries) for j, v in enumerate(row))

    def presentation(self) -> PolyMatrix:
        return PolyMatrix.presentation(self.entries)

    def array(self):
        import numpy as np

        return np.array(self.entries, dtype=np.float64).reshape(self.size, self.size)

    def __str__(self):
        head = f"SeifertMatrix {self.size}x{self.size}" + (f" [{self.label}]" if self.label else "")
        return head + "".join("\n  " + " ".join(f"{x:3d}" for x in row) for row in self.entries)


def validate_seifert(grid: Sequence[Sequence[int]], label: str | None = None) -> SeifertMatrix:
    return SeifertMatrix(tuple(tuple(r) for r in grid), label=label)


_A = (
    (0, 1, 1, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0),
    (1, 1, 0, 1, -9, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, -9, 1, 0, 1, 26, 0),
    (0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 26, 1, 24, 1),
    (0, 0, 0, 0, 0, 0, 0, 1),
)

# Block at 1-based indices 7..10 of C (replaces the corresponding block of B).
_C_BLOCK = (
    (24, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 1, -2, 0),
    (0, 0, -1, -24),
)


def build_paper_matrix(which: str) -> SeifertMatrix:
    """The seed-knot Seifert matrices: ``"A"`` (8x8), ``"B"`` and ``"C"`` (16x16).

    B is the block matrix with b_ij = a_ij on the first 8x8 block,
    b_ij = -a_(17-i)(17-j) on the second, and 0 elsewhere.  C is B with the
    4x4 block at indices 7..10 replaced.
    """
    which = which.upper()
    if which == "A":
        return SeifertMatrix(_A, label="A")
    b = [[0] * 16 for _ in range(16)]
    for i in range(1, 17):
        for j in range(1, 17):
            if i <= 8 and j <= 8:
                b[i - 1][j - 1] = _A[i - 1][j - 1]
            elif i >= 9 and j >= 9:
                b[i - 1][j - 1] = -_A[17 - i - 1][17 - j - 1]
    if which == "B":
        return validate_seifert(b, label="B")
    if which == "C":
        for i in range(4):
            for j in range(4):
                b[6 + i][6 + j] = _C_BLOCK[i][j]
        return validate_seifert(b, label="C")
    raise ValueError(f"unknown matrix {which!r}; expected A, B or C")


UNKNOT = SeifertMatrix((), label="unknot")
TREFOIL = SeifertMatrix(((-1, 1), (0, -1)), label="trefoil")
GRANNY = SeifertMatrix(
    ((-1, 1, 0, 0), (0, -1, 0, 0), (0, 0, -1, 1), (0, 0, 0, -1)), label="granny"
)


@lru_cache(maxsize=256)
def alexander_polynomial(s: SeifertMatrix) -> LaurentPoly:
    """det(V^T - tV), shifted to low exponent 0 and signed so that Delta(1) = +1."""
    d = det_laurent(s.presentation())
    p = d.poly
    if p(1) < 0:
        p = -p
    return LaurentPoly(p)


def connected_sum(s1: SeifertMatrix, s2: SeifertMatrix) -> SeifertMatrix:
    n1, n2 = s1.size, s2.size
    rows = [list(r) + [0] * n2 for r in s1.entries]
    rows += [[0] * n1 + list(r) for r in s2.entries]
    label = None
    if s1.label and s2.label:
        label = f"{s1.label}#{s2.label}"
    return validate_seifert(rows, label=label)


def reverse_mirror(s: SeifertMatrix) -> SeifertMatrix:
    """-J V J with J the index reversal; represents the concordance inverse."""
    n = s.size
    rows = [[-s.entries[n - 1 - i][n - 1 - j] for j in range(n)] for i in range(n)]
    return validate_seifert(rows, label=f"-{s.label}" if s.label else None)


def arf_invariant(s: SeifertMatrix) -> int:
    """0 iff Delta(-1) = +-1 mod 8."""
    v = abs(alexander_polynomial(s).poly(-1))
    return 0 if v % 8 in (1, 7) else 1


def _int_poly(delta) -> Poly:
    if isinstance(delta, LaurentPoly):
        delta = delta.poly
    delta = Poly(delta.coeffs[delta.trailing_exponent():])
    return delta


def fox_milnor_check(delta: LaurentPoly | Poly) -> bool:
    """Decide whether Delta = +-t^k f(t) f(t^-1) for an integer polynomial f.

    Cyclotomic factors are stripped first (each is self-reciprocal and must
    occur to even multiplicity); the remaining factor is split over Z and
    every self-reciprocal irreducible factor must likewise occur evenly,
    while each other factor must be matched by its reciprocal.
    """
    f = _int_poly(delta)
    if abs(f(1)) != 1:
        raise ValueError(f"Delta(1) = {f(1)}, expected +-1")
    if f.degree == 0:
        return True
    stripped, residual = strip_cyclotomic(f)
    if any(mult % 2 for _, mult in stripped):
        return False
    if residual.degree < 1:
        return True
    factors = _integer_factors(residual)
    for q, mult in factors.items():
        rq = q.reverse().primitive_integer()
        if rq == q:
            if mult % 2:
                return False
        elif factors.get(rq, 0) != mult:
            return False
    return True


def _integer_factors(p: Poly) -> dict[Poly, int]:
    from sympy import Poly as SPoly, symbols

    t = symbols("t")
    ints = p.primitive_integer().to_ints()
    sp = SPoly(list(reversed(ints)), t, domain="ZZ")
    _, facs = sp.factor_list()
    out = {}
    for fac, mult in facs:
        q = Poly(reversed([int(c) for c in fac.all_coeffs()])).primitive_integer()
        out[q] = out.get(q, 0) + mult
    return out


def is_metabolizer(s: SeifertMatrix, basis: Sequence[Sequence[int]]) -> bool:
    """True iff ``basis`` spans a rank-g direct summand on which the Seifert form vanishes."""
    n = s.size
    for v in basis:
        if len(v) != n:
            raise ValueError(f"vector of length {len(v)} in a {n}x{n} Seifert form")
    if len(basis) != n // 2:
        return False
    if not basis:
        return True
    divisors = integer_elementary_divisors(basis)
    if len(divisors) != len(basis) or any(d != 1 for d in divisors):
        return False
    return all(s.form(v, w) == 0 for v in basis for w in basis)


def find_metabolizer(s: SeifertMatrix, bound: int = 3) -> list[list[int]] | None:
    """Exhaustive search for a metabolizer with coefficients in [-bound, bound].

    Only sizes up to 4 are supported; returns None when nothing is found.
    """
    n = s.size
    if n > 4:
        raise ValueError("metabolizer search is limited to size <= 4")
    if n == 0:
        return []
    candidates = []
    for v in product(range(-bound, bound + 1), repeat=n):
        nz = next((x for x in v if x), 0)
        if nz <= 0 or gcd(*v) != 1:
            continue
        if s.form(v, v) == 0:
            candidates.append(list(v))
    if n == 2:
        return [candidates[0]] if candidates else None
    for v, w in combinations(candidates, 2):
        if s.form(v, w) == 0 and s.form(w, v) == 0 and is_metabolizer(s, [v, w]):
            return [v, w]
    return None
