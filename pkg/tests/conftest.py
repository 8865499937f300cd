import random

import pytest
import sympy
from hypothesis import strategies as st

from concordkit.polynomial import LaurentPoly, Poly
from concordkit.seifert import SeifertMatrix, validate_seifert

T = sympy.Symbol("t")


def to_sympy(p):
    """Independent representation of a Poly or LaurentPoly for oracle checks."""
    if isinstance(p, LaurentPoly):
        return sympy.expand(to_sympy(p.poly) * T ** p.low)
    return sum(sympy.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(p.coeffs))


def from_sympy(expr):
    sp = sympy.Poly(expr, T)
    return Poly([sympy.Rational(c) for c in reversed(sp.all_coeffs())])


def random_unimodular(n, rng, steps=None):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        for k in range(n):
            m[i][k] += c * m[j][k]
    return m


def random_seifert(genus, rng, spread=2, label=None) -> SeifertMatrix:
    """P^T (X + E) P with X symmetric, E = diag([[0,1],[0,0]]) blocks, P unimodular."""
    n = 2 * genus
    x = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x[i][j] = x[j][i] = rng.randint(-spread, spread)
    for k in range(genus):
        x[2 * k][2 * k + 1] += 1
    if n:
        p = random_unimodular(n, rng, steps=n)
        pt = [list(r) for r in zip(*p)]
        x = matmul(matmul(pt, x), p)
    return validate_seifert(x, label=label)


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


@st.composite
def seifert_matrices(draw, max_genus=2, min_genus=0):
    genus = draw(st.integers(min_genus, max_genus))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_seifert(genus, random.Random(seed))


small_ints = st.integers(-4, 4)


@st.composite
def polys(draw, max_degree=5, nonzero=False):
    cs = draw(st.lists(small_ints, min_size=1, max_size=max_degree + 1))
    p = Poly(cs)
    if nonzero and p.is_zero():
        p = Poly((draw(st.sampled_from([-2, -1, 1, 3])),))
    return p


@pytest.fixture(scope="session")
def paper_c():
    from concordkit.seifert import build_paper_matrix

    return build_paper_matrix("C")


@pytest.fixture(scope="session")
def c_module(paper_c):
    from concordkit.module import module_from_seifert

    return module_from_seifert(paper_c)
