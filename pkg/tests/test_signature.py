import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from concordkit import _kernels
from concordkit.errors import ArcResolutionError
from concordkit.sampling import sampled_jump_count, sampled_rho
from concordkit.seifert import (
    GRANNY,
    TREFOIL,
    UNKNOT,
    build_paper_matrix,
    connected_sum,
    reverse_mirror,
    validate_seifert,
)
from concordkit.signature import CirclePoint, RhoValue, levine_tristram, rho_zero, signature_arcs

from conftest import random_seifert, seifert_matrices


def _eig_signature(s, point):
    """Floating oracle: eigenvalue signs of the Hermitian matrix."""
    v = s.array()
    w = point.omega()
    h = (1 - w) * v + (1 - np.conj(w)) * v.T
    ev = np.linalg.eigvalsh(h)
    return int((ev > 1e-9).sum() - (ev < -1e-9).sum())


def test_circle_point():
    assert CirclePoint(1).omega() == pytest.approx(1j)
    assert CirclePoint.at_minus_one().omega() == -1
    assert CirclePoint.parse("inf").minus_one
    assert CirclePoint(Fraction(-1)).turn() == pytest.approx(0.75)
    with pytest.raises(ValueError):
        CirclePoint(0)


def test_levine_tristram_examples():
    assert levine_tristram(UNKNOT, CirclePoint(3)) == 0
    assert levine_tristram(TREFOIL, CirclePoint.at_minus_one()) == -2
    assert levine_tristram(TREFOIL, CirclePoint(Fraction(1, 10))) == 0
    with pytest.raises(TypeError):
        levine_tristram(TREFOIL, -1)


@settings(max_examples=40, deadline=None)
@given(seifert_matrices(max_genus=3, min_genus=1))
def test_levine_tristram_matches_eigenvalues(s):
    rng = random.Random(s.size)
    for u in (Fraction(rng.randint(1, 30), rng.randint(1, 30)), Fraction(-7, 3)):
        pt = CirclePoint(u)
        if abs(np.linalg.det((1 - pt.omega()) * s.array() + (1 - np.conj(pt.omega())) * s.array().T)) < 1e-6:
            continue
        assert levine_tristram(s, pt) == _eig_signature(s, pt)


@settings(max_examples=40, deadline=None)
@given(seifert_matrices(max_genus=3))
def test_signature_antisymmetric_under_reverse_mirror(s):
    for pt in (CirclePoint(Fraction(2, 3)), CirclePoint(-5), CirclePoint.at_minus_one()):
        assert levine_tristram(reverse_mirror(s), pt) == -levine_tristram(s, pt)


def test_signature_constant_on_arcs():
    rng = random.Random(3)
    for _ in range(8):
        s = random_seifert(2, rng)
        try:
            arcs = signature_arcs(s)
        except ArcResolutionError:
            continue
        for arc in arcs:
            width = arc.end - arc.start
            for frac in (0.3, 0.7):
                turn = arc.start + frac * width
                u = Fraction(np.tan(np.pi * turn)).limit_denominator(10**9)
                if u == 0:
                    continue
                pt = CirclePoint(u)
                if arc.start < pt.turn() < arc.end:
                    assert levine_tristram(s, pt) == arc.signature


def test_rho_examples():
    assert rho_zero(UNKNOT) == RhoValue.of(0)
    assert rho_zero(TREFOIL).exact == Fraction(-4, 3)
    assert rho_zero(GRANNY).exact == Fraction(-8, 3)
    assert rho_zero(build_paper_matrix("C")).exact == 0
    assert rho_zero(build_paper_matrix("B")).exact == 0


def test_rho_non_cyclotomic_gives_interval():
    s = validate_seifert([[1, 1], [0, 2]])
    rho = rho_zero(s)
    assert not rho.is_exact
    assert rho.radius < 1e-9
    assert abs(sampled_rho(s, 200_000) - rho.midpoint) < 1e-4


@settings(max_examples=15, deadline=None)
@given(seifert_matrices(max_genus=1, min_genus=1), seifert_matrices(max_genus=1, min_genus=1))
def test_rho_additive_and_odd(s1, s2):
    try:
        r1, r2 = rho_zero(s1), rho_zero(s2)
        r12 = rho_zero(connected_sum(s1, s2))
    except ArcResolutionError:
        return
    total = r1 + r2
    assert total.lo - 1e-9 <= r12.hi and r12.lo <= total.hi + 1e-9
    m = rho_zero(reverse_mirror(s1))
    assert m.lo <= -r1.hi + 1e-9 and -r1.lo <= m.hi + 1e-9


def test_rho_value_intervals():
    r = RhoValue.parse("0.5+-0.1")
    assert r.excludes_zero() and r.sign() == 1
    assert not RhoValue.parse("0.05+-0.1").excludes_zero()
    assert (-r).sign() == -1
    assert RhoValue.from_json(r.to_json()) == r
    assert RhoValue.parse("-8/3").exact == Fraction(-8, 3)


@pytest.mark.parametrize("kernel_name", ["signature_samples_numpy", "signature_samples_numba"])
def test_sampling_oracle_agrees_with_exact_rho(kernel_name):
    kernel = getattr(_kernels, kernel_name)
    if kernel is None:
        pytest.skip("numba not available")
    for s, exact in ((TREFOIL, Fraction(-4, 3)), (GRANNY, Fraction(-8, 3))):
        assert abs(sampled_rho(s, 1_000_000, kernel=kernel) - float(exact)) < 1e-4


def test_kernels_agree_pointwise():
    if _kernels.signature_samples_numba is None:
        pytest.skip("numba not available")
    rng = np.random.default_rng(0)
    turns = rng.uniform(0.01, 0.99, 500)
    for s in (TREFOIL, GRANNY, build_paper_matrix("A")):
        a = _kernels.signature_samples_numpy(s.array(), turns)
        b = _kernels.signature_samples_numba(s.array(), turns)
        assert np.array_equal(a, b)


def test_circle_profile_kernels_and_jump_count():
    assert sampled_jump_count(TREFOIL) == 2
    assert sampled_jump_count(build_paper_matrix("A")) == 8
    if _kernels.circle_profile_numba is not None:
        c = np.array([1.0, -1.0, 1.0])
        t = np.linspace(0.01, 0.99, 50)
        assert np.allclose(_kernels.circle_profile_numba(c, t), _kernels.circle_profile_numpy(c, t))
