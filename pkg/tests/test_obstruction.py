import json
from fractions import Fraction

import pytest

from concordkit.covers import casson_gordon_vanishing_certificate
from concordkit.errors import HypothesisError, UnsupportedModuleError
from concordkit.obstruction import (
    INCONCLUSIVE,
    NOT_ONE_POINT_FIVE,
    ONE_SOLVABLE,
    CompanionKnot,
    GraftedKnot,
    combination_obstruction,
    graft,
    not_one_point_five_certificate,
    replay_certificate,
    solvable_one_certificate,
)
from concordkit.polynomial import LaurentPoly, cyclotomic
from concordkit.seifert import (
    GRANNY,
    TREFOIL,
    UNKNOT,
    alexander_polynomial,
    arf_invariant,
    build_paper_matrix,
)
from concordkit.covers import cover_homology_order
from concordkit.signature import CirclePoint, RhoValue, levine_tristram

PHI30 = LaurentPoly(cyclotomic(30), 0)


@pytest.fixture(scope="module")
def granny():
    return CompanionKnot.from_seifert(GRANNY)


def synthetic(rho, label="J"):
    return CompanionKnot(rho if isinstance(rho, RhoValue) else RhoValue.of(rho), 0, label)


def test_companion_validation():
    assert CompanionKnot.from_seifert(GRANNY).rho.exact == Fraction(-8, 3)
    with pytest.raises(ValueError):
        CompanionKnot(RhoValue.of(1), 0, "bad", GRANNY)
    with pytest.raises(ValueError):
        CompanionKnot(RhoValue.of(Fraction(-4, 3)), 0, "bad", TREFOIL)
    with pytest.raises(ValueError):
        CompanionKnot(RhoValue.of(1), 2)


def test_graft_invariance(paper_c, granny):
    g = graft(paper_c, granny)
    assert g.seifert == paper_c
    assert g.alexander_polynomial() == alexander_polynomial(paper_c)
    assert g.alexander_polynomial().poly == cyclotomic(30) ** 2
    assert g.arf() == arf_invariant(paper_c) == 0
    for u in (Fraction(1, 7), Fraction(1, 2), Fraction(2, 5)):
        w = CirclePoint(u)
        assert g.levine_tristram(w) == levine_tristram(paper_c, w)
    for k in (2, 3, 5, 30):
        assert g.cover_order(k) == cover_homology_order(paper_c, k)
    assert casson_gordon_vanishing_certificate(g.seifert, 128).issued


def test_graft_trivial_module(granny):
    g = graft(UNKNOT, granny)
    assert g.eta.is_zero()
    assert g.alexander_polynomial().poly.degree == 0


def test_graft_rejects_foreign_eta(paper_c, granny):
    other = graft(build_paper_matrix("B"), granny, [LaurentPoly.of(1)] + [LaurentPoly.of(0)] * 15)
    with pytest.raises(ValueError):
        graft(paper_c, granny, other.eta)


def test_one_solvable_examples(paper_c, granny):
    cert = solvable_one_certificate(graft(paper_c, granny))
    assert cert.kind == ONE_SOLVABLE and cert.failed_check is None
    bad = solvable_one_certificate(graft(paper_c, CompanionKnot.from_seifert(TREFOIL)))
    assert bad.kind == INCONCLUSIVE and bad.failed_check == "companion_arf"
    assert solvable_one_certificate(graft(UNKNOT, granny)).kind == ONE_SOLVABLE


def test_not_one_point_five_examples(paper_c, c_module, granny):
    cert = not_one_point_five_certificate(graft(paper_c, granny))
    assert cert.kind == NOT_ONE_POINT_FIVE
    w = cert.witnesses
    assert w["pairing_nonzero"] and w["one_solvable"] == ONE_SOLVABLE

    eta0 = PHI30 * c_module.generator
    weak = not_one_point_five_certificate(graft(paper_c, granny, eta0))
    assert weak.kind == INCONCLUSIVE and weak.failed_check == "pairing_eta_p0"

    with pytest.raises(HypothesisError):
        not_one_point_five_certificate(graft(build_paper_matrix("A"), granny))
    with pytest.raises(UnsupportedModuleError):
        not_one_point_five_certificate(graft(build_paper_matrix("B"), granny))


def test_not_one_point_five_needs_nonzero_rho(paper_c):
    cert = not_one_point_five_certificate(graft(paper_c, synthetic(0)))
    assert cert.kind == INCONCLUSIVE and cert.failed_check == "companion_rho"


def test_monotone_in_evidence(paper_c):
    # widening the interval around -8/3 only ever degrades to Inconclusive
    kinds = []
    for radius in (0.0, 0.5, 1.0, 2.0, 2.6, 2.7, 5.0):
        rho = RhoValue.interval(-8 / 3, radius)
        kinds.append(not_one_point_five_certificate(graft(paper_c, synthetic(rho))).kind)
    assert set(kinds) <= {NOT_ONE_POINT_FIVE, INCONCLUSIVE}
    first_bad = kinds.index(INCONCLUSIVE)
    assert all(k == NOT_ONE_POINT_FIVE for k in kinds[:first_bad])
    assert all(k == INCONCLUSIVE for k in kinds[first_bad:])
    assert first_bad == 5


def test_combination_same_sign(paper_c, granny):
    g = graft(paper_c, granny)
    cert = combination_obstruction([(g, 1), (g, 1), (g, 1)])
    assert cert.kind == NOT_ONE_POINT_FIVE and cert.witnesses["method"] == "same_sign"


def test_combination_examples(paper_c):
    plus, minus = graft(paper_c, synthetic(1)), graft(paper_c, synthetic(-1))
    cert = combination_obstruction([(plus, 1), (minus, 1)], coefficient_bound=5)
    assert cert.kind == INCONCLUSIVE and cert.failed_check == "vanishing_combination"
    assert cert.witnesses["vanishing_coefficients"] == [1]

    a, b = graft(paper_c, synthetic(Fraction(-4, 3))), graft(paper_c, synthetic(Fraction(-8, 3)))
    assert combination_obstruction([(a, 1), (b, 1)]).kind == NOT_ONE_POINT_FIVE
    assert combination_obstruction([(b, 1), (a, 2)]).kind == NOT_ONE_POINT_FIVE


def test_combination_bounded_search(paper_c):
    lead = graft(paper_c, synthetic(3))
    minus2, plus5 = graft(paper_c, synthetic(-2)), graft(paper_c, synthetic(5))
    hit = combination_obstruction([(lead, 1), (minus2, 1), (plus5, 1)], coefficient_bound=10)
    assert hit.kind == INCONCLUSIVE and hit.witnesses["vanishing_coefficients"] == [4, 1]
    # 3 - 2c = 0 has no integer solution
    clean = combination_obstruction([(lead, 1), (minus2, 1)], coefficient_bound=1000)
    assert clean.kind == NOT_ONE_POINT_FIVE and clean.witnesses["method"] == "bounded_search"


def test_combination_errors(paper_c, granny):
    with pytest.raises(ValueError):
        combination_obstruction([])
    g = graft(paper_c, granny)
    with pytest.raises(ValueError):
        combination_obstruction([(g, 0)])
    with pytest.raises(ValueError):
        combination_obstruction([(g, 1), (graft(build_paper_matrix("A"), granny), 1)])


def test_combination_term_without_character(paper_c, c_module, granny):
    weak = graft(paper_c, granny, PHI30 * c_module.generator)
    cert = combination_obstruction([(graft(paper_c, granny), 1), (weak, 1)])
    assert cert.kind == INCONCLUSIVE and cert.failed_check == "term_character"


def test_grafted_knot_json_round_trip(paper_c, c_module, granny):
    g = graft(paper_c, granny, (LaurentPoly.monomial(1) + LaurentPoly.of(1)) * c_module.generator)
    back = GraftedKnot.from_json(json.loads(json.dumps(g.to_json())))
    assert back.eta == g.eta and back.companion == g.companion and back.base == g.base


def test_certificate_replay(paper_c, granny):
    g = graft(paper_c, granny)
    certs = [
        solvable_one_certificate(g),
        not_one_point_five_certificate(g),
        combination_obstruction([(g, 1), (g, 2)]),
        solvable_one_certificate(graft(paper_c, CompanionKnot.from_seifert(TREFOIL))),
    ]
    for cert in certs:
        text = cert.canonical_json()
        same, fresh = replay_certificate(text)
        assert same and fresh.canonical_json() == text
    tampered = json.loads(certs[1].canonical_json())
    tampered["kind"] = INCONCLUSIVE
    assert not replay_certificate(tampered)[0]
    with pytest.raises(ValueError):
        replay_certificate({"procedure": "nope", "inputs": {}})
