"""Infection (grafting) bookkeeping and solvability certificates.

A grafted knot K(J, eta) has the Seifert form of its base, so every
abelian invariant is read off the base.  The certificates record which
inference rules were applied and embed enough input to re-run them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .covers import CoverOrder, cover_homology_order
from .errors import HypothesisError, UnsupportedModuleError
from .module import (
    AlexModule,
    ModuleElement,
    character_value,
    module_from_seifert,
    orthogonal_complement,
    proper_submodules,
)
from .polynomial import LaurentPoly, Poly
from .seifert import (
    SeifertMatrix,
    alexander_polynomial,
    arf_invariant,
    fox_milnor_check,
    validate_seifert,
)
from .signature import CirclePoint, RhoValue, levine_tristram, rho_zero

__all__ = [
    "CompanionKnot",
    "GraftedKnot",
    "SolvabilityCertificate",
    "graft",
    "solvable_one_certificate",
    "not_one_point_five_certificate",
    "combination_obstruction",
    "replay_certificate",
    "ONE_SOLVABLE",
    "NOT_ONE_POINT_FIVE",
    "INCONCLUSIVE",
]

ONE_SOLVABLE = "OneSolvable"
NOT_ONE_POINT_FIVE = "NotOnePointFiveSolvable"
INCONCLUSIVE = "Inconclusive"

DEFAULT_COEFFICIENT_BOUND = 10**6
# prefixes examined by the bounded search before giving up
SEARCH_WORK_CAP = 2_000_000


@dataclass(frozen=True)
class CompanionKnot:
    """Infecting knot: its integrated signature and Arf invariant.

    ``seifert`` may be omitted for a synthetic companion given only by
    its invariants; when present the invariants are checked against it.
    """

    rho: RhoValue
    arf: int
    label: str = "J"
    seifert: SeifertMatrix | None = None

    def __post_init__(self):
        if self.arf not in (0, 1):
            raise ValueError(f"Arf invariant must be 0 or 1, got {self.arf}")
        if self.seifert is not None:
            if arf_invariant(self.seifert) != self.arf:
                raise ValueError("Arf invariant does not match the Seifert matrix")
            actual = rho_zero(self.seifert)
            if not (self.rho.lo <= actual.hi and actual.lo <= self.rho.hi):
                raise ValueError(f"rho {self.rho} does not match the Seifert matrix ({actual})")

    @classmethod
    def from_seifert(cls, s: SeifertMatrix, label: str | None = None) -> "CompanionKnot":
        return cls(rho_zero(s), arf_invariant(s), label or s.label or "J", s)

    def to_json(self):
        return {
            "label": self.label,
            "arf": self.arf,
            "rho": self.rho.to_json(),
            "seifert": None if self.seifert is None else self.seifert.rows(),
        }

    @classmethod
    def from_json(cls, data) -> "CompanionKnot":
        s = None
        if data.get("seifert") is not None:
            s = validate_seifert(data["seifert"], label=data["label"])
        return cls(RhoValue.from_json(data["rho"]), int(data["arf"]), data["label"], s)


@dataclass(frozen=True)
class GraftedKnot:
    """K(J, eta): base infected by ``companion`` along the class ``eta``."""

    base: SeifertMatrix
    companion: CompanionKnot
    eta: ModuleElement

    @property
    def seifert(self) -> SeifertMatrix:
        return self.base

    @property
    def module(self) -> AlexModule:
        return self.eta.module

    def alexander_polynomial(self) -> LaurentPoly:
        return alexander_polynomial(self.base)

    def arf(self) -> int:
        return arf_invariant(self.base)

    def levine_tristram(self, omega: CirclePoint) -> int:
        return levine_tristram(self.base, omega)

    def cover_order(self, k: int) -> CoverOrder:
        return cover_homology_order(self.base, k)

    def to_json(self):
        return {
            "base": self.base.rows(),
            "base_label": self.base.label,
            "companion": self.companion.to_json(),
            "eta": [_laurent_json(c) for c in self.eta.coordinates],
        }

    @classmethod
    def from_json(cls, data) -> "GraftedKnot":
        base = validate_seifert(data["base"], label=data.get("base_label"))
        comp = CompanionKnot.from_json(data["companion"])
        return graft(base, comp, [_laurent_from_json(c) for c in data["eta"]])


def _laurent_json(p: LaurentPoly):
    return {"low": p.low, "coeffs": [str(c) for c in p.poly.coeffs]}


def _laurent_from_json(d) -> LaurentPoly:
    return LaurentPoly(Poly([Fraction(c) for c in d["coeffs"]]), int(d["low"]))


def _poly_json(p: Poly):
    return [str(c) for c in p.coeffs]


def graft(base: SeifertMatrix, companion: CompanionKnot, eta=None) -> GraftedKnot:
    """Infect ``base`` by ``companion`` along ``eta``.

    ``eta`` is an element of the base module, a coordinate list in the
    presentation basis, or None for the module generator (zero for the
    trivial module).
    """
    m = module_from_seifert(base)
    if eta is None:
        eta = m.zero() if m.is_trivial() else m.generator
    elif not isinstance(eta, ModuleElement):
        eta = m.element(eta)
    elif eta.module is not m:
        raise ValueError("eta is not an element of the base's module")
    return GraftedKnot(base, companion, eta)


@dataclass(frozen=True)
class SolvabilityCertificate:
    kind: str
    procedure: str
    witnesses: dict
    narrative: tuple[str, ...]
    inputs: dict
    failed_check: str | None = None

    @property
    def issued(self) -> bool:
        return self.kind != INCONCLUSIVE

    def to_json(self):
        return {
            "schema": "concordkit.certificate/1",
            "kind": self.kind,
            "procedure": self.procedure,
            "failed_check": self.failed_check,
            "witnesses": self.witnesses,
            "narrative": list(self.narrative),
            "inputs": self.inputs,
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)

    def __str__(self):
        head = f"{self.kind} ({self.procedure})"
        if self.failed_check:
            head += f", failed check: {self.failed_check}"
        return head + "".join(f"\n  - {line}" for line in self.narrative)


def solvable_one_certificate(g: GraftedKnot) -> SolvabilityCertificate:
    """(1)-solvability of K(J, eta) from Arf(J) = 0 and the base passing the algebraic slice gates.

    The base gates are the Fox-Milnor condition on its Alexander
    polynomial and sigma(-1) = 0.
    """
    delta = alexander_polynomial(g.base)
    fm = fox_milnor_check(delta)
    sig = levine_tristram(g.base, CirclePoint.at_minus_one())
    witnesses = {
        "companion_arf": g.companion.arf,
        "base_fox_milnor": fm,
        "base_signature_minus_one": sig,
        "base_alexander": _poly_json(delta.poly),
    }
    narrative = []
    failed = None
    if g.companion.arf != 0:
        failed = "companion_arf"
        narrative.append(f"companion {g.companion.label} has Arf invariant 1: it is not (0)-solvable")
    else:
        narrative.append(f"companion {g.companion.label} has Arf invariant 0, hence is (0)-solvable")
    if not fm:
        failed = failed or "base_fox_milnor"
        narrative.append("base Alexander polynomial is not of the form f(t)f(1/t)")
    else:
        narrative.append("base Alexander polynomial factors as f(t)f(1/t)")
    if sig != 0:
        failed = failed or "base_signature_minus_one"
        narrative.append(f"base signature at -1 is {sig}, not 0")
    else:
        narrative.append("base signature at -1 vanishes")
    if failed is None:
        narrative.append(
            "eta lies in the first derived subgroup and the companion is (0)-solvable, "
            "so infection of the algebraically slice base along eta yields a (1)-solvable knot"
        )
    return SolvabilityCertificate(
        ONE_SOLVABLE if failed is None else INCONCLUSIVE,
        "one_solvable",
        witnesses,
        tuple(narrative),
        g.to_json(),
        failed,
    )


def _unique_submodule(m: AlexModule):
    subs = proper_submodules(m)
    if len(subs) != 1:
        raise HypothesisError(
            f"module {m} has {len(subs)} proper nonzero submodules; exactly one is required"
        )
    return subs[0]


def not_one_point_five_certificate(g: GraftedKnot) -> SolvabilityCertificate:
    """Non-(1.5)-solvability of K(J, eta) for a base module cyclic of order p^2.

    Requires (a) a unique proper submodule P0 = (p0), (b) Bl(eta, p0) != 0,
    so the character attached to p0 is nontrivial on eta, and (c) rho(J)
    certified nonzero.  The base must first pass :func:`solvable_one_certificate`.
    Raises :class:`UnsupportedModuleError` or :class:`HypothesisError` when
    the base module is outside the supported class.
    """
    m = g.module
    sub = _unique_submodule(m)
    p0 = sub.generators[0]
    _, self_annihilating = orthogonal_complement(m, sub)
    prereq = solvable_one_certificate(g)
    value, nontrivial = character_value(g.base, g.eta, p0)
    rho = g.companion.rho
    witnesses = {
        "one_solvable": prereq.kind,
        "submodule_order": _poly_json(sub.order),
        "submodule_generator": [_laurent_json(c) for c in p0.coordinates],
        "submodule_self_annihilating": self_annihilating,
        "pairing_eta_p0": value.to_json(),
        "pairing_nonzero": nontrivial,
        "companion_rho": rho.to_json(),
        "rho_excludes_zero": rho.excludes_zero(),
    }
    narrative = [
        f"the base module has the unique proper submodule P0 = ({sub.order}) g",
    ]
    failed = None
    if self_annihilating:
        narrative.append("P0 equals its orthogonal complement, so it is the kernel for every (1)-solution")
    else:
        failed = "submodule_self_annihilating"
        narrative.append("P0 is not self-annihilating")
    if prereq.kind != ONE_SOLVABLE:
        failed = f"one_solvable:{prereq.failed_check}"
        narrative.append("the knot is not certified (1)-solvable")
    if nontrivial:
        narrative.append(f"Bl(eta, p0) = {value} is nonzero, so the character from p0 is nontrivial on eta")
    else:
        failed = failed or "pairing_eta_p0"
        narrative.append("Bl(eta, p0) = 0: no coefficient system from P0 sees eta")
    if rho.excludes_zero():
        narrative.append(
            f"rho of the companion is {rho}, nonzero; it equals the rho-invariant of the zero-surgery "
            "for the character from p0, so no (1.5)-solution exists"
        )
    else:
        failed = failed or "companion_rho"
        narrative.append(f"rho of the companion, {rho}, is not certified nonzero")
    return SolvabilityCertificate(
        NOT_ONE_POINT_FIVE if failed is None else INCONCLUSIVE,
        "not_one_point_five",
        witnesses,
        tuple(narrative),
        g.to_json(),
        failed,
    )


def _interval(r: RhoValue) -> tuple[Fraction, Fraction]:
    return r.lo, r.hi


def _last_coefficient(lo: Fraction, hi: Fraction, r_lo: Fraction, r_hi: Fraction, bound: int) -> int | None:
    """Smallest integer c in [0, bound] with lo + c*r_lo <= 0 <= hi + c*r_hi, if any."""
    c_min, c_max = Fraction(0), Fraction(bound)
    # lo + c r_lo <= 0
    if r_lo > 0:
        c_max = min(c_max, -lo / r_lo)
    elif r_lo < 0:
        c_min = max(c_min, -lo / r_lo)
    elif lo > 0:
        return None
    # hi + c r_hi >= 0
    if r_hi > 0:
        c_min = max(c_min, -hi / r_hi)
    elif r_hi < 0:
        c_max = min(c_max, -hi / r_hi)
    elif hi < 0:
        return None
    c = -((-c_min.numerator) // c_min.denominator)  # ceil
    return c if c <= c_max else None


def _find_vanishing(lead: RhoValue, others: list[RhoValue], bounds: list[int]):
    """Lexicographically first coefficient vector making the sum possibly zero.

    Returns (vector or None, exhausted flag).
    """
    lo0, hi0 = _interval(lead)
    if not others:
        return (None, True) if lead.excludes_zero() else ([], True)
    *prefix_vals, last = others
    *prefix_bounds, last_bound = bounds
    work = 1
    for b in prefix_bounds:
        work *= b + 1
    if work > SEARCH_WORK_CAP:
        return None, False
    l_lo, l_hi = _interval(last)
    vals = [_interval(r) for r in prefix_vals]

    def rec(i, lo, hi, chosen):
        if i == len(vals):
            c = _last_coefficient(lo, hi, l_lo, l_hi, last_bound)
            return None if c is None else chosen + [c]
        r_lo, r_hi = vals[i]
        for c in range(prefix_bounds[i] + 1):
            hit = rec(i + 1, lo + c * r_lo, hi + c * r_hi, chosen + [c])
            if hit is not None:
                return hit
        return None

    return rec(0, lo0, hi0, []), True


def combination_obstruction(
    terms: Sequence[tuple[GraftedKnot, int]], coefficient_bound: int = DEFAULT_COEFFICIENT_BOUND
) -> SolvabilityCertificate:
    """Non-(1.5)-solvability of a combination of infections of a common base.

    The first term is the leading knot.  A (1.5)-solution would force
    rho(J_1) + sum c_i rho(J_i) = 0 with integers c_i >= 0.  This is ruled
    out either by a sign argument (every rho(J_i) weakly on the side of
    rho(J_1)) or by exhaustive search with c_i <= coefficient_bound.  Terms
    whose rho values coincide are merged, which widens their coefficient
    range accordingly.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("combination needs at least one term")
    if coefficient_bound < 0:
        raise ValueError("coefficient bound must be nonnegative")
    base = terms[0][0].base
    for g, mult in terms:
        if g.base != base:
            raise ValueError("all terms must share the same base Seifert matrix")
        if int(mult) < 1:
            raise ValueError(f"multiplicities must be positive, got {mult}")
    per_term = [not_one_point_five_certificate(g) for g, _ in terms]
    inputs = {
        "terms": [{"knot": g.to_json(), "multiplicity": int(mult)} for g, mult in terms],
        "coefficient_bound": coefficient_bound,
    }
    witnesses = {"term_kinds": [c.kind for c in per_term]}
    narrative = []
    failed = None
    if any(c.witnesses["one_solvable"] != ONE_SOLVABLE or not c.witnesses["pairing_nonzero"] for c in per_term):
        failed = "term_character"
        narrative.append("some term lacks the (1)-solvability or character witness")
    lead = terms[0][0].companion.rho
    if failed is None and not lead.excludes_zero():
        failed = "leading_rho"
        narrative.append(f"leading rho {lead} is not certified nonzero")
    if failed is None:
        sign = lead.sign()
        # merge equal rho values among the remaining terms
        merged: dict[str, tuple[RhoValue, int]] = {}
        for g, _ in terms[1:]:
            key = json.dumps(g.companion.rho.to_json(), sort_keys=True)
            r, count = merged.get(key, (g.companion.rho, 0))
            merged[key] = (r, count + 1)
        others = [r for r, _ in merged.values()]
        bounds = [count * coefficient_bound for _, count in merged.values()]
        witnesses["leading_rho"] = lead.to_json()
        witnesses["other_rho"] = [r.to_json() for r in others]
        same_side = all((r.lo >= 0) if sign > 0 else (r.hi <= 0) for r in others)
        if same_side:
            witnesses["method"] = "same_sign"
            narrative.append(
                f"every rho(J_i) lies weakly on the side of rho(J_1) = {lead}, so "
                "rho(J_1) + sum c_i rho(J_i) cannot vanish for any c_i >= 0"
            )
        else:
            witnesses["method"] = "bounded_search"
            hit, exhausted = _find_vanishing(lead, others, bounds)
            if hit is not None:
                failed = "vanishing_combination"
                witnesses["vanishing_coefficients"] = hit
                narrative.append(f"coefficients {hit} make the rho sum possibly zero")
            elif not exhausted:
                failed = "search_too_large"
                narrative.append(f"search space exceeds {SEARCH_WORK_CAP} prefixes; not attempted")
            else:
                narrative.append(
                    f"no coefficients 0 <= c_i <= {coefficient_bound} (per term) make the rho sum vanish; "
                    "this is a bounded check and does not establish linear independence"
                )
    if failed is None:
        narrative.append("the combination is not (1.5)-solvable (within the stated search bound)")
    return SolvabilityCertificate(
        NOT_ONE_POINT_FIVE if failed is None else INCONCLUSIVE,
        "combination",
        witnesses,
        tuple(narrative),
        inputs,
        failed,
    )


_PROCEDURES = {
    "one_solvable": lambda inp: solvable_one_certificate(GraftedKnot.from_json(inp)),
    "not_one_point_five": lambda inp: not_one_point_five_certificate(GraftedKnot.from_json(inp)),
    "combination": lambda inp: combination_obstruction(
        [(GraftedKnot.from_json(t["knot"]), t["multiplicity"]) for t in inp["terms"]],
        inp["coefficient_bound"],
    ),
}


def replay_certificate(data) -> tuple[bool, SolvabilityCertificate]:
    """Re-run a serialized certificate from its embedded inputs.

    Returns whether the recomputed certificate is identical, and the
    recomputed certificate.
    """
    if isinstance(data, str):
        data = json.loads(data)
    proc = _PROCEDURES.get(data.get("procedure"))
    if proc is None:
        raise ValueError(f"unknown certificate procedure {data.get('procedure')!r}")
    fresh = proc(data["inputs"])
    return fresh.to_json() == data, fresh
