"""JSON reports and the end-to-end reproduction pipeline.

Report schema (``concordkit.report/1``)::

    {
      "schema": "concordkit.report/1",
      "tool_version": str,
      "input_digest": sha256 hex of the canonical JSON of "inputs",
      "inputs": {...},
      "passed": bool,
      "checks": [
        {"name": str, "verdict": "pass" | "fail", "claim": str,
         "witnesses": {...}, "wall_time": float seconds}
      ]
    }

Serialisation sorts keys and uses fixed separators, so two runs differ
only in ``wall_time``.
"""
from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import __version__
from .covers import casson_gordon_vanishing_certificate
from .errors import ConcordkitError
from .module import (
    module_from_seifert,
    nonsingularity_witness,
    orthogonal_complement,
    proper_submodules,
)
from .obstruction import (
    CompanionKnot,
    NOT_ONE_POINT_FIVE,
    ONE_SOLVABLE,
    combination_obstruction,
    graft,
    not_one_point_five_certificate,
    solvable_one_certificate,
)
from .polynomial import Poly, cyclotomic
from .seifert import (
    GRANNY,
    SeifertMatrix,
    alexander_polynomial,
    build_paper_matrix,
    fox_milnor_check,
    is_metabolizer,
    validate_seifert,
)

__all__ = ["CheckRecord", "Report", "paper_verify", "replay_report", "canonical_dumps", "HERMITIAN_PAIRS"]

SCHEMA = "concordkit.report/1"
HERMITIAN_PAIRS = 100
# fixed so that the random Hermitian sample is reproducible
_SAMPLE_SEED = 20240601


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class CheckRecord:
    name: str
    passed: bool
    claim: str
    witnesses: dict
    wall_time: float = 0.0

    def to_json(self):
        return {
            "name": self.name,
            "verdict": "pass" if self.passed else "fail",
            "claim": self.claim,
            "witnesses": self.witnesses,
            "wall_time": round(self.wall_time, 6),
        }


@dataclass
class Report:
    inputs: dict
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def run(self, name: str, claim: str, fn: Callable[[], tuple[bool, dict]]) -> CheckRecord:
        """Time ``fn`` and record its verdict; library errors become failures."""
        start = time.perf_counter()
        try:
            ok, wit = fn()
        except ConcordkitError as exc:
            ok, wit = False, {"error": type(exc).__name__, "message": str(exc)}
        rec = CheckRecord(name, bool(ok), claim, wit, time.perf_counter() - start)
        self.checks.append(rec)
        return rec

    def to_json(self):
        return {
            "schema": SCHEMA,
            "tool_version": __version__,
            "input_digest": hashlib.sha256(canonical_dumps(self.inputs).encode()).hexdigest(),
            "inputs": self.inputs,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def dumps(self) -> str:
        return canonical_dumps(self.to_json())


def _coeffs(p: Poly) -> list[str]:
    return [str(c) for c in p.coeffs]


def diagonal_metabolizer(half: int) -> list[list[int]]:
    """Vectors (e_i, J e_i) for a block sum S # reverse_mirror(S) of size 2*half."""
    n = 2 * half
    out = []
    for i in range(half):
        v = [0] * n
        v[i] = 1
        v[half + (half - 1 - i)] = 1
        out.append(v)
    return out


def _check_alexander_a():
    a = build_paper_matrix("A")
    delta = alexander_polynomial(a).poly
    expected = Poly([1, 1, 0, -1, -1, -1, 0, 1, 1])
    return delta == expected and delta == cyclotomic(30), {"delta": _coeffs(delta)}


def _check_module_b():
    m = module_from_seifert(build_paper_matrix("B"))
    phi = cyclotomic(30)
    return m.invariant_factors == (phi, phi), {"invariant_factors": [_coeffs(d) for d in m.invariant_factors]}


def _check_module_c():
    m = module_from_seifert(build_paper_matrix("C"))
    phi = cyclotomic(30)
    wit = {
        "invariant_factors": [_coeffs(d) for d in m.invariant_factors],
        "cyclic": m.is_cyclic(),
        "rational_dimension": m.rational_dimension,
    }
    return m.is_cyclic() and m.invariant_factors[0] == phi ** 2, wit


def _check_metabolizer_b():
    basis = diagonal_metabolizer(8)
    return is_metabolizer(build_paper_matrix("B"), basis), {"basis": basis}


def _check_fox_milnor_c():
    delta = alexander_polynomial(build_paper_matrix("C"))
    return fox_milnor_check(delta), {"delta": _coeffs(delta.poly)}


def _check_casson_gordon_c():
    cert = casson_gordon_vanishing_certificate(build_paper_matrix("C"), 128)
    return cert.issued, cert.to_json()


def _random_element(m, rng):
    return m.from_normal_coordinates(
        [Poly([rng.randint(-3, 3) for _ in range(d.degree)]) for d in m.invariant_factors]
    )


def _check_blanchfield_c():
    c = build_paper_matrix("C")
    m = module_from_seifert(c)
    rng = random.Random(_SAMPLE_SEED)
    bad = 0
    for _ in range(HERMITIAN_PAIRS):
        x, y = _random_element(m, rng), _random_element(m, rng)
        if m.blanchfield(x, y) != m.blanchfield(y, x).conj():
            bad += 1
    g = m.generator
    direct_ok = m.blanchfield(g, g) == m.blanchfield_direct(g, g)
    nonsing, rank, partners = nonsingularity_witness(c)
    wit = {
        "hermitian_pairs": HERMITIAN_PAIRS,
        "hermitian_failures": bad,
        "gram_matches_direct_formula": direct_ok,
        "nonsingular": nonsing,
        "pairing_rank": rank,
        "partners": partners,
    }
    return bad == 0 and direct_ok and nonsing, wit


def _check_submodule_c():
    c = build_paper_matrix("C")
    subs = proper_submodules(module_from_seifert(c))
    if len(subs) != 1:
        return False, {"submodule_count": len(subs)}
    _, flag = orthogonal_complement(c, subs[0])
    return flag, {
        "submodule_count": 1,
        "order": _coeffs(subs[0].order),
        "rational_dimension": subs[0].dimension,
        "self_annihilating": flag,
    }


def _check_certificates(base, companion):
    g = graft(base, companion)
    one = solvable_one_certificate(g)
    wit = {"one_solvable": one.to_json()}
    try:
        not15 = not_one_point_five_certificate(g)
        wit["not_one_point_five"] = not15.to_json()
        ok15 = not15.kind == NOT_ONE_POINT_FIVE
    except ConcordkitError as exc:
        wit["not_one_point_five"] = {"error": type(exc).__name__, "message": str(exc)}
        ok15 = False
    return one.kind == ONE_SOLVABLE and ok15, wit


def _check_combination(base, companion):
    g = graft(base, companion)
    cert = combination_obstruction([(g, 1), (g, 1), (g, 1)])
    return cert.kind == NOT_ONE_POINT_FIVE, cert.to_json()


def paper_verify(base: SeifertMatrix | None = None, companion: CompanionKnot | None = None) -> Report:
    """Run the ten reproduction checks.

    ``base`` and ``companion`` replace the seed knot C and the granny
    companion in the certificate checks (9 and 10).
    """
    base = base or build_paper_matrix("C")
    companion = companion or CompanionKnot.from_seifert(GRANNY)
    report = Report({"base": base.rows(), "base_label": base.label, "companion": companion.to_json()})
    report.run("alexander_A", "det(A^T - tA) is the 30th cyclotomic polynomial", _check_alexander_a)
    report.run("module_B", "the module of B is Q[t^+-1]/Phi_30 + Q[t^+-1]/Phi_30", _check_module_b)
    report.run("module_C", "the module of C is cyclic of order Phi_30^2", _check_module_c)
    report.run("metabolizer_B", "{(e_i, J e_i)} is a metabolizer for B", _check_metabolizer_b)
    report.run("fox_milnor_C", "Phi_30^2 satisfies the Fox-Milnor condition", _check_fox_milnor_c)
    report.run(
        "casson_gordon_C",
        "every prime-power branched cover of C up to 128 is a homology sphere, and the cyclotomic criterion passes",
        _check_casson_gordon_c,
    )
    report.run("blanchfield_C", "the pairing on the C module is Hermitian and nonsingular", _check_blanchfield_c)
    report.run(
        "unique_submodule_C",
        "the C module has one proper submodule P0 = (Phi_30) and P0 is self-annihilating",
        _check_submodule_c,
    )
    report.run(
        "certificates",
        "K(J, eta) for eta the generator is (1)-solvable and not (1.5)-solvable",
        lambda: _check_certificates(base, companion),
    )
    report.run(
        "combination",
        "a combination of three such knots is not (1.5)-solvable",
        lambda: _check_combination(base, companion),
    )
    return report


def _strip_times(report_json):
    out = dict(report_json)
    out["checks"] = [{k: v for k, v in c.items() if k != "wall_time"} for c in report_json["checks"]]
    return out


def replay_report(data) -> tuple[bool, list[str]]:
    """Re-run a paper-verify report from its embedded inputs.

    Returns whether everything except wall times matches, and the names of
    checks that differ.
    """
    if isinstance(data, str):
        data = json.loads(data)
    inputs = data["inputs"]
    base = validate_seifert(inputs["base"], label=inputs.get("base_label"))
    fresh = paper_verify(base, CompanionKnot.from_json(inputs["companion"])).to_json()
    old, new = _strip_times(data), _strip_times(fresh)
    diffs = [
        a["name"] for a, b in zip(old["checks"], new["checks"]) if a != b
    ]
    if len(old["checks"]) != len(new["checks"]):
        diffs.append("<check count>")
    for key in ("schema", "input_digest", "passed"):
        if old.get(key) != new.get(key):
            diffs.append(f"<{key}>")
    return not diffs, diffs
