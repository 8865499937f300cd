"""Command-line front end.

Exit codes: 0 success, 1 mathematical refusal (criterion fails, certificate
not issued, module outside the supported class), 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .covers import casson_gordon_vanishing_certificate, cover_scan, livingston_criterion, prime_powers
from .errors import ConcordkitError, MatrixFileError, SeifertError, UnsupportedModuleError
from .matrixfile import parse_matrix_file
from .module import AlexModule, ModuleElement, module_from_seifert
from .obstruction import (
    NOT_ONE_POINT_FIVE,
    ONE_SOLVABLE,
    CompanionKnot,
    graft,
    not_one_point_five_certificate,
    replay_certificate,
    solvable_one_certificate,
)
from .polynomial import LaurentPoly, Poly, parse_laurent, recognize_cyclotomic, strip_cyclotomic
from .report import Report, paper_verify, replay_report
from .seifert import (
    alexander_polynomial,
    arf_invariant,
    find_metabolizer,
    fox_milnor_check,
    is_metabolizer,
)
from .signature import CirclePoint, RhoValue, levine_tristram, rho_zero

EXIT_OK, EXIT_REFUSED, EXIT_INPUT = 0, 1, 2

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


class InputError(Exception):
    """Bad command-line input (exit code 2)."""


def _phi(n: int) -> str:
    return "Φ" + str(n).translate(_SUB)


def _coeffs(p: Poly) -> list[str]:
    return [str(c) for c in p.coeffs]


def _single(args, name: str, claim: str, passed: bool, witnesses: dict, text: str, start: float) -> int:
    """Print one result as text or as a one-check Report; return the exit code."""
    if args.json:
        inputs = {"command": name}
        if getattr(args, "matrix", None):
            inputs["matrix"] = parse_matrix_file(args.matrix).rows()
        report = Report(inputs)
        report.run(name, claim, lambda: (passed, witnesses))
        report.checks[-1].wall_time = time.perf_counter() - start
        print(report.dumps())
    else:
        print(text)
    return EXIT_OK if passed else EXIT_REFUSED


def _cyclotomic_label(delta: Poly) -> str | None:
    """'Φ₃₀(t)' or 'Φ₃₀(t)^2·Φ₆(t)' when delta is a product of cyclotomics."""
    if delta.degree < 1:
        return None
    n = recognize_cyclotomic(delta)
    if n is not None:
        return f"{_phi(n)}(t)"
    stripped, residual = strip_cyclotomic(delta)
    if residual.degree > 0 or not stripped:
        return None
    return "·".join(f"{_phi(n)}(t)" + (f"^{m}" if m > 1 else "") for n, m in stripped)


def cmd_alex(args) -> int:
    start = time.perf_counter()
    s = parse_matrix_file(args.matrix)
    delta = alexander_polynomial(s).poly
    label = _cyclotomic_label(delta)
    text = f"{label} = {delta}" if label else f"Δ(t) = {delta}"
    wit = {"delta": _coeffs(delta), "cyclotomic_form": label}
    return _single(args, "alex", "Alexander polynomial, normalised with Delta(1) = 1", True, wit, text, start)


def _module_summary(m: AlexModule) -> dict:
    out = {
        "invariant_factors": [_coeffs(d) for d in m.invariant_factors],
        "cyclic": m.is_cyclic(),
        "rational_dimension": m.rational_dimension,
    }
    if m.is_cyclic():
        out["generator"] = [str(c) for c in m.generator.coordinates]
    return out


def cmd_module(args) -> int:
    start = time.perf_counter()
    m = module_from_seifert(parse_matrix_file(args.matrix))
    wit = _module_summary(m)
    lines = [f"rational dimension: {m.rational_dimension}"]
    if m.is_trivial():
        lines.append("module is trivial")
    for d in m.invariant_factors:
        label = _cyclotomic_label(d)
        lines.append(f"Q[t,t^-1] / ({label or d})")
    lines.append("cyclic" if m.is_cyclic() else ("" if m.is_trivial() else "not cyclic"))
    if m.is_cyclic():
        lines.append("generator (presentation basis): " + ", ".join(str(c) for c in m.generator.coordinates))
    return _single(args, "module", "invariant factors of the rational Alexander module", True, wit,
                   "\n".join(line for line in lines if line), start)


def cmd_covers(args) -> int:
    start = time.perf_counter()
    s = parse_matrix_file(args.matrix)
    if args.max_k < 2:
        raise InputError("--max-k must be at least 2")
    ks = prime_powers(args.max_k) if args.prime_powers else list(range(2, args.max_k + 1))
    orders = cover_scan(s, ks)
    lines = ["    k  |H_1|"] + [f"{o.k:5d}  {o}" for o in orders]
    wit = {"orders": {str(o.k): o.order for o in orders}}
    passed = True
    if args.prime_powers:
        cert = casson_gordon_vanishing_certificate(s, args.max_k)
        verdict = cert.criterion
        wit["criterion"] = verdict.to_json()
        wit["certificate_issued"] = cert.issued
        passed = cert.issued
        lines.append(
            "cyclotomic criterion: "
            + ("passes" if verdict.passes else f"fails (residual factor {verdict.witness})")
        )
        lines.append("all prime-power covers are homology spheres" if passed else "some prime-power cover has homology")
    return _single(args, "covers", "orders of first homology of branched cyclic covers", passed, wit,
                   "\n".join(lines), start)


def cmd_sig(args) -> int:
    start = time.perf_counter()
    s = parse_matrix_file(args.matrix)
    if args.integral:
        rho = rho_zero(s)
        wit = {"rho": rho.to_json()}
        text = str(rho)
        if args.oracle_points:
            from .sampling import sampled_rho

            est = sampled_rho(s, args.oracle_points)
            wit["sampled"] = repr(est)
            wit["sample_points"] = args.oracle_points
            text += f"\nsampled ({args.oracle_points} points): {est:.8f}"
        return _single(args, "sig", "integral of the signature function over the circle", True, wit, text, start)
    try:
        point = CirclePoint.parse(args.omega_u)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad --omega-u value {args.omega_u!r}: {exc}") from None
    sigma = levine_tristram(s, point)
    wit = {"point": str(point), "signature": sigma}
    return _single(args, "sig", "Levine-Tristram signature", True, wit, str(sigma), start)


def cmd_arf(args) -> int:
    start = time.perf_counter()
    s = parse_matrix_file(args.matrix)
    arf = arf_invariant(s)
    wit = {"arf": arf, "delta_at_minus_one": str(alexander_polynomial(s).poly(-1))}
    return _single(args, "arf", "Arf invariant", True, wit, str(arf), start)


def cmd_foxmilnor(args) -> int:
    start = time.perf_counter()
    s = parse_matrix_file(args.matrix)
    delta = alexander_polynomial(s).poly
    ok = fox_milnor_check(delta)
    text = f"Δ(t) = {delta}\n" + ("factors as f(t)f(1/t)" if ok else "does not factor as f(t)f(1/t)")
    return _single(args, "foxmilnor", "Delta = f(t) f(1/t) up to units", ok, {"delta": _coeffs(delta)}, text, start)


def _read_basis(path) -> list[list[int]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read basis file: {exc}") from None
    rows = []
    for num, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(x) for x in line.split()])
        except ValueError:
            raise MatrixFileError(f"non-integer entry in {line!r}", num) from None
    return rows


def cmd_metabolizer(args) -> int:
    start = time.perf_counter()
    s = parse_matrix_file(args.matrix)
    if args.search:
        basis = find_metabolizer(s)
        ok = basis is not None
        text = ("metabolizer: " + "; ".join(" ".join(map(str, v)) for v in basis)) if ok else "no metabolizer found"
        wit = {"basis": basis}
    else:
        basis = _read_basis(args.basis)
        ok = is_metabolizer(s, basis)
        text = "basis spans a metabolizer" if ok else "basis does not span a metabolizer"
        wit = {"basis": basis}
    return _single(args, "metabolizer", "metabolizer for the Seifert form", ok, wit, text, start)


def _parse_element(m: AlexModule, text: str) -> ModuleElement:
    """Normal coordinates separated by ';' (one per invariant factor); for a cyclic module, f means f*g."""
    parts = [p for p in text.split(";")]
    if len(parts) != len(m.invariant_factors):
        raise InputError(f"expected {len(m.invariant_factors)} ';'-separated coordinates, got {len(parts)}")
    try:
        return m.from_normal_coordinates([parse_laurent(p) for p in parts])
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_blanchfield(args) -> int:
    start = time.perf_counter()
    s = parse_matrix_file(args.matrix)
    m = module_from_seifert(s)
    if m.is_trivial():
        raise UnsupportedModuleError("the module is trivial; every pairing is zero")
    x, y = _parse_element(m, args.x), _parse_element(m, args.y)
    v = m.blanchfield(x, y)
    wit = {"x": args.x, "y": args.y, "value": v.to_json(), "nonzero": bool(v)}
    return _single(args, "blanchfield", "Blanchfield pairing in Q(t)/Q[t,t^-1]", True, wit, str(v), start)


def _companion(args) -> CompanionKnot:
    rho = None
    if args.rho is not None:
        try:
            rho = RhoValue.parse(args.rho)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad --rho value {args.rho!r}: {exc}") from None
    if args.companion:
        s = parse_matrix_file(args.companion)
        base = CompanionKnot.from_seifert(s)
        if rho is None:
            return base
        try:
            return CompanionKnot(rho, base.arf, base.label, s)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if rho is None:
        raise InputError("give --companion FILE, --rho R, or both")
    if args.arf is None:
        raise InputError("a companion given only by --rho also needs --arf")
    return CompanionKnot(rho, args.arf, "J")


def _graft(args):
    base = parse_matrix_file(args.matrix)
    m = module_from_seifert(base)
    eta = None
    if args.eta is not None:
        eta = _parse_element(m, args.eta)
    return graft(base, _companion(args), eta)


def cmd_graft(args) -> int:
    start = time.perf_counter()
    g = _graft(args)
    delta = g.alexander_polynomial().poly
    wit = g.to_json()
    wit["alexander"] = _coeffs(delta)
    text = "\n".join([
        f"base: {g.base.label} ({g.base.size}x{g.base.size})",
        f"companion: {g.companion.label}, Arf {g.companion.arf}, rho {g.companion.rho}",
        f"eta (normal coordinates): {', '.join(str(c) for c in g.eta.normal)}",
        f"Δ(t) = {delta} (same Seifert form as the base)",
    ])
    return _single(args, "graft", "infection keeps the base Seifert form", True, wit, text, start)


def cmd_certify(args) -> int:
    start = time.perf_counter()
    if args.replay:
        try:
            data = json.loads(Path(args.replay).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {args.replay}: {exc}") from None
        try:
            if isinstance(data, dict) and data.get("schema", "").startswith("concordkit.report"):
                ok, diffs = replay_report(data)
            else:
                diffs = []
                for item in data if isinstance(data, list) else [data]:
                    same, fresh = replay_certificate(item)
                    if not same:
                        diffs.append(fresh.procedure)
                ok = not diffs
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"{args.replay} is not a concordkit report or certificate ({exc!r})") from None
        text = "replay matches" if ok else "replay differs: " + ", ".join(diffs)
        return _single(args, "certify", "replay of a stored report or certificate", ok, {"differences": diffs}, text, start)
    if not args.matrix:
        raise InputError("certify needs a matrix file or --replay FILE")
    g = _graft(args)
    one = solvable_one_certificate(g)
    certs = [one]
    if args.kind in ("both", "not-one-point-five"):
        certs.append(not_one_point_five_certificate(g))
    if args.kind == "one":
        ok = one.kind == ONE_SOLVABLE
    elif args.kind == "not-one-point-five":
        certs = certs[1:]
        ok = certs[0].kind == NOT_ONE_POINT_FIVE
    else:
        ok = one.kind == ONE_SOLVABLE and certs[1].kind == NOT_ONE_POINT_FIVE
    if args.output:
        payload = certs[0] if len(certs) == 1 else None
        blob = payload.canonical_json() if payload else "[" + ",".join(c.canonical_json() for c in certs) + "]"
        Path(args.output).write_text(blob + "\n")
    if args.json:
        print("[" + ",".join(c.canonical_json() for c in certs) + "]" if len(certs) > 1 else certs[0].canonical_json())
    else:
        print("\n".join(str(c) for c in certs))
    return EXIT_OK if ok else EXIT_REFUSED


def cmd_paper_verify(args) -> int:
    base = parse_matrix_file(args.base) if args.base else None
    companion = None
    if args.companion:
        companion = CompanionKnot.from_seifert(parse_matrix_file(args.companion))
    report = paper_verify(base, companion)
    if args.json:
        print(report.dumps())
    else:
        for i, c in enumerate(report.checks, start=1):
            line = f"[{'PASS' if c.passed else 'FAIL'}] {i:2d}. {c.name}: {c.claim} ({c.wall_time:.2f}s)"
            print(line)
            if not c.passed:
                print("       " + json.dumps(_failure_summary(c.witnesses), sort_keys=True))
        print("all checks pass" if report.passed else "some checks FAILED")
    return EXIT_OK if report.passed else EXIT_REFUSED


def _failure_summary(wit: dict) -> dict:
    if "error" in wit:
        return wit
    if wit.get("failed_check"):
        return {"failed_check": wit["failed_check"]}
    out = {}
    for key, val in wit.items():
        if isinstance(val, dict) and ("failed_check" in val or "error" in val):
            out[key] = val.get("failed_check") or val.get("message")
    return out or {"witnesses": sorted(wit)}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a canonical JSON report")
    common.add_argument("--seed", type=int, default=None, help="reserved; all computations are deterministic")

    parser = argparse.ArgumentParser(prog="concordkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"concordkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, matrix=True):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if matrix:
            p.add_argument("matrix", help="matrix file (or the name of a bundled one, e.g. paper_C.mat)")
        p.set_defaults(func=fn)
        return p

    add("alex", cmd_alex, "Alexander polynomial")
    add("module", cmd_module, "invariant factors of the rational Alexander module")
    p = add("covers", cmd_covers, "homology orders of branched cyclic covers")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--prime-powers", action="store_true", help="only prime powers; also run the cyclotomic criterion")
    p = add("sig", cmd_sig, "Levine-Tristram signature or its integral")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--omega-u", help="point omega = ((1-u^2)+2ui)/(1+u^2); 'inf' for omega = -1")
    g.add_argument("--integral", action="store_true", help="integral of the signature function (rho_0)")
    p.add_argument("--oracle-points", type=int, default=0, help="also report a dense-sampling estimate")
    add("arf", cmd_arf, "Arf invariant")
    add("foxmilnor", cmd_foxmilnor, "Fox-Milnor condition on the Alexander polynomial")
    p = add("metabolizer", cmd_metabolizer, "verify or search for a metabolizer")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--basis", help="file with one integer vector per line")
    g.add_argument("--search", action="store_true", help="exhaustive search (size <= 4)")
    p = add("blanchfield", cmd_blanchfield, "Blanchfield pairing of two module elements")
    p.add_argument("--x", default="1", help="normal coordinates, ';'-separated (default: the generator)")
    p.add_argument("--y", default="1")

    def companion_flags(p):
        p.add_argument("--companion", help="matrix file of the companion knot")
        p.add_argument("--rho", help="rho of the companion: a rational, or 'mid+-radius'")
        p.add_argument("--arf", type=int, choices=(0, 1), help="Arf invariant of a companion given only by --rho")
        p.add_argument("--eta", help="infection class in normal coordinates (default: the generator)")

    p = add("graft", cmd_graft, "infect a knot along eta by a companion")
    companion_flags(p)
    p = sub.add_parser("certify", parents=[common], help="solvability certificates, or replay of a stored one")
    p.add_argument("matrix", nargs="?")
    companion_flags(p)
    p.add_argument("--kind", choices=("both", "one", "not-one-point-five"), default="both")
    p.add_argument("--output", help="also write the certificate JSON here")
    p.add_argument("--replay", help="re-verify a stored certificate or paper-verify report")
    p.set_defaults(func=cmd_certify)
    p = add("paper-verify", cmd_paper_verify, "run the ten reproduction checks", matrix=False)
    p.add_argument("--base", help="replace the base knot of the certificate checks")
    p.add_argument("--companion", help="replace the companion knot of the certificate checks")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, MatrixFileError, SeifertError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedModuleError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConcordkitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
