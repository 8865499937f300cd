"""Levine-Tristram signatures and the integrated signature rho_0.

Points of the unit circle are parametrised by a rational u through
omega = ((1 - u^2) + 2ui) / (1 + u^2), i.e. u = tan(theta / 2), so the
Hermitian matrix (1 - omega) V + (1 - conj(omega)) V^T has entries in
Q(i) and its signature can be computed exactly.  omega = -1 (u = infinity)
carries its own flag.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import ArcResolutionError
from .linalg import symmetric_signature
from .polynomial import Poly, squarefree_part, strip_cyclotomic
from .seifert import SeifertMatrix, alexander_polynomial

__all__ = [
    "CirclePoint",
    "RhoValue",
    "SignatureArc",
    "levine_tristram",
    "signature_arcs",
    "rho_zero",
    "circle_roots",
]

ROOT_TOLERANCE = 1e-12
MIN_ARC = 1e-9


@dataclass(frozen=True)
class CirclePoint:
    """omega = ((1-u^2) + 2ui)/(1+u^2), or omega = -1 when ``minus_one`` is set."""

    u: Fraction = Fraction(1)
    minus_one: bool = False

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        if not self.minus_one and self.u == 0:
            raise ValueError("u = 0 gives omega = 1, where the signature is not defined")

    @classmethod
    def at_minus_one(cls) -> "CirclePoint":
        return cls(Fraction(1), minus_one=True)

    @classmethod
    def parse(cls, text: str) -> "CirclePoint":
        text = text.strip().lower()
        if text in ("inf", "infinity", "oo", "-1:flag"):
            return cls.at_minus_one()
        return cls(Fraction(text))

    def omega(self) -> complex:
        if self.minus_one:
            return complex(-1.0, 0.0)
        u = float(self.u)
        return complex((1 - u * u) / (1 + u * u), 2 * u / (1 + u * u))

    def turn(self) -> float:
        """Angle as a fraction of a full turn, in (0, 1)."""
        if self.minus_one:
            return 0.5
        a = math.atan(float(self.u)) / math.pi
        return a if a > 0 else a + 1.0

    def __str__(self):
        return "omega=-1" if self.minus_one else f"u={self.u}"


def levine_tristram(s: SeifertMatrix, omega: CirclePoint) -> int:
    """Exact signature of (1 - omega) V + (1 - conj(omega)) V^T."""
    if not isinstance(omega, CirclePoint):
        raise TypeError("omega must be a CirclePoint")
    n = s.size
    if n == 0:
        return 0
    v = s.entries
    if omega.minus_one:
        return symmetric_signature([[v[i][j] + v[j][i] for j in range(n)] for i in range(n)])
    u = omega.u
    # scaled by (1+u^2)/(2u): u(V + V^T) + i(V^T - V); realify X + iY as [[X, -Y], [Y, X]]
    x = [[u * (v[i][j] + v[j][i]) for j in range(n)] for i in range(n)]
    y = [[v[j][i] - v[i][j] for j in range(n)] for i in range(n)]
    big = [x[i] + [-y[i][j] for j in range(n)] for i in range(n)]
    big += [y[i] + x[i] for i in range(n)]
    sig = symmetric_signature(big) // 2
    return sig if u > 0 else -sig


@dataclass(frozen=True)
class RhoValue:
    """Exact rational, or a floating midpoint with a certified radius."""

    exact: Fraction | None
    midpoint: float
    radius: float = 0.0

    @classmethod
    def of(cls, q) -> "RhoValue":
        q = Fraction(q)
        return cls(q, float(q), 0.0)

    @classmethod
    def interval(cls, midpoint: float, radius: float) -> "RhoValue":
        return cls(None, float(midpoint), float(radius))

    @classmethod
    def parse(cls, text: str) -> "RhoValue":
        if "+-" in text:
            mid, rad = text.split("+-")
            return cls.interval(float(mid), float(rad))
        return cls.of(Fraction(text.strip()))

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def lo(self) -> Fraction:
        if self.exact is not None:
            return self.exact
        return Fraction(self.midpoint) - Fraction(self.radius)

    @property
    def hi(self) -> Fraction:
        if self.exact is not None:
            return self.exact
        return Fraction(self.midpoint) + Fraction(self.radius)

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self) -> int:
        """+1 or -1 when the value is certified nonzero, else 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def __neg__(self):
        if self.exact is not None:
            return RhoValue.of(-self.exact)
        return RhoValue.interval(-self.midpoint, self.radius)

    def __add__(self, other: "RhoValue"):
        if self.exact is not None and other.exact is not None:
            return RhoValue.of(self.exact + other.exact)
        return RhoValue.interval(self.midpoint + other.midpoint, self.radius + other.radius)

    def to_json(self):
        if self.exact is not None:
            return {"exact": str(self.exact)}
        return {"midpoint": repr(self.midpoint), "radius": repr(self.radius)}

    @classmethod
    def from_json(cls, data) -> "RhoValue":
        if "exact" in data:
            return cls.of(Fraction(data["exact"]))
        return cls.interval(float(data["midpoint"]), float(data["radius"]))

    def __str__(self):
        if self.exact is not None:
            return str(self.exact)
        return f"{self.midpoint!r} +- {self.radius:.3g}"


@dataclass(frozen=True)
class _Boundary:
    turn: float
    exact: Fraction | None
    radius: float


@dataclass(frozen=True)
class SignatureArc:
    """Open arc of the circle (in turns) on which sigma_omega is constant."""

    start: float
    end: float
    start_exact: Fraction | None
    end_exact: Fraction | None
    sample: CirclePoint
    signature: int

    @property
    def exact_length(self) -> Fraction | None:
        if self.start_exact is None or self.end_exact is None:
            return None
        return self.end_exact - self.start_exact


def circle_roots(delta: Poly) -> list[_Boundary]:
    """Roots of ``delta`` on the unit circle, as turns in (0, 1), sorted.

    Cyclotomic factors contribute exact rational turns k/n; the remaining
    factor is made squarefree and solved numerically at high precision,
    with a Newton-type radius bound for each root kept.
    """
    stripped, residual = strip_cyclotomic(delta)
    out = []
    for n, _ in stripped:
        for k in range(1, n + 1):
            if math.gcd(k, n) == 1 and k < n:
                q = Fraction(k, n)
                out.append(_Boundary(float(q), q, 0.0))
    if residual.degree >= 1:
        out.extend(_numeric_circle_roots(squarefree_part(residual)))
    out.sort(key=lambda b: b.turn)
    return out


def _numeric_circle_roots(f: Poly) -> list[_Boundary]:
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(f.coeffs)]
    d = f.degree
    with mpmath.workdps(60):
        if d == 1:
            roots = [-coeffs[1] / coeffs[0]]
        else:
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        fp = f.derivative()
        found = []
        for z in roots:
            z = mpmath.mpc(z)
            if abs(abs(z) - 1) >= ROOT_TOLERANCE:
                continue
            val = _mp_eval(f, z)
            der = _mp_eval(fp, z)
            # some root lies within d*|f(z)/f'(z)| of z
            rad = float(d * abs(val) / abs(der)) if der != 0 else 1.0
            ang = float(mpmath.arg(z) / (2 * mpmath.pi))
            if ang <= 0:
                ang += 1.0
            if ang >= 1.0:
                continue
            # angle error <= asin(rad) <= 2*rad for small rad; pad for float rounding
            found.append(_Boundary(ang, None, 2 * rad + 4e-16))
    return found


def _mp_eval(f: Poly, z):
    acc = mpmath.mpc(0)
    for c in reversed(f.coeffs):
        acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
    return acc


def _sample_point(a: float, b: float) -> CirclePoint:
    if a < 0.5 < b:
        return CirclePoint.at_minus_one()
    w = b - a
    mid = (a + b) / 2
    u = math.tan(math.pi * mid)
    for digits in range(2, 18):
        q = Fraction(u).limit_denominator(10 ** digits)
        if q == 0:
            continue
        pt = CirclePoint(q)
        if a + w / 4 < pt.turn() < b - w / 4:
            return pt
    pt = CirclePoint(Fraction(u))
    if not a < pt.turn() < b:
        raise ArcResolutionError(f"cannot place a sample point in arc ({a}, {b})")
    return pt


def signature_arcs(s: SeifertMatrix) -> list[SignatureArc]:
    """Decompose the circle minus the roots of Delta into arcs of constant signature."""
    delta = alexander_polynomial(s).poly
    bounds = [_Boundary(0.0, Fraction(0), 0.0)] + circle_roots(delta) + [_Boundary(1.0, Fraction(1), 0.0)]
    arcs = []
    for lo, hi in zip(bounds, bounds[1:]):
        if hi.turn - lo.turn < MIN_ARC:
            raise ArcResolutionError(
                f"roots of Delta at turns {lo.turn!r} and {hi.turn!r} are closer than {MIN_ARC}"
            )
        pt = _sample_point(lo.turn, hi.turn)
        arcs.append(
            SignatureArc(lo.turn, hi.turn, lo.exact, hi.exact, pt, levine_tristram(s, pt))
        )
    return arcs


def rho_zero(s: SeifertMatrix) -> RhoValue:
    """Normalised integral of sigma_omega over the unit circle (total measure 1).

    Exact when every jump of the signature function sits at a root of unity;
    otherwise a midpoint with a certified radius.
    """
    if s.size == 0:
        return RhoValue.of(0)
    arcs = signature_arcs(s)
    if all(a.exact_length is not None for a in arcs):
        return RhoValue.of(sum((a.signature * a.exact_length for a in arcs), Fraction(0)))
    mid = math.fsum(a.signature * (a.end - a.start) for a in arcs)
    bounds = circle_roots(alexander_polynomial(s).poly)
    err = 0.0
    sigs = [a.signature for a in arcs]
    for k, b in enumerate(bounds):
        jump = abs(sigs[k + 1] - sigs[k])
        err += jump * b.radius
    err += 1e-15 * (1 + sum(abs(x) for x in sigs))
    return RhoValue.interval(mid, err)
