"""Rational Alexander modules, the Blanchfield pairing and submodules.

The module of a Seifert matrix V is presented by P = V^T - tV with the
rows of P as relations: an element is a coordinate vector x over
Q[t, t^-1], and x ~ x + z^T P.  With the Smith form L P R = D, the normal
coordinates of x are R^T x, the i-th one read modulo the invariant
factor d_i.  With this convention the pairing

    Bl(x, y) = (1 - t) x^T P^-1 conj(y)   in Q(t) / Q[t, t^-1]

is well defined in both arguments, linear in x and conjugate-linear in y.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import UnsupportedModuleError
from .linalg import nullspace, rank, rref
from .polymatrix import PolyMatrix, SNFResult, det_laurent, smith_normal_form
from .polynomial import (
    LaurentPoly,
    Poly,
    inverse_mod,
    poly_gcd,
    recognize_cyclotomic,
    squarefree_part,
)
from .seifert import SeifertMatrix

__all__ = [
    "AlexModule",
    "ModuleElement",
    "BlanchfieldValue",
    "Submodule",
    "module_from_seifert",
    "blanchfield",
    "proper_submodules",
    "orthogonal_complement",
    "character_value",
    "nonsingularity_witness",
    "primary_decomposition",
]

_ONE = Poly((1,))
_T = LaurentPoly(Poly((0, 1)))


def _t_power_mod(k: int, m: Poly) -> Poly:
    """t^k modulo m, for m coprime to t."""
    if k >= 0:
        return Poly.monomial(k) % m
    return inverse_mod(Poly.monomial(-k) % m, m)


def _reduce_laurent(x: LaurentPoly, m: Poly) -> Poly:
    """Representative of x in Q[t]/(m) (m coprime to t), degree < deg m."""
    if x.is_zero():
        return Poly()
    return (x.poly % m) * _t_power_mod(x.low, m) % m


class BlanchfieldValue:
    """Element of Q(t)/Q[t, t^-1], stored as a reduced proper fraction num/den.

    ``den`` is monic with nonzero constant term and deg num < deg den; the
    zero value is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        self.num, self.den = num, den

    @classmethod
    def from_fraction(cls, num: LaurentPoly | Poly, den: Poly | LaurentPoly) -> "BlanchfieldValue":
        num = LaurentPoly.of(num)
        den = LaurentPoly.of(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        # units t^k of the denominator move into the numerator
        num = num.shift(-den.low)
        d = den.poly.monic()
        num = num * (1 / den.poly.lead)
        if d.degree == 0:
            return cls.zero()
        r = _reduce_laurent(num, d)
        if r.is_zero():
            return cls.zero()
        g = poly_gcd(r, d)
        if g.degree > 0:
            r, d = r.exquo(g), d.exquo(g)
        return cls(r, d)

    @classmethod
    def zero(cls) -> "BlanchfieldValue":
        return cls(Poly(), _ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def conj(self) -> "BlanchfieldValue":
        if self.is_zero():
            return self
        return BlanchfieldValue.from_fraction(
            LaurentPoly(self.num).conj(), LaurentPoly(self.den).conj()
        )

    def __add__(self, other: "BlanchfieldValue") -> "BlanchfieldValue":
        return BlanchfieldValue.from_fraction(
            LaurentPoly(self.num * other.den + other.num * self.den), self.den * other.den
        )

    def __neg__(self):
        return BlanchfieldValue(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "BlanchfieldValue":
        """Multiply by an element of the Laurent ring."""
        return BlanchfieldValue.from_fraction(LaurentPoly.of(f) * LaurentPoly(self.num), self.den)

    def __eq__(self, other):
        if not isinstance(other, BlanchfieldValue):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def numerator_mod(self, modulus: Poly) -> list[Fraction]:
        """Coefficients of c with value = c/modulus, c reduced mod modulus (den must divide modulus)."""
        c = self.num * modulus.exquo(self.den) if self else Poly()
        cs = list(c.coeffs) + [Fraction(0)] * (modulus.degree - len(c.coeffs))
        return cs[: modulus.degree]

    def to_json(self):
        return {"num": [str(c) for c in self.num.coeffs], "den": [str(c) for c in self.den.coeffs]}

    def __str__(self):
        if self.is_zero():
            return "0"
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"BlanchfieldValue({self})"


class AlexModule:
    """Torsion module over Q[t, t^-1] presented by a square matrix (rows are relations)."""

    def __init__(self, presentation: PolyMatrix, seifert: SeifertMatrix | None = None):
        if presentation.rows != presentation.cols:
            raise ValueError("presentation must be square")
        if presentation.rows and det_laurent(presentation).is_zero():
            raise UnsupportedModuleError("presentation has zero determinant: module is not torsion")
        self.presentation = presentation
        self.seifert = seifert
        self.snf: SNFResult = smith_normal_form(presentation)
        self.n = presentation.rows
        # indices of nontrivial invariant factors, in SNF order (divisibility chain)
        self._active = [i for i, d in enumerate(self.snf.diagonal) if d.degree > 0]
        self.invariant_factors: tuple[Poly, ...] = tuple(self.snf.diagonal[i] for i in self._active)
        R = self.snf.right_transform.entries
        self._r_cols = [[R[j][i] for j in range(self.n)] for i in self._active]
        Rinv = self.snf.right_inverse.entries
        self._rinv_rows = [list(Rinv[i]) for i in self._active]
        L = self.snf.left_transform.entries
        self._l_rows = [list(L[i]) for i in self._active]
        self._gram = None

    @classmethod
    def from_polys(cls, rows) -> "AlexModule":
        return cls(PolyMatrix(rows))

    # -- structure --------------------------------------------------------------
    @property
    def order(self) -> Poly:
        out = _ONE
        for d in self.invariant_factors:
            out = out * d
        return out

    @property
    def rational_dimension(self) -> int:
        return sum(d.degree for d in self.invariant_factors)

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) == 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def left_transform(self) -> PolyMatrix:
        return self.snf.left_transform

    @property
    def right_transform(self) -> PolyMatrix:
        return self.snf.right_transform

    @property
    def to_normal(self) -> PolyMatrix:
        """Row vectors x map to x @ right_transform (normal coordinates)."""
        return self.snf.right_transform

    @property
    def from_normal(self) -> PolyMatrix:
        return self.snf.right_inverse

    # -- elements ----------------------------------------------------------------
    def element(self, coords: Sequence) -> "ModuleElement":
        """Element with the given coordinates in the presentation basis."""
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        xs = [LaurentPoly.of(c) for c in coords]
        normal = []
        for col, d in zip(self._r_cols, self.invariant_factors):
            acc = LaurentPoly()
            for a, b in zip(xs, col):
                if a and b:
                    acc = acc + a * b
            normal.append(_reduce_laurent(acc, d))
        return ModuleElement(self, tuple(normal))

    def from_normal_coordinates(self, normal: Sequence) -> "ModuleElement":
        if len(normal) != len(self.invariant_factors):
            raise ValueError("wrong number of normal coordinates")
        return ModuleElement(
            self,
            tuple(_reduce_laurent(LaurentPoly.of(c), d) for c, d in zip(normal, self.invariant_factors)),
        )

    def zero(self) -> "ModuleElement":
        return ModuleElement(self, tuple(Poly() for _ in self.invariant_factors))

    def normal_generators(self) -> list["ModuleElement"]:
        k = len(self.invariant_factors)
        return [self.from_normal_coordinates([int(i == j) for j in range(k)]) for i in range(k)]

    @property
    def generator(self) -> "ModuleElement":
        """Generator of a cyclic module: the preimage of the standard generator of its summand."""
        if not self.is_cyclic():
            raise UnsupportedModuleError(
                f"module has {len(self.invariant_factors)} invariant factors; no single generator"
            )
        return self.normal_generators()[0]

    def rational_basis(self) -> list["ModuleElement"]:
        """Q-basis t^j e_i, j < deg d_i, in normal-coordinate order."""
        out = []
        for i, d in enumerate(self.invariant_factors):
            for j in range(d.degree):
                coords = [Poly() for _ in self.invariant_factors]
                coords[i] = Poly.monomial(j)
                out.append(ModuleElement(self, tuple(coords)))
        return out

    def from_vector(self, vec: Sequence[Fraction]) -> "ModuleElement":
        coords, pos = [], 0
        for d in self.invariant_factors:
            coords.append(Poly(vec[pos:pos + d.degree]))
            pos += d.degree
        return ModuleElement(self, tuple(coords))

    def __repr__(self):
        return f"AlexModule(factors={[str(d) for d in self.invariant_factors]})"

    # -- pairing -------------------------------------------------------------------
    def blanchfield_direct(self, x: "ModuleElement", y: "ModuleElement") -> BlanchfieldValue:
        """(1 - t) x^T P^-1 conj(y), evaluated through the Smith form: P^-1 = R D^-1 L."""
        self._check(x)
        self._check(y)
        if self.is_trivial():
            return BlanchfieldValue.zero()
        top = self.invariant_factors[-1]
        ybar = [c.conj() for c in y.coordinates]
        num = LaurentPoly()
        for xi, lrow, d in zip(x.normal, self._l_rows, self.invariant_factors):
            if xi.is_zero():
                continue
            ly = LaurentPoly()
            for a, b in zip(lrow, ybar):
                if a and b:
                    ly = ly + a * b
            num = num + LaurentPoly(xi * top.exquo(d)) * ly
        num = num * (LaurentPoly(_ONE) - _T)
        return BlanchfieldValue.from_fraction(num, top)

    def gram(self) -> list[list[BlanchfieldValue]]:
        """Pairings of the normal generators (computed once)."""
        if self._gram is None:
            gens = self.normal_generators()
            self._gram = [[self.blanchfield_direct(a, b) for b in gens] for a in gens]
        return self._gram

    def blanchfield(self, x: "ModuleElement", y: "ModuleElement") -> BlanchfieldValue:
        """Sesquilinear extension of :meth:`gram`; agrees with :meth:`blanchfield_direct`."""
        self._check(x)
        self._check(y)
        if self.is_trivial():
            return BlanchfieldValue.zero()
        top = self.invariant_factors[-1]
        acc = Poly()
        for xi, row in zip(x.normal, self.gram()):
            if xi.is_zero():
                continue
            for yj, b in zip(y.normal, row):
                if yj.is_zero() or b.is_zero():
                    continue
                c = Poly(b.numerator_mod(top))
                acc = acc + (xi * c % top) * _reduce_laurent(LaurentPoly(yj).conj(), top)
        return BlanchfieldValue.from_fraction(LaurentPoly(acc % top), top)

    def _check(self, x):
        if not isinstance(x, ModuleElement) or x.module is not self:
            raise ValueError("element does not belong to this module")


class ModuleElement:
    """Class in an :class:`AlexModule`, stored by reduced normal coordinates."""

    __slots__ = ("module", "normal")

    def __init__(self, module: AlexModule, normal: tuple[Poly, ...]):
        self.module = module
        self.normal = normal

    @property
    def coordinates(self) -> list[LaurentPoly]:
        """Canonical representative in the presentation basis."""
        out = [LaurentPoly() for _ in range(self.module.n)]
        for c, row in zip(self.normal, self.module._rinv_rows):
            if c.is_zero():
                continue
            lc = LaurentPoly(c)
            for j, r in enumerate(row):
                if r:
                    out[j] = out[j] + lc * r
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.normal)

    def __bool__(self):
        return not self.is_zero()

    def _same(self, other):
        if not isinstance(other, ModuleElement) or other.module is not self.module:
            raise ValueError("elements of different modules")

    def __add__(self, other):
        self._same(other)
        return self.module.from_normal_coordinates([a + b for a, b in zip(self.normal, other.normal)])

    def __neg__(self):
        return ModuleElement(self.module, tuple(-c for c in self.normal))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, f):
        f = LaurentPoly.of(f)
        return self.module.from_normal_coordinates([f * LaurentPoly(c) for c in self.normal])

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.module is other.module and self.normal == other.normal

    def __hash__(self):
        return hash(self.normal)

    def to_vector(self) -> list[Fraction]:
        out = []
        for c, d in zip(self.normal, self.module.invariant_factors):
            out.extend(list(c.coeffs) + [Fraction(0)] * (d.degree - len(c.coeffs)))
        return out

    def to_json(self):
        return {"normal": [[str(c) for c in p.coeffs] for p in self.normal]}

    def __repr__(self):
        return "ModuleElement(" + ", ".join(str(c) for c in self.normal) + ")"


@dataclass(frozen=True)
class Submodule:
    """Submodule generated by ``generators``; ``order`` annihilates it."""

    module: AlexModule
    generators: tuple[ModuleElement, ...]
    order: Poly

    def rational_span(self) -> list[list[Fraction]]:
        """RREF basis of the underlying Q-subspace."""
        dim = self.module.rational_dimension
        vecs = []
        for g in self.generators:
            x = g
            for _ in range(dim):
                vecs.append(x.to_vector())
                x = _T * x
        vecs = [v for v in vecs if any(v)]
        if not vecs:
            return []
        return rref(vecs)[0]

    @property
    def dimension(self) -> int:
        return len(self.rational_span())

    def contains(self, x: ModuleElement) -> bool:
        span = self.rational_span()
        v = x.to_vector()
        if not any(v):
            return True
        return len(rref(span + [v])[1]) == len(span)

    def same_as(self, other: "Submodule") -> bool:
        return self.rational_span() == other.rational_span()

    def __repr__(self):
        gens = ", ".join(repr(g) for g in self.generators)
        return f"Submodule(order={self.order}, generators=[{gens}])"


@lru_cache(maxsize=64)
def module_from_seifert(s: SeifertMatrix) -> AlexModule:
    return AlexModule(s.presentation(), seifert=s)


def _module_for(s) -> AlexModule:
    if isinstance(s, AlexModule):
        return s
    return module_from_seifert(s)


def blanchfield(s: SeifertMatrix, x: ModuleElement, y: ModuleElement) -> BlanchfieldValue:
    """(1 - t) x^T (V^T - tV)^-1 conj(y) modulo the Laurent ring."""
    m = _module_for(s)
    if m.seifert is None:
        raise ValueError("the pairing needs a Seifert matrix")
    return m.blanchfield(x, y)


def character_value(s: SeifertMatrix, x: ModuleElement, y: ModuleElement) -> tuple[BlanchfieldValue, bool]:
    """Value of the character y -> Bl(x, y) induced by x, and whether it is nonzero."""
    v = blanchfield(s, x, y)
    return v, not v.is_zero()


def nonsingularity_witness(s) -> tuple[bool, int, list[int]]:
    """Check that x -> Bl(x, .) is injective on the module.

    Returns (nonsingular, rank of the map over Q, and for each Q-basis
    element the index of a normal generator pairing nontrivially with it,
    or -1).  Pairing against the normal generators suffices since they
    generate the module.
    """
    m = _module_for(s)
    if m.is_trivial():
        return True, 0, []
    top = m.invariant_factors[-1]
    gens = m.normal_generators()
    rows, partners = [], []
    for b in m.rational_basis():
        vals = [m.blanchfield(b, g) for g in gens]
        partners.append(next((j for j, v in enumerate(vals) if v), -1))
        rows.append([c for v in vals for c in v.numerator_mod(top)])
    r = rank(rows)
    return r == m.rational_dimension and -1 not in partners, r, partners


def _is_irreducible(p: Poly) -> bool:
    if p.degree == 1:
        return True
    if recognize_cyclotomic(p) is not None:
        return True
    from .seifert import _integer_factors

    facs = _integer_factors(p)
    return len(facs) == 1 and next(iter(facs.values())) == 1


def primary_decomposition(m: AlexModule) -> tuple[Poly, int]:
    """(p, e) with the module cyclic of order p^e, p irreducible; else raises."""
    if not m.is_cyclic():
        raise UnsupportedModuleError(
            f"module is not cyclic ({len(m.invariant_factors)} invariant factors); "
            "submodule enumeration supports cyclic modules of prime-power order only"
        )
    d = m.invariant_factors[0]
    p = squarefree_part(d)
    e = d.degree // p.degree
    if p ** e != d:
        raise UnsupportedModuleError(f"order {d} is not a power of a single factor")
    if not _is_irreducible(p):
        raise UnsupportedModuleError(f"{p} is reducible; module order is not a prime power")
    return p, e


def proper_submodules(m: AlexModule | SeifertMatrix) -> list[Submodule]:
    """Proper nonzero submodules p^k g (k = 1..e-1) of a cyclic module of order p^e."""
    m = _module_for(m)
    p, e = primary_decomposition(m)
    g = m.generator
    return [
        Submodule(m, (p ** k * g,), p ** (e - k)) for k in range(1, e)
    ]


def orthogonal_complement(s: SeifertMatrix, sub: Submodule) -> tuple[Submodule, bool]:
    """P-perp = {x : Bl(x, p) = 0 for all generators p}, and whether P == P-perp."""
    m = _module_for(s)
    if sub.module is not m:
        raise ValueError("submodule belongs to a different module")
    p, e = primary_decomposition(m)
    top = m.invariant_factors[-1]
    basis = m.rational_basis()
    gens = [g for g in sub.generators if not g.is_zero()]
    # column j: coefficients of Bl(b_j, gen) for every generator
    columns = []
    for b in basis:
        col = []
        for g in gens:
            col.extend(m.blanchfield(b, g).numerator_mod(top))
        columns.append(col)
    if gens:
        rows = [[columns[j][i] for j in range(len(basis))] for i in range(len(columns[0]))]
        kernel = nullspace(rows, len(basis))
    else:
        kernel = nullspace([], len(basis))
    dim = len(kernel)
    if dim % p.degree:
        raise ArithmeticError("orthogonal complement has dimension not divisible by deg p")
    k = e - dim // p.degree
    perp = Submodule(m, (p ** k * m.generator,), p ** (e - k))
    computed = [m.from_vector(v) for v in kernel]
    if not all(perp.contains(x) for x in computed):
        raise ArithmeticError("orthogonal complement is not the expected cyclic submodule")
    return perp, perp.same_as(sub)
