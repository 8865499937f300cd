"""Exact univariate polynomials over Q and over the Laurent ring Q[t, t^-1].

Coefficients are :class:`fractions.Fraction` throughout; lists are stored
constant term first.  Everything here is immutable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import divisors, totient

__all__ = [
    "Poly",
    "LaurentPoly",
    "T",
    "poly_gcd",
    "poly_xgcd",
    "inverse_mod",
    "cyclotomic",
    "recognize_cyclotomic",
    "resultant",
    "sylvester_matrix",
    "squarefree_part",
    "strip_cyclotomic",
    "parse_laurent",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(c) -> Fraction:
    return c if type(c) is Fraction else Fraction(c)


class Poly:
    """Polynomial in Q[t]; ``coeffs[i]`` is the coefficient of ``t**i``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, cs: list) -> "Poly":
        # cs: Fractions, caller guarantees nothing; trailing zeros trimmed here
        while cs and cs[-1] == 0:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent in Q[t]")
        return cls([0] * k + [c])

    # -- basic structure ---------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly((other,))
            else:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly((other,))
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            o = _frac(other)
            return Poly._raw([c * o for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = Poly((other,))
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Poly(), self
        inv_lead = 1 / other.lead
        quot = [_ZERO] * (len(rem) - db)
        b = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv_lead
            quot[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * b[j]
        return Poly._raw(quot), Poly._raw(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other: "Poly") -> "Poly":
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, int) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def derivative(self) -> "Poly":
        return Poly._raw([c * i for i, c in enumerate(self.coeffs)][1:])

    def reverse(self) -> "Poly":
        """``t**deg * f(1/t)``; trailing zeros of ``self`` lower the degree."""
        return Poly(reversed(self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by ``t**k`` (k >= 0)."""
        if self.is_zero() or k == 0:
            return self
        return Poly._raw([_ZERO] * k + list(self.coeffs))

    def trailing_exponent(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def primitive_integer(self) -> "Poly":
        """Integer-coefficient associate with content 1 and positive leading coefficient."""
        if self.is_zero():
            return self
        from math import gcd, lcm

        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return Poly(i // g for i in ints)

    def to_ints(self) -> list[int]:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    # -- display -----------------------------------------------------------
    def format(self, var: str = "t", ascending: bool = False) -> str:
        if self.is_zero():
            return "0"
        terms = []
        order = range(len(self.coeffs)) if ascending else range(len(self.coeffs) - 1, -1, -1)
        for k in order:
            c = self.coeffs[k]
            if not c:
                continue
            terms.append(_term(c, k, var))
        return _join_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"


def _term(c: Fraction, k: int, var: str) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if k == 0:
        body = str(a)
    else:
        mono = var if k == 1 else f"{var}^{k}"
        body = mono if a == 1 else f"{a}*{mono}"
    return sign + body


def _join_terms(terms: list[str]) -> str:
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s


T = Poly((0, 1))


class LaurentPoly:
    """Element of Q[t, t^-1] stored as ``t**low * poly`` with ``poly(0) != 0``."""

    __slots__ = ("low", "poly", "_hash")

    def __init__(self, poly: Poly | Sequence = (), low: int = 0):
        if not isinstance(poly, Poly):
            poly = Poly(poly)
        if poly.is_zero():
            self.low, self.poly = 0, poly
        else:
            k = poly.trailing_exponent()
            self.low = low + k
            self.poly = Poly._raw(list(poly.coeffs[k:])) if k else poly
        self._hash = None

    @classmethod
    def of(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, Poly):
            return cls(x)
        return cls(Poly((x,)))

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls(Poly((c,)), k)

    @property
    def high(self) -> int:
        return self.low + self.poly.degree

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self):
        return not self.poly.is_zero()

    def is_unit(self) -> bool:
        return self.poly.degree == 0

    def coefficient(self, k: int) -> Fraction:
        i = k - self.low
        if 0 <= i < len(self.poly.coeffs):
            return self.poly.coeffs[i]
        return _ZERO

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (Poly, int, Fraction)):
                other = LaurentPoly.of(other)
            else:
                return NotImplemented
        return self.low == other.low and self.poly == other.poly

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Laurent", self.low, self.poly.coeffs))
        return self._hash

    def __neg__(self):
        return LaurentPoly(-self.poly, self.low)

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (Poly, int, Fraction)):
                other = LaurentPoly.of(other)
            else:
                return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.low, other.low)
        return LaurentPoly(
            self.poly.shift(self.low - lo) + other.poly.shift(other.low - lo), lo
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-LaurentPoly.of(other))

    def __rsub__(self, other):
        return LaurentPoly.of(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.poly * other, self.low)
        if isinstance(other, Poly):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly(self.poly * other.poly, self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            return LaurentPoly(Poly((1 / self.poly.lead ** (-k),)), self.low * k)
        return LaurentPoly(self.poly ** k, self.low * k)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.poly, self.low + k) if self else self

    def conj(self) -> "LaurentPoly":
        """Involution t -> t^-1."""
        if self.is_zero():
            return self
        return LaurentPoly(self.poly.reverse(), -self.high)

    def __call__(self, x):
        v = self.poly(x)
        return v * x ** self.low if self.low >= 0 else v / x ** (-self.low)

    def to_poly(self) -> Poly:
        if self.low < 0:
            raise ValueError(f"{self} has negative powers of t")
        return self.poly.shift(self.low)

    def normalized(self) -> Poly:
        """Monic associate with zero low exponent (units of the Laurent ring removed)."""
        return self.poly.monic()

    def format(self, var: str = "t", ascending: bool = False) -> str:
        if self.is_zero():
            return "0"
        cs = self.poly.coeffs
        idx = range(len(cs)) if ascending else range(len(cs) - 1, -1, -1)
        return _join_terms([_term(cs[i], i + self.low, var) for i in idx if cs[i]])

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentPoly({[str(c) for c in self.poly.coeffs]}, low={self.low})"


# -- gcd and friends ---------------------------------------------------------

def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q[t]; ``gcd(0, 0) == 0``."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, u)`` with ``s*a + u*b == g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = Poly((1,)), Poly()
    u0, u1 = Poly(), Poly((1,))
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if r0.is_zero():
        return r0, s0, u0
    c = 1 / r0.lead
    return r0 * c, s0 * c, u0 * c


def inverse_mod(a: Poly, m: Poly) -> Poly:
    g, s, _ = poly_xgcd(a % m, m)
    if g != Poly((1,)):
        raise ArithmeticError(f"{a} is not invertible modulo {m}")
    return s % m


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct irreducible factors of ``f`` (monic)."""
    if f.degree < 1:
        return Poly((1,))
    return f.exquo(poly_gcd(f, f.derivative())).monic()


# -- cyclotomic polynomials --------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial, by dividing t^n - 1 by Phi_d for d | n, d < n."""
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    f = Poly.monomial(n) - 1
    for d in divisors(n)[:-1]:
        f = f.exquo(cyclotomic(d))
    return f


def _cyclotomic_search_bound(deg: int) -> int:
    # phi(n) >= sqrt(n/2), so phi(n) == deg forces n <= 2*deg^2
    return max(2 * deg * deg, 2)


def recognize_cyclotomic(f: Poly | LaurentPoly) -> int | None:
    """Return n with ``f == Phi_n`` up to units of Q[t, t^-1], else None."""
    if isinstance(f, LaurentPoly):
        f = f.poly
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = Poly(f.coeffs[f.trailing_exponent():]).monic()
    d = f.degree
    if d < 1:
        return None
    for n in range(1, _cyclotomic_search_bound(d) + 1):
        if totient(n) == d and cyclotomic(n) == f:
            return n
    return None


def strip_cyclotomic(f: Poly, accept=lambda n: True) -> tuple[list[tuple[int, int]], Poly]:
    """Divide out cyclotomic factors of ``f``, smallest index first.

    Only indices with ``accept(n)`` true are stripped.  Returns the list of
    ``(n, multiplicity)`` and the monic residual.
    """
    g = Poly(f.coeffs[f.trailing_exponent():]).monic() if f else f
    stripped = []
    if g.degree < 1:
        return stripped, g
    bound = _cyclotomic_search_bound(g.degree)
    for n in range(1, bound + 1):
        if totient(n) > g.degree:
            continue
        if not accept(n):
            continue
        phi = cyclotomic(n)
        mult = 0
        while g.degree >= phi.degree:
            q, r = divmod(g, phi)
            if r:
                break
            g, mult = q, mult + 1
        if mult:
            stripped.append((n, mult))
        if g.degree < 1:
            break
    return stripped, g


# -- resultants ---------------------------------------------------------------

def resultant(f: Poly, g: Poly) -> Fraction:
    """Resultant res(f, g) = lead(f)^deg(g) * prod g(roots of f).

    Agrees with the Sylvester determinant; computed by the Euclidean
    remainder recurrence.  A zero argument gives 0.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return _ZERO
    acc = _ONE
    a, b = f, g
    while True:
        m, n = a.degree, b.degree
        if m == 0:
            return acc * a.lead ** n
        if n == 0:
            return acc * b.lead ** m
        if m > n:
            if m * n % 2:
                acc = -acc
            a, b = b, a
            continue
        r = b % a
        if r.is_zero():
            return _ZERO
        acc *= a.lead ** (n - r.degree)
        b = r


def sylvester_matrix(f: Poly, g: Poly) -> list[list[Fraction]]:
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        raise ValueError("Sylvester matrix of the zero polynomial")
    size = m + n
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([_ZERO] * i + fr + [_ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([_ZERO] * i + gr + [_ZERO] * (size - n - 1 - i))
    return rows


def parse_laurent(text: str, var: str = "t") -> LaurentPoly:
    """Parse expressions like ``t^-1 - 2 + 3*t^2`` or ``Phi(30)^2``.

    ``Phi(n)`` stands for the n-th cyclotomic polynomial.
    """
    import sympy

    x = sympy.Symbol(var)
    names = {var: x, "Phi": lambda n: sympy.cyclotomic_poly(int(n), x)}
    try:
        expr = sympy.expand(sympy.sympify(text.replace("^", "**"), locals=names))
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from None
    out = LaurentPoly()
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        coeff, exp = term.as_coeff_exponent(x)
        if coeff.free_symbols or not coeff.is_Rational or not exp.is_Integer:
            raise ValueError(f"not a Laurent polynomial in {var} with rational coefficients: {text!r}")
        out = out + LaurentPoly.monomial(int(exp), Fraction(int(coeff.p), int(coeff.q)))
    return out
