"""Branched cyclic covers: homology orders and the cyclotomic criterion."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from sympy import factorint

from .polynomial import LaurentPoly, Poly, resultant, strip_cyclotomic
from .seifert import SeifertMatrix, alexander_polynomial, connected_sum

__all__ = [
    "CoverOrder",
    "CriterionVerdict",
    "CassonGordonCertificate",
    "cover_homology_order",
    "cover_scan",
    "prime_powers",
    "livingston_criterion",
    "casson_gordon_vanishing_certificate",
    "connected_sum_cover_property",
    "thread_count",
]

DEFAULT_PRIME_POWER_BOUND = 128


@dataclass(frozen=True)
class CoverOrder:
    """|H_1| of the k-fold branched cover; 0 encodes infinite homology."""

    k: int
    order: int

    @property
    def infinite(self) -> bool:
        return self.order == 0

    @property
    def is_homology_sphere(self) -> bool:
        return self.order == 1

    def __str__(self):
        return "infinite" if self.infinite else str(self.order)


def _delta(s_or_delta) -> Poly:
    if isinstance(s_or_delta, SeifertMatrix):
        return alexander_polynomial(s_or_delta).poly
    if isinstance(s_or_delta, LaurentPoly):
        return s_or_delta.poly
    return s_or_delta


def cover_homology_order(s: SeifertMatrix, k: int) -> CoverOrder:
    """|res(Delta, t^k - 1)|."""
    if k < 2:
        raise ValueError(f"cover degree must be at least 2, got {k}")
    delta = _delta(s)
    r = resultant(delta, Poly.monomial(k) - Poly((1,)))
    if r.denominator != 1:
        raise ArithmeticError(f"non-integral resultant {r}")
    return CoverOrder(k, abs(r.numerator))


def prime_powers(bound: int) -> list[int]:
    """Prime powers q with 2 <= q <= bound, ascending."""
    return [q for q in range(2, bound + 1) if len(factorint(q)) == 1]


def thread_count() -> int:
    raw = os.environ.get("CONCORDKIT_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"CONCORDKIT_THREADS must be an integer, got {raw!r}") from None


def cover_scan(s: SeifertMatrix, ks) -> list[CoverOrder]:
    """cover_homology_order for each k, returned in ascending k.

    Runs on a thread pool when CONCORDKIT_THREADS > 1; the result order
    does not depend on scheduling.
    """
    ks = sorted(set(ks))
    alexander_polynomial(s)  # fill the cache before fanning out
    workers = thread_count()
    if workers == 1 or len(ks) < 2:
        return [cover_homology_order(s, k) for k in ks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda k: cover_homology_order(s, k), ks))


def _distinct_primes(n: int) -> int:
    return len(factorint(n))


@dataclass(frozen=True)
class CriterionVerdict:
    passes: bool
    stripped_factors: tuple[tuple[int, int], ...]
    witness: Poly | None = None

    def to_json(self):
        return {
            "passes": self.passes,
            "stripped_factors": [list(p) for p in self.stripped_factors],
            "witness": None if self.witness is None else self.witness.format(),
        }


def livingston_criterion(delta) -> CriterionVerdict:
    """Strip cyclotomic factors Phi_n with n divisible by three distinct primes.

    Passes iff nothing else remains, in which case every prime-power
    branched cyclic cover is a homology sphere.
    """
    f = _delta(delta)
    if f.is_zero() or abs(f(1)) != 1:
        raise ValueError(f"Delta(1) = {f(1) if f else 0}, expected +-1")
    f = Poly(f.coeffs[f.trailing_exponent():])
    stripped, residual = strip_cyclotomic(f, accept=lambda n: _distinct_primes(n) >= 3)
    if residual.degree < 1:
        return CriterionVerdict(True, tuple(stripped))
    return CriterionVerdict(False, tuple(stripped), residual)


@dataclass(frozen=True)
class CassonGordonCertificate:
    """Evidence that every prime-power branched cover is a homology sphere.

    ``issued`` is False for a refusal; ``failing`` then holds the first cover
    with nontrivial homology (if the scan found one).
    """

    issued: bool
    criterion: CriterionVerdict
    bound: int
    orders: tuple[CoverOrder, ...] = field(default=())
    failing: CoverOrder | None = None

    @property
    def paths_agree(self) -> bool:
        scan_ok = all(o.is_homology_sphere for o in self.orders)
        return not self.criterion.passes or scan_ok

    def to_json(self):
        return {
            "issued": self.issued,
            "bound": self.bound,
            "criterion": self.criterion.to_json(),
            "orders": {str(o.k): o.order for o in self.orders},
            "failing": None if self.failing is None else {"k": self.failing.k, "order": self.failing.order},
        }


def casson_gordon_vanishing_certificate(
    s: SeifertMatrix, prime_power_bound: int = DEFAULT_PRIME_POWER_BOUND
) -> CassonGordonCertificate:
    """Issue iff the cyclotomic criterion passes and every prime-power cover up to the bound has order 1."""
    verdict = livingston_criterion(alexander_polynomial(s))
    orders = tuple(cover_scan(s, prime_powers(prime_power_bound)))
    failing = next((o for o in orders if not o.is_homology_sphere), None)
    cert = CassonGordonCertificate(
        verdict.passes and failing is None, verdict, prime_power_bound, orders, failing
    )
    if not cert.paths_agree:
        raise ArithmeticError("criterion passed but a prime-power cover has nontrivial homology")
    return cert


def connected_sum_cover_property(s1: SeifertMatrix, s2: SeifertMatrix, k: int) -> bool:
    """order(S1 # S2, k) == order(S1, k) * order(S2, k)."""
    whole = cover_homology_order(connected_sum(s1, s2), k).order
    return whole == cover_homology_order(s1, k).order * cover_homology_order(s2, k).order
