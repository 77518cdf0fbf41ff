"""
Hecke-type double sums

    f_{a,b,c}(x, y; Q) = ( sum_{r,s >= 0} - sum_{r,s < 0} )
        (-1)^(r+s) x^r y^s Q^(a C(r,2) + b r s + c C(s,2)).

Enumeration is certified: in both quadrants b*r*s >= 0, so the exponent is
bounded below by g(r) + h(s) with g, h convex; rows r are taken from the
interval where g(r) + min h <= O, and within a row the exact exponent is convex
in s.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Optional, Tuple

from src.errors import NonpositiveBaseExponent, UnboundedDoubleSum
from src.series.core import Series, SignedMonomial, binom2, parity_sign
from src.theta.jacobi import convex_argmin, convex_range

logger = logging.getLogger(__name__)

# (r-domain lo, r-domain hi, contribution sign)
_QUADRANTS = ((0, None, 1), (None, -1, -1))


@dataclass(frozen=True)
class HeckeSpec:
    a: int
    b: int
    c: int
    x: SignedMonomial
    y: SignedMonomial
    base: SignedMonomial

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise UnboundedDoubleSum(f"f_{{{self.a},{self.b},{self.c}}} needs a, b, c >= 1")
        if self.base.exp < 1:
            raise NonpositiveBaseExponent(f"Hecke base exponent {self.base.exp} must be >= 1")

    def quadratic(self, r: int, s: int) -> int:
        return self.a * binom2(r) + self.b * r * s + self.c * binom2(s)

    def exponent(self, r: int, s: int) -> int:
        return self.base.exp * self.quadratic(r, s) + self.x.exp * r + self.y.exp * s

    def term_sign(self, r: int, s: int) -> int:
        return (
            parity_sign(-1, r + s)
            * parity_sign(self.x.sign, r)
            * parity_sign(self.y.sign, s)
            * parity_sign(self.base.sign, self.quadratic(r, s))
        )


def _clamp_min(curvature: int, slope: int, lo: Optional[int], hi: Optional[int]) -> int:
    n = convex_argmin(curvature, slope)
    if lo is not None:
        n = max(n, lo)
    if hi is not None:
        n = min(n, hi)
    return n


def quadrant_terms(spec: HeckeSpec, order: int) -> Iterator[Tuple[int, int, int]]:
    """Yield (r, s, signed contribution) for every term with exponent <= order."""
    B = spec.base.exp
    for lo, hi, weight in _QUADRANTS:
        s_start = _clamp_min(B * spec.c, spec.y.exp, lo, hi)
        h_min = B * spec.c * binom2(s_start) + spec.y.exp * s_start

        def row_bound(r: int) -> int:
            return B * spec.a * binom2(r) + spec.x.exp * r

        r_start = _clamp_min(B * spec.a, spec.x.exp, lo, hi)
        for r in convex_range(row_bound, r_start, order - h_min, lo, hi):
            slope = B * spec.b * r + spec.y.exp
            start = _clamp_min(B * spec.c, slope, lo, hi)
            for s in convex_range(lambda s: spec.exponent(r, s), start, order, lo, hi):
                yield r, s, weight * spec.term_sign(r, s)


@lru_cache(maxsize=4096)
def hecke_f(spec: HeckeSpec, order: int) -> Series:
    coeffs: Dict[int, int] = {}
    count = 0
    for r, s, sign in quadrant_terms(spec, order):
        e = spec.exponent(r, s)
        coeffs[e] = coeffs.get(e, 0) + sign
        count += 1
    logger.debug(f"f_{{{spec.a},{spec.b},{spec.c}}}({spec.x},{spec.y};{spec.base}) to {order}: {count} terms")
    return Series(coeffs, order)


def hecke_f_naive(spec: HeckeSpec, order: int) -> Series:
    """Box enumeration without the row certificate; an oracle for ``hecke_f``."""
    xe, ye = abs(spec.x.exp), abs(spec.y.exp)
    radius = 2 * (xe + ye) + math.isqrt(2 * max(order, 0) + (xe + 1) ** 2 + (ye + 1) ** 2) + 4
    coeffs: Dict[int, int] = {}
    for s in range(-radius, radius + 1):
        for r in range(-radius, radius + 1):
            if (r >= 0) != (s >= 0):
                continue
            e = spec.exponent(r, s)
            if e > order:
                continue
            weight = 1 if r >= 0 else -1
            coeffs[e] = coeffs.get(e, 0) + weight * spec.term_sign(r, s)
    return Series(coeffs, order)
