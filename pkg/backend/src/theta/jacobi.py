"""
Theta functions j(x; Q) for signed-monomial x and Q, and the J shorthand family.

j is evaluated from the bilateral sum sum_n (-1)^n Q^C(n,2) x^n; the product
side (x)_inf (Q/x)_inf (Q)_inf is kept as ``theta_product`` for cross-checks.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from src.errors import NonpositiveBaseExponent
from src.series.core import Series, SignedMonomial, binom2, parity_sign
from src.series.products import euler_product, pochhammer

logger = logging.getLogger(__name__)


def convex_argmin(curvature: int, slope: int) -> int:
    """Integer minimizer of curvature*C(n,2) + slope*n for curvature > 0."""
    vertex = Fraction(1, 2) - Fraction(slope, curvature)
    n = math.floor(vertex)
    left = curvature * binom2(n) + slope * n
    right = curvature * binom2(n + 1) + slope * (n + 1)
    return n if left <= right else n + 1


def convex_range(f, start: int, limit: int, lo: Optional[int] = None, hi: Optional[int] = None) -> Iterator[int]:
    """Integers n in [lo, hi] with f(n) <= limit, for f convex with minimizer ``start``."""
    if lo is not None and start < lo:
        start = lo
    if hi is not None and start > hi:
        start = hi
    n = start
    while (hi is None or n <= hi) and f(n) <= limit:
        yield n
        n += 1
    n = start - 1
    while (lo is None or n >= lo) and f(n) <= limit:
        yield n
        n -= 1


def theta_vanishes(x: SignedMonomial, base: SignedMonomial) -> bool:
    """j(x; Q) is identically zero exactly when x = Q^k for an integer k."""
    if x.exp % base.exp:
        return False
    k = x.exp // base.exp
    return x.sign == parity_sign(base.sign, k)


def theta_min_exponent(x: SignedMonomial, base: SignedMonomial) -> int:
    n = convex_argmin(base.exp, x.exp)
    return base.exp * binom2(n) + x.exp * n


@lru_cache(maxsize=8192)
def theta_j(x: SignedMonomial, base: SignedMonomial, order: int) -> Series:
    if base.exp < 1:
        raise NonpositiveBaseExponent(f"theta base exponent {base.exp} must be >= 1")
    B, e = base.exp, x.exp

    def exponent(n: int) -> int:
        return B * binom2(n) + e * n

    coeffs = {}
    for n in convex_range(exponent, convex_argmin(B, e), order):
        sign = parity_sign(-1, n) * parity_sign(x.sign, n) * parity_sign(base.sign, binom2(n))
        k = exponent(n)
        coeffs[k] = coeffs.get(k, 0) + sign
    return Series(coeffs, order)


def theta_valuation(x: SignedMonomial, base: SignedMonomial) -> int:
    """Exponent of the lowest nonzero term of j(x; Q), which must not vanish."""
    start = theta_min_exponent(x, base)
    step = max(base.exp, 1)
    reach = start
    while True:
        series = theta_j(x, base, reach)
        if not series.is_zero():
            return series.lo
        reach += step


def theta_product(x: SignedMonomial, base: SignedMonomial, order: int) -> Series:
    """Product side (x)_inf (Q/x)_inf (Q)_inf; needs 0 < x.exp < base.exp."""
    return (
        pochhammer(x, None, base, order)
        * pochhammer(base / x, None, base, order)
        * pochhammer(base, None, base, order)
    )


def J(a: int, b: int, order: int) -> Series:
    """J_{a,b} = j(q^a; q^b)."""
    return theta_j(SignedMonomial(1, a), SignedMonomial(1, b), order)


def Jbar(a: int, b: int, order: int) -> Series:
    """J-bar_{a,b} = j(-q^a; q^b)."""
    return theta_j(SignedMonomial(-1, a), SignedMonomial(1, b), order)


def Jsingle(a: int, order: int) -> Series:
    """J_a = (q^a; q^a)_inf."""
    if a < 1:
        raise NonpositiveBaseExponent(f"J_a needs a >= 1, got {a}")
    return euler_product(a, order)


def J_family(a: int, b: Optional[int], kind: str, order: int) -> Series:
    if kind == "plain":
        return J(a, b, order)
    if kind == "bar":
        return Jbar(a, b, order)
    if kind == "single":
        return Jsingle(a, order)
    raise ValueError(f"unknown J kind {kind!r}")


