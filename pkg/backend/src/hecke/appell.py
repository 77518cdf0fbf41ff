"""
Appell functions

    m(x, z; Q) = 1/j(z; Q) * sum_r (-1)^r Q^C(r,2) z^r / (1 - Q^(r-1) x z).

Each denominator is expanded as a geometric series in the direction in which
it converges: forward when u_r = Q^(r-1) x z has positive exponent, through
-u^-1/(1 - u^-1) when negative, and as the constant 1/2 when u_r = -1.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict

from src.errors import AppellPole, NonpositiveBaseExponent, ThetaDenominatorZero
from src.series.core import Coefficient, Series, SignedMonomial, binom2, parity_sign
from src.theta.jacobi import theta_j, theta_valuation, theta_vanishes

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class AppellSpec:
    x: SignedMonomial
    z: SignedMonomial
    base: SignedMonomial

    def __post_init__(self):
        if self.base.exp < 1:
            raise NonpositiveBaseExponent(f"Appell base exponent {self.base.exp} must be >= 1")

    def numerator(self, r: int) -> SignedMonomial:
        sign = parity_sign(-1, r) * parity_sign(self.base.sign, binom2(r)) * parity_sign(self.z.sign, r)
        return SignedMonomial(sign, self.base.exp * binom2(r) + self.z.exp * r)

    def pole_monomial(self, r: int) -> SignedMonomial:
        return self.base ** (r - 1) * self.x * self.z

    def min_exponent(self, r: int) -> int:
        u = self.pole_monomial(r)
        return self.numerator(r).exp + max(0, -u.exp)


def _argmin(spec: AppellSpec) -> int:
    # min_exponent is a maximum of two convex functions of r, hence convex
    r = 0
    while spec.min_exponent(r - 1) < spec.min_exponent(r):
        r -= 1
    while spec.min_exponent(r + 1) < spec.min_exponent(r):
        r += 1
    return r


def appell_sum(spec: AppellSpec, order: int) -> Series:
    """The r-sum of m(x, z; Q) without the 1/j(z; Q) prefactor."""
    coeffs: Dict[int, Coefficient] = {}

    def put(e: int, c: Coefficient):
        coeffs[e] = coeffs.get(e, 0) + c

    start = _argmin(spec)
    rows = 0
    for direction in (1, -1):
        r = start if direction == 1 else start - 1
        while spec.min_exponent(r) <= order:
            num = spec.numerator(r)
            u = spec.pole_monomial(r)
            if u.exp > 0:
                k = 0
                while num.exp + k * u.exp <= order:
                    put(num.exp + k * u.exp, num.sign * parity_sign(u.sign, k))
                    k += 1
            elif u.exp < 0:
                k = 1
                while num.exp - k * u.exp <= order:
                    put(num.exp - k * u.exp, -num.sign * parity_sign(u.sign, k))
                    k += 1
            elif u.sign == -1:
                put(num.exp, num.sign * HALF)
            else:
                raise AppellPole(f"m({spec.x},{spec.z};{spec.base}): 1 - Q^{r - 1} x z vanishes at r={r}")
            rows += 1
            r += direction
    logger.debug(f"appell sum m({spec.x},{spec.z};{spec.base}) to {order}: {rows} rows")
    return Series(coeffs, order)


@lru_cache(maxsize=4096)
def appell_m(spec: AppellSpec, order: int) -> Series:
    if theta_vanishes(spec.z, spec.base):
        raise ThetaDenominatorZero(f"j({spec.z};{spec.base}) vanishes identically")
    v = theta_valuation(spec.z, spec.base)
    numerator = appell_sum(spec, order + v)
    pad = max(0, -(numerator.lo if numerator.lo is not None else 0))
    denominator = theta_j(spec.z, spec.base, order + 2 * v + pad).invert()
    return (numerator * denominator).truncate(order)
