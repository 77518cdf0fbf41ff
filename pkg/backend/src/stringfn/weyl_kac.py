"""
Independent string-function oracle from the Weyl-Kac character quotient.

With w = z^(1/2) the numerator sum_sigma sigma Theta_{sigma(l+1),p'}(z; q^p) is

    q^(p(l+1)^2/(4p')) sum_{sigma, k} sigma q^(p k (p' k + sigma(l+1))) w^-(2p'k + sigma(l+1)),

and the denominator equals w^-1 q^(1/8) j(w^2; q). Its reciprocal is expanded
through the partial fractions

    (q)^3_inf / j(z; q) = sum_n (-1)^n q^C(n+1,2) / (1 - q^n z),   |q| < |z| < 1,

giving an even Laurent polynomial in w per q-order. The coefficient of w^-m
times q^(m^2/(4N)) is C_{m,l}; the fractional offsets are tracked in
OffsetSeries and must cancel against s_lambda.
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from src.errors import InvalidStringParams, OffsetMismatch, WindowTooSmall
from src.series.core import Series, binom2, parity_sign
from src.series.products import euler_inv3
from src.stringfn.params import OffsetSeries, StringParams

logger = logging.getLogger(__name__)


def numerator_terms(p: int, pprime: int, ell: int, order: int) -> List[Tuple[int, int, int]]:
    """(w-exponent n, sign, integer q-exponent) of the numerator, with the common offset removed."""
    terms = []
    for sigma in (1, -1):
        for direction in (1, -1):
            k = 0 if direction == 1 else -1
            while True:
                e = p * k * (pprime * k + sigma * (ell + 1))
                if e > order:
                    break
                terms.append((2 * pprime * k + sigma * (ell + 1), sigma, e))
                k += direction
    return terms


def partial_fraction_coefficient(index: int, order: int) -> Series:
    """Coefficient of w^index in sum_n (-1)^n q^C(n+1,2) / (1 - q^n w^2)."""
    if index % 2:
        return Series.zero(order)
    k = index // 2
    coeffs: Dict[int, int] = {}
    if k >= 0:
        n = 0
        while binom2(n + 1) + n * k <= order:
            e = binom2(n + 1) + n * k
            coeffs[e] = coeffs.get(e, 0) + parity_sign(-1, n)
            n += 1
    else:
        n = -1
        while binom2(n + 1) + n * k <= order:
            e = binom2(n + 1) + n * k
            coeffs[e] = coeffs.get(e, 0) - parity_sign(-1, n)
            n -= 1
    return Series(coeffs, order)


class _Band:
    """Partial-fraction coefficients on a finite w-band."""

    def __init__(self, radius: int, order: int):
        self.radius = radius
        self.order = order
        self._cache: Dict[int, Series] = {}

    def __getitem__(self, index: int) -> Series:
        if abs(index) > self.radius:
            raise WindowTooSmall(f"w^{index} lies outside the computed band |w| <= {self.radius}")
        if index not in self._cache:
            self._cache[index] = partial_fraction_coefficient(index, self.order)
        return self._cache[index]


def weyl_kac_oracle(p: int, pprime: int, ell: int, window: Iterable[int], order: int) -> Dict[int, OffsetSeries]:
    """Map each quantum number m in ``window`` to C-cal_{m,l} computed from the character quotient."""
    if pprime <= 2 * p:
        raise InvalidStringParams(f"the oracle needs positive level, got (p, p') = ({p}, {pprime})")
    params = {m: StringParams.of(p, pprime, m, ell) for m in window}
    terms = numerator_terms(p, pprime, ell, order)
    radius = max(abs(n) for n, _, _ in terms) + max((abs(m) for m in params), default=0) + 1
    band = _Band(radius, order)
    inv3 = euler_inv3(order)
    numerator_offset = Fraction(p * (ell + 1) ** 2, 4 * pprime)
    level = Fraction(pprime, p) - 2
    result: Dict[int, OffsetSeries] = {}
    for m, sp in sorted(params.items()):
        body = Series.zero(order)
        for n, sigma, e in terms:
            # w^(1-n) * P[j] contributes to w^-m when j = n - 1 - m
            body = body + band[n - 1 - m].shift(e).scale(sigma).truncate(order)
        raw = OffsetSeries(numerator_offset - Fraction(1, 8), body * inv3)
        normalized = raw.times_q(-sp.s_lambda - Fraction(m * m) / (4 * level))
        if normalized.offset.denominator != 1:
            raise OffsetMismatch(f"m={m}: residual offset {normalized.offset} is not integral")
        result[m] = normalized.normalized()
    logger.debug(f"Weyl-Kac oracle ({p},{pprime}) l={ell}: {len(result)} quantum numbers to {order}")
    return result
