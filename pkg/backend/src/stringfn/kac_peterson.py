"""Closed eta-quotient forms of four integral-level string functions C^N_{m,l}."""
from fractions import Fraction
from typing import Callable, Dict, Tuple

from src.errors import InvalidStringParams
from src.series.core import Series, reach_order
from src.series.products import euler_product
from src.stringfn.params import OffsetSeries, StringParams
from src.theta.jacobi import J

# (p, p', m, l) -> (rational q-offset, integer-exponent body builder)
KAC_PETERSON: Dict[Tuple[int, int, int, int], Tuple[Fraction, Callable[[int], Series]]] = {
    # eta(q)^-1
    (1, 3, 0, 0): (Fraction(-1, 24), lambda o: euler_product(1, o).invert(o)),
    # eta(q)^-2 eta(q^2)
    (1, 4, 1, 1): (Fraction(0), lambda o: (euler_product(1, o) ** 2).invert(o) * euler_product(2, o)),
    # eta(q)^-2 q^(3/40) J_{6,15}
    (1, 5, 1, 1): (Fraction(-1, 12) + Fraction(3, 40), lambda o: (euler_product(1, o) ** 2).invert(o) * J(6, 15, o)),
    # eta(q)^-2 eta(q^6)^-1 eta(q^12)^2
    (1, 6, 2, 0): (
        Fraction(-2 - 6 + 24, 24),
        lambda o: (euler_product(1, o) ** 2 * euler_product(6, o)).invert(o) * euler_product(12, o) ** 2,
    ),
}


def kac_peterson_form(params: StringParams, order: int) -> OffsetSeries:
    """The closed form of C_{m,l} itself, fractional offset included."""
    key = (params.p, params.pprime, params.m, params.ell)
    if key not in KAC_PETERSON:
        raise InvalidStringParams(f"no closed form recorded for {key}; known: {sorted(KAC_PETERSON)}")
    offset, body = KAC_PETERSON[key]
    return OffsetSeries(offset, body(order))


def kac_peterson_normalized(params: StringParams, order: int) -> Series:
    """q^(-s_lambda) times the closed form, with the offset asserted integral."""
    def build(target: int) -> Series:
        return kac_peterson_form(params, target).times_q(-params.s_lambda).to_series()

    return reach_order(build, order)
