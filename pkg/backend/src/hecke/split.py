"""
Appell/theta decomposition of f_{n,n,1}:

    f_{n,n,1}(x, y; Q) = h_{n,n,1}(x, y; Q) - theta_{n,n,1}(x, y; Q) / (J-bar_{0,n-1} J-bar_{0,n(n-1)}),

with every q in the formulas read as the base Q. The signs follow the general
form with (-y)^k, which coincides with the specialized forms for n = 4, 5, 7;
other n are rejected.
"""
import logging
from functools import lru_cache
from typing import Tuple

from src.errors import SplitUndefined
from src.hecke.appell import AppellSpec, appell_m
from src.series.core import MINUS_ONE, Series, SignedMonomial, binom2, reach_order
from src.series.products import pochhammer
from src.theta.jacobi import theta_j, theta_vanishes

logger = logging.getLogger(__name__)

SUPPORTED_N = (4, 5, 7)


def _check_n(n: int):
    if n not in SUPPORTED_N:
        raise SplitUndefined(f"the f_{{n,n,1}} split is available for n in {SUPPORTED_N}, got {n}")


def _theta_quotient(x: SignedMonomial, base: SignedMonomial, order: int) -> Series:
    if theta_vanishes(x, base):
        raise SplitUndefined(f"denominator j({x};{base}) vanishes identically")
    return theta_j(x, base, order).invert()


def _h(n: int, x: SignedMonomial, y: SignedMonomial, base: SignedMonomial, order: int) -> Series:
    Qn1 = base ** (n - 1)
    Qnn = base ** (n * (n - 1))
    first = theta_j(x, base ** n, order) * appell_m(AppellSpec(-(Qn1 * y / x), MINUS_ONE, Qn1), order)
    second_arg = base ** binom2(n) * x * (-y) ** (-n)
    second = theta_j(y, base, order) * appell_m(AppellSpec(second_arg, MINUS_ONE, Qnn), order)
    return first + second


def _theta(n: int, x: SignedMonomial, y: SignedMonomial, base: SignedMonomial, order: int) -> Series:
    Qnn = base ** (n * (n - 1))
    cube = pochhammer(Qnn, None, Qnn, order) ** 3
    common_den = _theta_quotient(-(base ** binom2(n) * x * (-y) ** (-n)), Qnn, order)
    total = Series.zero()
    for d in range(n):
        step = base ** ((n - 1) * (d + 1))
        term = (
            theta_j(step * y, base ** n, order)
            * theta_j(-(base ** (n * (n - 1) - (n - 1) * (d + 1)) * x / y), Qnn, order)
            * theta_j(base ** binom2(n) * step * (-y) ** (1 - n), Qnn, order)
            * _theta_quotient(step * y / x, Qnn, order)
        )
        prefactor = base ** ((n - 1) * binom2(d + 1))
        total = total + term.shift(prefactor.exp).scale(prefactor.sign)
    return total * cube * common_den


@lru_cache(maxsize=1024)
def split_h(n: int, x: SignedMonomial, y: SignedMonomial, base: SignedMonomial, order: int) -> Series:
    _check_n(n)
    return reach_order(lambda t: _h(n, x, y, base, t), order)


@lru_cache(maxsize=1024)
def split_theta(n: int, x: SignedMonomial, y: SignedMonomial, base: SignedMonomial, order: int) -> Series:
    _check_n(n)
    return reach_order(lambda t: _theta(n, x, y, base, t), order)


def split_denominator(n: int, base: SignedMonomial, order: int) -> Series:
    """J-bar_{0,n-1} * J-bar_{0,n(n-1)} in the base Q."""
    return theta_j(MINUS_ONE, base ** (n - 1), order) * theta_j(MINUS_ONE, base ** (n * (n - 1)), order)


def hecke_split(n: int, x: SignedMonomial, y: SignedMonomial, base: SignedMonomial, order: int) -> Tuple[Series, Series]:
    """Return (h_{n,n,1}, theta_{n,n,1}) at (x, y; base) to the given order."""
    logger.debug(f"splitting f_{{{n},{n},1}}({x},{y};{base}) to {order}")
    return split_h(n, x, y, base, order), split_theta(n, x, y, base, order)


def recombine(n: int, h: Series, theta: Series, base: SignedMonomial, order: int) -> Series:
    """h - theta / (J-bar_{0,n-1} J-bar_{0,n(n-1)})."""
    def build(t: int) -> Series:
        return h - theta * split_denominator(n, base, t).invert()
    return reach_order(build, order)
