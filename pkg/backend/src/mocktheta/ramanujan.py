"""
Second- and third-order mock theta functions as q-hypergeometric series, and
the universal mock theta function g3.

    mu2(q)    = sum_{n>=0} (-1)^n q^(n^2) (q;q^2)_n / (-q^2;q^2)_n^2
    f3(q)     = sum_{n>=0} q^(n^2) / (-q)_n^2
    omega3(q) = sum_{n>=0} q^(2n(n+1)) / (q;q^2)_{n+1}^2
    psi3(q)   = sum_{n>=1} q^(n^2) / (q;q^2)_n
    chi3(q)   = sum_{n>=0} q^(n^2) (-q)_n / (-q^3;q^3)_n
"""
import logging
from functools import lru_cache
from typing import Callable, Dict

from src.errors import NonUnitDenominator, NonpositiveBaseExponent, UnknownMockTheta
from src.series.core import Q, Series, SignedMonomial, parity_sign
from src.series.products import pochhammer

logger = logging.getLogger(__name__)

Q2 = SignedMonomial(1, 2)
Q3 = SignedMonomial(1, 3)


def _hypergeometric_sum(order: int, leading: Callable[[int], int], term: Callable[[int, int], Series], start: int = 0) -> Series:
    total = Series.zero(order)
    n = start
    while leading(n) <= order:
        lead = leading(n)
        total = total + term(n, order - lead).shift(lead).truncate(order)
        n += 1
    return total


def _mu2(order: int) -> Series:
    def term(n: int, rel: int) -> Series:
        num = pochhammer(Q, n, Q2, rel)
        den = pochhammer(SignedMonomial(-1, 2), n, Q2, rel) ** 2
        return (num * den.invert(rel)).scale(parity_sign(-1, n))
    return _hypergeometric_sum(order, lambda n: n * n, term)


def _f3(order: int) -> Series:
    def term(n: int, rel: int) -> Series:
        return (pochhammer(SignedMonomial(-1, 1), n, Q, rel) ** 2).invert(rel)
    return _hypergeometric_sum(order, lambda n: n * n, term)


def _omega3(order: int) -> Series:
    def term(n: int, rel: int) -> Series:
        return (pochhammer(Q, n + 1, Q2, rel) ** 2).invert(rel)
    return _hypergeometric_sum(order, lambda n: 2 * n * (n + 1), term)


def _psi3(order: int) -> Series:
    def term(n: int, rel: int) -> Series:
        return pochhammer(Q, n, Q2, rel).invert(rel)
    return _hypergeometric_sum(order, lambda n: n * n, term, start=1)


def _chi3(order: int) -> Series:
    def term(n: int, rel: int) -> Series:
        num = pochhammer(SignedMonomial(-1, 1), n, Q, rel)
        den = pochhammer(SignedMonomial(-1, 3), n, Q3, rel)
        return num * den.invert(rel)
    return _hypergeometric_sum(order, lambda n: n * n, term)


MOCK_THETA: Dict[str, Callable[[int], Series]] = {
    "mu2": _mu2,
    "f3": _f3,
    "omega3": _omega3,
    "psi3": _psi3,
    "chi3": _chi3,
}


@lru_cache(maxsize=256)
def _mock_in_q(name: str, order: int) -> Series:
    logger.debug(f"evaluating {name}(q) to order {order}")
    return MOCK_THETA[name](order)


def mock(name: str, base: SignedMonomial, order: int) -> Series:
    """The named mock theta function evaluated at the signed monomial ``base``."""
    if name not in MOCK_THETA:
        raise UnknownMockTheta(f"unknown mock theta function {name!r}; known: {sorted(MOCK_THETA)}")
    if base.exp < 1:
        raise NonpositiveBaseExponent(f"mock theta argument exponent {base.exp} must be >= 1")
    inner = -(-order // base.exp) if order > 0 else 0
    return _mock_in_q(name, inner).compose_base(base).truncate(order)


@lru_cache(maxsize=256)
def universal_g3(x: SignedMonomial, base: SignedMonomial, order: int) -> Series:
    """g3(x; Q) = x^-1 (-1 + sum_{n>=0} Q^(n^2) / ((x;Q)_{n+1} (Q/x;Q)_n))."""
    if base.exp < 1:
        raise NonpositiveBaseExponent(f"g3 base exponent {base.exp} must be >= 1")
    if not 1 <= x.exp < base.exp:
        raise NonUnitDenominator(f"g3({x};{base}) needs 1 <= x.exp < base.exp")
    target = order + x.exp
    total = Series.constant(-1).truncate(target)
    n = 0
    while n * n * base.exp <= target:
        lead = n * n * base.exp
        rel = target - lead
        den = pochhammer(x, n + 1, base, rel) * pochhammer(base / x, n, base, rel)
        total = total + den.invert(rel).shift(lead).scale(parity_sign(base.sign, n)).truncate(target)
        n += 1
    return total.shift(-x.exp).scale(x.sign)
