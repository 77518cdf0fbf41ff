"""q-Pochhammer symbols and the Euler products built from them."""
import logging
from functools import lru_cache
from typing import Optional

from src.errors import DivergentProduct, NonpositiveBaseExponent
from src.series.core import Q, Series, SignedMonomial

logger = logging.getLogger(__name__)


def _times_one_minus(acc: Series, m: SignedMonomial) -> Series:
    # acc * (1 - m)
    return acc - acc.shift(m.exp).scale(m.sign)


@lru_cache(maxsize=4096)
def pochhammer(x: SignedMonomial, n: Optional[int], base: SignedMonomial, order: int) -> Series:
    """(x; base)_n = prod_{i<n} (1 - x base^i); ``n=None`` is the infinite product."""
    if base.exp < 1:
        raise NonpositiveBaseExponent(f"pochhammer base exponent {base.exp} must be >= 1")
    if n is None:
        if x.exp < 1:
            raise DivergentProduct(f"({x}; {base})_inf diverges: argument exponent {x.exp} <= 0")
        acc = Series.one().truncate(order)
        i = 0
        while x.exp + i * base.exp <= order:
            acc = _times_one_minus(acc, x * base ** i)
            i += 1
        return acc
    if n < 0:
        raise ValueError(f"finite pochhammer length must be >= 0, got {n}")
    if x.exp >= 0:
        # every factor has a nonnegative exponent, so truncating as we go is safe
        acc = Series.one().truncate(order)
        for i in range(n):
            acc = _times_one_minus(acc, x * base ** i)
        return acc
    acc = Series.one()
    for i in range(n):
        acc = _times_one_minus(acc, x * base ** i)
    return acc.truncate(order)


def euler_product(k: int, order: int) -> Series:
    """J_k = (q^k; q^k)_inf."""
    step = SignedMonomial(1, k)
    return pochhammer(step, None, step, order)


@lru_cache(maxsize=256)
def euler_inv3(order: int) -> Series:
    """1/(q)_inf^3."""
    return (euler_product(1, order) ** 3).invert(order)


def partition_series(order: int) -> Series:
    """1/(q)_inf, the partition generating function."""
    return pochhammer(Q, None, Q, order).invert(order)
