"""
Exact truncated Laurent series in q.

A Series is authoritative for every exponent up to its ``order``; an order of
``None`` marks an exact, finitely supported series (a Laurent polynomial such as
q^k or a finite product). Coefficients are ints or Fractions, never floats.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple, Union

from src.errors import (
    NonpositiveBaseExponent,
    OrderExceeded,
    PrecisionShortfall,
    UnboundedPrecision,
    ZeroLeadingCoefficient,
)

logger = logging.getLogger(__name__)

Coefficient = Union[int, Fraction]


def _normalize(c: Coefficient) -> Coefficient:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def parity_sign(sign: int, k: int) -> int:
    """sign**k for sign in {+1, -1}, any integer k."""
    if sign == 1 or k % 2 == 0:
        return 1
    return -1


def binom2(n: int) -> int:
    """C(n, 2) = n(n-1)/2, valid for negative n."""
    return n * (n - 1) // 2


def _min_order(*orders: Optional[int]) -> Optional[int]:
    finite = [o for o in orders if o is not None]
    return min(finite) if finite else None


@dataclass(frozen=True)
class SignedMonomial:
    """The value sign * q^exp."""
    sign: int
    exp: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @classmethod
    def q(cls, exp: int = 1, sign: int = 1) -> "SignedMonomial":
        return cls(sign, exp)

    def __mul__(self, other: "SignedMonomial") -> "SignedMonomial":
        return SignedMonomial(self.sign * other.sign, self.exp + other.exp)

    def __truediv__(self, other: "SignedMonomial") -> "SignedMonomial":
        return SignedMonomial(self.sign * other.sign, self.exp - other.exp)

    def __pow__(self, n: int) -> "SignedMonomial":
        return SignedMonomial(parity_sign(self.sign, n), self.exp * n)

    def __neg__(self) -> "SignedMonomial":
        return SignedMonomial(-self.sign, self.exp)

    def inverse(self) -> "SignedMonomial":
        return SignedMonomial(self.sign, -self.exp)

    def to_series(self) -> "Series":
        return Series.monomial(self.exp, self.sign)

    def __str__(self) -> str:
        prefix = "-" if self.sign < 0 else ""
        if self.exp == 0:
            return f"{prefix}1"
        if self.exp == 1:
            return f"{prefix}q"
        return f"{prefix}q^{self.exp}" if self.exp > 0 else f"{prefix}q^({self.exp})"


ONE = SignedMonomial(1, 0)
MINUS_ONE = SignedMonomial(-1, 0)
Q = SignedMonomial(1, 1)


class Series:
    """Immutable sparse truncated Laurent series with a validity window."""

    __slots__ = ("_coeffs", "_order")

    def __init__(self, coeffs: Optional[Mapping[int, Coefficient]] = None, order: Optional[int] = None):
        clean: Dict[int, Coefficient] = {}
        for e, c in (coeffs or {}).items():
            if c == 0 or (order is not None and e > order):
                continue
            clean[e] = _normalize(c)
        self._coeffs = clean
        self._order = order

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, order: Optional[int] = None) -> "Series":
        return cls({}, order)

    @classmethod
    def one(cls) -> "Series":
        return cls({0: 1})

    @classmethod
    def constant(cls, c: Coefficient) -> "Series":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff: Coefficient = 1) -> "Series":
        return cls({exp: coeff})

    @classmethod
    def _raw(cls, coeffs: Dict[int, Coefficient], order: Optional[int]) -> "Series":
        # caller guarantees coeffs are normalized, nonzero and inside the window
        s = cls.__new__(cls)
        s._coeffs = coeffs
        s._order = order
        return s

    # -- accessors ----------------------------------------------------------
    @property
    def order(self) -> Optional[int]:
        return self._order

    @property
    def is_exact(self) -> bool:
        return self._order is None

    @property
    def lo(self) -> Optional[int]:
        """Smallest exponent that may carry a nonzero coefficient.

        For a series that vanishes up to its order this is order + 1; for the
        exact zero series it is None.
        """
        if self._coeffs:
            return min(self._coeffs)
        if self._order is None:
            return None
        return self._order + 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def items(self) -> List[Tuple[int, Coefficient]]:
        return sorted(self._coeffs.items())

    def __iter__(self) -> Iterator[Tuple[int, Coefficient]]:
        return iter(self.items())

    def to_dict(self) -> Dict[int, Coefficient]:
        return dict(self._coeffs)

    def coefficient_at(self, e: int) -> Coefficient:
        if self._order is not None and e > self._order:
            raise OrderExceeded(f"exponent {e} beyond order {self._order}")
        return self._coeffs.get(e, 0)

    __getitem__ = coefficient_at

    def dense(self, upto: Optional[int] = None) -> List[Tuple[int, Coefficient]]:
        """(exponent, coefficient) pairs from min(lo, 0) to ``upto``, zeros included."""
        top = self._order if upto is None else upto
        if top is None:
            top = max(self._coeffs, default=0)
        if self._order is not None and top > self._order:
            raise OrderExceeded(f"exponent {top} beyond order {self._order}")
        start = min(min(self._coeffs, default=0), 0)
        return [(e, self._coeffs.get(e, 0)) for e in range(start, top + 1)]

    # -- window operations ----------------------------------------------------
    def truncate(self, order: Optional[int]) -> "Series":
        new_order = _min_order(self._order, order)
        if new_order == self._order:
            return self
        return Series._raw({e: c for e, c in self._coeffs.items() if e <= new_order}, new_order)

    def shift(self, k: int) -> "Series":
        order = None if self._order is None else self._order + k
        return Series._raw({e + k: c for e, c in self._coeffs.items()}, order)

    def scale(self, c: Coefficient) -> "Series":
        if c == 0:
            return Series.zero(self._order)
        c = _normalize(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        return Series._raw({e: _normalize(v * c) for e, v in self._coeffs.items()}, self._order)

    def compose_base(self, base: SignedMonomial) -> "Series":
        """Substitute q -> base (sign * q^k, k >= 1)."""
        if base.exp < 1:
            raise NonpositiveBaseExponent(f"base exponent {base.exp} must be >= 1")
        k = base.exp
        order = None if self._order is None else self._order * k
        coeffs = {e * k: (c if parity_sign(base.sign, e) == 1 else -c) for e, c in self._coeffs.items()}
        return Series(coeffs, order)

    # -- ring operations ----------------------------------------------------
    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction)):
            return Series.constant(other)
        if isinstance(other, SignedMonomial):
            return other.to_series()
        return NotImplemented

    def __add__(self, other) -> "Series":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = _min_order(self._order, other._order)
        coeffs = {e: c for e, c in self._coeffs.items() if order is None or e <= order}
        for e, c in other._coeffs.items():
            if order is not None and e > order:
                continue
            coeffs[e] = coeffs.get(e, 0) + c
        return Series(coeffs, order)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series._raw({e: -c for e, c in self._coeffs.items()}, self._order)

    def __sub__(self, other) -> "Series":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def _mul_order(self, other: "Series") -> Optional[int]:
        candidates = []
        if self._order is not None:
            candidates.append(self._order + other.lo)
        if other._order is not None:
            candidates.append(other._order + self.lo)
        return min(candidates) if candidates else None

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if (self._order is None and not self._coeffs) or (other._order is None and not other._coeffs):
            return Series.zero()
        order = self._mul_order(other)
        right = other.items()
        result: Dict[int, Coefficient] = {}
        for ea, ca in self._coeffs.items():
            for eb, cb in right:
                e = ea + eb
                if order is not None and e > order:
                    break
                result[e] = result.get(e, 0) + ca * cb
        return Series(result, order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Series":
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"series powers must be nonnegative integers, got {n}")
        result = Series.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def invert(self, order: Optional[int] = None) -> "Series":
        """Multiplicative inverse; the monomial content c*q^v is split off first.

        ``order`` caps the result window and is mandatory when the series is exact.
        """
        if not self._coeffs:
            raise ZeroLeadingCoefficient(f"series vanishes up to order {self._order}")
        v = min(self._coeffs)
        lead = self._coeffs[v]
        if self._order is None and order is None:
            raise UnboundedPrecision("inverting an exact series needs an order cap")
        rel = math.inf if self._order is None else self._order - v
        if order is not None:
            rel = min(rel, order + v)
        rel = int(rel)
        inv_lead = lead if lead in (1, -1) else 1 / Fraction(lead)
        unit = sorted((e - v, c * inv_lead) for e, c in self._coeffs.items() if 0 < e - v <= rel)
        b: List[Coefficient] = [1] + [0] * max(rel, 0)
        for n in range(1, rel + 1):
            acc = 0
            for k, uk in unit:
                if k > n:
                    break
                bk = b[n - k]
                if bk:
                    acc += uk * bk
            b[n] = -acc
        coeffs = {n - v: b[n] * inv_lead for n in range(0, rel + 1) if b[n]}
        return Series(coeffs, rel - v)

    # -- comparison ---------------------------------------------------------
    def first_discrepancy(self, other: "Series", order: int) -> Optional[int]:
        limit = _min_order(self._order, other._order)
        if limit is not None and order > limit:
            raise OrderExceeded(f"comparison order {order} beyond common order {limit}")
        for e in sorted(set(self._coeffs) | set(other._coeffs)):
            if e > order:
                break
            if self._coeffs.get(e, 0) != other._coeffs.get(e, 0):
                return e
        return None

    def equal_up_to(self, other: "Series", order: int) -> Tuple[bool, Optional[int]]:
        e = self.first_discrepancy(other, order)
        return e is None, e

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self._order == other._order and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._order, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        terms = []
        for e, c in self.items()[:12]:
            terms.append(f"{c}*q^{e}")
        if len(self._coeffs) > 12:
            terms.append("...")
        body = " + ".join(terms) if terms else "0"
        tail = "" if self._order is None else f" + O(q^{self._order + 1})"
        return f"Series({body}{tail})"


def reach_order(build: Callable[[int], Series], order: int, attempts: int = 6, strict: bool = True) -> Series:
    """Re-run ``build`` with a raised internal order until the result is valid to ``order``.

    Negative q-shifts shrink validity windows by a fixed amount, so raising the
    target by the observed deficit converges in a step or two.
    """
    target = order
    result = build(target)
    for attempt in range(attempts):
        if result.order is None or result.order >= order:
            return result.truncate(order)
        deficit = order - result.order
        target += deficit
        logger.debug(f"precision bump {attempt + 1}: target {target} (deficit {deficit})")
        result = build(target)
    if result.order is None or result.order >= order:
        return result.truncate(order)
    if strict:
        raise PrecisionShortfall(f"reached order {result.order}, wanted {order}")
    return result
