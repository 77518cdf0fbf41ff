"""Immutable syntax tree of the identity language."""
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple, Union


# -- integer expressions --------------------------------------------------------
@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class IntBin:
    op: str  # one of + - * ^
    left: "IntExpr"
    right: "IntExpr"


@dataclass(frozen=True)
class IntNeg:
    operand: "IntExpr"


@dataclass(frozen=True)
class Binom:
    n: "IntExpr"
    k: "IntExpr"


@dataclass(frozen=True)
class FloorDiv:
    num: "IntExpr"
    den: "IntExpr"


IntExpr = Union[IntLit, Param, IntBin, IntNeg, Binom, FloorDiv]


# -- signed monomials -------------------------------------------------------------
@dataclass(frozen=True)
class MonoFactor:
    kind: str  # "q", "minus_one" for (-1)^e, "minus_q" for (-q)^e
    exponent: IntExpr


@dataclass(frozen=True)
class Mono:
    negated: bool
    factors: Tuple[MonoFactor, ...] = ()


# -- series expressions -----------------------------------------------------------
@dataclass(frozen=True)
class Rational:
    value: Fraction


@dataclass(frozen=True)
class ParamConst:
    name: str


@dataclass(frozen=True)
class MonoTerm:
    mono: Mono


@dataclass(frozen=True)
class Theta:
    x: Mono
    base: Mono


@dataclass(frozen=True)
class JFamily:
    kind: str  # "J", "Jbar", "Jsingle"
    a: IntExpr
    b: Optional[IntExpr] = None


@dataclass(frozen=True)
class Hecke:
    a: IntExpr
    b: IntExpr
    c: IntExpr
    x: Mono
    y: Mono
    base: Mono


@dataclass(frozen=True)
class Appell:
    x: Mono
    z: Mono
    base: Mono


@dataclass(frozen=True)
class Mock:
    name: str
    base: Mono


@dataclass(frozen=True)
class G3:
    x: Mono
    base: Mono


@dataclass(frozen=True)
class Poch:
    x: Mono
    length: Optional[IntExpr]  # None is the infinite product
    base: Mono


@dataclass(frozen=True)
class StringC:
    p: IntExpr
    pprime: IntExpr
    m: IntExpr
    ell: IntExpr


@dataclass(frozen=True)
class EulerSum:
    """Generalized Euler sum over L of (-1)^L q^C(L,2) C_{2L+eta,l}."""
    p: IntExpr
    pprime: IntExpr
    ell: IntExpr
    eta: IntExpr


@dataclass(frozen=True)
class SplitPart:
    kind: str  # "h" or "theta"
    n: IntExpr
    x: Mono
    y: Mono
    base: Mono


@dataclass(frozen=True)
class QuasiPeriod:
    """Left minus right side of the quasi-periodic relation in m; zero when it holds."""
    parity: str  # "even" or "odd"
    p: IntExpr
    j: IntExpr
    t: IntExpr
    s: IntExpr
    r: IntExpr


@dataclass(frozen=True)
class KDelta:
    """Kronecker delta of two integer expressions as a constant series."""
    a: IntExpr
    b: IntExpr


@dataclass(frozen=True)
class EulerInv3:
    pass


@dataclass(frozen=True)
class Inv:
    operand: "Expr"


@dataclass(frozen=True)
class Sum:
    index: str
    lo: IntExpr
    hi: IntExpr
    body: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: IntExpr


Expr = Union[
    Rational, ParamConst, MonoTerm, Theta, JFamily, Hecke, Appell, Mock, G3, Poch, StringC,
    EulerSum, SplitPart, QuasiPeriod, KDelta, EulerInv3, Inv, Sum, Add, Sub, Mul, Neg, Pow,
]


@dataclass(frozen=True)
class ParamRange:
    name: str
    lo: int
    hi: int

    def values(self) -> range:
        return range(self.lo, self.hi + 1)


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: Expr
    rhs: Expr
    anchor: str = ""
    params: Tuple[ParamRange, ...] = ()
    order: Optional[int] = None
    source: Optional[str] = field(default=None, compare=False)

    def assignments(self) -> Iterator[Dict[str, int]]:
        """Every parameter assignment in range, in declaration order."""
        names = [p.name for p in self.params]
        for values in itertools.product(*(p.values() for p in self.params)):
            yield dict(zip(names, values))

    def instance_count(self) -> int:
        count = 1
        for p in self.params:
            count *= max(0, p.hi - p.lo + 1)
        return count
