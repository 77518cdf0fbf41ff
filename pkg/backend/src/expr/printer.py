"""Canonical text form of expressions and identities; ``parse(print(e)) == e``."""
from typing import List

from src.expr.ast import (
    G3, Add, Appell, Binom, EulerInv3, EulerSum, Expr, FloorDiv, Hecke, Identity, IntBin, IntExpr, IntLit, IntNeg,
    Inv, JFamily, KDelta, Mock, Mono, MonoFactor, MonoTerm, Mul, Neg, Param, ParamConst, Poch, Pow, QuasiPeriod, Rational,
    SplitPart, StringC, Sub, Sum, Theta,
)

_INT_PREC = {"+": 1, "-": 1, "*": 2, "^": 3}
_ATOM = 5


def _int_prec(node: IntExpr) -> int:
    if isinstance(node, IntBin):
        return _INT_PREC[node.op]
    if isinstance(node, IntNeg):
        return 4
    return _ATOM


def _wrap(text: str, inner: int, needed: int) -> str:
    return f"({text})" if inner < needed else text


def print_int(node: IntExpr) -> str:
    if isinstance(node, IntLit):
        return str(node.value) if node.value >= 0 else f"-{-node.value}"
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Binom):
        return f"binom({print_int(node.n)}, {print_int(node.k)})"
    if isinstance(node, FloorDiv):
        return f"floor({print_int(node.num)} / {print_int(node.den)})"
    if isinstance(node, IntNeg):
        # the operand of unary minus parses as another unary or a power
        return "-" + _wrap(print_int(node.operand), _int_prec(node.operand), 3)
    prec = _INT_PREC[node.op]
    if node.op == "^":
        left = _wrap(print_int(node.left), _int_prec(node.left), _ATOM)
        right = _wrap(print_int(node.right), _int_prec(node.right), 3)
        return f"{left}^{right}"
    left = _wrap(print_int(node.left), _int_prec(node.left), prec)
    right = _wrap(print_int(node.right), _int_prec(node.right), prec + 1 if prec == 1 else 3)
    return f"{left} {node.op} {right}"


def _exponent(node: IntExpr) -> str:
    text = print_int(node)
    return text if _int_prec(node) == _ATOM and not (isinstance(node, IntLit) and node.value < 0) else f"({text})"


def print_factor(factor: MonoFactor) -> str:
    if factor.kind == "q":
        if factor.exponent == IntLit(1):
            return "q"
        return f"q^{_exponent(factor.exponent)}"
    head = "(-q)" if factor.kind == "minus_q" else "(-1)"
    return f"{head}^{_exponent(factor.exponent)}"


def print_mono(mono: Mono) -> str:
    sign = "-" if mono.negated else ""
    if not mono.factors:
        return f"{sign}1"
    return sign + "*".join(print_factor(f) for f in mono.factors)


def _prec(node: Expr) -> int:
    if isinstance(node, (Add, Sub)):
        return 1
    if isinstance(node, Mul):
        return 2
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    if isinstance(node, Rational) and node.value.denominator != 1:
        # a/b must not be split by a neighbouring operator
        return 4
    if isinstance(node, MonoTerm) and print_mono(node.mono) != "q":
        return 4
    return _ATOM


def print_expr(node: Expr) -> str:
    if isinstance(node, Add):
        return f"{_side(node.left, 1)} + {_side(node.right, 2)}"
    if isinstance(node, Sub):
        return f"{_side(node.left, 1)} - {_side(node.right, 2)}"
    if isinstance(node, Mul):
        return f"{_side(node.left, 2)} * {_side(node.right, 3)}"
    if isinstance(node, Neg):
        return "-" + _side(node.operand, 3)
    if isinstance(node, Pow):
        return f"{_side(node.base, _ATOM)}^{_exponent(node.exponent)}"
    if isinstance(node, Rational):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, ParamConst):
        return node.name
    if isinstance(node, MonoTerm):
        return print_mono(node.mono)
    if isinstance(node, Theta):
        return f"j({print_mono(node.x)}; {print_mono(node.base)})"
    if isinstance(node, JFamily):
        if node.kind == "Jsingle":
            return f"Jsingle[{print_int(node.a)}]"
        return f"{node.kind}[{print_int(node.a)}, {print_int(node.b)}]"
    if isinstance(node, Hecke):
        ints = ", ".join(print_int(v) for v in (node.a, node.b, node.c))
        return f"f[{ints}]({print_mono(node.x)}, {print_mono(node.y)}; {print_mono(node.base)})"
    if isinstance(node, Appell):
        return f"m({print_mono(node.x)}, {print_mono(node.z)}; {print_mono(node.base)})"
    if isinstance(node, Mock):
        return f"{node.name}({print_mono(node.base)})"
    if isinstance(node, G3):
        return f"g3({print_mono(node.x)}; {print_mono(node.base)})"
    if isinstance(node, Poch):
        length = "inf" if node.length is None else print_int(node.length)
        return f"poch({print_mono(node.x)}, {length}; {print_mono(node.base)})"
    if isinstance(node, StringC):
        return f"C[{print_int(node.p)}, {print_int(node.pprime)}]({print_int(node.m)}, {print_int(node.ell)})"
    if isinstance(node, EulerSum):
        return f"euler[{print_int(node.p)}, {print_int(node.pprime)}]({print_int(node.ell)}, {print_int(node.eta)})"
    if isinstance(node, SplitPart):
        return f"{node.kind}[{print_int(node.n)}]({print_mono(node.x)}, {print_mono(node.y)}; {print_mono(node.base)})"
    if isinstance(node, QuasiPeriod):
        ints = ", ".join(print_int(v) for v in (node.p, node.j, node.t, node.s, node.r))
        return f"qperiod[{node.parity}]({ints})"
    if isinstance(node, KDelta):
        return f"delta({print_int(node.a)}, {print_int(node.b)})"
    if isinstance(node, EulerInv3):
        return "eulerInv3"
    if isinstance(node, Inv):
        return f"inv({print_expr(node.operand)})"
    if isinstance(node, Sum):
        return f"sum({node.index}, {print_int(node.lo)}, {print_int(node.hi)}, {print_expr(node.body)})"
    raise TypeError(f"cannot print {type(node).__name__}")


def _side(node: Expr, needed: int) -> str:
    return _wrap(print_expr(node), _prec(node), needed)


def print_identity(identity: Identity) -> str:
    lines: List[str] = [f"identity {identity.name}"]
    if identity.anchor:
        lines.append(f'  anchor "{identity.anchor}"')
    if identity.params:
        ranges = " ".join(f"{p.name} in {p.lo}..{p.hi}" for p in identity.params)
        lines.append(f"  params {ranges}")
    if identity.order is not None:
        lines.append(f"  order {identity.order}")
    lines.append(f"  lhs = {print_expr(identity.lhs)}")
    lines.append(f"  rhs = {print_expr(identity.rhs)}")
    return "\n".join(lines) + "\n"
