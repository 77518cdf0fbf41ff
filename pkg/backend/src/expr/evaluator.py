"""
Compositional evaluation of expressions to truncated series.

Errors raised anywhere below a node are re-raised once as EvaluationError
carrying the slash-separated path to the innermost failing node.
"""
import logging
from typing import Dict, Mapping, Optional

from src.errors import EvaluationError, UndeclaredParameter
from src.expr.ast import (
    G3, Add, Appell, Binom, EulerInv3, EulerSum, Expr, FloorDiv, Hecke, IntExpr, IntLit, IntNeg, Inv,
    JFamily, KDelta, Mock, Mono, MonoTerm, Mul, Neg, Param, ParamConst, Poch, Pow, QuasiPeriod, Rational, SplitPart,
    StringC, Sub, Sum, Theta,
)
from src.hecke.appell import AppellSpec, appell_m
from src.hecke.double_sum import HeckeSpec, hecke_f
from src.hecke.split import split_h, split_theta
from src.mocktheta.ramanujan import mock, universal_g3
from src.series.core import ONE, Series, SignedMonomial, parity_sign, reach_order
from src.series.products import euler_inv3, pochhammer
from src.stringfn.hecke_form import gen_euler_check, quasi_period_delta, string_c
from src.stringfn.params import StringParams
from src.theta.jacobi import J, Jbar, Jsingle, theta_j

logger = logging.getLogger(__name__)


def eval_int(node: IntExpr, env: Mapping[str, int]) -> int:
    if isinstance(node, IntLit):
        return node.value
    if isinstance(node, Param):
        if node.name not in env:
            raise UndeclaredParameter(f"no value bound for parameter {node.name!r}")
        return env[node.name]
    if isinstance(node, IntNeg):
        return -eval_int(node.operand, env)
    if isinstance(node, Binom):
        return _binom(eval_int(node.n, env), eval_int(node.k, env))
    if isinstance(node, FloorDiv):
        den = eval_int(node.den, env)
        if den == 0:
            raise ZeroDivisionError("floor division by zero")
        return eval_int(node.num, env) // den
    left, right = eval_int(node.left, env), eval_int(node.right, env)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if right < 0:
        raise ValueError(f"negative integer power {left}^{right}")
    return left ** right


def _binom(n: int, k: int) -> int:
    """Generalized binomial n(n-1)...(n-k+1)/k!, valid for negative n."""
    if k < 0:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return num // den


def eval_mono(mono: Mono, env: Mapping[str, int]) -> SignedMonomial:
    result = -ONE if mono.negated else ONE
    for factor in mono.factors:
        e = eval_int(factor.exponent, env)
        if factor.kind == "q":
            result = result * SignedMonomial(1, e)
        elif factor.kind == "minus_one":
            result = result * SignedMonomial(parity_sign(-1, e), 0)
        else:
            result = result * SignedMonomial(parity_sign(-1, e), e)
    return result


class Evaluator:
    """Evaluates one expression under fixed parameter bindings."""

    def __init__(self, bindings: Optional[Mapping[str, int]] = None):
        self.bindings: Dict[str, int] = dict(bindings or {})

    def evaluate(self, node: Expr, order: int, attempts: int = 6, strict: bool = True, path: str = "expr") -> Series:
        def build(target: int) -> Series:
            return self._eval(node, self.bindings, target, path)

        try:
            return reach_order(build, order, attempts=attempts, strict=strict)
        except EvaluationError:
            raise
        except Exception as e:
            raise EvaluationError(path, e) from e

    def _eval(self, node: Expr, env: Mapping[str, int], order: int, path: str) -> Series:
        here = f"{path}/{type(node).__name__}"
        try:
            return self._dispatch(node, env, order, here)
        except EvaluationError:
            raise
        except Exception as e:
            raise EvaluationError(here, e) from e

    def _dispatch(self, node: Expr, env: Mapping[str, int], order: int, path: str) -> Series:
        if isinstance(node, Add):
            return self._eval(node.left, env, order, path + "[0]") + self._eval(node.right, env, order, path + "[1]")
        if isinstance(node, Sub):
            return self._eval(node.left, env, order, path + "[0]") - self._eval(node.right, env, order, path + "[1]")
        if isinstance(node, Mul):
            return self._eval(node.left, env, order, path + "[0]") * self._eval(node.right, env, order, path + "[1]")
        if isinstance(node, Neg):
            return -self._eval(node.operand, env, order, path)
        if isinstance(node, Pow):
            return self._eval(node.base, env, order, path) ** eval_int(node.exponent, env)
        if isinstance(node, Rational):
            return Series.constant(node.value)
        if isinstance(node, ParamConst):
            if node.name not in env:
                raise UndeclaredParameter(f"no value bound for parameter {node.name!r}")
            return Series.constant(env[node.name])
        if isinstance(node, MonoTerm):
            return eval_mono(node.mono, env).to_series()
        if isinstance(node, Theta):
            return theta_j(eval_mono(node.x, env), eval_mono(node.base, env), order)
        if isinstance(node, JFamily):
            a = eval_int(node.a, env)
            if node.kind == "Jsingle":
                return Jsingle(a, order)
            b = eval_int(node.b, env)
            return J(a, b, order) if node.kind == "J" else Jbar(a, b, order)
        if isinstance(node, Hecke):
            spec = HeckeSpec(
                eval_int(node.a, env), eval_int(node.b, env), eval_int(node.c, env),
                eval_mono(node.x, env), eval_mono(node.y, env), eval_mono(node.base, env),
            )
            return hecke_f(spec, order)
        if isinstance(node, Appell):
            spec = AppellSpec(eval_mono(node.x, env), eval_mono(node.z, env), eval_mono(node.base, env))
            return appell_m(spec, order)
        if isinstance(node, Mock):
            return mock(node.name, eval_mono(node.base, env), order)
        if isinstance(node, G3):
            return universal_g3(eval_mono(node.x, env), eval_mono(node.base, env), order)
        if isinstance(node, Poch):
            length = None if node.length is None else eval_int(node.length, env)
            return pochhammer(eval_mono(node.x, env), length, eval_mono(node.base, env), order)
        if isinstance(node, StringC):
            params = StringParams.of(
                eval_int(node.p, env), eval_int(node.pprime, env), eval_int(node.m, env), eval_int(node.ell, env)
            )
            return string_c(params, order)
        if isinstance(node, EulerSum):
            return gen_euler_check(
                eval_int(node.p, env), eval_int(node.pprime, env), eval_int(node.ell, env), eval_int(node.eta, env), order
            )
        if isinstance(node, SplitPart):
            part = split_h if node.kind == "h" else split_theta
            return part(eval_int(node.n, env), eval_mono(node.x, env), eval_mono(node.y, env), eval_mono(node.base, env), order)
        if isinstance(node, QuasiPeriod):
            p, j, t, s, r = (eval_int(v, env) for v in (node.p, node.j, node.t, node.s, node.r))
            return quasi_period_delta(node.parity, p, j, t, s, r, order)
        if isinstance(node, KDelta):
            return Series.constant(1 if eval_int(node.a, env) == eval_int(node.b, env) else 0)
        if isinstance(node, EulerInv3):
            return euler_inv3(order)
        if isinstance(node, Inv):
            return self._eval(node.operand, env, order, path).invert(order)
        if isinstance(node, Sum):
            return self._sum(node, env, order, path)
        raise TypeError(f"cannot evaluate {type(node).__name__}")

    def _sum(self, node: Sum, env: Mapping[str, int], order: int, path: str) -> Series:
        # sum_{k=a}^{b} with b < a - 1 means -sum_{k=b+1}^{a-1}; empty when b = a - 1
        lo, hi = eval_int(node.lo, env), eval_int(node.hi, env)
        sign = 1
        if hi < lo - 1:
            lo, hi, sign = hi + 1, lo - 1, -1
        total = Series.zero()
        for k in range(lo, hi + 1):
            scope = dict(env)
            scope[node.index] = k
            total = total + self._eval(node.body, scope, order, f"{path}[{node.index}={k}]")
        return total if sign == 1 else -total


def evaluate(node: Expr, bindings: Optional[Mapping[str, int]] = None, order: int = 60, attempts: int = 6, strict: bool = True) -> Series:
    return Evaluator(bindings).evaluate(node, order, attempts=attempts, strict=strict)
