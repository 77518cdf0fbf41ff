"""
Normalized string functions C-cal^{(p,p')}_{m,l}(q) from Hecke-type double sums

    (q)^3_inf C-cal = f_{1,p',2pp'}(q^(1+(m+l)/2), -q^(p(p'+l+1)); q)
                    - f_{1,p',2pp'}(q^((m-l)/2),   -q^(p(p'-l-1)); q)

plus the integral-level compact form, symmetry and periodicity shifts, the
generalized Euler sum and the quasi-periodicity deltas.
"""
import logging
import math
from functools import lru_cache
from typing import Dict, Tuple

from src.errors import InvalidStringParams, NonIntegralCoefficient
from src.hecke.double_sum import HeckeSpec, hecke_f
from src.series.core import Q, Series, SignedMonomial, binom2, parity_sign, reach_order
from src.series.products import euler_inv3, euler_product
from src.stringfn.params import StringParams, integral_shift
from src.theta.jacobi import theta_j

logger = logging.getLogger(__name__)


def _check_integral(series: Series, label: str) -> Series:
    for e, c in series.items():
        if getattr(c, "denominator", 1) != 1:
            raise NonIntegralCoefficient(f"{label}: coefficient {c} at q^{e}")
    return series


def hecke_pair(params: StringParams) -> Tuple[HeckeSpec, HeckeSpec]:
    p, pp, m, ell = params.p, params.pprime, params.m, params.ell
    first = HeckeSpec(1, pp, 2 * p * pp, Q ** (1 + (m + ell) // 2), SignedMonomial(-1, p * (pp + ell + 1)), Q)
    second = HeckeSpec(1, pp, 2 * p * pp, Q ** ((m - ell) // 2), SignedMonomial(-1, p * (pp - ell - 1)), Q)
    return first, second


@lru_cache(maxsize=2048)
def string_c(params: StringParams, order: int) -> Series:
    first, second = hecke_pair(params)

    def build(t: int) -> Series:
        return (hecke_f(first, t) - hecke_f(second, t)) * euler_inv3(t)

    result = reach_order(build, order)
    label = f"C({params.p},{params.pprime};{params.m},{params.ell})"
    logger.debug(f"{label} to order {order}")
    return _check_integral(result, label)


@lru_cache(maxsize=1024)
def string_c_integral(N: int, m: int, ell: int, order: int) -> Series:
    """Integral-level compact form f_{1,1+N,1}(q^(1+(m+l)/2), q^(1-(m-l)/2); q) / (q)^3_inf."""
    if N < 1 or not 0 <= ell <= N or (m - ell) % 2:
        raise InvalidStringParams(f"integral level needs N >= 1, 0 <= ell <= N, m = ell mod 2; got N={N}, m={m}, ell={ell}")
    spec = HeckeSpec(1, 1 + N, 1, Q ** (1 + (m + ell) // 2), Q ** (1 - (m - ell) // 2), Q)
    result = reach_order(lambda t: hecke_f(spec, t) * euler_inv3(t), order)
    return _check_integral(result, f"C^{N}({m},{ell})")


def mirror_params(params: StringParams) -> StringParams:
    """(m, l) -> (N - m, N - l); defined for integral level only."""
    N = params.level
    if N.denominator != 1:
        raise InvalidStringParams(f"the (N-m, N-l) symmetry needs integral level, got N={N}")
    n = N.numerator
    return StringParams.of(params.p, params.pprime, n - params.m, n - params.ell)


def shifted_delta(source: StringParams, target: StringParams, order: int) -> Series:
    """C-cal(target) - q^k C-cal(source) for two parameter sets whose C agree."""
    k = integral_shift(source, target)
    lhs = string_c(target, order)
    rhs = string_c(source, order + max(0, -k)).shift(k).truncate(order)
    return lhs - rhs


def reflection_delta(params: StringParams, order: int) -> Series:
    return shifted_delta(params, params.with_m(-params.m), order)


def mirror_delta(params: StringParams, order: int) -> Series:
    return shifted_delta(params, mirror_params(params), order)


def periodicity_delta(N: int, m: int, ell: int, order: int) -> Series:
    """Integral-level periodicity m -> m + 2N, compared at the normalized level."""
    source = StringParams.of(1, N + 2, m, ell)
    target = StringParams.of(1, N + 2, m + 2 * N, ell)
    k = integral_shift(source, target)
    lhs = string_c_integral(N, m + 2 * N, ell, order)
    rhs = string_c_integral(N, m, ell, order + max(0, -k)).shift(k).truncate(order)
    return lhs - rhs


def gen_euler_check(p: int, pprime: int, ell: int, eta: int, order: int) -> Series:
    """sum_L (-1)^L q^C(L,2) C-cal_{2L+eta,l}; the expected value is delta_{l,eta}.

    L runs over C(L,2) <= order + slack, where slack is the most negative
    valuation met among the summands so far; the range grows until it stops
    changing.
    """
    if not 1 <= p < pprime or math.gcd(p, pprime) != 1:
        raise InvalidStringParams(f"need 1 <= p < p' coprime, got ({p}, {pprime})")
    if not 0 <= ell <= pprime - 2 or not 0 <= eta <= pprime - 1 or (ell + eta) % 2:
        raise InvalidStringParams(f"need l in Z_(p'-1), eta in Z_p', l + eta even; got l={ell}, eta={eta}")
    summands: Dict[int, Series] = {}
    slack = 0
    while True:
        reach = order + slack
        bound = (1 + math.isqrt(1 + 8 * reach)) // 2 + 1
        for L in range(-bound, bound + 1):
            if L in summands or binom2(L) > reach:
                continue
            params = StringParams.of(p, pprime, 2 * L + eta, ell)
            summands[L] = string_c(params, max(order - binom2(L), 0))
        lows = [c.lo for c in summands.values() if c.lo is not None]
        widened = max(0, -min(lows, default=0))
        if widened <= slack:
            break
        logger.debug(f"generalized Euler sum ({p},{pprime}) l={ell} eta={eta}: valuation {-widened}, widening L")
        slack = widened
    total = Series.zero(order)
    for L, c in sorted(summands.items()):
        total = total + c.shift(binom2(L)).scale(parity_sign(-1, L)).truncate(order)
    logger.debug(f"generalized Euler sum ({p},{pprime}) l={ell} eta={eta}: {len(summands)} summands to {order}")
    return total


def int_level_gen_euler(N: int, r: int, s: int, order: int) -> Series:
    """Even-spin integral-level finite Euler sum; the expected value is delta_{r,s}.

    sum_{a=0}^{N-1} (-1)^a q^C(a,2) j(-(-1)^N q^(Na + C(N+1,2) + 2(a+s)); q^(N(N+2))) C-cal^N_{2(a+s),2r}
    """
    base = Q ** (N * (N + 2))

    def build(target: int) -> Series:
        total = Series.zero(target)
        for a in range(N):
            x = SignedMonomial(-parity_sign(-1, N), N * a + binom2(N + 1) + 2 * (a + s))
            term = theta_j(x, base, target) * string_c_integral(N, 2 * (a + s), 2 * r, target)
            total = total + term.shift(binom2(a)).scale(parity_sign(-1, a)).truncate(target)
        return total

    return reach_order(build, order)


def _quasi_correction(p: int, j: int, t: int, s: int, r: int, odd: int, order: int) -> Series:
    """The theta-weighted finite double sum on the right of the quasi-periodic relation."""
    pp = 2 * p + j
    L = 2 * r + 1 + odd
    base = Q ** (2 * p * pp)
    total = Series.zero(order)
    for i in range(1, t + 1):
        outer = -2 * p * j * binom2(i) - p * (2 * s + odd) * i
        for m in range(1, p):
            lead = binom2(m + 1) + m * (r - p)
            phi = theta_j(SignedMonomial(-1, m * pp + p * L), base, order) - theta_j(
                SignedMonomial(-1, -m * pp + p * L), base, order
            ).shift(m * pp - m * L)
            bracket = Series.monomial(m * (j * i + s - j + odd)) - Series.monomial(-m * (j * i + s))
            total = total + (bracket * phi).shift(outer + lead).scale(parity_sign(-1, m))
    return total


def quasi_period_delta(parity: str, p: int, j: int, t: int, s: int, r: int, order: int) -> Series:
    """LHS - RHS of the quasi-periodic relation, normalized to integer exponents.

    With k = 2s + odd, l = 2r + odd and E = p j t^2 + p t k:

        (q)^3 C-cal_{2jt+k,l} - q^E (q)^3 C-cal_{k,l}
            = (-1)^p q^(E + C(p,2) - p(r-s)) sum_{i=1}^t ... (theta correction)
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if p < 1 or j < 1 or math.gcd(p, 2 * p + j) != 1 or t < 0:
        raise InvalidStringParams(f"need p, j >= 1 with gcd(p, 2p+j) = 1 and t >= 0; got p={p}, j={j}, t={t}")
    odd = 1 if parity == "odd" else 0
    pp = 2 * p + j
    k, ell = 2 * s + odd, 2 * r + odd
    E = p * j * t * t + p * t * k
    big = StringParams.of(p, pp, 2 * j * t + k, ell)
    small = StringParams.of(p, pp, k, ell)
    prefactor = E + binom2(p) - p * (r - s)

    def build(target: int) -> Series:
        cube = euler_product(1, target) ** 3
        lhs = cube * string_c(big, target) - (cube * string_c(small, target)).shift(E)
        rhs = _quasi_correction(p, j, t, s, r, odd, target).shift(prefactor).scale(parity_sign(-1, p))
        return lhs - rhs

    return reach_order(build, order)
