from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from src.errors import AppellPole, SplitUndefined, ThetaDenominatorZero, UnboundedDoubleSum
from src.hecke import AppellSpec, HeckeSpec, appell_m, hecke_f, hecke_f_naive, hecke_split, recombine
from src.series import MINUS_ONE, Q, Series, SignedMonomial, binom2, reach_order
from src.theta import Jsingle, theta_j

ORDER = 50


def _m(x: SignedMonomial, z: SignedMonomial, base: SignedMonomial, order: int = ORDER) -> Series:
    return reach_order(lambda t: appell_m(AppellSpec(x, z, base), t), order)


def _draw_appell_args(data):
    B = data.draw(st.integers(1, 4), label="base exponent")
    x = SignedMonomial(data.draw(st.sampled_from([1, -1])), data.draw(st.integers(-3, 6), label="x exponent"))
    z = SignedMonomial(data.draw(st.sampled_from([1, -1])), data.draw(st.integers(-3, 6), label="z exponent"))
    # j(z; Q) must not vanish and no 1 - Q^(r-1) x z may be zero
    assume(not (z.sign == 1 and z.exp % B == 0))
    assume(not (x.sign * z.sign == 1 and (x.exp + z.exp) % B == 0))
    return x, z, SignedMonomial(1, B)


def _times(m: SignedMonomial, series_at, order: int) -> Series:
    return series_at(order - m.exp).shift(m.exp).scale(m.sign)


def _agree(lhs_at, rhs_at, order: int = ORDER) -> bool:
    ok, _ = reach_order(lhs_at, order).equal_up_to(reach_order(rhs_at, order), order)
    return ok


def _draw_hecke_spec(data) -> HeckeSpec:
    a, b, c = (data.draw(st.integers(1, 3), label=label) for label in "abc")
    x = SignedMonomial(data.draw(st.sampled_from([1, -1])), data.draw(st.integers(-2, 6), label="x exponent"))
    y = SignedMonomial(data.draw(st.sampled_from([1, -1])), data.draw(st.integers(-2, 6), label="y exponent"))
    return HeckeSpec(a, b, c, x, y, SignedMonomial(1, data.draw(st.integers(1, 2), label="base exponent")))


def _finite_range(n: int):
    """Index range and sign of sum_{m=0}^{n-1}, where an empty-or-reversed range negates sum_{m=n}^{-1}."""
    return (range(n), 1) if n >= 0 else (range(n, 0), -1)


class TestHeckeEnumeration:
    """Certified enumeration against the bounding-box oracle."""

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_matches_naive(self, data):
        a, b, c = (data.draw(st.integers(1, 3)) for _ in range(3))
        x = SignedMonomial(data.draw(st.sampled_from([1, -1])), data.draw(st.integers(-2, 6)))
        y = SignedMonomial(data.draw(st.sampled_from([1, -1])), data.draw(st.integers(-2, 6)))
        base = SignedMonomial(data.draw(st.sampled_from([1, -1])), data.draw(st.integers(1, 2)))
        spec = HeckeSpec(a, b, c, x, y, base)
        assert hecke_f(spec, ORDER) == hecke_f_naive(spec, ORDER)

    @pytest.mark.parametrize("spec", [
        HeckeSpec(5, 5, 1, SignedMonomial(1, 7), SignedMonomial(1, 4), Q),
        HeckeSpec(7, 7, 1, SignedMonomial(1, 10), SignedMonomial(1, 5), Q),
        HeckeSpec(4, 4, 1, SignedMonomial(-1, 23), SignedMonomial(-1, 13), SignedMonomial(1, 4)),
        HeckeSpec(1, 3, 6, SignedMonomial(1, 1), SignedMonomial(-1, 4), Q),
        HeckeSpec(1, 8, 48, SignedMonomial(1, 1), SignedMonomial(-1, 27), Q),
    ])
    def test_catalog_arguments_match_naive(self, spec):
        assert hecke_f(spec, 40) == hecke_f_naive(spec, 40)

    def test_rejects_nonpositive_form(self):
        with pytest.raises(UnboundedDoubleSum):
            HeckeSpec(1, 0, 1, Q, Q, Q)


class TestHeckeFunctionalEquations:
    """Functional equations of f_{a,b,c}(x, y; Q) on randomized forms and arguments."""

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_flip(self, data):
        # f(x, y) = -Q^(a+b+c)/(xy) f(Q^(2a+b)/x, Q^(2c+b)/y)
        spec = _draw_hecke_spec(data)
        a, b, c, x, y, base = spec.a, spec.b, spec.c, spec.x, spec.y, spec.base
        flipped = HeckeSpec(a, b, c, base ** (2 * a + b) / x, base ** (2 * c + b) / y, base)
        m = -(base ** (a + b + c) / (x * y))
        assert _agree(lambda t: hecke_f(spec, t), lambda t: _times(m, lambda u: hecke_f(flipped, u), t))

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_general_shift(self, data):
        spec = _draw_hecke_spec(data)
        a, b, c, x, y, base = spec.a, spec.b, spec.c, spec.x, spec.y, spec.base
        ell = data.draw(st.integers(-2, 2), label="l")
        k = data.draw(st.integers(-2, 2), label="k")
        shifted = HeckeSpec(a, b, c, base ** (a * ell + b * k) * x, base ** (b * ell + c * k) * y, base)
        lead = (-x) ** ell * (-y) ** k * base ** (a * binom2(ell) + b * ell * k + c * binom2(k))

        def rhs(t):
            total = _times(lead, lambda u: hecke_f(shifted, u), t)
            indices, sign = _finite_range(ell)
            for m in indices:
                mono = (-x) ** m * base ** (a * binom2(m))
                total = total + _times(mono, lambda u: theta_j(base ** (m * b) * y, base ** c, u), t).scale(sign)
            indices, sign = _finite_range(k)
            for m in indices:
                mono = (-y) ** m * base ** (c * binom2(m))
                total = total + _times(mono, lambda u: theta_j(base ** (m * b) * x, base ** a, u), t).scale(sign)
            return total

        assert _agree(lambda t: hecke_f(spec, t), rhs)

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_y_step(self, data):
        # f(x, y) = -y f(Q^b x, Q^c y) + j(x; Q^a)
        spec = _draw_hecke_spec(data)
        a, b, c, x, y, base = spec.a, spec.b, spec.c, spec.x, spec.y, spec.base
        stepped = HeckeSpec(a, b, c, base ** b * x, base ** c * y, base)
        assert _agree(
            lambda t: hecke_f(spec, t),
            lambda t: _times(-y, lambda u: hecke_f(stepped, u), t) + theta_j(x, base ** a, t),
        )

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_x_step(self, data):
        # f(x, y) = -x f(Q^a x, Q^b y) + j(y; Q^c)
        spec = _draw_hecke_spec(data)
        a, b, c, x, y, base = spec.a, spec.b, spec.c, spec.x, spec.y, spec.base
        stepped = HeckeSpec(a, b, c, base ** a * x, base ** b * y, base)
        assert _agree(
            lambda t: hecke_f(spec, t),
            lambda t: _times(-x, lambda u: hecke_f(stepped, u), t) + theta_j(y, base ** c, t),
        )


class TestAppellLaws:
    """Functional equations of m(x, z; Q) on randomized arguments."""

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_z_periodicity(self, data):
        x, z, base = _draw_appell_args(data)
        ok, _ = _m(x, z, base).equal_up_to(_m(x, base * z, base), ORDER)
        assert ok

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_flip(self, data):
        # m(x, z) = x^-1 m(1/x, 1/z)
        x, z, base = _draw_appell_args(data)
        rhs = reach_order(
            lambda t: appell_m(AppellSpec(x.inverse(), z.inverse(), base), t).shift(-x.exp).scale(x.sign), ORDER
        )
        ok, _ = _m(x, z, base).equal_up_to(rhs, ORDER)
        assert ok

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_x_shift(self, data):
        # m(Qx, z) = 1 - x m(x, z)
        x, z, base = _draw_appell_args(data)
        rhs = reach_order(
            lambda t: 1 - appell_m(AppellSpec(x, z, base), t).shift(x.exp).scale(x.sign), ORDER
        )
        ok, _ = _m(base * x, z, base).equal_up_to(rhs, ORDER)
        assert ok

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_changing_z(self, data):
        # (m(x, z1) - m(x, z0)) j(z0) j(z1) j(x z0) j(x z1) = z0 J_1^3 j(z1/z0) j(x z0 z1)
        x, z0, base = _draw_appell_args(data)
        z1 = SignedMonomial(data.draw(st.sampled_from([1, -1])), data.draw(st.integers(-3, 6), label="z1 exponent"))
        assume(not (z1.sign == 1 and z1.exp % base.exp == 0))
        assume(not (x.sign * z1.sign == 1 and (x.exp + z1.exp) % base.exp == 0))

        def lhs(t):
            difference = appell_m(AppellSpec(x, z1, base), t) - appell_m(AppellSpec(x, z0, base), t)
            return (
                difference * theta_j(z0, base, t) * theta_j(z1, base, t)
                * theta_j(x * z0, base, t) * theta_j(x * z1, base, t)
            )

        def rhs(t):
            product = Jsingle(base.exp, t) ** 3 * theta_j(z1 / z0, base, t) * theta_j(x * z0 * z1, base, t)
            return product.shift(z0.exp).scale(z0.sign)

        assert _agree(lhs, rhs)

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_split_two(self, data):
        # m(x, z) = m(-Q x^2, -1; Q^4) - Q^-1 x m(-Q^-1 x^2, -1; Q^4) - (theta quotient), times its denominator
        x, z, base = _draw_appell_args(data)
        assume((2 * x.exp - base.exp) % (2 * base.exp))
        Q2, Q4 = base ** 2, base ** 4
        x2 = x * x

        def lhs(t):
            appell = (
                appell_m(AppellSpec(x, z, base), t)
                - appell_m(AppellSpec(-(base * x2), MINUS_ONE, Q4), t)
                + _times(x / base, lambda u: appell_m(AppellSpec(-(x2 / base), MINUS_ONE, Q4), u), t)
            )
            denominator = (
                theta_j(x * z, base, t) * theta_j(MINUS_ONE, Q4, t) * theta_j(base * x2, Q2, t)
                * theta_j(z, Q2, t) * theta_j(base * z, Q2, t)
            )
            return appell * denominator

        def rhs(t):
            first = theta_j(base * x2 * z, Q2, t) * theta_j(-(z * z), Q4, t) * theta_j(base * z, Q2, t)
            second = theta_j(Q2 * x2 * z, Q2, t) * theta_j(-(Q2 * z * z), Q4, t) * theta_j(z, Q2, t)
            bracket = first - second.shift((x * z).exp).scale((x * z).sign)
            return -(Jsingle(2 * base.exp, t) ** 3 * bracket)

        assert _agree(lhs, rhs)

    def test_vanishing_theta_denominator(self):
        with pytest.raises(ThetaDenominatorZero):
            appell_m(AppellSpec(SignedMonomial(-1, 1), SignedMonomial(1, 3), SignedMonomial(1, 3)), 10)

    def test_pole(self):
        with pytest.raises(AppellPole):
            appell_m(AppellSpec(SignedMonomial(-1, 1), SignedMonomial(-1, 2), SignedMonomial(1, 3)), 10)

    def test_half_from_minus_one(self):
        # m(-q, -1; q^4) = 1/2 + ...
        assert _m(SignedMonomial(-1, 1), SignedMonomial(-1, 0), SignedMonomial(1, 4), 5).coefficient_at(0) == Fraction(1, 2)


class TestSplit:
    """f_{n,n,1} = h - theta / (J-bar J-bar) at the arguments the catalog uses."""

    @pytest.mark.parametrize("n,x,y,base", [
        (5, SignedMonomial(1, 7), SignedMonomial(1, 4), Q),
        (5, SignedMonomial(1, 11), SignedMonomial(1, 2), Q),
        (7, SignedMonomial(1, 10), SignedMonomial(1, 5), Q),
        (4, SignedMonomial(-1, 23), SignedMonomial(-1, 13), SignedMonomial(1, 4)),
    ])
    def test_recombines_to_double_sum(self, n, x, y, base):
        h, theta = hecke_split(n, x, y, base, ORDER)
        lhs = hecke_f(HeckeSpec(n, n, 1, x, y, base), ORDER)
        ok, _ = lhs.equal_up_to(recombine(n, h, theta, base, ORDER), ORDER)
        assert ok

    def test_theta_denominator_is_nonzero(self):
        assert theta_j(SignedMonomial(-1, 0), SignedMonomial(1, 4), 5).coefficient_at(0) == 2

    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_unsupported_n(self, n):
        with pytest.raises(SplitUndefined):
            hecke_split(n, SignedMonomial(1, 7), SignedMonomial(1, 4), Q, 10)
