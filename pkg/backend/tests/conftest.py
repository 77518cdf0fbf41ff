import dataclasses
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from config.settings import settings as app_settings
from src.catalog import load_catalog
from src.expr.ast import Rational
from src.series import Series, SignedMonomial


@pytest.fixture(scope="session")
def catalog_dir():
    return app_settings.CATALOG_DIR


@pytest.fixture(scope="session")
def catalog(catalog_dir):
    return load_catalog(catalog_dir)


def signed_monomials(lo: int = -4, hi: int = 8):
    return st.builds(SignedMonomial, st.sampled_from([1, -1]), st.integers(lo, hi))


def series(order: int = 20, lo: int = 0, size: int = 8):
    """Truncated series with small integer coefficients supported in [lo, order]."""
    return st.dictionaries(st.integers(lo, order), st.integers(-5, 5), max_size=size).map(lambda d: Series(d, order))


def replace_first_rational(node, old: Fraction, new: Fraction):
    """Copy of ``node`` with the first Rational(old) met in field order replaced by Rational(new)."""
    found = []

    def walk(n):
        if found:
            return n
        if isinstance(n, Rational) and n.value == old:
            found.append(n)
            return Rational(Fraction(new))
        if not dataclasses.is_dataclass(n) or isinstance(n, type):
            return n
        changes = {}
        for f in dataclasses.fields(n):
            value = getattr(n, f.name)
            updated = walk(value)
            if updated is not value:
                changes[f.name] = updated
        return dataclasses.replace(n, **changes) if changes else n

    result = walk(node)
    if not found:
        raise AssertionError(f"no rational {old} in {node}")
    return result
