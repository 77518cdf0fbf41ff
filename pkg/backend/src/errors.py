"""Exception hierarchy shared by every package under src/."""
from typing import Iterable, Optional


class QSeriesError(Exception):
    """Base class for all library errors."""


# series core
class OrderExceeded(QSeriesError):
    """A coefficient was requested beyond a series' validity window."""


class ZeroLeadingCoefficient(QSeriesError):
    """Inversion of a series that vanishes up to its order."""


class NonpositiveBaseExponent(QSeriesError):
    """A base monomial with exponent <= 0 was used where q^k, k >= 1 is needed."""


class DivergentProduct(QSeriesError):
    """Infinite q-Pochhammer symbol whose factors do not tend to 1."""


class UnboundedPrecision(QSeriesError):
    """An exact polynomial was inverted without an order cap."""


class PrecisionShortfall(QSeriesError):
    """Repeated evaluation could not reach the requested order."""


# hecke / appell
class UnboundedDoubleSum(QSeriesError):
    """The termination certificate of a Hecke-type double sum failed."""


class AppellPole(QSeriesError):
    """A denominator 1 - q^(r-1) x z of the Appell sum is identically zero."""


class ThetaDenominatorZero(QSeriesError):
    """j(z; Q) vanishes identically."""


class SplitUndefined(QSeriesError):
    """A denominator theta of the f_{n,n,1} split vanishes identically."""


# mock theta
class NonUnitDenominator(QSeriesError):
    """A q-hypergeometric denominator is not a unit."""


class UnknownMockTheta(QSeriesError):
    """Mock theta name outside the supported set."""


# string functions
class InvalidStringParams(QSeriesError):
    """(p, p', m, l) outside the admissible range."""


class NonIntegralCoefficient(QSeriesError):
    """A string function coefficient is not an integer."""


class WindowTooSmall(QSeriesError):
    """The Weyl-Kac division needs w-coefficients outside the computed band."""


class OffsetMismatch(QSeriesError):
    """Fractional q-offsets failed to cancel to an integer."""


# expression language
class ExprSyntaxError(QSeriesError):
    """Parse error carrying the byte offset and the set of expected tokens."""

    def __init__(self, message: str, offset: int, expected: Optional[Iterable[str]] = None):
        self.offset = offset
        self.expected = sorted(set(expected or ()))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class UnknownIdentifier(QSeriesError):
    """A function-like name not known to the language."""


class UndeclaredParameter(QSeriesError):
    """A parameter reference without a declaration or binding."""


class EvaluationError(QSeriesError):
    """Failure while evaluating an expression, annotated with the AST path."""

    def __init__(self, path: str, cause: Exception):
        self.path = path
        self.cause = cause
        super().__init__(f"{path}: {type(cause).__name__}: {cause}")


# catalog
class CatalogError(QSeriesError):
    """An identity file cannot be loaded or two identities share a name."""


class ManifestIncomplete(CatalogError):
    """A manifest topic or statement label has no identity in the catalog."""

    def __init__(self, problems: Iterable[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
