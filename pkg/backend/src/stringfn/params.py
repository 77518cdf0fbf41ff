"""String-function parameters and rational-offset series."""
import math
from dataclasses import dataclass
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.errors import InvalidStringParams, OffsetMismatch
from src.series.core import Series


class StringParams(BaseModel):
    """Admissible level N = p'/p - 2 with spin ell and quantum number m."""
    model_config = ConfigDict(frozen=True)

    p: int = Field(..., description="Denominator of the admissible level", ge=1)
    pprime: int = Field(..., description="p' (coprime to p)", ge=2)
    m: int = Field(..., description="Quantum number, m = ell mod 2")
    ell: int = Field(..., description="Spin, 0 <= ell <= p'-2", ge=0)

    @model_validator(mode="after")
    def _admissible(self):
        if math.gcd(self.p, self.pprime) != 1:
            raise ValueError(f"p={self.p} and p'={self.pprime} are not coprime")
        if self.ell > self.pprime - 2:
            raise ValueError(f"spin {self.ell} exceeds p'-2={self.pprime - 2}")
        if (self.m - self.ell) % 2:
            raise ValueError(f"m={self.m} and ell={self.ell} differ in parity")
        return self

    @classmethod
    def of(cls, p: int, pprime: int, m: int, ell: int) -> "StringParams":
        try:
            return cls(p=p, pprime=pprime, m=m, ell=ell)
        except ValidationError as e:
            raise InvalidStringParams(str(e)) from e

    @property
    def level(self) -> Fraction:
        return Fraction(self.pprime, self.p) - 2

    @property
    def s_lambda(self) -> Fraction:
        """-1/8 + (ell+1)^2 / (4(N+2)) - m^2 / (4N)."""
        N = self.level
        if N == 0:
            raise InvalidStringParams("level 0 has no string-function normalization")
        return Fraction(-1, 8) + Fraction((self.ell + 1) ** 2 * self.p, 4 * self.pprime) - Fraction(self.m ** 2) / (4 * N)

    def with_m(self, m: int) -> "StringParams":
        return StringParams.of(self.p, self.pprime, m, self.ell)


def integral_shift(source: StringParams, target: StringParams) -> int:
    """k with C-cal(target) = q^k C-cal(source) whenever C(target) = C(source)."""
    shift = source.s_lambda - target.s_lambda
    if shift.denominator != 1:
        raise OffsetMismatch(f"offset {shift} between {source} and {target} is not integral")
    return shift.numerator


@dataclass(frozen=True)
class OffsetSeries:
    """q^offset * body, with a rational offset kept outside the integer-exponent body."""
    offset: Fraction
    body: Series

    def __mul__(self, other: "OffsetSeries") -> "OffsetSeries":
        return OffsetSeries(self.offset + other.offset, self.body * other.body)

    def times_q(self, exponent: Fraction) -> "OffsetSeries":
        return OffsetSeries(self.offset + Fraction(exponent), self.body)

    def normalized(self) -> "OffsetSeries":
        """Move the integer part of the offset into the body."""
        whole = math.floor(self.offset)
        return OffsetSeries(self.offset - whole, self.body.shift(whole))

    def to_series(self) -> Series:
        if Fraction(self.offset).denominator != 1:
            raise OffsetMismatch(f"fractional offset {self.offset} does not cancel")
        return self.body.shift(int(self.offset))
