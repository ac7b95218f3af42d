"""Coefficient fields: the rationals and prime fields F_p with p < 2^31."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import NonPrimeCharacteristicLiteral

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A computable coefficient field.

    ``p == 0`` denotes the rationals (coefficients are :class:`Fraction`),
    otherwise the prime field F_p (coefficients are ints in ``range(p)``).
    """

    p: int = 0

    def __post_init__(self):
        if self.p == 0:
            return
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"characteristic {self.p!r} is not prime")
        if self.p >= MAX_PRIME:
            raise ValueError(f"prime {self.p} exceeds 2^31")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    def coerce(self, value):
        """Map an int or Fraction into the field."""
        if self.p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise NonPrimeCharacteristicLiteral(
                    f"denominator {value.denominator} is divisible by {self.p}"
                )
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(c, -1, self.p)
        return 1 / c

    def to_json(self):
        return "Q" if self.p == 0 else {"Fp": self.p}

    def __str__(self):
        return "Q" if self.p == 0 else f"F_{self.p}"


QQ = FieldSpec(0)
