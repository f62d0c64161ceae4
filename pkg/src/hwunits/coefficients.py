"""Coefficient rings: the integers, or integers modulo n."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import sympy


@dataclass(frozen=True)
class CoefficientRing:
    """``modulus=None`` is the integers; otherwise ``Z/modulus``."""

    modulus: int | None = None
    is_field: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.modulus is not None:
            if self.modulus < 2:
                raise ValueError(f"modulus must be >= 2, got {self.modulus}")
            object.__setattr__(self, "is_field", bool(sympy.isprime(self.modulus)))

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    def normalize(self, c: int) -> int:
        return c % self.modulus if self.modulus else c

    def is_unit(self, c: int) -> bool:
        if self.modulus is None:
            return c in (1, -1)
        return math.gcd(c, self.modulus) == 1

    def inverse(self, c: int) -> int:
        if not self.is_unit(c):
            raise ZeroDivisionError(f"{c} is not invertible in {self}")
        if self.modulus is None:
            return c
        return pow(c, -1, self.modulus)

    def describe(self) -> str:
        return "ZZ" if self.modulus is None else f"ZZ/{self.modulus}"

    def __str__(self) -> str:
        return self.describe()

    @classmethod
    def parse(cls, text: str) -> CoefficientRing:
        text = text.strip()
        if text in ("ZZ", "Z", "integers"):
            return INTEGERS
        for prefix in ("ZZ/", "Z/", "GF(", "F"):
            if text.startswith(prefix):
                return cls(int(text[len(prefix):].rstrip(")")))
        return cls(int(text))


INTEGERS = CoefficientRing()


def modulo(n: int) -> CoefficientRing:
    return CoefficientRing(n)


GF2 = modulo(2)


class RingMismatch(ValueError):
    pass
