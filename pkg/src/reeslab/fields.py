"""Exact base-field arithmetic: the rationals or a prime field F_p.

Coefficients are plain Python objects: ``fractions.Fraction`` (or ``int``)
in characteristic 0, and ``int`` reduced to ``[0, p)`` in characteristic p.
Keeping coefficients primitive lets the hot loops in the section algebra
stay free of per-element dispatch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field, identified by its characteristic (0 means the rationals)."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    @property
    def is_modular(self) -> bool:
        return self.characteristic != 0

    def of_int(self, n: int):
        p = self.characteristic
        return n % p if p else Fraction(n)

    def of_fraction(self, q: Fraction):
        p = self.characteristic
        if not p:
            return Fraction(q)
        num, den = q.numerator, q.denominator
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
        return (num * pow(den, -1, p)) % p

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a):
        p = self.characteristic
        if p:
            if a % p == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(a, -1, p)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        p = self.characteristic
        return a % p == 0 if p else a == 0


RATIONALS = FieldSpec(0)


def coeff_str(c) -> str:
    """Render a coefficient as an integer or p/q (never a float)."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)
