"""Exact coefficient fields: the rationals and prime fields of odd characteristic."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """A coefficient field.

    ``p == 0`` means the rationals; otherwise ``p`` is an odd prime and
    elements are the integers ``0 .. p-1``.  Rational elements are ``int``
    when integral and ``Fraction`` otherwise, so equality with plain ints
    always behaves.
    """

    p: int = 0

    def __post_init__(self):
        if self.p == 0:
            return
        if not _is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.p == 2:
            raise FieldError("characteristic 2 is not supported")

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(0)

    @classmethod
    def prime(cls, p: int = 32003) -> "CoefficientField":
        return cls(p)

    @classmethod
    def parse(cls, spec: str) -> "CoefficientField":
        """Parse ``q`` / ``qq`` or ``fp:<p>``."""
        s = spec.strip().lower()
        if s in ("q", "qq", "rationals"):
            return cls(0)
        if s.startswith("fp:"):
            return cls(int(s[3:]))
        raise FieldError(f"unknown field {spec!r}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"

    def __call__(self, value) -> int | Fraction:
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p:
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise ZeroDivisionError(f"denominator divisible by {self.p}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        return int(value)

    def inv(self, a):
        if self.p:
            return pow(a, -1, self.p)
        q = Fraction(1) / a
        return q.numerator if q.denominator == 1 else q

    def normalize(self, a):
        if self.p:
            return a % self.p
        if isinstance(a, Fraction) and a.denominator == 1:
            return a.numerator
        return a

    def lift(self, a) -> int | Fraction:
        """Smallest rational ``n/d`` with ``n/d == a`` in F_p (``|n|, d <= sqrt(p/2)``)."""
        if not self.p:
            return a
        bound = math.isqrt(self.p // 2)
        r0, r1, t0, t1 = self.p, a % self.p, 0, 1
        while r1 > bound:
            q = r0 // r1
            r0, r1, t0, t1 = r1, r0 - q * r1, t1, t0 - q * t1
        if t1 == 0 or abs(t1) > bound:
            raise ValueError(f"{a} has no small rational preimage mod {self.p}")
        v = Fraction(r1, t1)
        return v.numerator if v.denominator == 1 else v

    def symmetric(self, a):
        """Representative used for printing: ``(-p/2, p/2]`` in F_p."""
        if self.p and a > self.p // 2:
            return a - self.p
        return a
