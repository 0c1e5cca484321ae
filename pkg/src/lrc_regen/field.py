"""Exact arithmetic: prime fields GF(p) and rationals.

Rationals are plain :class:`fractions.Fraction` values. Everything in the
tradeoff code is computed with them; floats only appear when a value is
rendered for display.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

Rational = Fraction

MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for moduli below 2**31."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.p}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((o - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value * o) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement((-self.value) % self.p, self.p)

    def inv(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(o, self.p).inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return FieldElement(pow(self.value, e, self.p), self.p)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class GF:
    """Arithmetic context for the prime field of order ``p``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p >= MAX_MODULUS or not is_prime(p):
            raise ValueError(f"modulus must be a prime below 2**31, got {p!r}")
        self.p = p

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self.p)

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a + b

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a - b

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a * b

    def neg(self, a: FieldElement) -> FieldElement:
        return -a

    def inv(self, a: FieldElement) -> FieldElement:
        return a.inv()

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        return a**e


def floor_q(x: Fraction) -> int:
    return math.floor(x)


def ceil_q(x: Fraction) -> int:
    return math.ceil(x)


def parse_rational(text: str) -> Fraction:
    """Parse ``"P/Q"``, ``"P"`` or a finite decimal like ``"0.5"`` exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def render(x: Fraction, exact: bool = False, digits: int = 12) -> str:
    """Format a rational for CSV/display output."""
    x = Fraction(x)
    if exact:
        return str(x)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s if s not in ("", "-0") else "0"
