"""Exact arithmetic in the degree-4 cyclotomic field Q(zeta8).

Elements are written c0 + c1*s + c2*s^2 + c3*s^3 with s^4 = -1 and rational
coordinates (Python int or Fraction; ints are kept as ints for speed).  The
imaginary unit is i = s^2 and sqrt(2) = s - s^3.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Cyclo:
    c0: object = 0
    c1: object = 0
    c2: object = 0
    c3: object = 0

    def __post_init__(self):
        for name in ("c0", "c1", "c2", "c3"):
            v = getattr(self, name)
            if isinstance(v, Fraction) and v.denominator == 1:
                object.__setattr__(self, name, int(v))
            elif not isinstance(v, (int, Fraction)):
                raise TypeError(f"coordinate {name} must be int or Fraction, got {type(v)!r}")

    @staticmethod
    def of(x) -> "Cyclo":
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclo(x)
        return NotImplemented

    def coords(self) -> tuple:
        return (self.c0, self.c1, self.c2, self.c3)

    def is_zero(self) -> bool:
        return not (self.c0 or self.c1 or self.c2 or self.c3)

    def is_rational(self) -> bool:
        return not (self.c1 or self.c2 or self.c3)

    def __add__(self, other) -> "Cyclo":
        o = Cyclo.of(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclo(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)

    __radd__ = __add__

    def __sub__(self, other) -> "Cyclo":
        o = Cyclo.of(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclo(self.c0 - o.c0, self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3)

    def __rsub__(self, other) -> "Cyclo":
        o = Cyclo.of(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self) -> "Cyclo":
        return Cyclo(-self.c0, -self.c1, -self.c2, -self.c3)

    def __mul__(self, other) -> "Cyclo":
        o = Cyclo.of(other)
        if o is NotImplemented:
            return NotImplemented
        a0, a1, a2, a3 = self.c0, self.c1, self.c2, self.c3
        b0, b1, b2, b3 = o.c0, o.c1, o.c2, o.c3
        # convolution reduced by s^4 = -1
        return Cyclo(
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Cyclo":
        if n < 0:
            raise ValueError("negative powers are not needed here")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj_complex(self) -> "Cyclo":
        """Image under s -> s^7 = -s^3 (complex conjugation)."""
        return Cyclo(self.c0, -self.c3, -self.c2, -self.c1)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for coef, mon in zip(self.coords(), ("", "s", "s^2", "s^3")):
            if not coef:
                continue
            if mon == "":
                parts.append(str(coef))
            elif coef == 1:
                parts.append(mon)
            elif coef == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{coef}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = Cyclo()
ONE = Cyclo(1)
ZETA = Cyclo(0, 1)          # primitive eighth root of unity
I = Cyclo(0, 0, 1)          # i = s^2, i^2 = -1
SQRT2 = Cyclo(0, 1, 0, -1)  # s - s^3, squares to 2


def zeta_pow(k: int) -> Cyclo:
    """zeta^k for any integer k (period 8)."""
    k %= 8
    sign = 1
    if k >= 4:
        sign = -1
        k -= 4
    coords = [0, 0, 0, 0]
    coords[k] = sign
    return Cyclo(*coords)


def i_pow(k: int) -> Cyclo:
    """i^k for any integer k (period 4)."""
    return zeta_pow(2 * k)
