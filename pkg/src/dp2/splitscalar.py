"""Laurent polynomials over Q(zeta8) in a fixed alphabet of formal symbols.

These are the coefficient scalars of the exceptional-curve equations: the
symbols (fourth roots a, b, c, or a, b and a square root) are algebraically
independent, so equality is decidable by comparing canonical dictionaries.
The same class also carries the u, v, t coordinate symbols of the ambient
space where convenient; nothing distinguishes a "root" symbol from any other.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from .cyclo import Cyclo, ONE


class SplitScalar:
    """Sparse Laurent polynomial: exponent tuple -> nonzero Cyclo coefficient."""

    __slots__ = ("symbols", "coeffs")

    def __init__(self, symbols: Sequence[str], coeffs: Mapping[tuple, Cyclo] | None = None):
        self.symbols = tuple(symbols)
        clean = {}
        if coeffs:
            for exps, c in coeffs.items():
                c = Cyclo.of(c)
                if c.is_zero():
                    continue
                exps = tuple(int(e) for e in exps)
                if len(exps) != len(self.symbols):
                    raise ValueError("exponent tuple length mismatch")
                clean[exps] = clean[exps] + c if exps in clean else c
        self.coeffs = {e: c for e, c in clean.items() if not c.is_zero()}

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(symbols: Sequence[str], value) -> "SplitScalar":
        zero = (0,) * len(tuple(symbols))
        return SplitScalar(symbols, {zero: Cyclo.of(value)})

    @staticmethod
    def sym(symbols: Sequence[str], name: str, power: int = 1) -> "SplitScalar":
        symbols = tuple(symbols)
        exps = [0] * len(symbols)
        exps[symbols.index(name)] = power
        return SplitScalar(symbols, {tuple(exps): ONE})

    # -- ring operations ----------------------------------------------

    def _check(self, other) -> "SplitScalar":
        if isinstance(other, SplitScalar):
            if other.symbols != self.symbols:
                raise ValueError("mixed symbol alphabets")
            return other
        return SplitScalar.const(self.symbols, other)

    def __add__(self, other) -> "SplitScalar":
        o = self._check(other)
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return SplitScalar(self.symbols, out)

    __radd__ = __add__

    def __sub__(self, other) -> "SplitScalar":
        return self + (-self._check(other))

    def __rsub__(self, other) -> "SplitScalar":
        return self._check(other) - self

    def __neg__(self) -> "SplitScalar":
        return SplitScalar(self.symbols, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other) -> "SplitScalar":
        o = self._check(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in o.coeffs.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return SplitScalar(self.symbols, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SplitScalar":
        if n < 0:
            raise ValueError("negative power of a general scalar")
        out = SplitScalar.const(self.symbols, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SplitScalar):
            other = SplitScalar.const(self.symbols, other)
        return self.symbols == other.symbols and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.symbols, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    # -- structure ----------------------------------------------------

    def map_coeffs(self, fn) -> "SplitScalar":
        return SplitScalar(self.symbols, {e: fn(e, c) for e, c in self.coeffs.items()})

    def twist(self, name: str, unit: Cyclo) -> "SplitScalar":
        """Substitute name -> unit * name.

        unit must be a root of unity of order dividing 8, so the rule is valid
        for Laurent (negative) exponents too.
        """
        k = self.symbols.index(name)
        return self.map_coeffs(lambda e, c: (unit ** (e[k] % 8)) * c)

    def substitute(self, values: Mapping[str, "SplitScalar"]) -> "SplitScalar":
        """Replace symbols by scalars (nonnegative exponents only)."""
        idx = {name: self.symbols.index(name) for name in values}
        out = SplitScalar(self.symbols, {})
        for e, c in self.coeffs.items():
            term = SplitScalar.const(self.symbols, c)
            rest = list(e)
            for name, k in idx.items():
                if e[k] < 0:
                    raise ValueError("substitution into a negative exponent")
                term = term * (values[name] ** e[k])
                rest[k] = 0
            term = term * SplitScalar(self.symbols, {tuple(rest): ONE})
            out = out + term
        return out

    def coefficient(self, name: str, power: int) -> "SplitScalar":
        """Scalar coefficient of name^power (collects matching terms)."""
        k = self.symbols.index(name)
        out = {}
        for e, c in self.coeffs.items():
            if e[k] == power:
                e2 = list(e)
                e2[k] = 0
                out[tuple(e2)] = c
        return SplitScalar(self.symbols, out)

    def degree_in(self, name: str) -> int:
        k = self.symbols.index(name)
        return max((e[k] for e in self.coeffs), default=0)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mons = []
            for name, k in zip(self.symbols, e):
                if k == 1:
                    mons.append(name)
                elif k:
                    mons.append(f"{name}^{k}")
            mon = "*".join(mons)
            cs = str(c)
            if " " in cs or cs.startswith("-") and mon:
                cs = f"({cs})"
            if not mon:
                parts.append(cs)
            elif cs == "1":
                parts.append(mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts)

    __repr__ = __str__
