"""Residues of quaternion symbols over the function field of P^2.

A symbol (A, B) is stored through homogeneous representatives in x, y, z; the
class it determines over k(x, y) is that of the degree-0 functions A/z^degA
and B/z^degB, which is what makes the line at infinity (center z) come out
right with no special casing: every residue representative is assembled as a
ratio of equal-degree forms.

Residues land in the square-class group of the residue field of the center,
taken modulo constants (the ground field is morally algebraically closed, so
every constant is a square).  Only rational centers admit the restriction
step; centers of degree >= 2 are rejected unless the symbol is a unit there.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .fppoly import (
    FpPoly,
    NotSplit,
    is_square_mod_constants,
    restrict_to_line,
    split_into_linear,
    squarefree_decomposition,
)


class ResidueUndefined(Exception):
    """The residue representative vanished identically on the center."""


class UnsupportedValuation(Exception):
    """Residue requested along a center the artifact cannot restrict to."""


@dataclass(frozen=True)
class DivisorialValuation:
    """Divisorial valuation of k(x, y) centered on a curve of P^2.

    The center is an irreducible homogeneous polynomial in x, y, z (z itself
    gives the line at infinity).  Degree-2 centers are verified irreducible
    over F_p and flagged: they split over a quadratic extension, so over the
    algebraic closure they are not honest prime divisors.
    """

    center: FpPoly
    splits_over_extension: bool = False

    @staticmethod
    def of(center: FpPoly) -> "DivisorialValuation":
        if center.is_zero() or not center.is_homogeneous() or center.is_constant():
            raise ValueError("center must be a nonconstant homogeneous form")
        if set(center.vars) != {"x", "y", "z"}:
            raise ValueError("center must live in the x, y, z plane")
        d = center.total_degree()
        if d == 1:
            return DivisorialValuation(center.monic())
        if d == 2:
            try:
                split_into_linear(center)
            except NotSplit:
                return DivisorialValuation(center.monic(), splits_over_extension=True)
            raise ValueError("center factors into lines; use the factors separately")
        raise UnsupportedValuation(
            "centers of degree >= 3 are not supported (irreducibility unchecked)"
        )

    @property
    def degree(self) -> int:
        return self.center.total_degree()

    def __str__(self):
        return f"v({self.center})"


def valuation(f: FpPoly, v: DivisorialValuation) -> int:
    """Multiplicity of the center in the form f."""
    if f.is_zero():
        raise ValueError("valuation of zero")
    n = 0
    while True:
        q = f.try_divide(v.center)
        if q is None:
            return n
        f = q
        n += 1


def function_valuation(f: FpPoly, v: DivisorialValuation) -> int:
    """Valuation of the degree-0 function f/z^deg(f) determined by the form."""
    zform = FpPoly.var(f.p, f.vars, "z")
    return valuation(f, v) - f.total_degree() * valuation(zform, v)


@dataclass(frozen=True)
class SquareClass:
    """Element of kappa(v)^x / squares, modulo constants.

    Stored as a ratio num/den of restrictions to the center (univariate in
    the line parameter); the parity data is the odd-exponent squarefree part
    of num*den.  The sign (-1)^{v(A)v(B)} is recorded for transparency but is
    a constant, hence never affects triviality.
    """

    field_desc: str
    num: FpPoly
    den: FpPoly
    sign: int = 1

    @property
    def odd_parts(self) -> tuple:
        dec = squarefree_decomposition(self.num * self.den)
        return tuple(g for g, e in dec.parts if e % 2 == 1 and not g.is_constant())

    def is_trivial(self) -> bool:
        return is_square_mod_constants(self.num * self.den)

    def times(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(
            self.field_desc,
            self.num * other.num,
            self.den * other.den,
            self.sign * other.sign,
        )

    def same_class(self, other: "SquareClass") -> bool:
        return self.times(other).is_trivial()

    def __str__(self):
        rep = str(self.num) if self.den.is_one() else f"({self.num})/({self.den})"
        state = "trivial" if self.is_trivial() else "nontrivial"
        return f"[{rep}] ({state}) in {self.field_desc}"


def square_class_trivial(c: SquareClass) -> bool:
    return c.is_trivial()


@dataclass(frozen=True)
class SymbolClass:
    """Two-torsion Brauer class (A, B) with homogeneous representatives."""

    A: FpPoly
    B: FpPoly

    def __post_init__(self):
        for f in (self.A, self.B):
            if f.is_zero():
                raise ValueError("symbol entries must be nonzero")
            if not f.is_homogeneous():
                raise ValueError("symbol entries must be homogeneous forms")
        self.A._check(self.B)

    def __str__(self):
        return f"({self.A}, {self.B})"


def _restrict_class(form: FpPoly, line: FpPoly):
    r = restrict_to_line(form, line)
    if r.is_zero():
        raise ResidueUndefined(
            "representative vanishes identically on the center; adjust by a square"
        )
    return r.poly


def residue(s: SymbolClass, v: DivisorialValuation) -> SquareClass:
    """The square-class residue of (A, B) along v.

    Computes the function valuations vA, vB, forms the representative
    (-1)^{vA vB} A^{vB} / B^{vA} as a ratio of equal-degree forms, cancels
    the center, and restricts to it.
    """
    A, B = s.A, s.B
    vA = function_valuation(A, v)
    vB = function_valuation(B, v)
    sign = -1 if (vA * vB) % 2 else 1
    field_desc = f"k({{{v.center} = 0}})"
    if vA == 0 and vB == 0:
        one = FpPoly.const(A.p, ("x",), 1)
        return SquareClass(field_desc, one, one, sign)
    if v.degree != 1:
        raise UnsupportedValuation(
            "nontrivial residues are only computed along rational centers (lines)"
        )
    dA, dB = A.total_degree(), B.total_degree()
    ez = dB * vA - dA * vB
    num = A.one_like()
    den = A.one_like()
    zform = FpPoly.var(A.p, A.vars, "z")
    for form, e in ((A, vB), (B, -vA), (zform, ez)):
        if e > 0:
            num = num * form ** e
        elif e < 0:
            den = den * form ** (-e)
    if num.total_degree() != den.total_degree():
        raise AssertionError("representative is not a degree-0 function")
    k = valuation(num, v)
    if valuation(den, v) != k:
        raise AssertionError("center multiplicities do not cancel")
    for _ in range(k):
        num = num // v.center
        den = den // v.center
    return SquareClass(field_desc, _restrict_class(num, v.center), _restrict_class(den, v.center), sign)


def _dedupe_centers(forms: Sequence[FpPoly]) -> list:
    out = []
    for f in forms:
        m = f.monic()
        if all(m != g for g in out):
            out.append(m)
    return out


def ramification_divisor(
    s: SymbolClass,
    factors_a: Optional[Sequence[FpPoly]] = None,
    factors_b: Optional[Sequence[FpPoly]] = None,
) -> list:
    """Candidate centers with nontrivial residue, as (valuation, class) pairs.

    Candidates are the supplied irreducible factors of A and B (auto-split
    when a representative has degree <= 2) plus the line at infinity; every
    other divisorial valuation has both function valuations zero away from z,
    hence trivial residue.
    """
    if factors_a is None:
        factors_a = split_into_linear(s.A) if s.A.total_degree() > 0 else []
    if factors_b is None:
        factors_b = split_into_linear(s.B) if s.B.total_degree() > 0 else []
    zform = FpPoly.var(s.A.p, s.A.vars, "z")
    centers = _dedupe_centers(list(factors_a) + list(factors_b) + [zform])
    out = []
    for center in centers:
        val = DivisorialValuation.of(center)
        cls = residue(s, val)
        if not cls.is_trivial():
            out.append((val, cls))
    return out
