import itertools
import random

import pytest

from dp2.fppoly import FpPoly, parse, restrict_to_line
from dp2.residues import (
    DivisorialValuation,
    ResidueUndefined,
    SquareClass,
    SymbolClass,
    UnsupportedValuation,
    function_valuation,
    ramification_divisor,
    residue,
    square_class_trivial,
    valuation,
)

P = 13
XYZ = ("x", "y", "z")


def poly(text, p=P):
    return parse(text, p, XYZ)


def val(text, p=P):
    return DivisorialValuation.of(poly(text, p))


def random_linear(rng):
    while True:
        f = FpPoly(P, XYZ, {
            tuple(1 if k == i else 0 for k in range(3)): rng.randint(0, P - 1)
            for i in range(3)
        })
        if not f.is_zero():
            return f


A_EX = "x^2+x*z+z^2"
B_EX = "y^2+y*z+z^2"
A_FACTORS = ("x-3*z", "x-9*z")
B_FACTORS = ("y-3*z", "y-9*z")


class TestValuation:
    def test_square_of_line(self):
        l = poly("x-3*z")
        assert valuation(l * l, val("x-3*z")) == 2

    def test_factor_of_example_a(self):
        assert valuation(poly(A_EX), val("x-3*z")) == 1
        assert valuation(poly(A_EX), val("x-9*z")) == 1

    def test_unit(self):
        assert valuation(poly(B_EX), val("x-3*z")) == 0

    def test_additive(self):
        rng = random.Random(3)
        v = val("x-3*z")
        for _ in range(20):
            f = random_linear(rng) * random_linear(rng)
            g = random_linear(rng)
            assert valuation(f * g, v) == valuation(f, v) + valuation(g, v)

    def test_function_valuation_at_infinity(self):
        vz = val("z")
        assert valuation(poly(A_EX), vz) == 0
        assert function_valuation(poly(A_EX), vz) == -2
        assert function_valuation(poly("x"), vz) == -1


class TestDivisorialValuation:
    def test_degree_two_irreducible_warns(self):
        # x^2 + z^2 is irreducible mod 11
        v = DivisorialValuation.of(parse("x^2+z^2", 11, XYZ))
        assert v.splits_over_extension

    def test_degree_two_split_rejected(self):
        with pytest.raises(ValueError):
            DivisorialValuation.of(poly(A_EX))

    def test_degree_three_unsupported(self):
        with pytest.raises(UnsupportedValuation):
            DivisorialValuation.of(poly("x^3+y^2*z+z^3"))


class TestResidue:
    def test_units_give_trivial_class(self):
        # both entries are units along a line missing their zero loci
        c = residue(SymbolClass(poly("x^2+x*z+z^2"), poly("x^2+2*x*z")), val("y"))
        assert c.is_trivial()

    def test_along_factor_of_a_is_restriction_of_b(self):
        s = SymbolClass(poly(A_EX), poly(B_EX))
        for l in A_FACTORS:
            c = residue(s, val(l))
            assert not c.is_trivial()
            b_bar = restrict_to_line(poly(B_EX), poly(l))
            direct = SquareClass(c.field_desc, b_bar.poly, b_bar.poly.one_like())
            assert c.same_class(direct)

    def test_sign_recorded(self):
        f = poly("x")
        c = residue(SymbolClass(f, -f), val("x"))
        assert c.sign == -1
        assert c.is_trivial()  # class of -1 dies modulo constants

    def test_f_minus_f_trivial(self):
        rng = random.Random(17)
        for _ in range(30):
            f = random_linear(rng) * random_linear(rng)
            s = SymbolClass(f, -f)
            for l in (random_linear(rng), FpPoly.var(P, XYZ, "z")):
                c = residue(s, DivisorialValuation.of(l))
                assert c.is_trivial()

    def test_steinberg_relation(self):
        # (f, 1-f) for the degree-0 function f = g/h, encoded as (g h, (h-g) h)
        rng = random.Random(19)
        checked = 0
        for _ in range(40):
            g = random_linear(rng)
            h = random_linear(rng)
            hg = h - g
            if hg.is_zero():
                continue
            s = SymbolClass(g * h, hg * h)
            for l in (g, h, hg, FpPoly.var(P, XYZ, "z")):
                if l.is_zero() or l.is_constant():
                    continue
                c = residue(s, DivisorialValuation.of(l))
                assert c.is_trivial()
                checked += 1
        assert checked > 50

    def test_unchanged_by_square_multiples(self):
        rng = random.Random(23)
        s0 = SymbolClass(poly(A_EX), poly(B_EX))
        for _ in range(20):
            h = random_linear(rng)
            if h.is_zero():
                continue
            s1 = SymbolClass(poly(A_EX) * h * h, poly(B_EX))
            for l in A_FACTORS:
                if valuation(h, val(l)) > 0:
                    continue
                assert residue(s0, val(l)).same_class(residue(s1, val(l)))

    def test_componentwise_product_factorization(self):
        rng = random.Random(29)
        for _ in range(15):
            a1, a2 = random_linear(rng), random_linear(rng)
            b1, b2 = random_linear(rng), random_linear(rng)
            v = DivisorialValuation.of(random_linear(rng))
            try:
                lhs = residue(SymbolClass(a1 * a2, b1 * b2), v)
                parts = [
                    residue(SymbolClass(a, b), v)
                    for a, b in itertools.product((a1, a2), (b1, b2))
                ]
            except ResidueUndefined:
                continue
            prod = parts[0]
            for c in parts[1:]:
                prod = prod.times(c)
            assert lhs.same_class(prod)

    def test_degree_two_center_with_ramification_unsupported(self):
        q = parse("x^2+z^2", 11, XYZ)
        v = DivisorialValuation.of(q)
        s = SymbolClass(q, parse("y", 11, XYZ))
        with pytest.raises(UnsupportedValuation):
            residue(s, v)


class TestRamificationDivisor:
    def test_example_symbol(self):
        s = SymbolClass(poly(A_EX), poly(B_EX))
        ram = ramification_divisor(
            s,
            [poly(t) for t in A_FACTORS],
            [poly(t) for t in B_FACTORS],
        )
        centers = sorted(str(v.center) for v, _ in ram)
        expected = sorted(str(poly(t).monic()) for t in A_FACTORS + B_FACTORS)
        assert centers == expected
        for _, cls in ram:
            assert not cls.is_trivial()

    def test_equal_entries_single_line(self):
        l = poly("x+y")
        ram = ramification_divisor(SymbolClass(l, l))
        assert ram == []

    def test_trivial_symbol(self):
        one = FpPoly.const(P, XYZ, 1)
        ram = ramification_divisor(SymbolClass(one, poly(B_EX)))
        assert ram == []

    def test_z_is_checked(self):
        # (x, y) is ramified at the line at infinity
        s = SymbolClass(poly("x"), poly("y"))
        ram = ramification_divisor(s)
        centers = {str(v.center) for v, _ in ram}
        assert centers == {"x", "y", "z"}

    def test_quadratics_auto_split(self):
        ram = ramification_divisor(SymbolClass(poly(A_EX), poly(B_EX)))
        centers = sorted(str(v.center) for v, _ in ram)
        expected = sorted(str(poly(t).monic()) for t in A_FACTORS + B_FACTORS)
        assert centers == expected


class TestSquareClass:
    def test_trivial_square(self):
        one = FpPoly.const(P, ("x",), 1)
        sq = parse("(x-1)^2", P, ("x",))
        c = SquareClass("k(line)", sq, one)
        assert square_class_trivial(c)
        assert c.odd_parts == ()

    def test_two_distinct_roots(self):
        one = FpPoly.const(P, ("x",), 1)
        c = SquareClass("k(line)", parse("x^2+x+1", P, ("x",)), one)
        assert not square_class_trivial(c)

    def test_constant(self):
        one = FpPoly.const(P, ("x",), 1)
        c = SquareClass("k(line)", FpPoly.const(P, ("x",), 2), one)
        assert square_class_trivial(c)
