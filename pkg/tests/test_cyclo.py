import random
from fractions import Fraction

import pytest

from dp2.cyclo import Cyclo, I, ONE, SQRT2, ZETA, i_pow, zeta_pow
from dp2.splitscalar import SplitScalar


def rand_cyclo(rng):
    return Cyclo(*[rng.randint(-4, 4) for _ in range(4)])


class TestCyclo:
    def test_defining_relations(self):
        assert ZETA ** 4 == Cyclo(-1)
        assert I * I == Cyclo(-1)
        assert SQRT2 * SQRT2 == Cyclo(2)
        assert I == ZETA ** 2

    def test_zeta_powers(self):
        assert zeta_pow(8) == ONE
        assert zeta_pow(5) == -zeta_pow(1)
        assert zeta_pow(-1) == zeta_pow(7)
        assert i_pow(3) == -I

    def test_field_axioms_sample(self):
        rng = random.Random(5)
        for _ in range(50):
            a, b, c = rand_cyclo(rng), rand_cyclo(rng), rand_cyclo(rng)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)

    def test_fraction_coords(self):
        h = Cyclo(Fraction(1, 2))
        assert h + h == ONE
        assert (h * Cyclo(2)).coords() == (1, 0, 0, 0)

    def test_conjugation(self):
        rng = random.Random(6)
        for _ in range(20):
            a = rand_cyclo(rng)
            n = a * a.conj_complex()
            # |a|^2 is fixed by conjugation
            assert n.conj_complex() == n

    def test_sqrt2_is_zeta_plus_inverse(self):
        assert SQRT2 == zeta_pow(1) + zeta_pow(-1)


class TestSplitScalar:
    SYM = ("a", "b", "c")

    def s(self, name, p=1):
        return SplitScalar.sym(self.SYM, name, p)

    def test_ring_ops(self):
        a, b = self.s("a"), self.s("b")
        assert (a + b) * (a - b) == a * a - b * b
        assert (a + b) ** 2 == a * a + 2 * a * b + b * b

    def test_laurent(self):
        a = self.s("a")
        ainv = self.s("a", -1)
        assert a * ainv == SplitScalar.const(self.SYM, 1)

    def test_twist_is_galois_substitution(self):
        a, b = self.s("a"), self.s("b")
        f = a * a * b + 3 * a
        g = f.twist("a", I)
        # a -> i*a: a^2 b -> -a^2 b, 3a -> 3i a
        assert g == -(a * a * b) + 3 * I * a

    def test_twist_order_four(self):
        f = self.s("a") ** 3 + self.s("c") * self.s("b")
        g = f
        for _ in range(4):
            g = g.twist("a", I)
        assert g == f

    def test_substitute(self):
        a, b, c = self.s("a"), self.s("b"), self.s("c")
        f = a * a + b
        assert f.substitute({"a": b + c}) == (b + c) ** 2 + b

    def test_coefficient_extraction(self):
        a, b = self.s("a"), self.s("b")
        f = 2 * a * a * b + 5 * a + 7
        assert f.coefficient("a", 2) == 2 * b
        assert f.coefficient("a", 1) == SplitScalar.const(self.SYM, 5)
        assert f.coefficient("a", 0) == SplitScalar.const(self.SYM, 7)

    def test_mixed_alphabet_rejected(self):
        with pytest.raises(ValueError):
            self.s("a") + SplitScalar.sym(("a", "b"), "a")
