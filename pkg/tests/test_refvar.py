import random

import pytest

from dp2.fppoly import (
    FpPoly,
    is_square_mod_constants,
    parse,
    restrict_to_line,
    squarefree_decomposition,
)
from dp2.refvar import (
    ConfigError,
    XYZ,
    alpha_certificate,
    bidegree,
    build_equation,
    builtin_example,
    check_conditions,
    config_from_text,
    config_to_text,
    corollary_family,
    local_certificates,
    make_config,
    normalize_local_form,
    verify_all,
)

P = 13


def poly(text, p=P):
    return parse(text, p, XYZ)


def control_duplicate_line():
    return make_config(P, 2, 2, 0, [poly("x+10*z"), poly("x+10*z")],
                       [poly("y^2+y*z+z^2")], poly("(x+y)^2"))


def control_concurrent():
    return make_config(P, 2, 2, 0, [poly("x"), poly("y")],
                       [poly("x+y"), poly("x+z")], poly("(x+y+z)^2"))


def control_line_in_f():
    return make_config(P, 2, 2, 0, [poly("x^2+x*z+z^2")],
                       [poly("y^2+y*z+z^2")], poly("(x+10*z)*(x+y)"))


def control_f_vanishing():
    return make_config(P, 2, 2, 0, [poly("x^2+x*z+z^2")],
                       [poly("y^2+y*z+z^2")], poly("(x+y+7*z)^2"))


def control_square_ab_plus_f():
    # A*B = (h-f)(h+f) with h-f = x*y and h+f = (x+y)^2 - z^2, so A*B + F = h^2
    return make_config(P, 2, 2, 0, [poly("x"), poly("x+y+z")],
                       [poly("y"), poly("x+y-z")],
                       poly("7*(x^2+x*y+y^2-z^2)"))


class TestConfig:
    def test_builtin_shape(self):
        cfg = builtin_example()
        assert (cfg.p, cfg.g, cfg.n, cfg.m) == (13, 2, 2, 0)
        assert len(cfg.a_factors) == 2 and len(cfg.b_factors) == 2
        a = cfg.A
        assert a == poly("x^2+x*z+z^2")
        assert cfg.B == poly("y^2+y*z+z^2")
        assert cfg.F == poly("(x+y)^4")

    def test_split_roots(self):
        # x^2 + x + 1 = (x - 3)(x - 9) mod 13; both roots verified
        assert (3 * 3 + 3 + 1) % 13 == 0
        assert (9 * 9 + 9 + 1) % 13 == 0
        cfg = builtin_example()
        for root in (3, 9):
            assert any(l.value_at((root, 0, 1)) == 0 for l in cfg.a_factors)

    def test_n_zero_rejected(self):
        with pytest.raises(ConfigError):
            make_config(P, 2, 0, 0, [], [poly("y^2+y*z+z^2"), poly("x^2+x*z+z^2")],
                        poly("(x+y)^2"))

    def test_odd_n_rejected(self):
        with pytest.raises(ConfigError):
            make_config(P, 2, 3, 0, [poly("x"), poly("y"), poly("x+y+z")],
                        [poly("x-y")], poly("(x+y+z)^2"))

    def test_odd_m_rejected(self):
        with pytest.raises(ConfigError):
            builtin_example().with_m(1)

    def test_wrong_f_degree_rejected(self):
        with pytest.raises(ConfigError):
            make_config(P, 2, 2, 0, [poly("x^2+x*z+z^2")], [poly("y^2+y*z+z^2")],
                        poly("x+y"))

    def test_irreducible_quadratic_rejected_with_prime_hint(self):
        # x^2 + z^2 is irreducible mod 11
        with pytest.raises(ConfigError, match="prime"):
            make_config(11, 2, 2, 0, [parse("x^2+z^2", 11, XYZ)],
                        [parse("y^2+y*z+z^2", 11, XYZ)], parse("(x+y)^2", 11, XYZ))


class TestConditions:
    def test_builtin_all_pass(self):
        rep = check_conditions(builtin_example())
        assert rep.verdict
        assert [c.name for c in rep.conditions] == ["(i)", "(ii)", "(iii)", "(iv)", "(v)"]

    def test_duplicate_line_detected(self):
        rep = check_conditions(control_duplicate_line())
        cond = rep.condition("(i)")
        assert not cond.passed
        (i, j) = cond.witnesses[0]["pair"]
        lines = control_duplicate_line().lines
        # witness re-fails the sub-check: the two forms are proportional
        assert str(lines[i]) == str(lines[j])

    def test_concurrency_detected_with_point(self):
        rep = check_conditions(control_concurrent())
        cond = rep.condition("(ii)")
        assert not cond.passed
        w = cond.witnesses[0]
        assert w["point"] == (0, 0, 1)
        cfg = control_concurrent()
        for idx in w["triple"]:
            assert cfg.lines[idx].value_at(w["point"]) == 0

    def test_line_in_f_detected(self):
        rep = check_conditions(control_line_in_f())
        cond = rep.condition("(iii)")
        assert not cond.passed
        cfg = control_line_in_f()
        bad = cfg.lines[cond.witnesses[0]["line"]]
        assert restrict_to_line(cfg.f, bad).is_zero()

    def test_f_vanishing_detected(self):
        rep = check_conditions(control_f_vanishing())
        cond = rep.condition("(iv)")
        assert not cond.passed
        w = cond.witnesses[0]
        assert w["point"] == (3, 3, 1)
        assert control_f_vanishing().f.value_at(w["point"]) == 0

    def test_square_detected(self):
        cfg = control_square_ab_plus_f()
        h = cfg.A * cfg.B + cfg.F
        assert is_square_mod_constants(h)
        rep = check_conditions(cfg)
        cond = rep.condition("(v)")
        assert not cond.passed
        assert "square_certificate" in cond.witnesses[0]

    def test_nonsquare_certified_by_point_values(self):
        # independent oracle for condition (v): if A*B + F were a constant
        # times a square, h(P)*h(Q) would be a square in F_13 for all P, Q;
        # a quadratic-nonresidue product certifies non-squareness
        from dp2.fppoly import legendre

        cfg = builtin_example()
        h = cfg.A * cfg.B + cfg.F
        symbols = set()
        for x in range(13):
            for y in range(13):
                val = h.value_at((x, y, 1))
                if val:
                    symbols.add(legendre(val, 13))
        # a constant times a square takes nonzero values of a single symbol
        assert symbols == {1, -1}
        assert not is_square_mod_constants(h)
        # and the decomposition exhibits an odd-exponent positive-degree part
        dec = squarefree_decomposition(h)
        assert any(e % 2 == 1 and not g.is_constant() for g, e in dec.parts)

    def test_monotone_truthful_on_random_arrangements(self):
        rng = random.Random(47)
        for _ in range(25):
            lines = []
            while len(lines) < 4:
                cand = FpPoly(P, XYZ, {
                    (1, 0, 0): rng.randint(0, P - 1),
                    (0, 1, 0): rng.randint(0, P - 1),
                    (0, 0, 1): rng.randint(0, P - 1),
                })
                if not cand.is_zero():
                    lines.append(cand)
            f = poly(f"(x+{rng.randint(0, 12)}*y+{rng.randint(0, 12)}*z)^2")
            try:
                cfg = make_config(P, 2, 2, 0, lines[:2], lines[2:], f)
            except ConfigError:
                continue
            rep = check_conditions(cfg)
            for cond in rep.conditions:
                for w in cond.witnesses:
                    if "pair" in w:
                        i, j = w["pair"]
                        c1, c2 = cfg.lines[i], cfg.lines[j]
                        # proportional: all 2x2 minors vanish
                        assert all(
                            (c1.coeffs.get(e1, 0) * c2.coeffs.get(e2, 0)
                             - c1.coeffs.get(e2, 0) * c2.coeffs.get(e1, 0)) % P == 0
                            for e1 in c1.coeffs for e2 in c2.coeffs
                        )
                    if "triple" in w:
                        for idx in w["triple"]:
                            assert cfg.lines[idx].value_at(w["point"]) == 0
                    if "a_factor" in w:
                        assert cfg.f.value_at(w["point"]) == 0


class TestEquation:
    def test_builtin_equation(self):
        cfg = builtin_example()
        eq = build_equation(cfg)
        assert bidegree(eq) == (8, 4)
        p = cfg.p
        A, B, F = (t.extend(("x", "y", "z", "u", "v", "t", "w")) for t in (cfg.A, cfg.B, cfg.F))
        z6 = FpPoly.var(p, ("x", "y", "z", "u", "v", "t", "w"), "z") ** 6
        u4 = FpPoly.var(p, ("x", "y", "z", "u", "v", "t", "w"), "u") ** 4
        v4 = FpPoly.var(p, ("x", "y", "z", "u", "v", "t", "w"), "v") ** 4
        t4 = FpPoly.var(p, ("x", "y", "z", "u", "v", "t", "w"), "t") ** 4
        w = FpPoly.var(p, ("x", "y", "z", "u", "v", "t", "w"), "w")
        expected = w * w - (A * z6 * u4 + B * z6 * v4 + A * B * (A * B + F) * t4)
        assert eq == expected

    def test_degree_audit_all_terms(self):
        for m in (0, 2, 4):
            cfg = builtin_example().with_m(m)
            assert bidegree(build_equation(cfg)) == (8 + m, 4)

    def test_family(self):
        assert bidegree(build_equation(corollary_family(4))) == (8, 4)
        assert bidegree(build_equation(corollary_family(5))) == (10, 4)
        with pytest.raises(ConfigError):
            corollary_family(3)


class TestAlphaCertificate:
    def test_builtin_four_nontrivial(self):
        rep = alpha_certificate(builtin_example())
        assert rep.verdict
        assert len(rep.certificates) == 4
        for cert in rep.certificates:
            assert cert.nontrivial and cert.equals_other_restriction
        assert not rep.abc_product_square
        assert rep.abc_matches_ab_plus_f

    def test_shared_line_kills_a_residue(self):
        # a line dividing both A and B produces an (l, l)-type trivial residue
        cfg = make_config(P, 2, 2, 0, [poly("x"), poly("x+y")],
                          [poly("x"), poly("y")], poly("(x+y+z)^2"))
        rep = alpha_certificate(cfg)
        assert any(not c.nontrivial for c in rep.certificates)
        assert not rep.verdict


class TestLocalCertificates:
    def test_builtin_passes(self):
        rep = local_certificates(builtin_example())
        assert rep.verdict
        assert [b.bullet for b in rep.bullets] == [1, 2, 3, 4]

    def test_bullet3_values(self):
        rep = local_certificates(builtin_example())
        b3 = rep.bullets[2]
        points = {tuple(d["point"]) for d in b3.details}
        assert points == {(3, 3, 1), (3, 9, 1), (9, 3, 1), (9, 9, 1)}
        for d in b3.details:
            assert d["ab_plus_f_value"] == d["f_value"] ** 2 % P != 0

    def test_negative_control_matches_condition_iv(self):
        cfg = control_f_vanishing()
        rep = local_certificates(cfg)
        assert not rep.bullets[2].passed
        assert not check_conditions(cfg).condition("(iv)").passed

    def test_implication_conditions_to_bullets(self):
        # any config passing (i)-(iv) automatically passes bullets 1 and 3
        rng = random.Random(53)
        tested = 0
        for _ in range(40):
            c1 = rng.randint(1, P - 1)
            c2 = rng.randint(1, P - 1)
            try:
                cfg = make_config(
                    P, 2, 2, 0,
                    [poly(f"x+{c1}*z"), poly(f"x+{c2}*z")],
                    [poly(f"y+{c1}*z"), poly(f"y+{c2}*z")],
                    poly(f"(x+y+{rng.randint(0, P - 1)}*z)^2"),
                )
            except ConfigError:
                continue
            cond = check_conditions(cfg)
            if not all(cond.condition(n).passed for n in ("(i)", "(ii)", "(iii)", "(iv)")):
                continue
            rep = local_certificates(cfg)
            assert rep.bullets[0].passed and rep.bullets[2].passed
            tested += 1
        assert tested >= 5


class TestNormalizeLocalForm:
    def test_builtin_d_is_one(self):
        r = normalize_local_form(builtin_example())
        assert (r.e1, r.e2) == (6, 6)
        assert r.congruence_mod_4 == 0 and r.d_choice == "1"
        assert r.fourth_power_check

    def test_m_two_d_is_z(self):
        r = normalize_local_form(builtin_example().with_m(2))
        assert r.congruence_mod_4 == 2 and r.d_choice == "z"
        assert r.fourth_power_check

    def test_parity_independent_of_m(self):
        for m in (0, 2, 4, 6):
            r = normalize_local_form(builtin_example().with_m(m))
            assert (r.e1 * r.e2) % 2 == (6 * 6) % 2


class TestFullPipeline:
    def test_builtin_verdict(self):
        rep = verify_all(builtin_example())
        assert rep.verdict
        assert rep.equation_bidegree == (8, 4)

    def test_failing_config_short_circuits(self):
        rep = verify_all(control_concurrent())
        assert not rep.verdict
        assert rep.alpha is None


class TestConfigFormat:
    def test_round_trip(self):
        cfg = builtin_example()
        assert config_from_text(config_to_text(cfg)) == cfg

    def test_comments_and_quadratic_entries(self):
        text = """
# bundled example
prime = 13
g = 2
n = 2
m = 0
a_factors = x^2+x*z+z^2
b_factors = y^2+y*z+z^2
f = (x+y)^2
"""
        assert config_from_text(text) == builtin_example()

    def test_missing_key(self):
        with pytest.raises(ConfigError, match="missing key"):
            config_from_text("prime = 13")

    def test_error_carries_line_number(self):
        text = "prime = 13\ng = 2\nn = 2\nm = 0\na_factors = x+!\nb_factors = y\nf = x^2"
        with pytest.raises(ConfigError, match="line 5"):
            config_from_text(text)
