import pytest

from dp2 import golden
from dp2.exactalg import IntLattice, IntMatrix, index_in, intersect, saturate
from dp2.galois_lattice import (
    NotFinite,
    group_closure,
    invariant_report,
    invariant_sublattice,
    orbits,
)
from dp2.geometry import CASE_NONSQUARE, CASE_SQUARE_D, generators, surface


def gen_matrix(case, name):
    s = surface(case)
    g = next(g for g in generators(case) if g.name == name)
    return s.galois_matrix(g)


class TestClosure:
    def test_identity_group(self):
        g = group_closure([IntMatrix.identity(3)])
        assert g.order == 1

    def test_square_d_pair(self):
        g = group_closure([gen_matrix(CASE_SQUARE_D, "iota_a"), gen_matrix(CASE_SQUARE_D, "iota_b")])
        assert 16 % g.order == 0 and g.order == 16

    def test_abelian(self):
        g = group_closure([gen_matrix(CASE_NONSQUARE, "iota_a"), gen_matrix(CASE_NONSQUARE, "iota_c")])
        for m1 in g.elements:
            for m2 in g.elements:
                assert m1 * m2 == m2 * m1

    def test_shear_not_finite(self):
        with pytest.raises(NotFinite):
            group_closure([IntMatrix([[1, 1], [0, 1]])], bound=64)

    def test_non_unimodular_rejected(self):
        with pytest.raises(ValueError):
            group_closure([IntMatrix([[2, 0], [0, 1]])])


class TestInvariants:
    def test_iota_a_square_d_rank_four(self):
        group = group_closure([gen_matrix(CASE_SQUARE_D, "iota_a")])
        inv = invariant_sublattice(group)
        assert inv.rank == 4
        assert inv == saturate(IntLattice(8, golden.SQUARE_D_INVARIANTS_A_DOUBLED))

    def test_iota_b_square_d_rank_four(self):
        group = group_closure([gen_matrix(CASE_SQUARE_D, "iota_b")])
        inv = invariant_sublattice(group)
        assert inv == saturate(IntLattice(8, golden.SQUARE_D_INVARIANTS_B_DOUBLED))

    def test_pair_invariants_equal_intersection_of_single_ones(self):
        ga = group_closure([gen_matrix(CASE_SQUARE_D, "iota_a")])
        gb = group_closure([gen_matrix(CASE_SQUARE_D, "iota_b")])
        both = group_closure([gen_matrix(CASE_SQUARE_D, "iota_a"), gen_matrix(CASE_SQUARE_D, "iota_b")])
        inter = intersect(invariant_sublattice(ga), invariant_sublattice(gb))
        assert inter == invariant_sublattice(both)
        assert inter.rank == 2
        assert inter.contains(golden.MU) and inter.contains(golden.KAPPA)
        assert inter == saturate(IntLattice(8, golden.SQUARE_D_INTERSECTION_DOUBLED))

    def test_mu_kappa_are_a_basis(self):
        r = invariant_report(CASE_SQUARE_D)
        assert r.rank == 2
        assert index_in(IntLattice(8, [golden.MU, golden.KAPPA]), r.invariants) == 1

    def test_nonsquare_is_kappa_line(self):
        group = group_closure([gen_matrix(CASE_NONSQUARE, "iota_a")])
        inv = invariant_sublattice(group)
        assert inv.rank == 1
        assert inv.contains(golden.KAPPA)
        r = invariant_report(CASE_NONSQUARE)
        assert r.rank == 1 and r.invariants == inv

    def test_fixed_by_whole_closure(self):
        r = invariant_report(CASE_SQUARE_D)
        group = group_closure(
            [gen_matrix(CASE_SQUARE_D, n) for n in ("iota_a", "iota_b", "iota_sd")]
        )
        for m in group.elements:
            for row in r.invariants.basis.tolist():
                assert m.apply(row) == tuple(row)


class TestOrbits:
    def test_trivial_group_singletons(self):
        s = surface(CASE_SQUARE_D)
        parts = orbits(s, group_gens=[])
        assert len(parts) == 56 and all(len(o) == 1 for o in parts)

    def test_sizes_sum_to_56(self):
        for case in (CASE_SQUARE_D, CASE_NONSQUARE):
            parts = orbits(surface(case))
            assert sum(len(o) for o in parts) == 56

    def test_u_line_orbit_square_d(self):
        s = surface(CASE_SQUARE_D)
        parts = orbits(s)
        i0 = next(i for i, c in enumerate(s.curves) if str(c.label) == "l(u,z^1,+)")
        orbit = next(o for o in parts if i0 in o)
        assert sorted(str(s.curves[i].label) for i in orbit) == sorted(golden.ORBIT_OF_U_LINE)
        total = [0] * 8
        for i in orbit:
            total = [x + y for x, y in zip(total, s.classes[i])]
        assert tuple(total) == tuple(2 * x for x in golden.MU)

    def test_orbit_refinement_under_subgroup(self):
        s = surface(CASE_SQUARE_D)
        sub = [g for g in generators(CASE_SQUARE_D) if g.name == "iota_a"]
        fine = orbits(s, group_gens=sub)
        coarse = orbits(s)
        for o in fine:
            assert any(set(o) <= set(big) for big in coarse)


class TestOrbitSums:
    def test_contained_in_invariants(self):
        for case in (CASE_SQUARE_D, CASE_NONSQUARE):
            r = invariant_report(case)
            for row in r.orbit_sums.basis.tolist():
                assert r.invariants.contains(row)

    def test_square_d_index_two(self):
        r = invariant_report(CASE_SQUARE_D)
        assert r.orbit_sum_index == 2
        assert r.orbit_sums.contains(tuple(2 * x for x in golden.MU))
        assert not r.orbit_sums.contains(golden.MU)

    def test_nonsquare_index_one(self):
        r = invariant_report(CASE_NONSQUARE)
        assert r.orbit_sum_index == 1
        assert r.invariants.contains(golden.KAPPA)


class TestReport:
    def test_square_d_report(self):
        r = invariant_report(CASE_SQUARE_D)
        assert r.mu == golden.MU and r.mu_is_normalized
        assert r.kappa == golden.KAPPA
        assert r.group_order == 16
        assert not r.notes

    def test_nonsquare_report(self):
        r = invariant_report(CASE_NONSQUARE)
        assert r.mu is None
        assert r.group_order == 32
