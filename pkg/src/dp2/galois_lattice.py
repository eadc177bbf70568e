"""Finite matrix-group closure, invariant sublattices and curve orbits.

Takes the action matrices produced by the geometry layer, closes them into a
finite group, computes the saturated invariant sublattice, the Galois orbits
on the 56 curves, and the sublattice generated by orbit class-sums together
with the anticanonical class.  The index of the latter in the former is the
machine-checkable shadow of the cokernel computation: orbit sums of effective
Galois-stable curves are honest divisor classes of the ground-field surface.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exactalg import IntLattice, IntMatrix, index_in, kernel_basis
from .geometry import Surface, generators, surface
from . import golden


class NotFinite(Exception):
    """Closure enumeration exceeded the configured bound."""


@dataclass(frozen=True)
class MatrixGroup:
    generators: tuple
    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)


def group_closure(gens: Sequence[IntMatrix], bound: int = 4096) -> MatrixGroup:
    """Close a list of integer matrices under multiplication.

    The generators must be invertible over Z and generate a finite group;
    NotFinite is raised once more than `bound` elements appear.  For a finite
    group of invertible matrices, closure under products implies closure
    under inverses.
    """
    gens = tuple(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].rows
    for g in gens:
        if g.rows != g.cols or g.rows != n:
            raise ValueError("generators must be square of equal size")
        if abs(g.det()) != 1:
            raise ValueError("generators must be unimodular")
    ident = IntMatrix.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = m * g
                if p not in seen:
                    if len(seen) >= bound:
                        raise NotFinite(f"closure exceeded {bound} elements")
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    elements = tuple(sorted(seen, key=lambda m: tuple(tuple(r) for r in m.tolist())))
    return MatrixGroup(gens, elements)


def invariant_sublattice(group: MatrixGroup) -> IntLattice:
    """Saturated lattice of vectors fixed by every generator.

    Computed as the kernel of the stacked (M - I) blocks; the kernel of an
    integer matrix is saturated by construction.
    """
    n = group.generators[0].rows
    ident = IntMatrix.identity(n)
    rows = []
    for g in group.generators:
        rows.extend((g - ident).tolist())
    return kernel_basis(IntMatrix(rows, cols=n))


def orbits(surf: Surface, group_gens=None) -> list:
    """Partition of the 56 curves into Galois orbits (index lists, sorted)."""
    gens = group_gens if group_gens is not None else generators(surf.case)
    n = len(surf.curves)
    images = []
    for gen in gens:
        images.append([surf.index[surf.apply_galois(gen, c).label] for c in surf.curves])
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start]:
            continue
        stack, orbit = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            orbit.append(i)
            for img in images:
                j = img[i]
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        parts.append(sorted(orbit))
    parts.sort(key=lambda o: o[0])
    return parts


def orbit_sum_sublattice(surf: Surface, parts: Optional[list] = None) -> IntLattice:
    """Lattice generated by the orbit class-sums together with kappa."""
    if parts is None:
        parts = orbits(surf)
    cls = surf.classes
    gens = [list(surf.kappa)]
    for orbit in parts:
        total = [0] * 8
        for i in orbit:
            total = [x + y for x, y in zip(total, cls[i])]
        gens.append(total)
    return IntLattice(8, gens)


@dataclass
class InvariantReport:
    case: str
    group_order: int
    invariants: IntLattice
    rank: int
    kappa: tuple
    mu: Optional[tuple]
    mu_is_normalized: bool
    orbit_partition: list
    orbit_sums: IntLattice
    orbit_sum_index: Optional[int]
    notes: list = field(default_factory=list)


def invariant_report(case: str, bound: int = 4096) -> InvariantReport:
    """Full pipeline: matrices -> closure -> invariants -> orbit-sum index."""
    surf = surface(case)
    gens = generators(case)
    mats = [surf.galois_matrix(g) for g in gens]
    group = group_closure(mats, bound=bound)
    inv = invariant_sublattice(group)
    for m in group.elements:
        for row in inv.basis.tolist():
            if m.apply(row) != tuple(row):
                raise AssertionError("invariant vector moved by a group element")
    kappa = surf.kappa
    notes = []
    mu = None
    mu_is_normalized = False
    if inv.rank == 2:
        if inv.contains(golden.MU):
            mu = golden.MU
            mu_is_normalized = True
        else:
            # fall back to any basis completion of kappa
            for row in inv.basis.tolist():
                cand = IntLattice(8, [row, list(kappa)])
                if cand.rank == 2 and index_in(cand, inv) == 1:
                    mu = tuple(row)
                    break
            notes.append("mu fallback: preferred normalization is not invariant")
    parts = orbits(surf)
    osum = orbit_sum_sublattice(surf, parts)
    idx = index_in(osum, inv)
    return InvariantReport(
        case=case,
        group_order=group.order,
        invariants=inv,
        rank=inv.rank,
        kappa=kappa,
        mu=mu,
        mu_is_normalized=mu_is_normalized,
        orbit_partition=parts,
        orbit_sums=osum,
        orbit_sum_index=idx,
        notes=notes,
    )
