"""Arbitrary-precision exact integer and rational linear algebra.

Matrices are dense lists of Python ints, so every operation is bit-exact.
Lattices are sublattices of Z^n given by a basis of row vectors; the basis is
kept in row Hermite normal form, which makes equality of lattices equality of
representations.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Immutable integer matrix (row-major).

    Zero rows are allowed so that the empty basis of the zero lattice has a
    representation.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Sequence[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        if cols < 1:
            raise ValueError("column count must be positive")
        self._data = rows
        self.rows = len(rows)
        self.cols = cols

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([self.column(j) for j in range(self.cols)], cols=max(self.rows, 1))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self):
        return hash((self.cols, self._data))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        ot = other.transpose()
        return IntMatrix(
            [
                [sum(a * b for a, b in zip(r, c)) for c in ot._data]
                for r in self._data
            ],
            cols=other.cols,
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in sum")
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            cols=self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in difference")
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            cols=self.cols,
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self._data], cols=self.cols)

    def apply(self, vec: Sequence[int]) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(r, vec)) for r in self._data)

    def pow(self, k: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = IntMatrix.identity(self.rows)
        for _ in range(k):
            out = out * self
        return out

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self._data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def __str__(self):
        if self.rows == 0:
            return "(empty)"
        widths = [max(len(str(self[i, j])) for i in range(self.rows)) for j in range(self.cols)]
        lines = []
        for r in self._data:
            lines.append("[ " + "  ".join(str(x).rjust(w) for x, w in zip(r, widths)) + " ]")
        return "\n".join(lines)


def _hnf_rows(data: list) -> tuple:
    """Row-reduce ``data`` in place to HNF, returning the transform rows.

    Returns (h, u) as lists of lists with h = u * original.
    """
    m = len(data)
    n = len(data[0]) if m else 0
    h = [list(r) for r in data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivot_row = 0
    for col in range(n):
        # chase the gcd of the column into pivot_row via Euclid row ops
        nz = [i for i in range(pivot_row, m) if h[i][col] != 0]
        if not nz:
            continue
        while True:
            nz = [i for i in range(pivot_row, m) if h[i][col] != 0]
            if len(nz) == 1:
                break
            nz.sort(key=lambda i: abs(h[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = h[i][col] // h[i0][col]
                if q:
                    for j in range(n):
                        h[i][j] -= q * h[i0][j]
                    for j in range(m):
                        u[i][j] -= q * u[i0][j]
        i0 = nz[0]
        if i0 != pivot_row:
            h[i0], h[pivot_row] = h[pivot_row], h[i0]
            u[i0], u[pivot_row] = u[pivot_row], u[i0]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        # reduce the entries above the pivot into [0, pivot)
        p = h[pivot_row][col]
        for i in range(pivot_row):
            q = h[i][col] // p
            if q:
                for j in range(n):
                    h[i][j] -= q * h[pivot_row][j]
                for j in range(m):
                    u[i][j] -= q * u[pivot_row][j]
        pivot_row += 1
        if pivot_row == m:
            break
    return h, u


def hnf(M: IntMatrix) -> tuple:
    """Row Hermite normal form.

    Returns (H, U) with H = U * M, U unimodular, pivots positive and entries
    above each pivot reduced into [0, pivot).
    """
    if M.rows == 0:
        return M, IntMatrix([], cols=1)
    h, u = _hnf_rows(M.tolist())
    return IntMatrix(h, cols=M.cols), IntMatrix(u, cols=M.rows)


def snf(M: IntMatrix) -> list:
    """Nonzero Smith invariant factors d1 | d2 | ... | dr of M."""
    a = [list(r) for r in M.tolist()]
    m = len(a)
    n = M.cols
    divisors = []
    top = 0
    while True:
        # find a nonzero entry in the remaining block
        found = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        # clear row and column `top` alternately until both are clear
        while True:
            # column
            dirty = False
            for i in range(top + 1, m):
                while a[i][top] != 0:
                    q = a[i][top] // a[top][top]
                    if q:
                        for jj in range(top, n):
                            a[i][jj] -= q * a[top][jj]
                    if a[i][top] != 0:
                        a[top], a[i] = a[i], a[top]
                        dirty = True
            # row
            for j in range(top + 1, n):
                while a[top][j] != 0:
                    q = a[top][j] // a[top][top]
                    if q:
                        for ii in range(top, m):
                            a[ii][j] -= q * a[ii][top]
                    if a[top][j] != 0:
                        for ii in range(top, m):
                            a[ii][top], a[ii][j] = a[ii][j], a[ii][top]
                        dirty = True
            if not dirty and all(a[i][top] == 0 for i in range(top + 1, m)):
                break
        divisors.append(abs(a[top][top]))
        top += 1
        if top == m or top == n:
            break
    # enforce the divisibility chain
    for i in range(len(divisors)):
        for j in range(i + 1, len(divisors)):
            if divisors[j] % divisors[i] != 0:
                g = math.gcd(divisors[i], divisors[j])
                l = divisors[i] * divisors[j] // g
                divisors[i], divisors[j] = g, l
    return divisors


class IntLattice:
    """Sublattice of Z^n with a canonical (HNF, zero-rows-dropped) basis."""

    __slots__ = ("ambient_rank", "basis")

    def __init__(self, ambient_rank: int, generators: IntMatrix | Iterable[Sequence[int]]):
        if not isinstance(generators, IntMatrix):
            generators = IntMatrix(generators, cols=ambient_rank)
        if generators.cols != ambient_rank:
            raise ValueError("generator length does not match ambient rank")
        h, _ = hnf(generators) if generators.rows else (generators, None)
        rows = [r for r in h.tolist() if any(r)] if generators.rows else []
        self.ambient_rank = ambient_rank
        self.basis = IntMatrix(rows, cols=ambient_rank)

    @staticmethod
    def zero(ambient_rank: int) -> "IntLattice":
        return IntLattice(ambient_rank, IntMatrix([], cols=ambient_rank))

    @staticmethod
    def full(ambient_rank: int) -> "IntLattice":
        return IntLattice(ambient_rank, IntMatrix.identity(ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntLattice)
            and self.ambient_rank == other.ambient_rank
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __repr__(self):
        return f"IntLattice(rank {self.rank} in Z^{self.ambient_rank}, basis {self.basis.tolist()})"

    def coordinates(self, vec: Sequence[int]) -> Optional[tuple]:
        """Integer coordinates of vec in the basis, or None if not a member."""
        v = [int(x) for x in vec]
        if len(v) != self.ambient_rank:
            raise ValueError("vector length mismatch")
        coords = []
        for row in self.basis.tolist():
            piv = next((j for j, x in enumerate(row) if x != 0), None)
            if piv is None:
                continue
            if v[piv] % row[piv] != 0:
                return None
            q = v[piv] // row[piv]
            coords.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        if any(v):
            return None
        return tuple(coords)

    def contains(self, vec: Sequence[int]) -> bool:
        return self.coordinates(vec) is not None


def kernel_basis(M: IntMatrix) -> IntLattice:
    """Saturated integer kernel {x : M x = 0} of an integer matrix."""
    if M.rows == 0:
        return IntLattice.full(M.cols)
    # rows u of U with u * M^T = 0 are exactly the right-kernel of M
    t = M.transpose()
    h, u = hnf(t)
    gens = [u.row(i) for i in range(h.rows) if not any(h.row(i))]
    return IntLattice(M.cols, IntMatrix(gens, cols=M.cols) if gens else IntMatrix([], cols=M.cols))


def saturate(L: IntLattice) -> IntLattice:
    """(L tensor Q) intersected with Z^n: the saturation of L."""
    if L.rank == 0:
        return IntLattice.zero(L.ambient_rank)
    # the Q-span of the rows is the orthogonal complement of the kernel
    k = kernel_basis(L.basis)
    if k.rank == 0:
        return IntLattice.full(L.ambient_rank)
    return kernel_basis(k.basis)


def intersect(L1: IntLattice, L2: IntLattice) -> IntLattice:
    """Intersection via the kernel of the concatenated-basis matrix."""
    if L1.ambient_rank != L2.ambient_rank:
        raise ValueError("ambient ranks differ")
    n = L1.ambient_rank
    if L1.rank == 0 or L2.rank == 0:
        return IntLattice.zero(n)
    b1 = L1.basis.tolist()
    b2 = L2.basis.tolist()
    # columns are the basis vectors of L1 followed by the negated ones of L2
    stacked = IntMatrix(
        [[b1[i][r] for i in range(len(b1))] + [-b2[i][r] for i in range(len(b2))] for r in range(n)],
        cols=len(b1) + len(b2),
    )
    ker = kernel_basis(stacked)
    gens = []
    for row in ker.basis.tolist():
        x = row[: len(b1)]
        vec = [sum(x[i] * b1[i][j] for i in range(len(b1))) for j in range(n)]
        gens.append(vec)
    return IntLattice(n, IntMatrix(gens, cols=n) if gens else IntMatrix([], cols=n))


def solve_integral(G: IntMatrix, b: Sequence[int]) -> Optional[tuple]:
    """Solve G x = b exactly; return the integer solution or None.

    G must be square and invertible over Q; a singular G raises ValueError
    (distinct from the no-integral-solution answer).
    """
    if G.rows != G.cols:
        raise ValueError("G must be square")
    n = G.rows
    if len(b) != n:
        raise ValueError("vector length mismatch")
    a = [[Fraction(G[i, j]) for j in range(n)] + [Fraction(int(b[i]))] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("G is singular")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    sol = [a[i][n] for i in range(n)]
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def index_in(sub: IntLattice, super_: IntLattice) -> Optional[int]:
    """[super : sub] when sub is a finite-index sublattice of super, else None."""
    if sub.ambient_rank != super_.ambient_rank:
        raise ValueError("ambient ranks differ")
    if sub.rank == 0:
        return 1 if super_.rank == 0 else None
    coords = []
    for row in sub.basis.tolist():
        c = super_.coordinates(row)
        if c is None:
            return None
        coords.append(list(c))
    if sub.rank != super_.rank:
        return None
    t = IntMatrix(coords, cols=super_.rank)
    d = 1
    for x in snf(t):
        d *= x
    return d if d else None
