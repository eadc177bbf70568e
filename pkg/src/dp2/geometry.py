"""The 56 exceptional curves of a diagonal degree-2 del Pezzo surface.

The surface w^2 = A u^4 + B v^4 + C t^4 is treated over a symbolic splitting
field: Q(zeta8) extended by independent transcendental root symbols, either
(a, b, c) with a^4 = A etc., or (a, b, sd) with sd^2 = d when C = A*B*d^2.
Each curve is a pair (L, Q): a linear form L(u, v, t) and a weight-2 form Q
with w = Q on the curve.  All intersection theory is done exactly on these
equations; nothing is looked up from tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .cyclo import Cyclo, I, SQRT2, i_pow, zeta_pow
from .exactalg import IntMatrix, solve_integral
from .splitscalar import SplitScalar

CASE_NONSQUARE = "nonsquare"
CASE_SQUARE_D = "square-d"
CASES = (CASE_NONSQUARE, CASE_SQUARE_D)

_MU4 = ("1", "i", "-1", "-i")


class AmbiguousTangency(Exception):
    """Raised when two curves meet on the branch locus: the transversality
    rule cannot assign a multiplicity there."""


class NoMatchError(Exception):
    """A Galois image failed to match any enumerated curve (internal bug)."""


def _canonical_triple(a: int, b: int, g: int) -> tuple:
    """Representative of (i^a, i^b, i^g) modulo the diagonal sign.

    The class always has exactly one member with gamma in {1, i}, i.e. with
    g-power in {0, 1}.
    """
    a, b, g = a % 4, b % 4, g % 4
    if g >= 2:
        a, b, g = (a + 2) % 4, (b + 2) % 4, (g + 2) % 4
    return a, b, g


@dataclass(frozen=True)
class CurveLabel:
    family: Optional[str] = None          # 't' | 'u' | 'v' for the line families
    delta_pow: Optional[int] = None       # odd zeta-power in {1, 3, 5, 7}
    sign: Optional[int] = None            # +1 | -1 branch of w
    triple: Optional[tuple] = None        # i-powers of (alpha, beta, gamma)

    @staticmethod
    def of_family(family: str, delta_pow: int, sign: int) -> "CurveLabel":
        dp = delta_pow % 8
        if family not in "tuv" or dp not in (1, 3, 5, 7) or sign not in (1, -1):
            raise ValueError("bad family label")
        return CurveLabel(family=family, delta_pow=dp, sign=sign)

    @staticmethod
    def of_triple(a: int, b: int, g: int) -> "CurveLabel":
        return CurveLabel(triple=_canonical_triple(a, b, g))

    def __str__(self):
        if self.family is not None:
            s = "+" if self.sign > 0 else "-"
            return f"l({self.family},z^{self.delta_pow},{s})"
        a, b, g = self.triple
        return f"l({_MU4[a]},{_MU4[b]},{_MU4[g]})"


@dataclass(frozen=True)
class ExceptionalCurve:
    label: CurveLabel
    case: str
    L: tuple                 # coefficients of (u, v, t), SplitScalar each
    Q: tuple                 # coefficients of (u^2, v^2, t^2, uv, ut, vt)

    def __str__(self):
        return f"{self.label}: ({format_linear(self.L)} = 0, w = {format_quadratic(self.Q)})"


_QNAMES = ("u^2", "v^2", "t^2", "u*v", "u*t", "v*t")


def format_linear(L) -> str:
    parts = []
    for coef, var in zip(L, ("u", "v", "t")):
        if coef.is_zero():
            continue
        cs = str(coef)
        parts.append(var if cs == "1" else f"({cs})*{var}")
    return " + ".join(parts) if parts else "0"


def format_quadratic(Q) -> str:
    parts = []
    for coef, mon in zip(Q, _QNAMES):
        if coef.is_zero():
            continue
        cs = str(coef)
        parts.append(mon if cs == "1" else f"({cs})*{mon}")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GaloisGenerator:
    """Field automorphism fixing Q(zeta8), acting on one root symbol."""

    name: str
    symbol: str
    unit: Cyclo
    order: int

    def on_scalar(self, s: SplitScalar) -> SplitScalar:
        return s.twist(self.symbol, self.unit)


def generators(case: str) -> tuple:
    if case == CASE_NONSQUARE:
        return (
            GaloisGenerator("iota_a", "a", I, 4),
            GaloisGenerator("iota_b", "b", I, 4),
            GaloisGenerator("iota_c", "c", I, 4),
        )
    if case == CASE_SQUARE_D:
        return (
            GaloisGenerator("iota_a", "a", I, 4),
            GaloisGenerator("iota_b", "b", I, 4),
            GaloisGenerator("iota_sd", "sd", Cyclo(-1), 2),
        )
    raise ValueError(f"unknown case {case!r}")


def _symbols(case: str) -> tuple:
    return ("a", "b", "c") if case == CASE_NONSQUARE else ("a", "b", "sd")


def enumerate_curves(case: str) -> list:
    """All 56 exceptional curves of the chosen case, in a fixed order."""
    syms = _symbols(case)

    def S(name, p=1):
        return SplitScalar.sym(syms, name, p)

    def C(value):
        return SplitScalar.const(syms, value)

    zero = C(0)
    a, b = S("a"), S("b")
    if case == CASE_NONSQUARE:
        c = S("c")
    else:
        c = a * b * S("sd")  # fourth root of A*B*d^2

    curves = []
    for family in "tuv":
        for dp in (1, 3, 5, 7):
            for sign in (1, -1):
                delta = C(zeta_pow(dp))
                sg = C(sign)
                if family == "t":
                    L = (delta * a, b, zero)
                    Q = (zero, zero, sg * c * c, zero, zero, zero)
                elif family == "u":
                    L = (zero, delta * b, c)
                    Q = (sg * a * a, zero, zero, zero, zero, zero)
                else:
                    L = (a, zero, delta * c)
                    Q = (zero, sg * b * b, zero, zero, zero, zero)
                if case == CASE_SQUARE_D:
                    L = _simplify_line(L)
                curves.append(
                    ExceptionalCurve(CurveLabel.of_family(family, dp, sign), case, L, Q)
                )
    r2 = C(SQRT2)
    for ap, bp, gp in itertools.product(range(4), range(4), range(2)):
        al, be, ga = C(i_pow(ap)), C(i_pow(bp)), C(i_pow(gp))
        L = (al * a, be * b, ga * c)
        Q = (
            zero,
            zero,
            zero,
            r2 * al * be * a * b,
            r2 * al * ga * a * c,
            r2 * be * ga * b * c,
        )
        curves.append(ExceptionalCurve(CurveLabel.of_triple(ap, bp, gp), case, L, Q))
    return curves


def _simplify_line(L) -> tuple:
    """Divide out a common monomial factor of the three line coefficients.

    Lines are only defined up to a scalar; this reproduces the simplified
    printed equations of the square-discriminant case (e.g. delta*v + a*sd*t).
    """
    mins = None
    for coef in L:
        if coef.is_zero():
            continue
        lo = [min(e[k] for e in coef.coeffs) for k in range(len(coef.symbols))]
        mins = lo if mins is None else [min(m, x) for m, x in zip(mins, lo)]
    if mins is None or not any(mins):
        return L
    syms = next(c for c in L if not c.is_zero()).symbols
    shift = SplitScalar(syms, {tuple(-m for m in mins): Cyclo(1)})
    return tuple(c * shift if not c.is_zero() else c for c in L)


# -- intersection theory --------------------------------------------------


def _proportional(L1, L2) -> bool:
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        if not (L1[i] * L2[j] - L1[j] * L2[i]).is_zero():
            return False
    return True


def _cross(L1, L2) -> tuple:
    return (
        L1[1] * L2[2] - L1[2] * L2[1],
        L1[2] * L2[0] - L1[0] * L2[2],
        L1[0] * L2[1] - L1[1] * L2[0],
    )


def _eval_q(Q, P):
    u, v, t = P
    qs = (u * u, v * v, t * t, u * v, u * t, v * t)
    out = None
    for coef, mono in zip(Q, qs):
        term = coef * mono
        out = term if out is None else out + term
    return out


def _restrict_to_line(Q, L) -> tuple:
    """Coefficients (A, B, C) of Q pulled back to {L = 0} as A s^2 + B st + C t^2.

    Uses the homogeneous substitution through the pivot coordinate, so no
    division is performed; the result is zero iff L divides Q.
    """
    k = next(i for i, coef in enumerate(L) if not coef.is_zero())
    others = [i for i in range(3) if i != k]

    def point(s_val, t_val):
        pt = [None, None, None]
        pt[others[0]] = L[k] * s_val
        pt[others[1]] = L[k] * t_val
        pt[k] = -(L[others[0]] * s_val + L[others[1]] * t_val)
        return tuple(pt)

    one = SplitScalar.const(L[k].symbols, 1)
    zero = SplitScalar.const(L[k].symbols, 0)
    qa = _eval_q(Q, point(one, zero))
    qc = _eval_q(Q, point(zero, one))
    qb = _eval_q(Q, point(one, one)) - qa - qc
    return qa, qb, qc


def _qdiff(Q1, Q2) -> tuple:
    return tuple(x - y for x, y in zip(Q1, Q2))


def curves_equal(c1: ExceptionalCurve, c2: ExceptionalCurve) -> bool:
    """Identity of curves: L up to scalar and L | (Q1 - Q2)."""
    if not _proportional(c1.L, c2.L):
        return False
    return all(x.is_zero() for x in _restrict_to_line(_qdiff(c1.Q, c2.Q), c1.L))


def intersection_number(c1: ExceptionalCurve, c2: ExceptionalCurve) -> int:
    """Intersection pairing of two exceptional curves: -1, 0, 1 or 2."""
    if c1.case != c2.case:
        raise ValueError("curves live on different surfaces")
    if _proportional(c1.L, c2.L):
        rest = _restrict_to_line(_qdiff(c1.Q, c2.Q), c1.L)
        if all(x.is_zero() for x in rest):
            return -1  # same curve: self-intersection by adjunction
        return 2  # two branches over one line meet at the two w-agreement roots
    P = _cross(c1.L, c2.L)
    q1, q2 = _eval_q(c1.Q, P), _eval_q(c2.Q, P)
    if q1 == q2:
        if q1.is_zero():
            raise AmbiguousTangency(
                f"{c1.label} and {c2.label} meet on the branch locus"
            )
        return 1
    return 0


# -- the surface with its basis, Gram matrix and Galois matrices ----------


_BASIS_LABELS = (
    CurveLabel.of_family("u", 1, 1),
    CurveLabel.of_family("u", 3, -1),
    CurveLabel.of_family("v", 1, 1),
    CurveLabel.of_family("v", 3, -1),
    CurveLabel.of_family("t", 1, 1),
    CurveLabel.of_family("t", 3, -1),
    CurveLabel.of_triple(1, 1, 1),
)
_V8_LABELS = (
    CurveLabel.of_family("t", 7, -1),
    CurveLabel.of_family("t", 3, -1),
    CurveLabel.of_triple(1, 1, 1),
)


class Surface:
    """Cached per-case geometry: curves, Gram matrix, classes, actions."""

    def __init__(self, case: str):
        if case not in CASES:
            raise ValueError(f"unknown case {case!r}")
        self.case = case
        self.curves = enumerate_curves(case)
        self.index = {c.label: i for i, c in enumerate(self.curves)}
        self.basis_curves = [self.curve(lbl) for lbl in _BASIS_LABELS]
        self.v8_parts = [self.curve(lbl) for lbl in _V8_LABELS]
        self._pair_cache = {}
        self.gram = self._gram()
        det = self.gram.det()
        if abs(det) != 1:
            raise AmbiguousTangency(f"Gram determinant {det}: basis is not unimodular")
        self.gram_det = det
        kappa = solve_integral(self.gram, (1, 1, 1, 1, 1, 1, 1, 3))
        if kappa is None:
            raise NoMatchError("anticanonical class is not integral")
        self.kappa = kappa
        self._classes = None
        self._matrices = {}

    def curve(self, label: CurveLabel) -> ExceptionalCurve:
        return self.curves[self.index[label]]

    def pair_curves(self, i: int, j: int) -> int:
        key = (i, j) if i <= j else (j, i)
        if key not in self._pair_cache:
            self._pair_cache[key] = intersection_number(self.curves[key[0]], self.curves[key[1]])
        return self._pair_cache[key]

    def _pair_with_basis(self, c: ExceptionalCurve) -> tuple:
        i = self.index[c.label]
        vals = [self.pair_curves(i, self.index[b.label]) for b in self.basis_curves]
        vals.append(sum(self.pair_curves(i, self.index[p.label]) for p in self.v8_parts))
        return tuple(vals)

    def _gram(self) -> IntMatrix:
        # v8 is a three-term sum of curve classes; expand by bilinearity
        idx = [self.index[b.label] for b in self.basis_curves]
        parts = [self.index[p.label] for p in self.v8_parts]
        summands = [[k] for k in idx] + [parts]
        g = [
            [sum(self.pair_curves(x, y) for x in si for y in sj) for sj in summands]
            for si in summands
        ]
        return IntMatrix(g)

    def class_of(self, c: ExceptionalCurve) -> tuple:
        """Coordinates in the basis via the nondegenerate pairing."""
        x = solve_integral(self.gram, self._pair_with_basis(c))
        if x is None:
            raise NoMatchError(f"class of {c.label} is not integral")
        return x

    @property
    def classes(self) -> list:
        if self._classes is None:
            self._classes = [self.class_of(c) for c in self.curves]
        return self._classes

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        gx = self.gram.apply(x)
        return sum(a * b for a, b in zip(gx, y))

    def apply_galois(self, gen: GaloisGenerator, c: ExceptionalCurve) -> ExceptionalCurve:
        """Transform (L, Q) and identify the image among the 56 curves."""
        if gen.name not in {g.name for g in generators(self.case)}:
            raise ValueError(f"{gen.name} does not act on case {self.case}")
        L = tuple(gen.on_scalar(x) for x in c.L)
        Q = tuple(gen.on_scalar(x) for x in c.Q)
        moved = ExceptionalCurve(c.label, c.case, L, Q)
        for cand in self.curves:
            if curves_equal(moved, cand):
                return cand
        raise NoMatchError(f"image of {c.label} under {gen.name} not found")

    def galois_matrix(self, gen: GaloisGenerator) -> IntMatrix:
        """Action on the basis; column j is the class of the image of v_{j+1}."""
        if gen.name not in self._matrices:
            cols = [self.class_of(self.apply_galois(gen, b)) for b in self.basis_curves]
            v8 = [0] * 8
            for part in self.v8_parts:
                img = self.class_of(self.apply_galois(gen, part))
                v8 = [x + y for x, y in zip(v8, img)]
            cols.append(tuple(v8))
            self._matrices[gen.name] = IntMatrix(
                [[cols[j][i] for j in range(8)] for i in range(8)]
            )
        return self._matrices[gen.name]

    def intersection_matrix(self) -> list:
        n = len(self.curves)
        return [[self.pair_curves(i, j) for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def surface(case: str) -> Surface:
    return Surface(case)


def anticanonical_class(case: str) -> tuple:
    return surface(case).kappa


def gram_basis(case: str) -> IntMatrix:
    return surface(case).gram


def class_in_basis(c: ExceptionalCurve) -> tuple:
    return surface(c.case).class_of(c)


def apply_galois(gen: GaloisGenerator, c: ExceptionalCurve) -> ExceptionalCurve:
    return surface(c.case).apply_galois(gen, c)


def galois_matrix(gen: GaloisGenerator, case: str) -> IntMatrix:
    return surface(case).galois_matrix(gen)


# -- norm identity of the square-discriminant kernel argument -------------


@dataclass(frozen=True)
class NormIdentityReport:
    factorization_identity: bool
    norm_product_identity: bool

    @property
    def passed(self) -> bool:
        return self.factorization_identity and self.norm_product_identity


def verify_norm_identity(perturb: bool = False) -> NormIdentityReport:
    """Check the two polynomial identities behind the kernel argument.

    In the ring with formal sA (sA^2 = A), B, d and coordinates u, v, t:
      (1) (w^2 - A u^4) - B (v^4 + A d^2 t^4) = 0 after substituting
          w^2 = A u^4 + B v^4 + A B d^2 t^4,
      (2) (v^2 + i sA d t^2)(v^2 - i sA d t^2) = v^4 + A d^2 t^4.
    With perturb=True the relation is damaged (coefficient 2 on B v^4) and
    both sides are expected to disagree.
    """
    syms = ("sA", "B", "d", "u", "v", "t")

    def S(name, p=1):
        return SplitScalar.sym(syms, name, p)

    sA, B, d, u, v, t = (S(n) for n in syms)
    A = sA * sA
    w2 = A * u ** 4 + (2 if perturb else 1) * B * v ** 4 + A * B * d ** 2 * t ** 4
    lhs1 = w2 - A * u ** 4
    rhs1 = B * (v ** 4 + A * d ** 2 * t ** 4)
    iconst = SplitScalar.const(syms, I)
    lhs2 = (v ** 2 + iconst * sA * d * t ** 2) * (v ** 2 - iconst * sA * d * t ** 2)
    rhs2 = v ** 4 + A * d ** 2 * t ** 4
    return NormIdentityReport(lhs1 == rhs1, lhs2 == rhs2)
