"""Exact multivariate polynomial arithmetic over F_p (p an odd prime).

Polynomials are sparse dictionaries mapping exponent tuples to coefficients
in [0, p).  The variable universe is a fixed subset of {x, y, z, u, v, t, w};
binary operations require matching characteristic and variable tuple.

Includes the text grammar shared with the CLI config format (integers,
variables, + - * ^, parentheses; implicit multiplication is a syntax error),
primitive-part multivariate gcd, characteristic-aware squarefree
decomposition, and restriction of homogeneous forms to lines.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

VALID_VARS = ("x", "y", "z", "u", "v", "t", "w")


class PolyParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (position {pos})")
        self.pos = pos


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def legendre(a: int, p: int) -> int:
    """1 for nonzero squares, -1 for nonsquares, 0 for 0."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """A square root of a mod p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = next(z for z in range(2, p) if legendre(z, p) == -1)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _check_odd_prime(p: int):
    if p == 2:
        raise ValueError("characteristic 2 is not supported")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


class FpPoly:
    """Sparse polynomial over F_p in a fixed variable tuple."""

    __slots__ = ("p", "vars", "coeffs")

    def __init__(self, p: int, vars: Sequence[str], coeffs: Mapping[tuple, int] | None = None):
        _check_odd_prime(p)
        vars = tuple(vars)
        if any(v not in VALID_VARS for v in vars):
            raise ValueError(f"variables must come from {VALID_VARS}")
        if len(set(vars)) != len(vars):
            raise ValueError("repeated variable")
        self.p = p
        self.vars = vars
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                c %= p
                if not c:
                    continue
                e = tuple(int(k) for k in e)
                if len(e) != len(vars) or any(k < 0 for k in e):
                    raise ValueError("bad exponent tuple")
                clean[e] = (clean.get(e, 0) + c) % p
        self.coeffs = {e: c for e, c in clean.items() if c}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(p: int, vars: Sequence[str], value: int) -> "FpPoly":
        return FpPoly(p, vars, {(0,) * len(tuple(vars)): value})

    @staticmethod
    def var(p: int, vars: Sequence[str], name: str) -> "FpPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        try:
            e[vars.index(name)] = 1
        except ValueError:
            raise ValueError(f"unknown variable {name!r}")
        return FpPoly(p, vars, {tuple(e): 1})

    def zero_like(self) -> "FpPoly":
        return FpPoly(self.p, self.vars, {})

    def one_like(self) -> "FpPoly":
        return FpPoly.const(self.p, self.vars, 1)

    # -- basic state ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs == {(0,) * len(self.vars): 1}

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.coeffs.values()), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=-1)

    def degree_in(self, name: str) -> int:
        k = self.vars.index(name)
        return max((e[k] for e in self.coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.coeffs}
        return len(degs) <= 1

    def weighted_degrees(self, weights: Mapping[str, int]) -> set:
        idx = [(self.vars.index(v), w) for v, w in weights.items() if v in self.vars]
        return {sum(e[k] * w for k, w in idx) for e in self.coeffs}

    def _check(self, other) -> "FpPoly":
        if isinstance(other, FpPoly):
            if other.p != self.p or other.vars != self.vars:
                raise ValueError("mixed polynomial domains")
            return other
        if isinstance(other, int):
            return FpPoly.const(self.p, self.vars, other)
        raise TypeError(f"cannot combine FpPoly with {type(other)!r}")

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other) -> "FpPoly":
        o = self._check(other)
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            out[e] = (out.get(e, 0) + c) % self.p
        return FpPoly(self.p, self.vars, out)

    __radd__ = __add__

    def __sub__(self, other) -> "FpPoly":
        o = self._check(other)
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            out[e] = (out.get(e, 0) - c) % self.p
        return FpPoly(self.p, self.vars, out)

    def __rsub__(self, other) -> "FpPoly":
        return self._check(other) - self

    def __neg__(self) -> "FpPoly":
        return FpPoly(self.p, self.vars, {e: self.p - c for e, c in self.coeffs.items()})

    def __mul__(self, other) -> "FpPoly":
        o = self._check(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in o.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % self.p
        return FpPoly(self.p, self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FpPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self.one_like()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = FpPoly.const(self.p, self.vars, other)
        return (
            isinstance(other, FpPoly)
            and self.p == other.p
            and self.vars == other.vars
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.vars, frozenset(self.coeffs.items())))

    # -- term order (deglex) and exact division --------------------------

    def _lead(self) -> tuple:
        return max(self.coeffs, key=lambda e: (sum(e), e))

    def monic(self) -> "FpPoly":
        if self.is_zero():
            return self
        inv = pow(self.coeffs[self._lead()], self.p - 2, self.p)
        return FpPoly(self.p, self.vars, {e: c * inv % self.p for e, c in self.coeffs.items()})

    def leading_coefficient(self) -> int:
        if self.is_zero():
            return 0
        return self.coeffs[self._lead()]

    def try_divide(self, g: "FpPoly") -> Optional["FpPoly"]:
        """Exact quotient self / g, or None when g does not divide self."""
        g = self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self
        out = {}
        lg = g._lead()
        cg_inv = pow(g.coeffs[lg], self.p - 2, self.p)
        while not rem.is_zero():
            lr = rem._lead()
            diff = tuple(a - b for a, b in zip(lr, lg))
            if any(d < 0 for d in diff):
                return None
            coef = rem.coeffs[lr] * cg_inv % self.p
            out[diff] = coef
            rem = rem - FpPoly(self.p, self.vars, {diff: coef}) * g
        return FpPoly(self.p, self.vars, out)

    def __floordiv__(self, g: "FpPoly") -> "FpPoly":
        q = self.try_divide(g)
        if q is None:
            raise ValueError("inexact polynomial division")
        return q

    def divides(self, other: "FpPoly") -> bool:
        return other.try_divide(self) is not None

    # -- calculus and substitution ---------------------------------------

    def derivative(self, name: str) -> "FpPoly":
        k = self.vars.index(name)
        out = {}
        for e, c in self.coeffs.items():
            if e[k] == 0:
                continue
            e2 = list(e)
            e2[k] -= 1
            out[tuple(e2)] = (out.get(tuple(e2), 0) + c * e[k]) % self.p
        return FpPoly(self.p, self.vars, out)

    def pth_root(self) -> "FpPoly":
        """Inverse Frobenius: valid when every exponent is divisible by p."""
        out = {}
        for e, c in self.coeffs.items():
            if any(k % self.p for k in e):
                raise ValueError("not a p-th power")
            out[tuple(k // self.p for k in e)] = c
        return FpPoly(self.p, self.vars, out)

    def evaluate(self, point: Mapping[str, int]) -> "FpPoly":
        """Partial or full evaluation; remaining variables stay symbolic."""
        vals = {self.vars.index(n): v % self.p for n, v in point.items()}
        out = {}
        for e, c in self.coeffs.items():
            for k, v in vals.items():
                c = c * pow(v, e[k], self.p) % self.p
            e2 = tuple(0 if k in vals else exp for k, exp in enumerate(e))
            out[e2] = (out.get(e2, 0) + c) % self.p
        return FpPoly(self.p, self.vars, out)

    def value_at(self, point: Sequence[int]) -> int:
        """Full evaluation at a coordinate tuple matching self.vars."""
        if len(point) != len(self.vars):
            raise ValueError("point length mismatch")
        out = 0
        for e, c in self.coeffs.items():
            term = c
            for k, exp in enumerate(e):
                term = term * pow(point[k] % self.p, exp, self.p) % self.p
            out = (out + term) % self.p
        return out

    def extend(self, vars: Sequence[str]) -> "FpPoly":
        """Reinterpret in a larger variable tuple."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.coeffs.items():
            e2 = [0] * len(vars)
            for k, exp in enumerate(e):
                e2[pos[k]] = exp
            out[tuple(e2)] = c
        return FpPoly(self.p, vars, out)

    # -- printing ---------------------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for e in sorted(self.coeffs, key=lambda e: (sum(e), e), reverse=True):
            c = self.coeffs[e]
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                terms.append(str(c))
            elif c == 1:
                terms.append("*".join(factors))
            else:
                terms.append("*".join([str(c)] + factors))
        return " + ".join(terms)

    def __repr__(self):
        return f"FpPoly(p={self.p}, {self})"


# -- parser ---------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens, p, vars):
        self.tokens = tokens
        self.k = 0
        self.p = p
        self.vars = tuple(vars)

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse_expr(self):
        node = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term(self):
        node = self.parse_unary()
        while self.peek()[0] == "*":
            self.advance()
            node = node * self.parse_unary()
        return node

    def parse_unary(self):
        if self.peek()[0] == "-":
            self.advance()
            return -self.parse_unary()
        return self.parse_power()

    def parse_power(self):
        base = self.parse_primary()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("int")
            return base ** tok[1]
        return base

    def parse_primary(self):
        tok = self.advance()
        if tok[0] == "int":
            return FpPoly.const(self.p, self.vars, tok[1])
        if tok[0] == "name":
            if tok[1] not in self.vars:
                raise PolyParseError(f"unknown variable {tok[1]!r}", tok[2])
            return FpPoly.var(self.p, self.vars, tok[1])
        if tok[0] == "(":
            node = self.parse_expr()
            closing = self.advance()
            if closing[0] != ")":
                raise PolyParseError("expected ')'", closing[2])
            return node
        raise PolyParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse(text: str, p: int, vars: Sequence[str] = ("x", "y", "z")) -> FpPoly:
    """Parse a polynomial expression over F_p.

    Grammar: integer literals, variables, + - * ^, parentheses; standard
    precedence; implicit multiplication is rejected with a position.
    """
    _check_odd_prime(p)
    parser = _Parser(_tokenize(text), p, vars)
    node = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise PolyParseError(f"unexpected token {tok[1]!r}", tok[2])
    return node


# -- gcd and squarefree decomposition --------------------------------------


def _main_var_index(f: FpPoly, g: FpPoly) -> Optional[int]:
    for k in reversed(range(len(f.vars))):
        if any(e[k] for e in f.coeffs) or any(e[k] for e in g.coeffs):
            return k
    return None


def _as_univariate(f: FpPoly, k: int) -> dict:
    """Coefficients of f as a polynomial in vars[k]: degree -> FpPoly."""
    out = {}
    for e, c in f.coeffs.items():
        d = e[k]
        e2 = list(e)
        e2[k] = 0
        cur = out.setdefault(d, {})
        cur[tuple(e2)] = (cur.get(tuple(e2), 0) + c) % f.p
    return {d: FpPoly(f.p, f.vars, coeff) for d, coeff in out.items()}


def _univar_deg(u: dict) -> int:
    return max((d for d, c in u.items() if not c.is_zero()), default=-1)


def _content_pp(f: FpPoly, k: int) -> tuple:
    """Content (gcd of vars[k]-coefficients) and primitive part."""
    u = _as_univariate(f, k)
    content = None
    for c in u.values():
        content = c if content is None else gcd_multivar(content, c)
        if content.is_one():
            break
    pp = f // content if not content.is_one() else f
    return content, pp


def _shift_mul(f: FpPoly, k: int, d: int) -> FpPoly:
    """Multiply by vars[k]^d."""
    if d == 0:
        return f
    out = {}
    for e, c in f.coeffs.items():
        e2 = list(e)
        e2[k] += d
        out[tuple(e2)] = c
    return FpPoly(f.p, f.vars, out)


def _pseudo_rem(f: FpPoly, g: FpPoly, k: int) -> FpPoly:
    """Pseudo-remainder of f by g with respect to vars[k]."""
    dg = _univar_deg(_as_univariate(g, k))
    lc_g = _as_univariate(g, k)[dg]
    rem = f
    while not rem.is_zero():
        u = _as_univariate(rem, k)
        dr = _univar_deg(u)
        if dr < dg:
            break
        lc_r = u[dr]
        rem = lc_g * rem - _shift_mul(lc_r * g, k, dr - dg)
    return rem


def gcd_multivar(f: FpPoly, g: FpPoly) -> FpPoly:
    """Monic gcd by primitive-part recursion on the last occurring variable."""
    f._check(g)
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    k = _main_var_index(f, g)
    if k is None:
        return f.one_like()
    cf, F = _content_pp(f, k)
    cg, G = _content_pp(g, k)
    c = gcd_multivar(cf, cg)
    if _univar_deg(_as_univariate(F, k)) < _univar_deg(_as_univariate(G, k)):
        F, G = G, F
    while not G.is_zero():
        r = _pseudo_rem(F, G, k)
        if r.is_zero():
            F, G = G, r
        else:
            _, rp = _content_pp(r, k)
            F, G = G, rp
    return (c * _content_pp(F, k)[1]).monic()


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """content * prod(part^exp) with squarefree pairwise-coprime parts."""

    content: int
    parts: tuple  # of (FpPoly, int), exponents ascending

    def reassemble(self, like: FpPoly) -> FpPoly:
        out = FpPoly.const(like.p, like.vars, self.content)
        for g, e in self.parts:
            out = out * g ** e
        return out

    def odd_exponent_parts(self) -> list:
        return [g for g, e in self.parts if e % 2 == 1 and not g.is_constant()]


def _sqf_monic(f: FpPoly) -> list:
    p = f.p
    derivs = [f.derivative(v) for v in f.vars if f.degree_in(v) > 0]
    if all(d.is_zero() for d in derivs):
        return [(g, p * e) for g, e in _sqf_monic(f.pth_root().monic())]
    g = f
    for d in derivs:
        g = gcd_multivar(g, d)
        if g.is_one():
            break
    if g.is_one():
        return [(f, 1)]
    w = f // g
    parts = []
    for q, e in _sqf_monic(g):
        q_in = gcd_multivar(q, w)
        if not q_in.is_one():
            parts.append((q_in, e + 1))
            w = w // q_in
        q_out = q // q_in
        if not q_out.is_one():
            parts.append((q_out, e))
    if not w.is_one():
        parts.append((w, 1))
    return parts


def squarefree_decomposition(f: FpPoly) -> SquarefreeDecomposition:
    """Characteristic-aware squarefree decomposition of a nonzero polynomial."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    content = f.leading_coefficient()
    monic = f.monic()
    if monic.is_constant():
        return SquarefreeDecomposition(content, ())
    raw = _sqf_monic(monic)
    merged = {}
    for g, e in raw:
        merged[e] = merged[e] * g if e in merged else g
    parts = tuple((merged[e], e) for e in sorted(merged))
    return SquarefreeDecomposition(content, parts)


def is_square_mod_constants(f: FpPoly) -> bool:
    """True iff f is a constant times a perfect square (over the closure)."""
    if f.is_zero():
        raise ValueError("zero has no square class")
    dec = squarefree_decomposition(f)
    return all(e % 2 == 0 for g, e in dec.parts if not g.is_constant())


# -- lines: restriction, evaluation, splitting ------------------------------


@dataclass(frozen=True)
class LineRestriction:
    """Binary form of a homogeneous f pulled back to a line {l = 0}.

    Stored as the univariate polynomial in the affine parameter (printed as
    variable x) together with the multiplicity of the root at infinity, so
    the full degree is poly degree + inf_mult.
    """

    poly: FpPoly
    inf_mult: int
    full_degree: int

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, LineRestriction)
            and self.poly == other.poly
            and self.inf_mult == other.inf_mult
            and self.full_degree == other.full_degree
        )


def line_points(l: FpPoly) -> tuple:
    """Two F_p-points spanning the line {l = 0} in P^2."""
    vars3 = l.vars
    if len(vars3) != 3 or l.total_degree() != 1 or not l.is_homogeneous():
        raise ValueError("line must be a linear form in three variables")
    coef = [l.coeffs.get(tuple(1 if k == i else 0 for k in range(3)), 0) for i in range(3)]
    k = next(i for i, c in enumerate(coef) if c)
    others = [i for i in range(3) if i != k]
    pts = []
    for j in others:
        pt = [0, 0, 0]
        pt[j] = coef[k]
        pt[k] = (-coef[j]) % l.p
        pts.append(tuple(pt))
    return tuple(pts)


def restrict_to_line(f: FpPoly, l: FpPoly) -> LineRestriction:
    """Restriction of a homogeneous f(x, y, z) to the line {l = 0}.

    The result is zero exactly when l divides f.
    """
    if f.is_zero() or not f.is_homogeneous():
        raise ValueError("f must be homogeneous and nonzero")
    l = f._check(l)
    p1, p2 = line_points(l)
    p = f.p
    xvar = FpPoly.var(p, ("x",), "x")
    coord = [xvar * p1[i] + FpPoly.const(p, ("x",), p2[i]) for i in range(3)]
    out = FpPoly(p, ("x",), {})
    for e, c in f.coeffs.items():
        term = FpPoly.const(p, ("x",), c)
        for k, exp in enumerate(e):
            if exp:
                term = term * coord[k] ** exp
        out = out + term
    d = f.total_degree()
    deg_aff = out.total_degree()
    inf = d - deg_aff if not out.is_zero() else 0
    return LineRestriction(out, inf, d)


class NotSplit(ValueError):
    """A quadratic form does not factor into linear forms over this F_p."""


def split_into_linear(form: FpPoly) -> list:
    """Factor a homogeneous form of degree <= 2 into linear forms, exactly.

    Degree-2 forms must involve at most two variables (binary quadratics);
    the quadratic formula over F_p does the splitting.  The returned product
    equals the input on the nose (the content is folded into one factor).
    """
    if form.is_zero() or not form.is_homogeneous():
        raise ValueError("need a nonzero homogeneous form")
    d = form.total_degree()
    if d == 1:
        return [form]
    if d != 2:
        raise NotSplit("only degree <= 2 forms are auto-split; supply linear factors")
    p = form.p
    eff = [k for k in range(len(form.vars)) if any(e[k] for e in form.coeffs)]
    if len(eff) > 2:
        raise NotSplit("quadratic involves three variables; supply linear factors")
    if len(eff) == 1:
        xv = FpPoly.var(p, form.vars, form.vars[eff[0]])
        return [xv, form.leading_coefficient() * xv]
    i, j = eff
    X = FpPoly.var(p, form.vars, form.vars[i])
    Z = FpPoly.var(p, form.vars, form.vars[j])

    def cf(ei, ej):
        e = [0] * len(form.vars)
        e[i], e[j] = ei, ej
        return form.coeffs.get(tuple(e), 0)

    alpha, beta, gamma = cf(2, 0), cf(1, 1), cf(0, 2)
    if alpha == 0:
        return [Z, beta * X + gamma * Z]
    disc = (beta * beta - 4 * alpha * gamma) % p
    r = sqrt_mod(disc, p)
    if r is None:
        raise NotSplit(
            f"discriminant {disc} is not a square mod {p}; choose a different prime"
        )
    inv2a = pow(2 * alpha, p - 2, p)
    r1 = (-beta + r) * inv2a % p
    r2 = (-beta - r) * inv2a % p
    return [X - r1 * Z, alpha * (X - r2 * Z)]
