"""Command-line front end.

Subcommands: lines | galois | invariants | verify | residue.  Text output is
rendered from the same records that structured mode prints as JSON lines, so
every number visible in text mode is available to machines.  Exit codes:
0 = verified, 1 = verification failed, 2 = usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import golden
from .exactalg import IntMatrix
from .fppoly import PolyParseError, parse as parse_poly
from .galois_lattice import NotFinite, invariant_report
from .geometry import (
    CASES,
    AmbiguousTangency,
    format_linear,
    format_quadratic,
    generators,
    surface,
    verify_norm_identity,
)
from .refvar import (
    ConfigError,
    builtin_example,
    config_from_text,
    corollary_family,
    verify_all,
)
from .residues import (
    DivisorialValuation,
    ResidueUndefined,
    SymbolClass,
    UnsupportedValuation,
    function_valuation,
    residue,
)

_PLANE = ("x", "y", "z")


def _emit(records, fmt, out):
    if fmt == "structured":
        for rec in records:
            out.write(json.dumps(rec, sort_keys=True) + "\n")
        return
    for rec in records:
        out.write(_render_text(rec) + "\n")


def parse_structured(text: str) -> list:
    """Round-trip parser for structured output (one JSON object per line)."""
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def _render_matrix(rows) -> str:
    widths = [max(len(str(rows[i][j])) for i in range(len(rows))) for j in range(len(rows[0]))]
    return "\n".join(
        "    [ " + "  ".join(str(x).rjust(w) for x, w in zip(row, widths)) + " ]"
        for row in rows
    )


def _render_text(rec) -> str:
    kind = rec.get("record")
    if kind == "run":
        extra = f" case={rec['case']}" if rec.get("case") else ""
        return f"== {rec['command']}{extra}"
    if kind == "curve":
        return f"  {rec['label']}: {rec['line']} = 0, w = {rec['w']}"
    if kind == "intersection_matrix":
        return "  intersection matrix (56 x 56):\n" + "\n".join(
            "    " + " ".join(f"{x:2d}" for x in row) for row in rec["rows"]
        )
    if kind == "matrix":
        return f"  {rec['name']}:\n" + _render_matrix(rec["rows"])
    if kind == "gram_det":
        return f"  det(gram) = {rec['value']}"
    if kind == "matrix_diff":
        if not rec["cells"] and not rec["transpose_only"]:
            return f"  {rec['name']}: matches reference"
        if rec["transpose_only"]:
            return f"  {rec['name']}: MISMATCH (matches reference transpose only)"
        cells = ", ".join(
            f"[{i},{j}] computed {got} expected {want}" for i, j, got, want in rec["cells"]
        )
        return f"  {rec['name']}: MISMATCH at {cells}"
    if kind == "action":
        return f"    {rec['generator']}: {rec['from']} -> {rec['to']}"
    if kind == "relation":
        return f"  relation {rec['name']}: {'ok' if rec['ok'] else 'FAILED'}"
    if kind == "vector":
        return f"  {rec['name']} = {tuple(rec['coords'])}"
    if kind == "lattice_basis":
        rows = rec["rows"] or [["(zero lattice)"]]
        return f"  {rec['name']} (rank {rec['rank']}):\n" + "\n".join(
            f"    {tuple(r) if isinstance(r[0], int) else r[0]}" for r in rows
        )
    if kind == "orbit":
        return f"  orbit {rec['index']} (size {rec['size']}): {', '.join(rec['labels'])}"
    if kind == "orbit_sum_index":
        return f"  orbit-sum sublattice index in invariants: {rec['value']}"
    if kind == "group_order":
        return f"  Galois image order: {rec['value']}"
    if kind == "config":
        return (
            f"  arrangement over F_{rec['prime']}: g={rec['g']}, n={rec['n']}, m={rec['m']}\n"
            f"    A = {' * '.join('(' + l + ')' for l in rec['a_factors'])}\n"
            f"    B = {' * '.join('(' + l + ')' for l in rec['b_factors'])}\n"
            f"    f = {rec['f']}"
        )
    if kind == "condition":
        mark = "pass" if rec["passed"] else "FAIL"
        extra = f"  witnesses: {rec['witnesses']}" if rec["witnesses"] else ""
        note = f"  [{rec['note']}]" if rec.get("note") else ""
        return f"  condition {rec['name']} {mark}: {rec['description']}{extra}{note}"
    if kind == "equation":
        return (
            f"  equation: w^2 = {rec['rhs_symbolic']}\n"
            f"  bidegree: {tuple(rec['bidegree'])}"
        )
    if kind == "residue_certificate":
        mark = "ok" if rec["passed"] else "FAIL"
        return (
            f"  residue along {rec['line']} (divides {rec['side']}): v(A)={rec['v_a']}, "
            f"v(B)={rec['v_b']}, sign={rec['sign']:+d}, class {rec['class']} [{mark}]"
        )
    if kind == "abc_square_check":
        mark = "ok" if rec["passed"] else "FAIL"
        return f"  A*B*(t^4-coefficient) stays a non-square: {mark}"
    if kind == "local_certificate":
        mark = "pass" if rec["passed"] else "FAIL"
        return f"  local case {rec['bullet']} {mark}: {rec['description']}"
    if kind == "normalization":
        return (
            f"  exponents (e1, e2) = ({rec['e1']}, {rec['e2']}), 6g+m = {rec['congruence_mod_4']} mod 4, "
            f"d = {rec['d_choice']}  [{rec['note']}]"
        )
    if kind == "norm_identity":
        mark = "pass" if rec["passed"] else "FAIL"
        return f"  norm identity {rec['name']}: {mark}"
    if kind == "residue_report":
        return (
            f"  v(A) = {rec['v_a']} (form multiplicity {rec['mult_a']}), "
            f"v(B) = {rec['v_b']} (form multiplicity {rec['mult_b']})\n"
            f"  sign (-1)^(v(A)v(B)) = {rec['sign']:+d} (a constant, absorbed)\n"
            f"  residue class: {rec['class']}\n"
            f"  trivial: {'yes' if rec['trivial'] else 'no'}"
        )
    if kind == "verdict":
        return f"verdict: {'PASS' if rec['passed'] else 'FAIL'}"
    return f"  {json.dumps(rec, sort_keys=True)}"


# -- subcommands -------------------------------------------------------------


def cmd_lines(case: str, fmt: str, out) -> int:
    surf = surface(case)
    records = [{"record": "run", "command": "lines", "case": case}]
    for c in surf.curves:
        records.append(
            {
                "record": "curve",
                "command": "lines",
                "case": case,
                "label": str(c.label),
                "line": format_linear(c.L),
                "w": format_quadratic(c.Q),
            }
        )
    try:
        imat = surf.intersection_matrix()
    except AmbiguousTangency as err:
        out.write(f"ambiguous tangency: {err}\n")
        return 1
    records.append({"record": "intersection_matrix", "command": "lines", "case": case, "rows": imat})
    records.append({"record": "matrix", "command": "lines", "case": case, "name": "gram", "rows": surf.gram.tolist()})
    records.append({"record": "gram_det", "command": "lines", "case": case, "value": surf.gram_det})
    _emit(records, fmt, out)
    return 0


def cmd_galois(case: str, fmt: str, out) -> int:
    surf = surface(case)
    records = [{"record": "run", "command": "galois", "case": case}]
    failures = 0
    for gen in generators(case):
        for c in surf.curves:
            img = surf.apply_galois(gen, c)
            records.append(
                {
                    "record": "action",
                    "command": "galois",
                    "case": case,
                    "generator": gen.name,
                    "from": str(c.label),
                    "to": str(img.label),
                }
            )
    mats = {}
    for gen in generators(case):
        M = surf.galois_matrix(gen)
        mats[gen.name] = M
        records.append(
            {"record": "matrix", "command": "galois", "case": case, "name": gen.name, "rows": M.tolist()}
        )
        gold = golden.GOLDEN_MATRICES[case].get(gen.name)
        if gold is not None:
            cells = [
                (i, j, M[i, j], gold[i][j])
                for i in range(8)
                for j in range(8)
                if M[i, j] != gold[i][j]
            ]
            transpose_only = bool(cells) and M.transpose().tolist() == gold
            if cells:
                failures += 1
            records.append(
                {
                    "record": "matrix_diff",
                    "command": "galois",
                    "case": case,
                    "name": gen.name,
                    "cells": cells,
                    "transpose_only": transpose_only,
                }
            )
    G = surf.gram
    I8 = IntMatrix.identity(8)
    relations = []
    for gen in generators(case):
        M = mats[gen.name]
        relations.append((f"{gen.name}^T G {gen.name} = G", M.transpose() * G * M == G))
        relations.append((f"{gen.name} fixes kappa", M.apply(surf.kappa) == surf.kappa))
        relations.append((f"{gen.name}^{gen.order} = 1", M.pow(gen.order) == I8))
    names = [g.name for g in generators(case)]
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            relations.append(
                (
                    f"{names[i]} {names[j]} = {names[j]} {names[i]}",
                    mats[names[i]] * mats[names[j]] == mats[names[j]] * mats[names[i]],
                )
            )
    if case == "square-d":
        relations.append(
            ("iota_sd = iota_a^2 iota_b^2", mats["iota_sd"] == mats["iota_a"].pow(2) * mats["iota_b"].pow(2))
        )
    ni = verify_norm_identity()
    relations.append(("norm factorization identity", ni.factorization_identity))
    relations.append(("norm product identity", ni.norm_product_identity))
    for name, ok in relations:
        if not ok:
            failures += 1
        records.append({"record": "relation", "command": "galois", "case": case, "name": name, "ok": ok})
    records.append({"record": "verdict", "command": "galois", "case": case, "passed": failures == 0})
    _emit(records, fmt, out)
    return 0 if failures == 0 else 1


def cmd_invariants(case: str, fmt: str, out, bound: int) -> int:
    surf = surface(case)
    rep = invariant_report(case, bound=bound)
    records = [{"record": "run", "command": "invariants", "case": case}]
    records.append({"record": "group_order", "command": "invariants", "case": case, "value": rep.group_order})
    records.append(
        {
            "record": "lattice_basis",
            "command": "invariants",
            "case": case,
            "name": "invariant lattice",
            "rank": rep.rank,
            "rows": rep.invariants.basis.tolist(),
        }
    )
    records.append({"record": "vector", "command": "invariants", "case": case, "name": "kappa", "coords": list(rep.kappa)})
    if rep.mu is not None:
        records.append({"record": "vector", "command": "invariants", "case": case, "name": "mu", "coords": list(rep.mu)})
    for k, orbit in enumerate(rep.orbit_partition):
        records.append(
            {
                "record": "orbit",
                "command": "invariants",
                "case": case,
                "index": k,
                "size": len(orbit),
                "labels": [str(surf.curves[i].label) for i in orbit],
            }
        )
    records.append(
        {
            "record": "lattice_basis",
            "command": "invariants",
            "case": case,
            "name": "orbit-sum sublattice",
            "rank": rep.orbit_sums.rank,
            "rows": rep.orbit_sums.basis.tolist(),
        }
    )
    records.append(
        {"record": "orbit_sum_index", "command": "invariants", "case": case, "value": rep.orbit_sum_index}
    )
    for note in rep.notes:
        records.append({"record": "note", "command": "invariants", "case": case, "text": note})
    _emit(records, fmt, out)
    return 0


def cmd_verify(config_path: Optional[str], family_q: Optional[int], prime: Optional[int], fmt: str, out, err) -> int:
    try:
        if config_path is None:
            cfg = builtin_example()
        else:
            with open(config_path) as fh:
                text = fh.read()
            if prime is not None:
                text = _override_prime(text, prime)
            cfg = config_from_text(text)
        if family_q is not None:
            cfg = corollary_family(family_q, seed=cfg)
    except OSError as exc:
        err.write(f"cannot read config: {exc}\n")
        return 2
    except (ConfigError, PolyParseError) as exc:
        err.write(f"config error: {exc}\n")
        return 2
    rep = verify_all(cfg)
    records = [{"record": "run", "command": "verify", "case": None}]
    records.append(
        {
            "record": "config",
            "command": "verify",
            "prime": cfg.p,
            "g": cfg.g,
            "n": cfg.n,
            "m": cfg.m,
            "a_factors": [str(l) for l in cfg.a_factors],
            "b_factors": [str(l) for l in cfg.b_factors],
            "f": str(cfg.f),
        }
    )
    for cond in rep.conditions.conditions:
        records.append(
            {
                "record": "condition",
                "command": "verify",
                "name": cond.name,
                "description": cond.description,
                "passed": cond.passed,
                "witnesses": cond.witnesses,
                "note": cond.note,
            }
        )
    rhs = str(-(rep.equation - _w_squared(rep.equation)))
    e1 = 4 * cfg.g + cfg.m - cfg.n
    e2 = 2 * cfg.g + cfg.m + cfg.n
    zm = f"z^{cfg.m}*" if cfg.m else ""
    records.append(
        {
            "record": "equation",
            "command": "verify",
            "rhs_symbolic": f"A*z^{e1}*u^4 + B*z^{e2}*v^4 + A*B*{zm}(A*B + F)*t^4",
            "rhs": rhs,
            "bidegree": list(rep.equation_bidegree),
        }
    )
    if rep.alpha is not None:
        for cert in rep.alpha.certificates:
            records.append(
                {
                    "record": "residue_certificate",
                    "command": "verify",
                    "line": cert.line,
                    "side": cert.side,
                    "v_a": cert.v_a,
                    "v_b": cert.v_b,
                    "sign": cert.sign,
                    "class": str(cert.residue),
                    "passed": cert.passed,
                }
            )
        records.append(
            {
                "record": "abc_square_check",
                "command": "verify",
                "passed": not rep.alpha.abc_product_square and rep.alpha.abc_matches_ab_plus_f,
            }
        )
    if rep.local is not None:
        for b in rep.local.bullets:
            records.append(
                {
                    "record": "local_certificate",
                    "command": "verify",
                    "bullet": b.bullet,
                    "description": b.description,
                    "passed": b.passed,
                    "details": b.details,
                }
            )
    if rep.normalization is not None:
        records.append(
            {
                "record": "normalization",
                "command": "verify",
                "e1": rep.normalization.e1,
                "e2": rep.normalization.e2,
                "d_choice": rep.normalization.d_choice,
                "congruence_mod_4": rep.normalization.congruence_mod_4,
                "passed": rep.normalization.fourth_power_check,
                "note": rep.normalization.note,
            }
        )
    records.append({"record": "verdict", "command": "verify", "passed": rep.verdict})
    _emit(records, fmt, out)
    return 0 if rep.verdict else 1


def _w_squared(eq):
    from .fppoly import FpPoly

    w = FpPoly.var(eq.p, eq.vars, "w")
    return w * w


def _override_prime(text: str, prime: int) -> str:
    lines = []
    for raw in text.splitlines():
        key = raw.split("=")[0].strip().lower() if "=" in raw else ""
        lines.append(f"prime = {prime}" if key == "prime" else raw)
    return "\n".join(lines)


def cmd_residue(a_text: str, b_text: str, at_text: str, prime: int, fmt: str, out, err) -> int:
    try:
        A = parse_poly(a_text, prime, _PLANE)
        B = parse_poly(b_text, prime, _PLANE)
        center = parse_poly(at_text, prime, _PLANE)
        sym = SymbolClass(A, B)
        v = DivisorialValuation.of(center)
    except (PolyParseError, ValueError, UnsupportedValuation) as exc:
        err.write(f"error: {exc}\n")
        return 2
    try:
        cls = residue(sym, v)
    except ResidueUndefined as exc:
        err.write(
            f"residue undefined: {exc}\n"
            "hint: multiply the offending entry by a square to move the "
            "representative off the center\n"
        )
        return 2
    except UnsupportedValuation as exc:
        err.write(f"error: {exc}\n")
        return 2
    from .residues import valuation as form_valuation

    records = [
        {"record": "run", "command": "residue", "case": None},
        {
            "record": "residue_report",
            "command": "residue",
            "A": str(A),
            "B": str(B),
            "at": str(v.center),
            "v_a": function_valuation(A, v),
            "v_b": function_valuation(B, v),
            "mult_a": form_valuation(A, v),
            "mult_b": form_valuation(B, v),
            "sign": cls.sign,
            "class": str(cls),
            "trivial": cls.is_trivial(),
        },
    ]
    _emit(records, fmt, out)
    return 0


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dp2",
        description=(
            "Exact verifier for the 56-line geometry, Galois-invariant lattices and "
            "Brauer residue certificates of diagonal degree-2 del Pezzo surfaces."
        ),
    )
    parser.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="structured prints one JSON record per line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_lines = sub.add_parser("lines", help="the 56 exceptional curves and the Gram matrix")
    p_lines.add_argument("--case", choices=CASES, required=True)

    p_gal = sub.add_parser("galois", help="action tables, matrices, reference diff, relations")
    p_gal.add_argument("--case", choices=CASES, required=True)

    p_inv = sub.add_parser("invariants", help="invariant lattice, mu/kappa, orbits")
    p_inv.add_argument("--case", choices=CASES, required=True)
    p_inv.add_argument("--closure-bound", type=int, default=4096)

    p_ver = sub.add_parser("verify", help="verify an arrangement config end to end")
    p_ver.add_argument("--config", help="config file path (omit for the bundled example)")
    p_ver.add_argument("--family-q", type=int, help="use m = 2q - 8 for this q >= 4")
    p_ver.add_argument("--prime", type=int, help="override the config prime")

    p_res = sub.add_parser("residue", help="residue of a quaternion symbol along a line")
    p_res.add_argument("--A", required=True, dest="a_text")
    p_res.add_argument("--B", required=True, dest="b_text")
    p_res.add_argument("--at", required=True, dest="at_text", help="center polynomial")
    p_res.add_argument("--prime", type=int, default=13)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "lines":
            return cmd_lines(args.case, args.format, out)
        if args.command == "galois":
            return cmd_galois(args.case, args.format, out)
        if args.command == "invariants":
            return cmd_invariants(args.case, args.format, out, args.closure_bound)
        if args.command == "verify":
            return cmd_verify(args.config, args.family_q, args.prime, args.format, out, err)
        if args.command == "residue":
            return cmd_residue(args.a_text, args.b_text, args.at_text, args.prime, args.format, out, err)
    except NotFinite as exc:
        err.write(f"error: {exc}\n")
        return 1
    except AmbiguousTangency as exc:
        err.write(f"ambiguous tangency: {exc}\n")
        return 1
    parser.error(f"unknown command {args.command!r}")
    return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
