"""Command-line front end. Every command prints one JSON document."""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Sequence

from . import bounds as B
from .errors import ParseError, PreconditionError, WaringError
from .poly import Poly, format_poly, parse_poly

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def read_poly(text: str, names: str | None = None, nvars: int | None = None) -> Poly:
    """Parse with declared names, x0, x1, ... indices, or names in order of appearance."""
    if names:
        return parse_poly(text, names=[n.strip() for n in names.split(",")])
    idents = [m for m in _IDENT.findall(text) if m != "i"]
    if all(re.fullmatch(r"x\d+", m) for m in idents):
        return parse_poly(text, nvars=nvars)
    seen: list[str] = []
    for m in idents:
        if m not in seen:
            seen.append(m)
    return parse_poly(text, names=seen)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from exc


# commands


def cmd_flatten_rank(a: argparse.Namespace) -> dict:
    from .flatten import catalecticant_rank, flattening_lower_bound, koszul_lower_bound

    f = read_poly(a.poly, a.vars, a.nvars)
    out: dict[str, Any] = {"poly": format_poly(f), "degree": f.degree}
    if a.s is not None:
        out["s"] = a.s
        out["rank"] = catalecticant_rank(f, a.s)
        out["source"] = "exact rank of the catalecticant matrix"
        return out
    fb = flattening_lower_bound(f)
    out["ranks"] = {str(s): r for s, r in sorted(fb.ranks.items())}
    out["border_lower"] = {"value": fb.value, "source": f"catalecticant rank at s = {fb.s}"}
    if a.koszul:
        kb = koszul_lower_bound(f)
        if kb is not None:
            out["koszul"] = {
                "value": kb.value,
                "p": kb.p,
                "rank": kb.rank,
                "divisor": kb.divisor,
                "source": "Koszul flattening rank divided by its value on a power",
            }
    return out


def cmd_binary_rank(a: argparse.Namespace) -> dict:
    from .binary import decompose, sylvester_rank
    from .decomp import decomposition_to_json

    f = read_poly(a.poly, a.vars, a.nvars)
    br = sylvester_rank(f)
    out = {
        "poly": format_poly(f),
        "rank": br.rank,
        "border_rank": br.border_rank,
        "source": "Sylvester algorithm on the apolar kernel",
        "certificate": {
            "kernel_degree": br.certificate.r,
            "kernel_dim": br.certificate.kernel_dim,
            "case": br.certificate.case,
            "witness": format_poly(br.certificate.witness) if br.certificate.witness is not None else None,
        },
    }
    if a.decompose:
        out["decomposition"] = decomposition_to_json(decompose(f, a.precision_bits))
    return out


def cmd_monomial_bounds(a: argparse.Namespace) -> dict:
    b = _ints(a.exponents)
    mb = B.monomial_border_bounds(b)
    out: dict[str, Any] = {
        "exponents": list(mb.exponents),
        "degree": sum(mb.exponents),
        "border_lower": {"value": mb.lower, "source": "count S of the exponent box at floor(d/2)"},
        "border_upper": {"value": mb.upper, "source": "product of (1 + b_i) over the smaller exponents"},
        "border_exact": mb.exact,
        "rank_upper": {"value": B.monomial_rank_upper(b), "source": "(b0+1)...(b_{n-1}+1) b_n"},
    }
    if all(x == 1 for x in mb.exponents):
        pb = B.product_bounds(len(mb.exponents))
        out["rank_lower"] = {"value": pb.rank_lower, "source": "product of variables: C(n, n/2) + ceil(n/2) - 1"}
        if pb.exact_rank is not None:
            out["exact_rank"] = pb.exact_rank
    return out


def cmd_detperm_table(a: argparse.Namespace) -> dict:
    from .detperm import detperm_table, verify_flattening

    ns = range(2, a.max_n + 1)
    out: dict[str, Any] = {
        "rows": [
            {"kind": r["kind"], "bound": r["bound"], "values": {str(n): v for n, v in r["values"].items()}}
            for r in detperm_table(ns)
        ],
        "sources": {
            "rank_upper": "det: 2^(n-1) n! from the Leibniz terms; perm: 4^(n-1) from the sign-vector identity",
            "border_lower": "C(n, floor(n/2))^2 from the middle catalecticant",
            "rank_lower": "border lower + dimension of the singular locus + 1",
        },
    }
    if a.verify_flattenings:
        checks = []
        for n in range(2, a.max_verify_n + 1):
            for kind in ("det", "perm"):
                got, want = verify_flattening(kind, n)
                checks.append({"kind": kind, "n": n, "catalecticant_rank": got, "formula": want, "ok": got == want})
        out["flattening_checks"] = checks
    return out


def cmd_bounds(a: argparse.Namespace) -> dict:
    f = read_poly(a.poly, a.vars, a.nvars)
    return B.aggregate(f, koszul=not a.no_koszul).to_dict()


def cmd_verify_decomp(a: argparse.Namespace) -> dict:
    from .catalog import catalog, catalog_keys, verify_entry
    from .decomp import decomposition_to_json, parse_decomposition, verify

    if a.catalog_all or a.catalog:
        keys = catalog_keys() if a.catalog_all else [a.catalog]
        entries = []
        for k in keys:
            e = catalog(k, a.precision_bits)
            v = verify_entry(e, a.tolerance)
            row = {
                "id": k,
                "description": e.description,
                "target": format_poly(e.target),
                "length": e.length,
                "field": e.decomposition.field.name,
                "verdict": v.kind,
                "derived": e.derived,
            }
            if e.claimed_rank is not None:
                row["claimed_rank"] = e.claimed_rank
            if v.kind != "exact":
                row["max_residual"] = _num(v.max_residual)
            if e.note:
                row["note"] = e.note
            if a.show_terms:
                row["decomposition"] = decomposition_to_json(e.decomposition)
            entries.append(row)
        return {"entries": entries}
    if not a.target or not a.decomp:
        raise PreconditionError("give --target and --decomp, or --catalog / --catalog-all")
    f = read_poly(a.target, a.vars, a.nvars)
    try:
        with open(a.decomp, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise PreconditionError(f"cannot read {a.decomp}: {exc}") from exc
    dec = parse_decomposition(text, f.degree, f.nvars, a.precision_bits)
    v = verify(dec, f, a.tolerance)
    out = {"target": format_poly(f), "length": len(dec), "field": dec.field.name, "verdict": v.kind}
    if v.kind != "exact":
        out["max_residual"] = _num(v.max_residual)
    if v.witness is not None:
        out["witness_monomial"] = list(v.witness)
    return out


def _num(x: Any) -> str | None:
    if x is None:
        return None
    try:
        import mpmath

        return mpmath.nstr(x, 6)
    except (TypeError, ValueError):
        return str(x)


def cmd_limit_plane(a: argparse.Namespace) -> dict:
    from . import limits as L

    if a.monomial:
        b = _ints(a.monomial)
        if a.degree is None:
            raise PreconditionError("--degree is required with --monomial")
        fam = L.monomial_family(b, a.degree)
        plane = L.limit_plane(fam)
        target = L.target_monomial(b, a.degree)
        return {
            "family": "monomial",
            "exponents": b,
            "degree": a.degree,
            "curves": len(fam.curves),
            "vanishing_order": plane.vanishing_order,
            "dimension": plane.dimension,
            "equals_monomial_span": L.spans_equal(plane.basis, L.monomial_span(b, a.degree)),
            "target": format_poly(target),
            "contains_target": L.contains(plane, target),
            "source": "column space of the power matrix reduced over Q[t], lowest orders kept",
        }
    if a.five_curve:
        plane, g, ok = L.five_curve_certificate()
        return {
            "family": "five_curve",
            "curves": [L.curve_label(c, L.FIVE_NAMES) for c in L.five_curve_family().curves],
            "vanishing_order": plane.vanishing_order,
            "dimension": plane.dimension,
            "target": format_poly(L.five_curve_target()),
            "transformed_target": format_poly(g),
            "change": [list(r) for r in L.FIVE_CURVE_CHANGE],
            "contains_target": ok,
        }
    if a.normal_form:
        if a.degree is None:
            raise PreconditionError("--degree is required with --normal-form")
        rows = {nf.key: nf for nf in L.normal_form_families(a.rank, a.degree)}
        if a.normal_form not in rows:
            raise PreconditionError(f"unknown normal form {a.normal_form!r}; known: {', '.join(rows)}")
        nf = rows[a.normal_form]
        cert = L.certify_normal_form(nf)
        lo, hi = nf.rank_bracket
        return {
            "family": "normal_form",
            "key": nf.key,
            "border_rank": nf.rank,
            "degree": a.degree,
            "curves": [L.curve_label(c, nf.family.names) for c in nf.family.curves],
            "target": format_poly(nf.target),
            "vanishing_order": cert.plane.vanishing_order,
            "dimension": cert.plane.dimension,
            "certified": cert.ok,
            "scaling": [str(x) for x in cert.scaling.factors] if cert.scaling.factors else None,
            "scaling_note": cert.scaling.reason or None,
            "rank_bracket": [lo, hi],
            "corrected": nf.corrected,
            **({"rank_statements": list(L.BORDER_THREE_RANK_STATEMENTS)} if nf.rank == 3 else {}),
        }
    raise PreconditionError("give --monomial, --normal-form or --five-curve")


def cmd_cubic_classify(a: argparse.Namespace) -> dict:
    from .cubic import classify

    f = read_poly(a.poly, a.vars, a.nvars)
    c = classify(f)
    return {
        "poly": format_poly(f),
        "row": c.row.key,
        "label": c.row.label,
        "rank": c.rank,
        "border_rank": c.border_rank,
        "span_dim": c.span_dim,
        "aronhold_zero": c.aronhold_zero,
        "hessian_span": c.hessian_span,
        "singularity_rank": c.singular_rank,
        "source": "classification by span, Aronhold invariant, Hessian and singular points",
    }


def cmd_paper_tables(a: argparse.Namespace) -> dict:
    if a.which == "det-perm":
        a.max_n, a.verify_flattenings, a.max_verify_n = 8, False, 4
        return {"table": "det-perm", **cmd_detperm_table(a)}
    if a.which == "products":
        return {
            "table": "products",
            "rows": B.product_table(range(1, 11)),
            "sources": {
                "rank_upper": "2^(n-1) signed powers",
                "rank_lower": "C(n, floor(n/2)) + ceil(n/2) - 1",
                "border_lower": "C(n, floor(n/2))",
                "exact_rank": "pinned value for n = 4",
            },
        }
    from .cubic import TABLE

    return {
        "table": "cubics",
        "rows": [
            {"key": r.key, "label": r.label, "normal_form": r.normal_form or None, "rank": r.rank, "border_rank": r.border_rank}
            for r in TABLE
        ],
    }


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=256)
    common.add_argument("--tolerance", type=float, default=1e-20)
    common.add_argument("--vars", help="comma-separated variable names")
    common.add_argument("--nvars", type=int, help="number of variables for x0, x1, ... input")

    p = argparse.ArgumentParser(prog="waring", description="Waring rank and border rank bounds")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("flatten-rank", parents=[common], help="catalecticant ranks")
    s.add_argument("poly")
    s.add_argument("--s", type=int)
    s.add_argument("--koszul", action="store_true", help="also report the Koszul flattening bound")
    s.set_defaults(run=cmd_flatten_rank)

    s = sub.add_parser("binary-rank", parents=[common], help="exact rank of a binary form")
    s.add_argument("poly")
    s.add_argument("--decompose", action="store_true")
    s.set_defaults(run=cmd_binary_rank)

    s = sub.add_parser("monomial-bounds", parents=[common], help="bounds for a monomial")
    s.add_argument("exponents", help="comma-separated exponents, e.g. 3,1,1")
    s.set_defaults(run=cmd_monomial_bounds)

    s = sub.add_parser("detperm-table", parents=[common], help="bounds for det and perm")
    s.add_argument("--max-n", type=int, default=8)
    s.add_argument("--verify-flattenings", action="store_true")
    s.add_argument("--max-verify-n", type=int, default=4)
    s.set_defaults(run=cmd_detperm_table)

    s = sub.add_parser("bounds", parents=[common], help="all rank bounds for a form")
    s.add_argument("poly")
    s.add_argument("--no-koszul", action="store_true")
    s.set_defaults(run=cmd_bounds)

    s = sub.add_parser("verify-decomp", parents=[common], help="check a power-sum decomposition")
    s.add_argument("--target")
    s.add_argument("--decomp", help="file with one 'coeff | c1, c2, ...' term per line")
    s.add_argument("--catalog", help="verify one catalog entry")
    s.add_argument("--catalog-all", action="store_true")
    s.add_argument("--show-terms", action="store_true")
    s.set_defaults(run=cmd_verify_decomp)

    s = sub.add_parser("limit-plane", parents=[common], help="certify a border rank upper bound")
    s.add_argument("--monomial", help="tail exponents b1,...,bn")
    s.add_argument("--normal-form", help="row key, e.g. osculating")
    s.add_argument("--rank", type=int, default=4, help="border rank of the normal form table (3, 4 or 5)")
    s.add_argument("--degree", type=int)
    s.add_argument("--five-curve", action="store_true")
    s.set_defaults(run=cmd_limit_plane)

    s = sub.add_parser("cubic-classify", parents=[common], help="place a ternary cubic in the rank table")
    s.add_argument("poly")
    s.set_defaults(run=cmd_cubic_classify)

    s = sub.add_parser("paper-tables", parents=[common], help="reproduce the reference tables")
    s.add_argument("--which", choices=("det-perm", "products", "cubics"), required=True)
    s.set_defaults(run=cmd_paper_tables)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        doc = a.run(a)
    except WaringError as exc:
        tb = exc.__traceback__
        while tb.tb_next is not None:
            tb = tb.tb_next
        module = tb.tb_frame.f_globals.get("__name__", "waring").rsplit(".", 1)[-1]
        print(json.dumps({"error": type(exc).__name__, "message": f"{module}: {exc}"}), file=sys.stderr)
        return exc.exit_code
    print(json.dumps({"command": a.command, **doc}, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
