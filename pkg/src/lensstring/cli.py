"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 check failed.
``--expect-fail`` swaps 0 and 3 on check-style commands.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .bialgebra import EqClass, bialgebra_check
from .classify import search_smallest
from .equivariant import (
    Convention,
    cobracket_k_family,
    cobracket_pi_y,
    count_nonzero,
    count_nonzero_coproduct,
    k_family_closed_form,
)
from .errors import LensStringError
from .loop import LensPair, RhoClass, coproduct_rho
from .torsion import L91_TO_L94, LensMap, correction_term, torsion_unit, transform_check

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CHECK = 0, 1, 2, 3

TITLES = {
    "coproduct": "String coproduct for k={k}",
    "cobracket-pi": "String cobracket for k={k}",
    "cobracket-k": "String cobracket of K for k={k}",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(out, fmt: str, text: str, rows: list[list] | None, header: list[str] | None, data) -> None:
    if fmt == "json":
        out.write(json.dumps(data, sort_keys=True) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(header)
        w.writerows(rows or [])
        out.write(buf.getvalue())
    else:
        out.write(text.rstrip("\n") + "\n")


def _space(args) -> LensPair:
    return LensPair(args.n, args.k)


def cmd_coproduct(args, out) -> int:
    space = _space(args)
    b = coproduct_rho(space, RhoClass(args.l, args.m))
    text = b.render()
    _emit(out, args.format, text, [[args.l, text]], ["l", "value"], {"l": args.l, "m": args.m, "value": b.to_json()})
    return EXIT_OK


def _table_rows(space: LensPair, which: str, k_rule: str):
    for l in range(1, space.n):
        if which == "coproduct":
            yield l, coproduct_rho(space, l)
        elif which == "cobracket-pi":
            yield l, cobracket_pi_y(space, l).left
        elif k_rule == "closed-form":
            yield l, k_family_closed_form(space, l)
        else:
            yield l, cobracket_k_family(space, l).left


def cmd_tables(args, out) -> int:
    space = _space(args)
    rows = []
    for l, value in _table_rows(space, args.which, args.k_rule):
        cell = value.render() if args.which == "coproduct" else value.render(unicode=args.unicode)
        rows.append((l, cell, value))
    title = TITLES[args.which].format(k=space.k) + f" (n={space.n})"
    width = len(str(space.n - 1))
    text = "\n".join([title] + [f"{l:>{width}} | {cell}" for l, cell, _ in rows])
    data = {
        "title": title,
        "n": space.n,
        "k": space.k,
        "which": args.which,
        "rows": [{"l": l, "text": cell, "value": v.to_json()} for l, cell, v in rows],
    }
    if args.which == "cobracket-k":
        data["k_rule"] = args.k_rule
    _emit(out, args.format, text, [[l, cell] for l, cell, _ in rows], ["l", "value"], data)
    return EXIT_OK


def cmd_counts(args, out) -> int:
    space = _space(args)
    fn = count_nonzero_coproduct if args.coproduct else count_nonzero
    rep = fn(space, args.convention)
    _emit(
        out,
        args.format,
        str(rep.count),
        [[space.n, space.k, c.value, rep.count_for(c)] for c in Convention],
        ["n", "k", "convention", "count"],
        rep.to_json(),
    )
    return EXIT_OK


def cmd_search(args, out) -> int:
    res = search_smallest(args.max_n, args.workers)
    conv = args.convention
    best = res.smallest(conv)
    lines = []
    if best is None:
        lines.append(f"no qualifying pair for n <= {args.max_n} ({conv})")
    else:
        lines.append(f"smallest n = {best.n} with pair ({best.k},{best.k2}) ({conv})")
    for c in Convention:
        hit = res.smallest(c.value)
        if hit is None:
            lines.append(f"  {c.value}: none")
            continue
        cop, cob = hit.coproduct[c.value], hit.cobracket[c.value]
        lines.append(
            f"  {c.value}: n={hit.n} pair=({hit.k},{hit.k2}) coproduct={cop[0]},{cop[1]} cobracket={cob[0]},{cob[1]}"
        )
    header = ["n", "k", "k2", "convention", "coproduct_k", "coproduct_k2", "cobracket_k", "cobracket_k2", "qualifies"]
    rows = []
    for row in res.rows:
        for c in Convention:
            cop, cob = row.coproduct[c.value], row.cobracket[c.value]
            rows.append([row.n, row.k, row.k2, c.value, *cop, *cob, int(row.qualifies(c.value))])
    data = {
        "max_n": args.max_n,
        "convention": conv,
        "smallest": None if best is None else {"n": best.n, "k": best.k, "k2": best.k2},
        "per_convention": {
            c.value: (lambda h: None if h is None else {"n": h.n, "k": h.k, "k2": h.k2})(res.smallest(c.value))
            for c in Convention
        },
        "rows": [row.to_json() for row in res.rows],
    }
    _emit(out, args.format, "\n".join(lines), rows, header, data)
    return EXIT_OK


def _lens_map(args) -> LensMap:
    if args.source_k is None and args.target_k is None and args.s is None and args.expr is None and args.n == 9:
        return L91_TO_L94
    return LensMap(
        LensPair(args.n, 1 if args.source_k is None else args.source_k),
        LensPair(args.n, 1 if args.target_k is None else args.target_k),
        1 if args.s is None else args.s,
        "1" if args.expr is None else args.expr,
    )


def cmd_torsion(args, out) -> int:
    f = _lens_map(args)
    tu = torsion_unit(f)
    ls = [args.l] if args.l else list(range(1, f.n))
    corr = [(l, correction_term(f, l)) for l in ls]
    lines = [
        f"map: {f.source} -> {f.target}, s={f.s}, realisable={str(f.realisable).lower()}",
        f"unit: {tu.unit.render()} (mod {tu.unit.m})",
        f"inverse: {tu.inverse.render()}",
        f"dlog: {tu.dlog.render('dt')}",
    ] + [f"correction l={l}: {c.render(unicode=args.unicode)}" for l, c in corr]
    data = {
        "source": str(f.source),
        "target": str(f.target),
        "s": f.s,
        "expression": f.torsion,
        "realisable": f.realisable,
        "unit": tu.unit.to_json(),
        "inverse": tu.inverse.to_json(),
        "dlog": tu.dlog.to_json(),
        "corrections": [{"l": l, "value": c.to_json()} for l, c in corr],
    }
    rows = [[l, c.render(unicode=args.unicode)] for l, c in corr]
    _emit(out, args.format, "\n".join(lines), rows, ["l", "correction"], data)
    return EXIT_OK


def cmd_transform_check(args, out) -> int:
    f = _lens_map(args)
    ls = [args.l] if args.l else list(range(1, f.n))
    reps = [transform_check(f, l, args.m_source, args.m_target) for l in ls]
    u = args.unicode

    def line(r):
        verdict = "holds" if r.holds else "fails"
        return (
            f"l={r.l} -> {r.target_l}: {verdict}  lhs={r.lhs.render(unicode=u)}  "
            f"rhs={r.rhs.render(unicode=u)}  discrepancy={r.discrepancy.render(unicode=u)}"
        )

    ok = all(r.holds for r in reps)
    text = "\n".join([line(r) for r in reps] + ["ok" if ok else "check failed"])
    rows = [
        [r.l, r.target_l, r.lhs.render(unicode=u), r.rhs.render(unicode=u), r.discrepancy.render(unicode=u), int(r.holds)]
        for r in reps
    ]
    header = ["l", "target_l", "lhs", "rhs", "discrepancy", "holds"]
    _emit(out, args.format, text, rows, header, {"holds": ok, "reports": [r.to_json() for r in reps]})
    return EXIT_OK if ok else EXIT_CHECK


def cmd_bialgebra_check(args, out) -> int:
    space = _space(args)
    v = bialgebra_check(space, EqClass.pi_y(args.x, space.n), EqClass.pi_y(args.y, space.n), args.m_x, args.m_y)
    u = args.unicode
    verdict = "compatible" if v.compatible else "incompatible"
    text = "\n".join(
        [
            f"lhs: {v.lhs.render(unicode=u, signed=True)}",
            f"rhs: {v.rhs.render(unicode=u, signed=True)}",
            verdict,
        ]
    )
    rows = [[args.x, args.y, v.lhs.render(unicode=u, signed=True), v.rhs.render(unicode=u, signed=True), verdict]]
    _emit(out, args.format, text, rows, ["x", "y", "lhs", "rhs", "verdict"], v.to_json())
    return EXIT_OK if v.compatible else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "csv", "json"], default="text")
    g = common.add_mutually_exclusive_group()
    g.add_argument("--ascii", dest="unicode", action="store_false", help="a3*b1 (default)")
    g.add_argument("--unicode", dest="unicode", action="store_true", help="α₃⊗β₁")
    common.set_defaults(unicode=False)

    check = _Parser(add_help=False)
    check.add_argument("--expect-fail", action="store_true", help="exit 0 when the check fails, 3 when it passes")

    lens = _Parser(add_help=False)
    lens.add_argument("--n", type=int, required=True)
    lens.add_argument("--k", type=int, required=True)

    p = _Parser(prog="lensstring", description="String coproduct and cobracket computations on lens spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("coproduct", parents=[common, lens], help="coproduct of a rho-class")
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--m", type=int, default=0)
    c.set_defaults(func=cmd_coproduct)

    t = sub.add_parser("tables", parents=[common, lens], help="full table over l = 1..n-1")
    t.add_argument("--which", choices=list(TITLES), required=True)
    t.add_argument("--k-rule", choices=["pipeline", "closed-form"], default="pipeline")
    t.set_defaults(func=cmd_tables)

    conv = [c.value for c in Convention]
    n = sub.add_parser("counts", parents=[common, lens], help="number of nonzero components")
    n.add_argument("--convention", choices=conv, default=Convention.GENERATOR_SUM.value)
    n.add_argument("--coproduct", action="store_true", help="count the coproduct instead of the cobracket")
    n.set_defaults(func=cmd_counts)

    s = sub.add_parser("search", parents=[common], help="smallest n with matching coproduct counts and differing cobracket counts")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--convention", choices=conv, default=Convention.GENERATOR_SUM.value)
    s.add_argument("--workers", type=int, default=None, help="default: LENSSTRING_THREADS or 1")
    s.set_defaults(func=cmd_search)

    def map_args(sp):
        sp.add_argument("--n", type=int, default=9)
        sp.add_argument("--source-k", type=int)
        sp.add_argument("--target-k", type=int)
        sp.add_argument("--s", type=int, help="component multiplier")
        sp.add_argument("--expr", help='torsion expression, e.g. "(t^7-1)(t^1-1)/((t^1-1)(t^1-1))"')
        sp.add_argument("--l", type=int)

    tr = sub.add_parser("torsion", parents=[common], help="torsion unit, inverse, d log and corrections")
    map_args(tr)
    tr.set_defaults(func=cmd_torsion)

    tc = sub.add_parser("transform-check", parents=[common, check], help="transformation formula over components")
    map_args(tc)
    tc.add_argument("--m-source", type=int, default=0)
    tc.add_argument("--m-target", type=int, default=0)
    tc.set_defaults(func=cmd_transform_check)

    b = sub.add_parser("bialgebra-check", parents=[common, check, lens], help="Drinfeld compatibility for two pi_y classes")
    b.add_argument("--x", type=int, required=True)
    b.add_argument("--y", type=int, required=True)
    b.add_argument("--m-x", type=int, default=0)
    b.add_argument("--m-y", type=int, default=0)
    b.set_defaults(func=cmd_bialgebra_check)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        err.write(str(e) + "\n")
        return EXIT_USAGE
    try:
        code = args.func(args, out)
    except LensStringError as e:
        err.write(f"error: {e}\n")
        return EXIT_DOMAIN
    if getattr(args, "expect_fail", False) and code in (EXIT_OK, EXIT_CHECK):
        code = EXIT_CHECK if code == EXIT_OK else EXIT_OK
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        return run(argv)
    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
