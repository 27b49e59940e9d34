"""Command-line front end: ``nestedac [global flags] COMMAND [flags]``.

Global flags may appear before or after the subcommand.

Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .codes import DEFAULT_SCAN_CAP, code_summary, weight_distribution
from .counting import MinWtReport, count_minwt
from .domain import NestedProduct
from .errors import ACError, TooLarge
from .gf import load_poly_table, parse_field
from .groups import DEFAULT_ORBIT_CAP, min_weight_array
from .verify import verify_range

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--field", default=default(None), help="field as p^R, e.g. 2^2")
    p.add_argument("--prod", default=default(None), help="coordinate sizes, e.g. 2,2,4")
    p.add_argument("--u", type=int, default=default(None), help="a single degree")
    p.add_argument("--u-range", default=default(None), help="degree range A..B (inclusive)")
    p.add_argument("--format", choices=("json", "csv", "text"), default=default("text"))
    p.add_argument("--scan-cap", type=_positive, default=default(DEFAULT_SCAN_CAP))
    p.add_argument("--orbit-cap", type=_positive, default=default(DEFAULT_ORBIT_CAP))
    p.add_argument("--poly-table", default=default(None), help="file of 'p R c0 ... cR' lines")
    p.add_argument("--seed", type=int, default=default(0))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nestedac", description="Affine Cartesian codes over nested subfields.")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "params": "dimension and minimum distance per degree",
        "count": "closed-form minimum-weight counts",
        "enumerate": "list all minimum-weight codewords",
        "dist": "exhaustive weight distribution",
        "verify": "cross-check formula, orbit construction and scans",
    }
    for name, text in helps.items():
        _add_common(sub.add_parser(name, help=text), suppress=True)
    return parser


def _context(args):
    if not args.field or not args.prod:
        raise ACError("--field and --prod are required")
    table = load_poly_table(args.poly_table) if args.poly_table else None
    ctx = parse_field(args.field, table)
    return NestedProduct.parse(ctx, args.prod)


def _degrees(args, prod: NestedProduct, default: tuple[int, int]) -> list[int]:
    if args.u is not None and args.u_range is not None:
        raise ACError("give either --u or --u-range, not both")
    if args.u is not None:
        lo = hi = args.u
    elif args.u_range is not None:
        try:
            a, b = args.u_range.split("..")
            lo, hi = int(a), int(b)
        except ValueError:
            raise ACError(f"bad --u-range {args.u_range!r}; expected A..B") from None
    else:
        lo, hi = default
    if lo > hi or lo < 0 or hi > prod.K:
        raise ACError(f"degrees {lo}..{hi} not within [0, {prod.K}]")
    return list(range(lo, hi + 1))


def _emit(rows: list[dict], fmt: str, out, columns: Sequence[str]) -> None:
    if fmt == "json":
        json.dump(rows if len(rows) != 1 else rows[0], out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.DictWriter(out, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow(row)
    else:
        cells = [[str(row.get(c, "")) for c in columns] for row in rows]
        widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
        out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
        for r in cells:
            out.write("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() + "\n")


def _k_label(prod: NestedProduct, report: MinWtReport, k: int) -> str:
    """Seed coordinates sharing k's block, e.g. "1,2" for a lower block."""
    dec = report.decomposition
    if dec is None or dec.top or prod.block_of(k) == dec.r:
        return str(k)
    t = prod.block_of(k)
    return ",".join(str(i) for i in range(max(prod.s[t - 1] + 1, dec.k0), prod.s[t] + 1))


TABLE_COLUMNS = ("u", "(j,l)", "k0", "k", "|C|", "delta", "|N^(k)|", "|N|")


def _table_rows(prod: NestedProduct, report: MinWtReport) -> list[dict]:
    s = code_summary(prod, report.u)
    q = prod.ctx.q
    head = {
        "u": report.u,
        "(j,l)": "-" if report.j is None else f"({report.j},{report.ell})",
        "k0": "-" if report.k0 is None else report.k0,
        "|C|": f"{q}^{s.dim}",
        "delta": s.mindist,
        "|N|": report.total,
    }
    if not report.per_k:
        return [dict(head, k="-", **{"|N^(k)|": report.total})]
    rows = []
    for i, (k, v) in enumerate(report.per_k.items()):
        row = dict(head) if i == 0 else {c: "" for c in head}
        row["k"] = _k_label(prod, report, k)
        row["|N^(k)|"] = v
        rows.append(row)
    return rows


def cmd_params(args, out) -> int:
    prod = _context(args)
    rows = []
    for u in _degrees(args, prod, (0, prod.K)):
        s = code_summary(prod, u)
        dec = prod.decompose_u(u) if u >= 1 else None
        row = {
            "u": u,
            "(j,l)": "-" if dec is None else f"({dec.j},{dec.ell})",
            "n": s.n,
            "dim": s.dim,
            "|C|": f"{prod.ctx.q}^{s.dim}",
            "delta": s.mindist,
        }
        if args.format == "json":
            row = {"u": u, "j": None if dec is None else dec.j, "ell": None if dec is None else dec.ell,
                   "n": s.n, "dim": s.dim, "size": str(prod.ctx.q**s.dim), "delta": s.mindist}
        rows.append(row)
    _emit(rows, args.format, out, ("u", "(j,l)", "n", "dim", "|C|", "delta"))
    return EXIT_OK


def cmd_count(args, out) -> int:
    prod = _context(args)
    reports = [count_minwt(prod, u) for u in _degrees(args, prod, (1, prod.K))]
    if args.format == "json":
        _emit([r.to_json() for r in reports], "json", out, ())
    else:
        rows = [row for r in reports for row in _table_rows(prod, r)]
        _emit(rows, args.format, out, TABLE_COLUMNS)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    prod = _context(args)
    us = _degrees(args, prod, (1, 1))
    if len(us) != 1:
        raise ACError("enumerate takes a single --u")
    u = us[0]
    words = min_weight_array(prod, u, cap=args.orbit_cap)
    F = prod.ctx
    symbols = [F.symbol(c) for c in range(F.q)]
    for row in sorted(words.tolist()):
        out.write(",".join(symbols[c] for c in row) + "\n")
    out.write(f"count={len(words)} weight={code_summary(prod, u).mindist}\n")
    return EXIT_OK


def cmd_dist(args, out) -> int:
    prod = _context(args)
    us = _degrees(args, prod, (1, 1))
    rows = []
    for u in us:
        dist = weight_distribution(prod, u, cap=args.scan_cap)
        if args.format == "json":
            rows.append({"u": u, "distribution": {str(w): str(c) for w, c in sorted(dist.items())}})
        else:
            rows.extend({"u": u, "weight": w, "count": c} for w, c in sorted(dist.items()))
    _emit(rows, args.format, out, ("u", "weight", "count"))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    prod = _context(args)
    us = _degrees(args, prod, (1, prod.K))
    results = verify_range(prod, us, scan_cap=args.scan_cap, orbit_cap=args.orbit_cap, seed=args.seed)
    rows = []
    for u, res in zip(us, results):
        report = count_minwt(prod, u)
        table = _table_rows(prod, report)
        status = "ok" if res.ok else "FAIL"
        extra = {
            "enumerated": "-" if res.enumerated is None else res.enumerated,
            "scanned": "-" if res.scanned is None else res.scanned,
            "special": "-" if res.specialization is None else res.specialization,
            "status": status,
        }
        if args.format == "json":
            j = report.to_json()
            j.update(
                enumerated=None if res.enumerated is None else str(res.enumerated),
                scanned=None if res.scanned is None else str(res.scanned),
                specialization=None if res.specialization is None else str(res.specialization),
                delta=res.mindist,
                ok=res.ok,
                notes=res.notes,
            )
            rows.append(j)
        else:
            table[0].update(extra)
            rows.extend(table)
    _emit(rows, args.format, out, TABLE_COLUMNS + ("enumerated", "scanned", "special", "status"))
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


COMMANDS = {
    "params": cmd_params,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "dist": cmd_dist,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except TooLarge as exc:
        print(f"nestedac: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ACError, OSError) as exc:
        print(f"nestedac: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout."""
    buf = io.StringIO()
    try:
        code = main(argv, buf)
    except SystemExit as exc:
        code = int(exc.code or 0)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
