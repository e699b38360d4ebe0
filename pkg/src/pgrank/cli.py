"""Command-line front end: ``pgrank points|matrix|rank|verify|bench``.

Exit codes: 0 on success, 1 when a verification fails (or a conjecture
mismatches under ``--strict``), 2 for usage and parameter errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time

import numpy as np

from . import gf2txt
from .field import factor_prime_power, make_field
from .gf2 import BitMatrix, rank
from .incidence import BLOCK_NAMES, MAX_MATRIX_POINTS, BlockDecomposition
from .quadratic import CODE_CLASS, make_space
from .verify import SUITES, SuiteConfig, expand_suites, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- parameter parsing ----------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def resolve_fields(args) -> list:
    """Fields selected by ``-q`` (possibly a list) or ``-p/-k``."""
    if args.q is not None:
        if args.p is not None or args.k is not None:
            raise UsageError("give either -q or -p/-k, not both")
        pairs = []
        for q in _int_list(args.q):
            try:
                pairs.append(factor_prime_power(q))
            except ValueError:
                raise UsageError(f"q = {q} is not a prime power") from None
    elif args.p is not None:
        pairs = [(args.p, args.k or 1)]
    else:
        raise UsageError("one of -q or -p is required")
    fields = []
    for p, k in pairs:
        if p == 2:
            raise UsageError(f"q = {p**k} is even; only odd q is supported")
        try:
            fields.append(make_field(p, k))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return fields


def resolve_alpha(field, spec: str):
    """``square``, ``nonsquare``, an integer, or a comma-separated coefficient tuple."""
    if spec in ("square", "nonsquare"):
        return field.canonical_alpha(spec)
    try:
        if "," in spec:
            alpha = field.from_coeffs(int(c) for c in spec.split(","))
        else:
            alpha = field.from_int(int(spec)) if field.k == 1 else field.element(int(spec))
    except ValueError as exc:
        raise UsageError(f"bad alpha {spec!r}: {exc}") from None
    if alpha.value == 0:
        raise UsageError("alpha must be nonzero")
    return alpha


def build_space(args, field):
    if args.n is None or args.n < 1:
        raise UsageError("-n must be a positive integer")
    alpha = resolve_alpha(field, args.alpha)
    try:
        return make_space(args.n, field, alpha, args.form)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_decomposition(args, field) -> BlockDecomposition:
    space = build_space(args, field)
    try:
        return BlockDecomposition.build(space, max_points=args.max_points)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- output ------------------------------------------------------------------------

def write_output(text: str, path: str | None) -> None:
    """Write to stdout, or atomically to ``path`` via a temporary file."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".pgrank-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _coord_text(field, value: int) -> str:
    if field.k == 1:
        return str(value)
    return "(" + ",".join(str(c) for c in field.digits_of(value)) + ")"


def format_matrix(m: BitMatrix, fmt: str) -> str:
    if fmt == "gf2txt":
        return gf2txt.dumps(m)
    rows = ["".join("1" if b else "0" for b in row) for row in m.to_bool()]
    if fmt == "json":
        return json.dumps({"rows": m.rows, "cols": m.cols, "data": rows}) + "\n"
    if fmt == "csv":
        return "".join(",".join(r) + "\n" for r in rows)
    if fmt == "text":
        return "".join(r + "\n" for r in rows)
    raise UsageError(f"format {fmt!r} is not available for matrices")


def format_points(space, fmt: str) -> str:
    table = space.points()
    field = space.field
    labels = [CODE_CLASS[int(c)].value for c in table.classes]
    coords = [[_coord_text(field, int(x)) for x in row] for row in table.coords]
    if fmt == "json":
        items = [{"index": i, "coords": [int(x) for x in row], "class": lab}
                 for i, (row, lab) in enumerate(zip(table.coords, labels))]
        return json.dumps({"n": space.n, "q": field.q, "points": items}) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index"] + [f"x{i}" for i in range(space.n + 1)] + ["class"])
        for i, (row, lab) in enumerate(zip(coords, labels)):
            w.writerow([i] + row + [lab])
        return buf.getvalue()
    if fmt == "text":
        return "".join(" ".join(row) + " " + lab + "\n" for row, lab in zip(coords, labels))
    raise UsageError(f"format {fmt!r} is not available for points")


def _detail(check: dict) -> str:
    if check["name"] == "conjecture":
        matched = check["computed"]["A12_readings_matched"]
        return "A12 matches: " + (",".join(matched) or "none")
    if check["status"] == "fail":
        return f"expected {check['expected']} computed {check['computed']}"
    return ""


def format_report(report, fmt: str, meta: bool = True) -> str:
    data = report.to_dict(meta=meta)
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    if fmt != "text":
        raise UsageError(f"format {fmt!r} is not available for reports")
    header = ("check", "n", "q", "alpha", "form", "status", "detail")
    rows = [(c["name"], str(c["params"]["n"]), str(c["params"]["q"]), str(c["params"]["alpha"]),
             c["params"]["form"], c["status"], _detail(c)) for c in data["checks"]]
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header] + rows]
    s = data["summary"]
    lines.append(f"pass={s['pass']} fail={s['fail']} recorded={s['recorded']}")
    if meta:
        lines.append(f"runtime={data['meta']['runtime_s']}s timestamp={data['meta']['timestamp']}")
    return "\n".join(lines) + "\n"


# -- subcommands ----------------------------------------------------------------------

def cmd_points(args) -> int:
    (field,) = _single(resolve_fields(args))
    space = build_space(args, field)
    write_output(format_points(space, args.format), args.output)
    return 0


def cmd_matrix(args) -> int:
    (field,) = _single(resolve_fields(args))
    dec = build_decomposition(args, field)
    write_output(format_matrix(dec.block(args.block), args.format), args.output)
    return 0


def cmd_rank(args) -> int:
    results = []
    for field in resolve_fields(args):
        dec = build_decomposition(args, field)
        results.append((field.q, rank(dec.block(args.block))))
    if args.format == "csv":
        text = f"q,rank_{args.block}\n" + "".join(f"{q},{r}\n" for q, r in results)
    elif args.format == "json":
        text = json.dumps([{"n": args.n, "q": q, "alpha": args.alpha, "form": args.form,
                            "block": args.block, "rank": r} for q, r in results]) + "\n"
    elif args.format == "text":
        if len(results) == 1:
            text = f"{results[0][1]}\n"
        else:
            text = "".join(f"{q} {r}\n" for q, r in results)
    else:
        raise UsageError(f"format {args.format!r} is not available for ranks")
    write_output(text, args.output)
    return 0


def cmd_verify(args) -> int:
    suites = expand_suites(s.strip() for s in args.suite.split(","))
    if args.n is not None:
        n_values = [args.n]
    else:
        n_values = list(range(args.nmin, args.nmax + 1))
    q_values = [q for q in range(args.qmin, args.qmax + 1) if _is_odd_prime_power(q)]
    try:
        config = SuiteConfig(n_values=tuple(n_values), q_values=tuple(q_values), suites=suites,
                             strict=args.strict, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_suite(config)
    write_output(format_report(report, args.format, meta=not args.no_meta), args.output)
    return 0 if report.ok else 1


def cmd_bench(args) -> int:
    rng = np.random.default_rng(args.seed)
    lines = []
    best = float("inf")
    for i in range(args.repeat):
        m = BitMatrix.random(args.size, args.size, rng)
        start = time.perf_counter()
        r = rank(m)
        elapsed = time.perf_counter() - start
        best = min(best, elapsed)
        lines.append(f"run {i}: {args.size}x{args.size} rank={r} time={elapsed:.3f}s")
    verdict = "met" if best < args.target else "missed"
    lines.append(f"best={best:.3f}s target={args.target:.3f}s {verdict}")
    write_output("\n".join(lines) + "\n", args.output)
    return 0


def _is_odd_prime_power(q: int) -> bool:
    try:
        p, _ = factor_prime_power(q)
    except ValueError:
        return False
    return p != 2


def _single(fields):
    if len(fields) != 1:
        raise UsageError("this command takes a single q")
    return fields


# -- parser -------------------------------------------------------------------------------

def _geometry_args(sp, block: bool = False):
    sp.add_argument("-n", type=int, required=True, help="projective dimension")
    sp.add_argument("-q", help="field order (comma list allowed for rank)")
    sp.add_argument("-p", type=int, help="characteristic, with -k")
    sp.add_argument("-k", type=int, help="extension degree")
    sp.add_argument("--alpha", default="square",
                    help="square, nonsquare, an element index, or a coefficient tuple like 1,2")
    sp.add_argument("--form", choices=("diagonal", "conic"), default="diagonal")
    sp.add_argument("--max-points", type=int, default=MAX_MATRIX_POINTS,
                    help="refuse incidence matrices on more points than this")
    if block:
        sp.add_argument("--block", choices=BLOCK_NAMES, default="full")
    sp.add_argument("-o", "--output", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pgrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("points", help="list normalized points with their classes")
    _geometry_args(sp)
    sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
    sp.set_defaults(func=cmd_points)

    sp = sub.add_parser("matrix", help="export the full incidence matrix or a block")
    _geometry_args(sp, block=True)
    sp.add_argument("--format", choices=("gf2txt", "text", "csv", "json"), default="gf2txt")
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("rank", help="2-rank of the full matrix or a block")
    _geometry_args(sp, block=True)
    sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", default="proven",
                    help=f"comma list of: all, proven, {', '.join(SUITES)}")
    sp.add_argument("-n", type=int, help="single dimension (overrides --nmin/--nmax)")
    sp.add_argument("--nmin", type=int, default=1)
    sp.add_argument("--nmax", type=int, default=3)
    sp.add_argument("--qmin", type=int, default=3)
    sp.add_argument("--qmax", type=int, default=13)
    sp.add_argument("--strict", action="store_true", help="conjecture mismatches fail the run")
    sp.add_argument("--workers", type=int, help="parallel checks (default: $PGRANK_WORKERS or 4)")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--no-meta", action="store_true", help="omit timestamp and runtime")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time the rank kernel on random square matrices")
    sp.add_argument("--size", type=int, default=4096)
    sp.add_argument("--repeat", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--target", type=float, default=1.0, help="seconds")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"pgrank: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
