"""Command-line front end: ``uninorms <command> FILE ...``.

Exit codes: 0 success, 1 parse, validation or usage error, 2 a check failed,
3 decomposition refused.  Diagnostics go to stderr, one per line, prefixed
with ``E:``.
"""

import argparse
import json
import sys

import numpy as np

from . import analysis as A
from . import decomposition as D
from .dsl import DSLError, parse_spec, print_op

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CHECK = 2
EXIT_REFUSED = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x):
    """Fixed 17 significant digit formatting used by every numeric output."""
    x = float(x)
    if np.isnan(x):
        return "nan"
    if np.isinf(x):
        return "inf" if x > 0 else "-inf"
    out = "%.17g" % x
    return "0" if out == "-0" else out


def _json_value(v):
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, (float, np.floating)):
        return fmt(v) if np.isfinite(v) else json.dumps(fmt(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    return "[" + ", ".join(_json_value(x) for x in v) + "]"


def to_json(op, results):
    """JSON document ``{"op": canonical text, "results": ...}`` with %.17g numbers."""
    return "{" + f'"op": {json.dumps(print_op(op))}, "results": {_json_value(results)}' + "}\n"


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text).op


def _real(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def cmd_eval(args, out):
    op = _load(args.file)
    for name, v in (("x", args.x), ("y", args.y)):
        if not 0.0 <= v <= 1.0:
            raise UsageError(f"{name}={v!r} is outside [0, 1]")
    out.write(fmt(op(args.x, args.y)) + "\n")
    return EXIT_OK


def cmd_table(args, out):
    op = _load(args.file)
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    g = A.grid(args.n)
    V = op(g[:, None], g[None, :])
    if args.format == "csv":
        out.write("x,y,value\n")
        for i, x in enumerate(g):
            for j, y in enumerate(g):
                out.write(f"{fmt(x)},{fmt(y)},{fmt(V[i, j])}\n")
    else:
        rows = [{"x": float(x), "y": float(y), "value": float(V[i, j])}
                for i, x in enumerate(g) for j, y in enumerate(g)]
        out.write(to_json(op, rows))
    return EXIT_OK


def cmd_check(args, out, err):
    op = _load(args.file)
    if args.grid < 3:
        raise UsageError("--grid must be at least 3")
    report = A.axiom_report(op, args.grid, args.tol)
    out.write("axiom,max_violation,witness,passed\n")
    for name, entry in report.entries.items():
        witness = " ".join(fmt(w) for w in entry.witness)
        out.write(f"{name},{fmt(entry.max_violation)},{witness},{'pass' if entry.passed else 'fail'}\n")
    for name, entry in report.entries.items():
        if not entry.passed:
            err.write(f"E: {name} violated by {fmt(entry.max_violation)} at ({', '.join(fmt(w) for w in entry.witness)})\n")
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_idempotents(args, out):
    op = _load(args.file)
    report = A.idempotent_set(op, args.resolution)
    out.write("low,high\n")
    for lo, hi in report.intervals:
        out.write(f"{fmt(lo)},{fmt(hi)}\n")
    return EXIT_OK


def cmd_curve(args, out):
    op = _load(args.file)
    locus = A.jump_locus(op, args.resolution, args.threshold)
    out.write("x,y_low,y_high\n")
    for x, lo, hi in locus.points:
        out.write(f"{fmt(x)},{fmt(lo)},{fmt(hi)}\n")
    return EXIT_OK


def decomposition_results(result):
    frames = []
    for f, cls in zip(result.frames, result.summand_class):
        frames.append({"a": f.a, "b": f.b, "c": f.c, "d": f.d, "v": f.corner_value,
                       "pairing_residual": f.pairing_residual, "class": cls.value})
    return {"e": result.e, "frames": frames, "recomposition_error": result.recomposition_error}


def cmd_decompose(args, out, err):
    op = _load(args.file)
    result = D.decompose(op, args.resolution)
    if result.diagnostics:
        for d in result.diagnostics:
            err.write(f"E: {d}\n")
        return EXIT_REFUSED
    text = to_json(op, decomposition_results(result))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_classify(args, out):
    op = _load(args.file)
    flags = A.classify(op, args.resolution)
    for name, value in flags.as_dict().items():
        out.write(f"{name},{'true' if value else 'false'}\n")
    return EXIT_OK


def build_parser():
    p = _Parser(prog="uninorms", description="Build, evaluate, check and decompose uninorms.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("eval", help="evaluate the operator at one point")
    s.add_argument("file")
    s.add_argument("x", type=_real)
    s.add_argument("y", type=_real)

    s = sub.add_parser("table", help="values on an n x n grid")
    s.add_argument("file")
    s.add_argument("--n", type=int, default=11)
    s.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("check", help="sample the uninorm axioms")
    s.add_argument("file")
    s.add_argument("--grid", type=int, default=41)
    s.add_argument("--tol", type=float, default=1e-9)

    s = sub.add_parser("idempotents", help="intervals of idempotent elements")
    s.add_argument("file")
    s.add_argument("--resolution", type=int, default=1024)

    s = sub.add_parser("curve", help="discontinuity locus as x,y_low,y_high")
    s.add_argument("file")
    s.add_argument("--resolution", type=int, default=256)
    s.add_argument("--threshold", type=float, default=1e-3)

    s = sub.add_parser("decompose", help="recover ordinal sum summands")
    s.add_argument("file")
    s.add_argument("--out")
    s.add_argument("--resolution", type=int, default=256)

    s = sub.add_parser("classify", help="class membership flags")
    s.add_argument("file")
    s.add_argument("--resolution", type=int, default=128)
    return p


def run_command(argv, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        c = args.command
        if c == "eval":
            return cmd_eval(args, out)
        if c == "table":
            return cmd_table(args, out)
        if c == "check":
            return cmd_check(args, out, err)
        if c == "idempotents":
            return cmd_idempotents(args, out)
        if c == "curve":
            return cmd_curve(args, out)
        if c == "decompose":
            return cmd_decompose(args, out, err)
        return cmd_classify(args, out)
    except (UsageError, DSLError) as exc:
        err.write(f"E: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        err.write(f"E: {exc}\n")
        return EXIT_INPUT


def main(argv=None):
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
