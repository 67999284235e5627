"""Command-line interface.

Exit codes: 0 for an affirmative answer, 3 for a negative one, 2 for
usage, parse or type errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .control import is_controllable
from .diagram import BoundaryError, DiagramSyntaxError, TypedTerm, parse, pretty, typecheck
from .field import Field, field_from_name
from .laurent import format_poly
from .matrix import PolyMatrix, ShapeError
from .opsem import TraceWindow, check_window_trace, simulate, compare_window_sets
from .semantics import axiom_soundness_suite, behavior_equal, corelation

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 3, 2


class CliError(Exception):
    pass


def _load_term(arg: str) -> TypedTerm:
    """A term given as a file path or inline."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = arg
    return typecheck(parse(text))


def _matrix_text(M: PolyMatrix) -> str:
    if M.rows == 0:
        return f"[] ({M.rows}x{M.cols})"
    return "\n".join("[" + ", ".join(format_poly(p) for p in row) + "]" for row in M.to_lists())


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _values(text: str, field: Field) -> list:
    return [None if x.strip() in ("_", "?", "") else field(x.strip()) for x in text.split(",")]


def _parse_inputs(args, m: int, field: Field) -> list[list]:
    if args.input_file:
        with open(args.input_file, encoding="utf-8") as fh:
            data = json.load(fh)
        if isinstance(data, dict):
            data = data["u"]
        ticks = [[None if x is None else field(str(x)) for x in (row if isinstance(row, list) else [row])]
                 for row in data]
    elif args.input:
        if m == 1:
            ticks = [[x] for x in _values(args.input, field)]
        else:
            ticks = [_values(chunk, field) for chunk in args.input.split(";") if chunk.strip()]
    else:
        ticks = []
    if args.cycle and ticks:
        ticks = [ticks[i % len(ticks)] for i in range(args.steps)]
    ticks = ticks[: args.steps]
    ticks += [[None] * m for _ in range(args.steps - len(ticks))]
    for i, tick in enumerate(ticks):
        if len(tick) != m:
            raise CliError(f"input at tick {i} has {len(tick)} values, the term has {m} inputs")
    return ticks


# -- commands -------------------------------------------------------------


def cmd_parse(args, field: Field) -> int:
    tt = _load_term(args.term)
    if args.format == "json":
        _emit({"term": pretty(tt.term), "arity": tt.arity, "coarity": tt.coarity,
               "registers": [{"index": r.index, "kind": r.kind, "path": list(r.path)} for r in tt.registers]})
    else:
        print(pretty(tt.term))
        print(f"type {tt.arity} -> {tt.coarity}, {tt.d} register(s)")
    return EXIT_YES


def cmd_normalize(args, field: Field) -> int:
    x = corelation(_load_term(args.term), field)
    if args.format == "json":
        _emit(x.to_json())
    else:
        print(f"type {x.m} -> {x.n}, apex {x.apex}")
        print(_matrix_text(x.kernel_rep))
    return EXIT_YES


def cmd_equiv(args, field: Field) -> int:
    t1, t2 = _load_term(args.left), _load_term(args.right)
    if (t1.arity, t1.coarity) != (t2.arity, t2.coarity):
        raise CliError(f"type mismatch: {t1.arity} -> {t1.coarity} versus {t2.arity} -> {t2.coarity}")
    x, y = corelation(t1, field), corelation(t2, field)
    if behavior_equal(x, y):
        print("EQUIVALENT")
        return EXIT_YES
    print("NOT EQUIVALENT")
    print("left:\n" + _matrix_text(x.kernel_rep))
    print("right:\n" + _matrix_text(y.kernel_rep))
    return EXIT_NO


def cmd_controllable(args, field: Field) -> int:
    report = is_controllable(corelation(_load_term(args.term), field))
    if args.report == "json":
        _emit(report.to_json())
    else:
        print("CONTROLLABLE" if report.controllable else "NOT CONTROLLABLE")
        if not report.controllable:
            print("obstruction (X with X * part = kernel):\n" + _matrix_text(report.obstruction))
    return EXIT_YES if report.controllable else EXIT_NO


def cmd_controllable_part(args, field: Field) -> int:
    report = is_controllable(corelation(_load_term(args.term), field))
    _emit(report.controllable_part.to_json())
    return EXIT_YES


def cmd_simulate(args, field: Field) -> int:
    tt = _load_term(args.term)
    if args.steps < 1:
        raise CliError("--steps must be positive")
    sigma = _values(args.init, field) if args.init else [field.zero] * tt.d
    if any(x is None for x in sigma):
        raise CliError("--init needs a value for every register")
    if len(sigma) != tt.d:
        raise CliError(f"--init has {len(sigma)} values, the term has {tt.d} registers")
    inputs = _parse_inputs(args, tt.arity, field)
    w = simulate(tt, sigma, inputs, args.steps, "backward" if args.backward else "forward", field)
    if w is None:
        print("NO COMPUTATION: the given values are inconsistent", file=sys.stderr)
        return EXIT_NO
    _emit(w.to_json(field))
    return EXIT_YES


def cmd_check_trace(args, field: Field) -> int:
    tt = _load_term(args.term)
    with open(args.trace, encoding="utf-8") as fh:
        w = TraceWindow.from_json(json.load(fh), field)
    ok = check_window_trace(tt, w, field)
    print("VALID" if ok else "INVALID")
    return EXIT_YES if ok else EXIT_NO


def cmd_window_compare(args, field: Field) -> int:
    if args.length < 1:
        raise CliError("--length must be positive")
    ok, ops, den = compare_window_sets(_load_term(args.term), args.length, field)
    if ok:
        print(f"MATCH dim={ops.dim}")
        return EXIT_YES
    print(f"MISMATCH opsem_dim={ops.dim} denotational_dim={den.dim}")
    return EXIT_NO


def cmd_axioms(args, field: Field) -> int:
    results = axiom_soundness_suite(field)
    for r in results:
        print(f"{'PASS' if r.holds else 'FAIL'}  {r.label}")
    failed = sum(not r.holds for r in results)
    print(f"{len(results) - failed}/{len(results)} axioms hold over {field!r}")
    return EXIT_YES if failed == 0 else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flowcat", description="Signal flow graph analysis")
    p.add_argument("--field", default=None,
                   help="coefficient field: Q (default) or zp:<prime>; env FLOWCAT_FIELD")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="parse and typecheck a term")
    s.add_argument("term")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("normalize", help="canonical corelation of a term")
    s.add_argument("term")
    s.add_argument("--format", choices=("text", "json"), default="json")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("equiv", help="decide behavioural equality of two terms")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("controllable", help="decide controllability")
    s.add_argument("term")
    s.add_argument("--report", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_controllable)

    s = sub.add_parser("controllable-part", help="maximal controllable sub-behaviour")
    s.add_argument("term")
    s.set_defaults(func=cmd_controllable_part)

    s = sub.add_parser("simulate", help="run the interpreter over a finite window")
    s.add_argument("term")
    s.add_argument("--init", help="register values, comma separated")
    s.add_argument("--input", help="ticks separated by ',' (one input) or ';' (several); '_' leaves a value open")
    s.add_argument("--input-file", help="JSON list of per-tick input lists (null leaves a value open)")
    s.add_argument("--steps", type=int, default=8)
    s.add_argument("--cycle", action="store_true", help="repeat the input stream to fill --steps")
    s.add_argument("--backward", action="store_true", help="end at the registers instead of starting there")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("check-trace", help="validate a trace window JSON against a term")
    s.add_argument("term")
    s.add_argument("trace")
    s.set_defaults(func=cmd_check_trace)

    s = sub.add_parser("window-compare", help="compare operational and denotational window sets")
    s.add_argument("term")
    s.add_argument("--length", type=int, default=6)
    s.set_defaults(func=cmd_window_compare)

    s = sub.add_parser("axioms", help="check the curated axiom pairs")
    s.set_defaults(func=cmd_axioms)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        field = field_from_name(args.field or os.environ.get("FLOWCAT_FIELD", "Q"))
        return args.func(args, field)
    except (CliError, DiagramSyntaxError, BoundaryError, ShapeError,
            ValueError, ZeroDivisionError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
