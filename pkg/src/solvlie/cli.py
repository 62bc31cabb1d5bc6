"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 validation failure, 3 internal
consistency breach (two routes that must agree disagreed; always a bug).
"""

from __future__ import annotations

import argparse
import sys

from .attached import build_attached
from .catalog import (
    CATALOG_PATTERNS,
    AlgebraFile,
    get_example,
    parse_algebra,
    parse_rational,
    serialize_algebra,
)
from .exceptions import (
    InputError,
    NotRationalSplitError,
    SolvlieError,
    TheoremViolationError,
    ValidationError,
)
from .iwasawa import root_label
from .report import (
    analyze_exact,
    analyze_float_report,
    attached_section,
    render_json,
    render_text,
    resolve_simple_system,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VALIDATION = 2
EXIT_THEOREM = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", nargs="?", help="algebra file path, or - for stdin")
    parser.add_argument("--example", help="use a built-in example instead of a file")
    parser.add_argument(
        "--mode", choices=["exact", "float"], default="exact", help="arithmetic mode"
    )
    parser.add_argument(
        "--tol", type=float, default=1e-9, help="tolerance for float-mode comparisons"
    )
    parser.add_argument(
        "--format", choices=["text", "json"], default="text", help="report format"
    )
    parser.add_argument(
        "--simple",
        help="simple system override: coordinate vectors like '1,-1,-1;0,2,-1;0,-1,2'",
    )


def _load(args) -> tuple[AlgebraFile, dict]:
    if args.example and args.input:
        raise InputError("give either an input file or --example, not both")
    if args.example:
        entry = get_example(args.example)
        return entry.file, entry.root_aliases
    if not args.input:
        raise InputError("no input: give a file path, - for stdin, or --example")
    if args.input == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            with open(args.input, "rb") as handle:
                data = handle.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from None
    return parse_algebra(data), {}


def _parse_simple(spec: str | None):
    if spec is None:
        return None
    vectors = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            vectors.append(tuple(parse_rational(t) for t in chunk.split(",")))
        except ValueError as exc:
            raise InputError(f"bad --simple value: {exc}") from None
    if not vectors:
        raise InputError("--simple needs at least one coordinate vector")
    return tuple(vectors)


def _emit(report: dict, fmt: str) -> None:
    text = render_json(report) if fmt == "json" else render_text(report)
    sys.stdout.write(text)


def cmd_analyze(args) -> int:
    file, aliases = _load(args)
    if args.mode == "float":
        report = analyze_float_report(file, args.tol)
    else:
        report = analyze_exact(file, aliases, _parse_simple(args.simple))
    _emit(report, args.format)
    return EXIT_OK


def cmd_attached(args) -> int:
    file, aliases = _load(args)
    if args.mode == "float":
        raise InputError("attached-subalgebra analysis runs on the exact path only")
    report = analyze_exact(file, aliases, _parse_simple(args.simple))
    dec = report["_dec"]
    sys_ = report["_sys"]
    if sys_ is None:
        raise ValidationError(
            "no verified simple system; pass --simple with root coordinates"
        )
    labels = {root_label(sys_, r, aliases): r for r in sys_.simple}
    wanted = []
    spec = args.lambda_prime.strip()
    if spec not in ("", "none"):
        for token in spec.split(","):
            token = token.strip()
            if token not in labels:
                raise InputError(
                    f"unknown simple root {token!r}; available: {', '.join(sorted(labels))}"
                )
            wanted.append(labels[token])
    att = build_attached(dec, sys_, wanted)
    report["attached"] = [attached_section(att, aliases, args.tol)]
    _emit(report, args.format)
    return EXIT_OK


def cmd_example(args) -> int:
    if args.action == "list":
        for name in CATALOG_PATTERNS:
            sys.stdout.write(name + "\n")
        return EXIT_OK
    entry = get_example(args.name)
    sys.stdout.write(serialize_algebra(entry.file))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solvlie",
        description="Exact curvature analysis of solvable metric Lie algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="validate, decompose and compute curvature")
    _add_common(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_attached = sub.add_parser("attached", help="build and analyze an attached subalgebra")
    _add_common(p_attached)
    p_attached.add_argument(
        "--lambda-prime",
        required=True,
        help="comma-separated simple-root labels (e.g. a2), or 'none' for the empty subset",
    )
    p_attached.set_defaults(func=cmd_attached)

    p_example = sub.add_parser("example", help="list built-in examples or emit one")
    ex_sub = p_example.add_subparsers(dest="action", required=True)
    ex_list = ex_sub.add_parser("list", help="list example names")
    ex_list.set_defaults(func=cmd_example, action="list")
    ex_emit = ex_sub.add_parser("emit", help="write an example algebra file to stdout")
    ex_emit.add_argument("name")
    ex_emit.set_defaults(func=cmd_example, action="emit")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotRationalSplitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: the adjoint spectrum is irrational; retry with --mode float", file=sys.stderr)
        return EXIT_VALIDATION
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremViolationError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SolvlieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
