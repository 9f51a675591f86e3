"""Command line interface.

Exit status: 0 on success, 1 when a verdict fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import PolystabError, SchemaError
from .generate import InstanceSpec, run_batch
from .io import (
    dumps,
    extended_to_json,
    hpoly_to_json,
    parse_problem,
    polyhedron_from_json,
    report_to_json,
    set_to_json,
    vpoly_to_json,
)
from .polyhedron import as_h, as_v
from .rational import format_vec, parse_vec, zeros
from .stability import mu_subdifferential, optimal_value, verify_stability

VECTOR_FLAGS = ("--x", "--y")


def _load_problem(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text)


def cmd_eval(args) -> int:
    problem = _load_problem(args.file)
    print(extended_to_json(optimal_value(problem, parse_vec(args.x))))
    return 0


def cmd_subdiff(args) -> int:
    problem = _load_problem(args.file)
    x = parse_vec(args.x)
    sub, sing = mu_subdifferential(problem, x)
    out = {
        "x": format_vec(x),
        "mu": extended_to_json(optimal_value(problem, x)),
        "sub_mu": set_to_json(sub, args.h_form),
        "sing_mu": set_to_json(sing, args.h_form),
    }
    print(dumps(out))
    return 0


def cmd_verify(args) -> int:
    problem = _load_problem(args.file)
    x = parse_vec(args.x) if args.x is not None else zeros(problem.dim_x)
    y = parse_vec(args.y) if args.y is not None else None
    report = verify_stability(problem, x, y)
    out = report_to_json(report, args.h_form)
    print(dumps(out))
    return 0 if out["all_passed"] else 1


def cmd_batch(args) -> int:
    try:
        dim_x, dim_y = (int(d) for d in args.dims.split(","))
    except ValueError:
        raise SchemaError(f"--dims expects 'nx,ny', got {args.dims!r}") from None
    if args.count < 0 or args.seed < 0:
        raise SchemaError("--count and --seed must be nonnegative")
    InstanceSpec(args.seed, dim_x, dim_y)
    summary = run_batch(args.count, args.seed, dim_x, dim_y, args.jobs)
    print(dumps(summary.to_json(timing=not args.no_timing)))
    return 1 if summary.failures else 0


def cmd_convert(args) -> int:
    try:
        obj = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SchemaError(f"cannot read {args.file}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    p = polyhedron_from_json(obj)
    out = hpoly_to_json(as_h(p)) if args.to == "h" else vpoly_to_json(as_v(p))
    print(dumps(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polystab",
        description="Exact subdifferentials of optimal value functions of parametric polyhedral programs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="print mu(x)")
    p.add_argument("file")
    p.add_argument("--x", required=True, help="parameter, e.g. 1/2,-3")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("subdiff", help="print d mu(x) and d^inf mu(x)")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--h-form", action="store_true", help="also print constraint forms")
    p.set_defaults(func=cmd_subdiff)

    p = sub.add_parser("verify", help="print the stability report at x")
    p.add_argument("file")
    p.add_argument("--x", help="parameter (default: origin)")
    p.add_argument("--y", help="minimizer to use (default: smallest vertex of M(x))")
    p.add_argument("--h-form", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="verify seeded random instances at x = 0")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims", default="1,1", help="nx,ny")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="omit wall_time for byte-stable output")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("convert", help="convert a polyhedron between H- and V-form")
    p.add_argument("file")
    p.add_argument("--to", choices=("h", "v"), required=True)
    p.set_defaults(func=cmd_convert)
    return parser


def _join_vector_flags(argv: Sequence[str]) -> list[str]:
    # "--x -1/2,3" would be read as an unknown flag
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token in VECTOR_FLAGS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_vector_flags(argv))
    try:
        return args.func(args)
    except PolystabError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
