"""Command-line interface.

Exit codes: 0 success, 1 malformed input or a cube that fails verification,
2 infeasible order (n < 2m), 3 oracle budget exhausted.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .amalgamation import color_amalgam, necessity_check
from .cube import base_cube, parse, serialize, verify
from .embedder import STAGES, embed
from .errors import InfeasibleOrderError, MalformedInputError
from .oracle import SEARCH_MAX_ORDER, Outcome, SearchLimits, brute_force_extend

EXIT_OK, EXIT_MALFORMED, EXIT_INFEASIBLE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is reserved for infeasible orders
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def int_range(text: str) -> list[int]:
    """``"3"``, ``"2..5"`` (inclusive) or ``"1,4,7"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer range: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError(f"empty range: {text!r}")
    return values


def _read(path: str):
    if path == "-":
        return parse(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise MalformedInputError(f"{path}: {exc.strerror}") from None


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _positive(name: str, value: int) -> None:
    if value < 1:
        raise UsageError(f"{name} must be positive, got {value}")


def cmd_generate(args) -> int:
    _positive("n", args.n)
    _write(serialize(base_cube(args.n)), args.out)
    return EXIT_OK


def cmd_embed(args) -> int:
    _positive("n", args.n)
    if args.seed < 0:
        raise UsageError("seed must be non-negative")
    small = _read(args.input)
    cube, report = embed(small, args.n, args.seed)
    if not report.success:
        print("error: embedding failed verification", file=sys.stderr)
        return EXIT_MALFORMED
    _write(serialize(cube), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify(_read(args.input))
    print("\n".join(report.lines()))
    return EXIT_OK if report.valid else EXIT_MALFORMED


def cmd_oracle(args) -> int:
    _positive("n", args.n)
    if args.n > SEARCH_MAX_ORDER:
        raise UsageError(f"oracle search is limited to n <= {SEARCH_MAX_ORDER}")
    limits = SearchLimits(args.max_nodes, args.time_budget)
    small = _read(args.input)
    result = brute_force_extend(small, args.n, limits, symmetry=args.symmetry)
    print(f"{result.outcome.value} after {result.nodes} nodes", file=sys.stderr)
    if result.outcome is Outcome.FOUND:
        _write(serialize(result.cube), args.out)
        return EXIT_OK
    if result.outcome is Outcome.PROVED_IMPOSSIBLE:
        if small.order <= args.n:
            print(necessity_check(small.order, args.n).witness, file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_BUDGET


def cmd_bench(args) -> int:
    for v in args.m + args.n:
        _positive("order", v)
    if min(args.seeds) < 0:
        raise UsageError("seeds must be non-negative")
    rows = ["m,n,seed,stage,micros"]
    for m in args.m:
        small = base_cube(m)
        for n in args.n:
            if n < 2 * m:
                continue
            for seed in args.seeds:
                _, report = embed(small, n, seed)
                for stage in STAGES:
                    if stage in report.timings:
                        rows.append(f"{m},{n},{seed},{stage},{round(report.timings[stage] * 1e6)}")
    _write("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def cmd_dump_table(args) -> int:
    if args.m < 2:
        raise UsageError("dump-table needs m >= 2")
    _write(color_amalgam(args.m, args.n).to_csv(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lrcube", description="Construct, embed and verify layer-rainbow latin cubes."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a layer-rainbow cube of order n")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("embed", help="embed a cube in the corner of an order-n cube")
    p.add_argument("input", help="cube file, or - for stdin")
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="check that a cube file is layer-rainbow")
    p.add_argument("input")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive search for an extension (tiny orders)")
    p.add_argument("input")
    p.add_argument("n", type=int)
    p.add_argument("--max-nodes", type=int, default=10_000_000)
    p.add_argument("--time-budget", type=float, default=60.0, help="seconds")
    p.add_argument("--symmetry", action="store_true",
                   help="treat not-yet-used symbols as interchangeable")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="time the embedding pipeline per stage (CSV)")
    p.add_argument("--m", type=int_range, default=[2, 3, 4])
    p.add_argument("--n", type=int_range, default=list(range(4, 13)))
    p.add_argument("--seeds", type=int_range, default=[0])
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dump-table", help="per-color edge-kind multiplicities as CSV")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_dump_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except InfeasibleOrderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (MalformedInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
