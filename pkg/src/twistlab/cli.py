"""Command-line front end.

Exit codes: 0 success or pass, 1 a failed comparison or fixture, 2 usage
error (including expression syntax errors), 3 word-growth overflow.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections.abc import Sequence

from twistlab.errors import ParseError, WordGrowthOverflow
from twistlab.expressions import evaluate_source
from twistlab.homology import IntMatrix, abelianize, double_cover_h1
from twistlab.relations import load_catalog, run_suite
from twistlab.surface import SurfaceModel, build_model, model_to_dict, validate_table
from twistlab.words import first_difference, format_letters, max_word_length, word_length_limit

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_OVERFLOW = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_surface(text: str) -> SurfaceModel:
    m = re.fullmatch(r"\s*N\s*(\d+)\s*,\s*1\s*", text)
    if m is None or int(m.group(1)) < 1:
        raise UsageError(f"--surface expects Nk,1 with k >= 1, got {text!r}")
    return build_model(int(m.group(1)))


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_eval(args: argparse.Namespace) -> int:
    m = parse_surface(args.surface)
    f = evaluate_source(args.expr, m).evaluate()
    images = [format_letters(w) for w in f.raw_images]
    text = "\n".join(f"x{i} -> {w}" for i, w in enumerate(images, start=1))
    _emit(args, {"surface": str(m), "images": images}, text)
    return EXIT_OK


def cmd_equal(args: argparse.Namespace) -> int:
    m = parse_surface(args.surface)
    f = evaluate_source(args.lhs, m).evaluate()
    g = evaluate_source(args.rhs, m).evaluate()
    diff = first_difference(f, g)
    payload: dict = {"surface": str(m), "equal": diff is None, "first_difference": None}
    if diff is None:
        text = "equal"
    else:
        i, a, b = diff
        payload["first_difference"] = {
            "generator": i,
            "lhs": format_letters(a.letters),
            "rhs": format_letters(b.letters),
        }
        text = f"not equal\nfirst difference at x{i}:\n  lhs: {a}\n  rhs: {b}"
    _emit(args, payload, text)
    return EXIT_OK if diff is None else EXIT_FAIL


def cmd_homology(args: argparse.Namespace) -> int:
    m = parse_surface(args.surface)
    if args.mod is not None and args.mod < 2:
        raise UsageError("--mod must be at least 2")
    cls = evaluate_source(args.expr, m)
    mat: IntMatrix = abelianize(cls.evaluate()) if args.surface_level else double_cover_h1(cls)
    if args.mod is not None:
        mat = mat.mod(args.mod)
    payload = {
        "surface": str(m),
        "level": "surface" if args.surface_level else "double_cover",
        "modulus": args.mod,
        "matrix": mat.to_json(),
    }
    _emit(args, payload, str(mat))
    return EXIT_OK


def cmd_suite(args: argparse.Namespace) -> int:
    catalog = load_catalog(args.catalog)
    if args.surface is not None:
        k = parse_surface(args.surface).crosscaps
        catalog = [f for f in catalog if f.k == k]
    report = run_suite(args.filter, catalog, workers=args.workers)
    _emit(args, report.to_json(), report.to_text())
    if report.overflowed:
        return EXIT_OVERFLOW
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_validate(args: argparse.Namespace) -> int:
    m = parse_surface(args.surface)
    report = validate_table(m)
    payload = {
        "surface": str(m),
        "ok": report.ok,
        "checks": report.checks,
        "failures": report.failures,
        "model": model_to_dict(m),
    }
    text = f"{m}: {report.checks} checks, " + ("all pass" if report.ok else f"FAIL: {report.first_failure}")
    _emit(args, payload, text)
    return EXIT_OK if report.ok else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--max-word-length", type=int, default=None, metavar="N",
                        help="abort when a word exceeds N letters (default 1000000)")
    surface = argparse.ArgumentParser(add_help=False)
    surface.add_argument("--surface", required=True, metavar="Nk,1", help="model surface, e.g. N3,1")

    parser = _Parser(prog="twistlab", description="Exact mapping class computations on N_{k,1}.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common, surface], help="print generator images")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("equal", parents=[common, surface], help="compare two classes")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("homology", parents=[common, surface], help="double-cover homology matrix")
    p.add_argument("expr")
    p.add_argument("--mod", type=int, default=None, metavar="M", help="reduce entries mod M")
    p.add_argument("--surface-level", action="store_true",
                   help="print the k x k abelianization instead of the double-cover matrix")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("suite", parents=[common], help="run the relation catalog")
    p.add_argument("--surface", default=None, metavar="Nk,1", help="only fixtures on this model")
    p.add_argument("--filter", default=None, metavar="PREFIX", help="only fixture ids with this prefix")
    p.add_argument("--catalog", default=None, metavar="PATH", help="alternative fixture catalog")
    p.add_argument("--workers", type=int, default=1, help="run fixtures concurrently")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("validate", parents=[common, surface], help="certify the elementary table")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        limit = args.max_word_length
        if limit is None:
            limit = max_word_length()
        elif limit < 1:
            raise UsageError("--max-word-length must be positive")
        with word_length_limit(limit):
            return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"twistlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WordGrowthOverflow as exc:
        print(f"twistlab: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW


if __name__ == "__main__":
    sys.exit(main())
