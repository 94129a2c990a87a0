# -*- coding: utf-8 -*-
"""
cantor: command-line calculator for ordinals and compact countable spaces

Exit codes: 0 success, 1 negative answer or failed check, 2 parse or schema
error, 3 witness file could not be written.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from core import space_algebra
from core.correspondence import BlockCorrespondence, generate_witness
from core.errors import CantorError
from core.space_expr import canonicalize, count_points_of_rank, enumerate_points_of_rank
from parsers.expr_parser import ParseError, parse_ordinal, parse_ordinal_expression, parse_space
from renderers.expr_renderer import format_canonical, format_ordinal, format_point, format_underlying
from services.law_service import LawReport, law_names, run_laws
from services.witness_service import CheckReport, WitnessError, check_witness, load_witness, save_witness
from settings import law_settings, log_level

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO = 1
EXIT_PARSE = 2
EXIT_WRITE = 3


class Output:
    """Collects one invocation's output; json mode prints a single document"""

    def __init__(self, mode: str):
        self.mode = mode
        self.lines: List[str] = []
        self.document: Dict[str, Any] = {}
        self.errors: List[str] = []

    def line(self, text: str = ""):
        self.lines.append(text)

    def field(self, key: str, value: Any, text: Optional[str] = None):
        self.document[key] = value
        self.lines.append(f"{key}: {value if text is None else text}")

    def fail(self, error: CantorError, text: str):
        self.document = {"error": error.to_dict()}
        self.lines = []
        self.errors = [text]

    def emit(self):
        if self.mode == "json":
            print(json.dumps(self.document, indent=2, ensure_ascii=False))
            return
        if self.lines:
            print("\n".join(self.lines))
        if self.errors:
            print("\n".join(self.errors), file=sys.stderr)


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


# Subcommands
def cmd_ord(args, out: Output) -> int:
    value = parse_ordinal_expression(args.expr)
    out.document = {
        "ordinal": format_ordinal(value),
        "cnf": [[format_ordinal(exponent), coefficient] for exponent, coefficient in value.terms],
    }
    out.line(format_ordinal(value))
    return EXIT_OK


def _describe_space(s) -> Dict[str, Any]:
    return {
        "canonical": format_canonical(s),
        "cb_rank": format_ordinal(space_algebra.cb_rank(s)),
        "cb_star": None if s.is_empty else format_ordinal(s.cb_star),
        "degree": s.degree,
        "underlying": "0" if s.is_empty else format_underlying(s),
    }


def cmd_eval(args, out: Output) -> int:
    s = canonicalize(parse_space(args.expr))
    for key, value in _describe_space(s).items():
        out.field(key, value, "none" if value is None else None)
    return EXIT_OK


def cmd_equiv(args, out: Output) -> int:
    x = canonicalize(parse_space(args.a))
    y = canonicalize(parse_space(args.b))
    equivalent = space_algebra.equivalent(x, y)
    out.field("equivalent", equivalent, _yes_no(equivalent))
    out.document["source"] = format_canonical(x)
    out.document["target"] = format_canonical(y)
    if not equivalent:
        differences = []
        for rank, left, right in space_algebra.profile_difference(x, y):
            differences.append({"rank": format_ordinal(rank), "source": str(left), "target": str(right)})
            out.line(f"differing stratum at rank {format_ordinal(rank)}: {left} vs {right}")
        out.document["differences"] = differences
        return EXIT_NO

    out.line(f"{format_canonical(x)} ~ {format_canonical(y)}")
    if args.witness_out:
        witness = generate_witness(x, y)
        if isinstance(witness, BlockCorrespondence) and not witness.blocks:
            logger.warning("The empty space needs no witness; nothing written")
            out.document["witness"] = None
            return EXIT_OK
        try:
            save_witness(witness, args.witness_out)
        except WitnessError as e:
            out.document["error"] = e.to_dict()
            out.errors.append(f"error: {e.error_msg}")
            return EXIT_WRITE
        out.document["witness"] = str(args.witness_out)
        out.line(f"witness written to {args.witness_out}")
    return EXIT_OK


def _print_check(report: CheckReport, out: Output):
    out.line(f"source: {report.source}")
    out.line(f"target: {report.target}")
    out.line(f"valid: {_yes_no(report.validity.valid)}")
    for failure in report.validity.failures:
        out.line(f"  {failure.message}")
    if not report.validity.valid:
        return
    out.line(f"multiplicity: {report.validity.multiplicity}")
    out.line(f"rank preserving: {_yes_no(bool(report.rank_preserving))}")
    lemma = report.lemma1
    relation = "=" if lemma.ranks_equal else "!="
    out.line(f"ranks: {lemma.source_cb_rank} {relation} {lemma.target_cb_rank}")
    out.line(f"bounds: {lemma.inequality} ({'hold' if lemma.bounds_hold else 'violated'})")


def cmd_check(args, out: Output) -> int:
    report = check_witness(load_witness(args.witness))
    out.document = report.model_dump(mode="json")
    _print_check(report, out)
    return EXIT_OK if report.passed else EXIT_NO


def cmd_points(args, out: Output) -> int:
    e = parse_space(args.expr)
    beta = parse_ordinal(args.rank)
    size = count_points_of_rank(e, beta)
    out.document = {"space": format_canonical(canonicalize(e)), "rank": format_ordinal(beta)}
    if size.is_zero:
        out.document["error"] = "empty stratum"
        out.errors.append(f"error: empty stratum, no points of rank {format_ordinal(beta)}")
        return EXIT_NO
    shown = args.count if size.count is None else min(args.count, size.count)
    points = []
    for i in range(shown):
        text = format_point(enumerate_points_of_rank(e, beta, i))
        points.append({"index": i, "point": text})
        out.line(f"{i}\t{text}")
    out.document["size"] = None if size.count is None else size.count
    out.document["points"] = points
    exhausted = size.count is not None and args.count > size.count
    out.document["exhausted"] = exhausted
    if exhausted:
        out.line(f"stratum is finite and exhausted after {size.count} points")
    return EXIT_OK


def _print_laws(report: LawReport, out: Output):
    out.line(f"seed: {report.seed}")
    out.line(f"trials: {report.trials}")
    for result in report.results:
        status = "PASS" if result.failed == 0 else "FAIL"
        out.line(f"{status} {result.name}: {result.passed}/{result.trials}")
        if result.failed:
            out.line(f"  first failure (trial {result.failing_trial}): {result.counterexample}")
    out.line(f"result: {'ok' if report.ok else 'violations'}")


def cmd_laws(args, out: Output) -> int:
    try:
        settings = law_settings(
            trials=args.trials,
            seed=args.seed,
            max_depth=args.max_depth,
            max_coeff=args.max_coeff,
            max_expr_depth=args.max_expr_depth,
        )
    except (ValidationError, ValueError) as e:
        out.document["error"] = {"errcode": "settings", "errmsg": str(e)}
        out.errors.append(f"error: invalid law settings: {e}")
        return EXIT_PARSE
    unknown = sorted(set(args.law or ()) - set(law_names()))
    if unknown:
        out.document["error"] = {"errcode": "settings", "errmsg": f"unknown laws: {unknown}"}
        out.errors.append(f"error: unknown laws {', '.join(unknown)}")
        return EXIT_PARSE
    report = run_laws(settings, args.law)
    out.document = report.model_dump(mode="json")
    _print_laws(report, out)
    return EXIT_OK if report.ok else EXIT_NO


# Argument parsing
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="Output mode")

    parser = argparse.ArgumentParser(
        prog="cantor",
        description="Ordinal arithmetic and the semiring of compact countable spaces",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    ord_parser = commands.add_parser("ord", parents=[common], help="Normalize an ordinal expression")
    ord_parser.add_argument("expr", help="Ordinal expression; '(+)' is the natural sum")
    ord_parser.set_defaults(handler=cmd_ord)

    eval_parser = commands.add_parser("eval", parents=[common], help="Canonical form of a space expression")
    eval_parser.add_argument("expr")
    eval_parser.set_defaults(handler=cmd_eval)

    equiv_parser = commands.add_parser("equiv", parents=[common], help="Decide equivalence of two spaces")
    equiv_parser.add_argument("a")
    equiv_parser.add_argument("b")
    equiv_parser.add_argument("--witness-out", help="Write a witness correspondence to this path")
    equiv_parser.set_defaults(handler=cmd_equiv)

    check_parser = commands.add_parser("check", parents=[common], help="Validate a witness file")
    check_parser.add_argument("witness")
    check_parser.set_defaults(handler=cmd_check)

    points_parser = commands.add_parser("points", parents=[common], help="List points of one rank")
    points_parser.add_argument("expr")
    points_parser.add_argument("--rank", default="0", help="Ordinal rank (default 0)")
    points_parser.add_argument("--count", type=int, default=10, help="How many points to list")
    points_parser.set_defaults(handler=cmd_points)

    laws_parser = commands.add_parser("laws", parents=[common], help="Run the seeded law suite")
    laws_parser.add_argument("--trials", type=int, default=None)
    laws_parser.add_argument("--seed", type=int, default=None, help="Overridden by CANTOR_SEED")
    laws_parser.add_argument("--max-depth", type=int, default=None)
    laws_parser.add_argument("--max-coeff", type=int, default=None)
    laws_parser.add_argument("--max-expr-depth", type=int, default=None)
    laws_parser.add_argument("--law", action="append", help="Run only this law (repeatable)")
    laws_parser.set_defaults(handler=cmd_laws)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=log_level(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    out = Output(args.format)
    try:
        code = args.handler(args, out)
    except ParseError as e:
        out.fail(e, e.render())
        code = EXIT_PARSE
    except WitnessError as e:
        out.fail(e, f"error: {e.error_msg}")
        code = EXIT_PARSE
    except CantorError as e:
        logger.error(f"{args.command} failed: {e.error_msg}")
        out.fail(e, f"error: {e.error_msg}")
        code = EXIT_NO
    out.emit()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
