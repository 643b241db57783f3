"""Command-line front end.

Exit codes are scriptable: 0 for true / compliant / claim holds, 1 for a
false formula or a violating run, 2 for usage and parse errors, 3 when a
machine check fails (partition anomaly, equivalence mismatch, or the
misclassified-run assertions not reproducing).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .formulas import ATOM_PATTERN, RESERVED_WORDS, atom_names
from .norms import NormFileError, NormSet, compile_norms, load_norms
from .semantics import evaluate_at
from .syntax import ParseError, parse_formula, parse_trace, print_formula
from .traces import LassoTrace
from .verify import (
    ComplianceClass,
    PartitionViolation,
    check_otimes_equivalence,
    check_partition,
    classify,
    mask_names,
    render_paradox_report,
    render_partition_report,
    reproduce_paradox,
)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CHECK_FAILED = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normtrace",
        description="Evaluate temporal formulas on lasso runs and classify "
        "runs against prohibition norms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a formula on a trace")
    p_eval.add_argument("-f", "--formula", required=True, help="formula text")
    _add_trace_arguments(p_eval)
    p_eval.add_argument("--pos", type=int, default=0, help="evaluation position (default 0)")

    p_classify = sub.add_parser("classify", help="classify a trace under a norm file")
    p_classify.add_argument("--norms", required=True, help="path to a norm file")
    _add_trace_arguments(p_classify)

    p_compile = sub.add_parser("compile", help="print the compiled classifier formulas")
    p_compile.add_argument("--norms", required=True, help="path to a norm file")

    p_verify = sub.add_parser(
        "verify-partition",
        help="check that the classifiers partition all bounded lassos",
    )
    p_verify.add_argument("--norms", required=True, help="path to a norm file")
    p_verify.add_argument(
        "--atoms",
        default=None,
        help="comma-separated alphabet (default: the norm file's atoms)",
    )
    p_verify.add_argument("--max-prefix", type=int, default=2)
    p_verify.add_argument("--max-loop", type=int, default=2)

    sub.add_parser("paradox", help="reproduce the misclassified run analysis")

    p_otimes = sub.add_parser(
        "check-otimes",
        help="randomized equivalence check of the compensation connective",
    )
    p_otimes.add_argument("--seed", type=int, default=42)
    p_otimes.add_argument("--cases", type=int, default=10000)
    p_otimes.add_argument("--max-depth", type=int, default=4)
    p_otimes.add_argument("--atoms", default="p,q,r")
    p_otimes.add_argument("--max-prefix", type=int, default=3)
    p_otimes.add_argument("--max-loop", type=int, default=3)

    return parser


def _add_trace_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("-t", "--trace", help="trace text")
    group.add_argument("--trace-file", help="file containing a trace")


def _read_trace(args: argparse.Namespace) -> LassoTrace:
    text = args.trace
    if text is None:
        text = Path(args.trace_file).read_text()
    return parse_trace(text)


def _read_norms(path: str) -> NormSet:
    return load_norms(Path(path).read_text())


def _parse_atoms(text: str) -> list[str] | None:
    """Comma-separated atom list; None (after a message) when invalid."""
    atoms = [a.strip() for a in text.split(",") if a.strip()]
    bad = [a for a in atoms if not ATOM_PATTERN.match(a) or a in RESERVED_WORDS]
    if bad or len(set(atoms)) != len(atoms):
        print(f"error: invalid atom list {text!r}", file=sys.stderr)
        return None
    return atoms


def _cmd_eval(args: argparse.Namespace) -> int:
    formula = parse_formula(args.formula)
    trace = _read_trace(args)
    if args.pos < 0:
        print("error: position must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    unused = sorted(atom_names(formula) - trace.atoms())
    if unused:
        print(
            "warning: atom(s) never occur in the trace: " + ", ".join(unused),
            file=sys.stderr,
        )
    verdict = evaluate_at(formula, trace, args.pos)
    print("true" if verdict else "false")
    return EXIT_TRUE if verdict else EXIT_FALSE


def _cmd_classify(args: argparse.Namespace) -> int:
    norm_set = _read_norms(args.norms)
    trace = _read_trace(args)
    try:
        cls = classify(compile_norms(norm_set), trace)
    except PartitionViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print(cls.value)
    return EXIT_FALSE if cls is ComplianceClass.VIOLATING else EXIT_TRUE


def _cmd_compile(args: argparse.Namespace) -> int:
    classifiers = compile_norms(_read_norms(args.norms))
    print(f"full: {print_formula(classifiers.full)}")
    print(f"weak: {print_formula(classifiers.weak)}")
    print(f"violating: {print_formula(classifiers.violating)}")
    return EXIT_TRUE


def _cmd_verify_partition(args: argparse.Namespace) -> int:
    norm_set = _read_norms(args.norms)
    if args.atoms:
        atoms = _parse_atoms(args.atoms)
        if atoms is None:
            return EXIT_USAGE
    else:
        atoms = list(norm_set.atoms)
    if not atoms or args.max_prefix < 0 or args.max_loop < 1:
        print("error: invalid enumeration bounds", file=sys.stderr)
        return EXIT_USAGE
    report = check_partition(
        compile_norms(norm_set), atoms, args.max_prefix, args.max_loop
    )
    print(render_partition_report(report))
    return EXIT_TRUE if report.holds else EXIT_CHECK_FAILED


def _cmd_paradox(args: argparse.Namespace) -> int:
    report = reproduce_paradox()
    print(render_paradox_report(report))
    return EXIT_TRUE if report.reproduced else EXIT_CHECK_FAILED


def _cmd_check_otimes(args: argparse.Namespace) -> int:
    atoms = _parse_atoms(args.atoms)
    if atoms is None:
        return EXIT_USAGE
    if not atoms or args.cases < 1 or args.max_prefix < 0 or args.max_loop < 1:
        print("error: invalid check configuration", file=sys.stderr)
        return EXIT_USAGE
    mismatches = check_otimes_equivalence(
        seed=args.seed,
        cases=args.cases,
        max_depth=args.max_depth,
        atoms=atoms,
        max_prefix=args.max_prefix,
        max_loop=args.max_loop,
    )
    print(f"seed: {args.seed}")
    print(f"cases: {args.cases}")
    print(f"mismatches: {len(mismatches)}")
    for found in mismatches[:10]:
        print(
            f"mismatch: left={print_formula(found.left)} right={print_formula(found.right)}"
        )
    return EXIT_TRUE if not mismatches else EXIT_CHECK_FAILED


_COMMANDS = {
    "eval": _cmd_eval,
    "classify": _cmd_classify,
    "compile": _cmd_compile,
    "verify-partition": _cmd_verify_partition,
    "paradox": _cmd_paradox,
    "check-otimes": _cmd_check_otimes,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NormFileError as exc:
        print(f"norm file error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
