#!/usr/bin/env python3
"""Reproduce every headline claim of the engine in one run.

Checks, in order: the misclassified run (N1..N4 all true yet the run is
violating), the partition property over all bounded lassos, agreement of the
compiled classifiers with the hand-written reference formulas, the
equivalence of the compensation connective with its plain-LTL expansion,
agreement of the two independent evaluators, and the deadline variants.

Usage: python scripts/reproduce_claims.py [--fast]
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass

from normtrace.formulas import Atom, Finally, Next, Not
from normtrace.norms import (
    Deadline,
    Norm,
    NormSet,
    compile_norms,
    example_norms,
    reference_classifiers,
)
from normtrace.oracle import evaluate_by_unfolding
from normtrace.semantics import evaluate_at
from normtrace.syntax import parse_formula, print_formula, print_trace
from normtrace.traces import LassoTrace
from normtrace.verify import (
    ComplianceClass,
    check_otimes_equivalence,
    check_partition,
    classify,
    enumerate_lassos,
    otimes_mismatch,
    random_formula,
    random_trace,
    render_paradox_report,
    reproduce_paradox,
)


@dataclass(frozen=True)
class RunConfig:
    atoms: tuple[str, ...] = ("A", "B", "C", "D")
    max_prefix: int = 2
    max_loop: int = 2
    otimes_seed: int = 42
    otimes_cases: int = 10000
    oracle_seed: int = 12345
    oracle_cases: int = 10000

    @staticmethod
    def fast() -> "RunConfig":
        return RunConfig(max_prefix=1, max_loop=1, otimes_cases=1000, oracle_cases=1000)


def banner(title: str) -> None:
    print()
    print(f"== {title} ==")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fast", action="store_true", help="smaller bounds and case counts")
    args = parser.parse_args()
    config = RunConfig.fast() if args.fast else RunConfig()
    failures = 0

    banner("misclassified run")
    paradox = reproduce_paradox()
    print(render_paradox_report(paradox))
    print(f"reproduced: {paradox.reproduced}")
    failures += 0 if paradox.reproduced else 1

    banner("partition over all bounded lassos")
    classifiers = compile_norms(example_norms())
    started = time.perf_counter()
    report = check_partition(classifiers, config.atoms, config.max_prefix, config.max_loop)
    elapsed = time.perf_counter() - started
    print(f"enumerated {report.total} lassos in {elapsed:.1f}s")
    print(f"fully compliant:  {report.per_class[ComplianceClass.FULLY_COMPLIANT]}")
    print(f"weakly compliant: {report.per_class[ComplianceClass.WEAKLY_COMPLIANT]}")
    print(f"violating:        {report.per_class[ComplianceClass.VIOLATING]}")
    print(f"anomalies: {report.anomaly_count}")
    failures += 0 if report.holds else 1

    banner("compiled classifiers vs reference formulas")
    reference = reference_classifiers()
    disagreements = 0
    for trace in enumerate_lassos(config.atoms, config.max_prefix, config.max_loop):
        memo = {}
        for ours, theirs in (
            (classifiers.full, reference.full),
            (classifiers.weak, reference.weak),
            (classifiers.violating, reference.violating),
        ):
            if evaluate_at(ours, trace, 0, memo) != evaluate_at(theirs, trace, 0, memo):
                disagreements += 1
    print(f"disagreements: {disagreements}")
    failures += 0 if disagreements == 0 else 1

    banner("compensation connective vs its LTL expansion")
    operands = [Atom("A"), Not(Atom("A")), Atom("B"), Not(Atom("B"))]
    exhaustive = sum(
        1
        for left in operands
        for right in operands
        for trace in enumerate_lassos(("A", "B"), 1, 1)
        if otimes_mismatch(left, right, trace) is not None
    )
    randomized = check_otimes_equivalence(seed=config.otimes_seed, cases=config.otimes_cases)
    print(f"exhaustive small-space mismatches: {exhaustive}")
    print(f"randomized mismatches ({config.otimes_cases} cases, seed {config.otimes_seed}): {len(randomized)}")
    failures += 0 if exhaustive == 0 and not randomized else 1

    banner("table evaluator vs unfolding oracle")
    rng = random.Random(config.oracle_seed)
    oracle_disagreements = 0
    for _ in range(config.oracle_cases):
        f = random_formula(rng, ("p", "q", "r"), 4, allow_otimes=True)
        t = random_trace(rng, ("p", "q", "r"), 3, 3)
        pos = rng.randint(0, 6)
        if evaluate_at(f, t, pos) != evaluate_by_unfolding(f, t, pos):
            oracle_disagreements += 1
    print(f"disagreements ({config.oracle_cases} cases, seed {config.oracle_seed}): {oracle_disagreements}")
    failures += 0 if oracle_disagreements == 0 else 1

    banner("deadline variants")
    next_set = NormSet(
        atoms=example_norms().atoms,
        norms=tuple(
            Norm(n.id, n.forbidden, n.unless, n.compensation, Deadline.NEXT)
            if n.compensation is not None
            else n
            for n in example_norms().norms
        ),
    )
    next_weak = compile_norms(next_set).weak
    print(f"next-deadline weak classifier: {print_formula(next_weak)}")
    swapped = "(X B)" in print_formula(next_weak) and "(F B)" not in print_formula(next_weak)
    print(f"compensation wrapped in X instead of F: {swapped}")
    failures += 0 if swapped else 1

    run_property = NormSet(
        atoms=("A", "C", "Read", "Destroyed"),
        norms=(
            Norm(
                id="n1",
                forbidden=Atom("A"),
                unless=Atom("C"),
                compensation=parse_formula("!Read U Destroyed"),
                deadline=Deadline.IMMEDIATE,
            ),
        ),
    )
    rp_classifiers = compile_norms(run_property)
    for trace in (
        LassoTrace([{"A"}, set()], [{"Destroyed"}]),
        LassoTrace([{"A"}, {"Read"}], [{"Destroyed"}]),
    ):
        cls = classify(rp_classifiers, trace)
        print(f"{print_trace(trace)} -> {cls.value}")

    print()
    print("all claims reproduced" if failures == 0 else f"{failures} claim(s) FAILED")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
