"""Run classification and machine checks of the classifier properties.

The three compiled formulas are claimed to partition all runs.  This module
checks that claim honestly at desk scale: it enumerates every lasso within
given bounds, classifies each one, and reports any run satisfying zero or
more than one classifier.  It also cross-checks the definitional semantics
of the compensation connective against its plain-LTL equivalent, and
reproduces the misclassified run that motivates the classifier formulas.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .formulas import (
    And,
    Atom,
    FalseConst,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    OTimes,
    TrueConst,
    Until,
    expand_otimes,
)
from .norms import ClassifierFormulas, compile_norms, example_norms, otimes_norm_formulas, paradox_run
from .semantics import evaluate_at
from .syntax import print_trace
from .traces import LassoTrace

FULL_BIT, WEAK_BIT, VIOLATING_BIT = 1, 2, 4
MAX_RECORDED_ANOMALIES = 100


class ComplianceClass(enum.Enum):
    FULLY_COMPLIANT = "FULLY_COMPLIANT"
    WEAKLY_COMPLIANT = "WEAKLY_COMPLIANT"
    VIOLATING = "VIOLATING"


class PartitionViolation(Exception):
    """A trace satisfied zero or several of the three classifiers."""

    def __init__(self, trace: LassoTrace, mask: int):
        super().__init__(
            f"classifiers are not a partition on {print_trace(trace)}: {mask_names(mask)}"
        )
        self.trace = trace
        self.mask = mask


def mask_names(mask: int) -> str:
    names = []
    if mask & FULL_BIT:
        names.append("full")
    if mask & WEAK_BIT:
        names.append("weak")
    if mask & VIOLATING_BIT:
        names.append("violating")
    return "+".join(names) if names else "none"


def classifier_mask(classifiers: ClassifierFormulas, trace: LassoTrace) -> int:
    """Bitmask of the classifiers true at the start of the trace."""
    memo: dict[int, list[bool]] = {}
    mask = 0
    if evaluate_at(classifiers.full, trace, 0, memo):
        mask |= FULL_BIT
    if evaluate_at(classifiers.weak, trace, 0, memo):
        mask |= WEAK_BIT
    if evaluate_at(classifiers.violating, trace, 0, memo):
        mask |= VIOLATING_BIT
    return mask


_CLASS_BY_MASK = {
    FULL_BIT: ComplianceClass.FULLY_COMPLIANT,
    WEAK_BIT: ComplianceClass.WEAKLY_COMPLIANT,
    VIOLATING_BIT: ComplianceClass.VIOLATING,
}


def classify(classifiers: ClassifierFormulas, trace: LassoTrace) -> ComplianceClass:
    """The unique class of the trace; raises PartitionViolation otherwise.

    A violation is impossible for classifiers produced by compile_norms
    unless the partition claim itself fails."""
    mask = classifier_mask(classifiers, trace)
    cls = _CLASS_BY_MASK.get(mask)
    if cls is None:
        raise PartitionViolation(trace, mask)
    return cls


# --- bounded-exhaustive enumeration ------------------------------------------


@dataclass(frozen=True)
class Bounds:
    atoms: tuple[str, ...]
    max_prefix: int
    max_loop: int


def lasso_count(num_atoms: int, max_prefix: int, max_loop: int) -> int:
    prefixes = sum(2 ** (num_atoms * p) for p in range(max_prefix + 1))
    loops = sum(2 ** (num_atoms * l) for l in range(1, max_loop + 1))
    return prefixes * loops


def enumerate_lassos(
    atoms: Sequence[str], max_prefix: int, max_loop: int
) -> Iterator[LassoTrace]:
    """Every lasso over ``atoms`` with prefix up to ``max_prefix`` and loop of
    1 to ``max_loop`` states, in a fixed order: by prefix length, then loop
    length, then state subsets with the first position most significant and
    the first atom the most significant bit.  Distinct representations of the
    same infinite word are enumerated separately."""
    if not atoms:
        raise ValueError("need at least one atom")
    if max_loop < 1:
        raise ValueError("loop bound must be at least 1")
    k = len(atoms)
    subsets = [
        frozenset(a for bit, a in enumerate(atoms) if value >> (k - 1 - bit) & 1)
        for value in range(2**k)
    ]
    for prefix_len in range(max_prefix + 1):
        for loop_len in range(1, max_loop + 1):
            for states in product(subsets, repeat=prefix_len + loop_len):
                yield LassoTrace(states[:prefix_len], states[prefix_len:])


@dataclass(frozen=True)
class PartitionReport:
    total: int
    per_class: dict[ComplianceClass, int]
    anomalies: tuple[tuple[LassoTrace, int], ...]
    anomaly_count: int
    bounds: Bounds
    deterministic: bool = True

    @property
    def holds(self) -> bool:
        return self.anomaly_count == 0


def partition_report(
    classifiers: ClassifierFormulas, traces: Iterable[LassoTrace], bounds: Bounds
) -> PartitionReport:
    total = 0
    per_class = {cls: 0 for cls in ComplianceClass}
    anomalies: list[tuple[LassoTrace, int]] = []
    anomaly_count = 0
    for trace in traces:
        total += 1
        mask = classifier_mask(classifiers, trace)
        cls = _CLASS_BY_MASK.get(mask)
        if cls is not None:
            per_class[cls] += 1
        else:
            anomaly_count += 1
            if len(anomalies) < MAX_RECORDED_ANOMALIES:
                anomalies.append((trace, mask))
    return PartitionReport(
        total=total,
        per_class=per_class,
        anomalies=tuple(anomalies),
        anomaly_count=anomaly_count,
        bounds=bounds,
    )


def check_partition(
    classifiers: ClassifierFormulas,
    atoms: Sequence[str],
    max_prefix: int,
    max_loop: int,
) -> PartitionReport:
    """Classify every bounded lasso and report how the classes split.

    The counts do not depend on enumeration order; anomalies are data, not
    errors, capped at MAX_RECORDED_ANOMALIES recorded witnesses."""
    bounds = Bounds(tuple(atoms), max_prefix, max_loop)
    return partition_report(
        classifiers, enumerate_lassos(atoms, max_prefix, max_loop), bounds
    )


def render_partition_report(report: PartitionReport) -> str:
    lines = [
        f"total: {report.total}",
        f"fully_compliant: {report.per_class[ComplianceClass.FULLY_COMPLIANT]}",
        f"weakly_compliant: {report.per_class[ComplianceClass.WEAKLY_COMPLIANT]}",
        f"violating: {report.per_class[ComplianceClass.VIOLATING]}",
        f"anomalies: {report.anomaly_count}",
    ]
    for trace, mask in report.anomalies:
        lines.append(f"anomaly: {print_trace(trace)} satisfies {mask_names(mask)}")
    if report.anomaly_count > len(report.anomalies):
        lines.append(
            f"anomalies_not_shown: {report.anomaly_count - len(report.anomalies)}"
        )
    bounds = report.bounds
    lines.append(
        "bounds: atoms="
        + ",".join(bounds.atoms)
        + f" max_prefix={bounds.max_prefix} max_loop={bounds.max_loop}"
    )
    lines.append(f"deterministic: {'true' if report.deterministic else 'false'}")
    return "\n".join(lines)


# --- compensation-connective equivalence -------------------------------------


def random_formula(
    rng: random.Random,
    atoms: Sequence[str],
    max_depth: int,
    allow_otimes: bool = False,
) -> Formula:
    """Uniform-ish random formula of bounded depth, for randomized checks."""
    if max_depth == 0 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.1:
            return TrueConst()
        if roll < 0.2:
            return FalseConst()
        return Atom(rng.choice(list(atoms)))
    ops = ["not", "and", "or", "implies", "next", "finally", "globally", "until"]
    if allow_otimes:
        ops.append("otimes")
    op = rng.choice(ops)
    if op == "not":
        return Not(random_formula(rng, atoms, max_depth - 1, allow_otimes))
    if op == "next":
        return Next(random_formula(rng, atoms, max_depth - 1, allow_otimes))
    if op == "finally":
        return Finally(random_formula(rng, atoms, max_depth - 1, allow_otimes))
    if op == "globally":
        return Globally(random_formula(rng, atoms, max_depth - 1, allow_otimes))
    left = random_formula(rng, atoms, max_depth - 1, allow_otimes)
    right = random_formula(rng, atoms, max_depth - 1, allow_otimes)
    if op == "and":
        return And(left, right)
    if op == "or":
        return Or(left, right)
    if op == "implies":
        return Implies(left, right)
    if op == "until":
        return Until(left, right)
    return OTimes(left, right)


def random_trace(
    rng: random.Random, atoms: Sequence[str], max_prefix: int, max_loop: int
) -> LassoTrace:
    def state() -> frozenset[str]:
        return frozenset(a for a in atoms if rng.random() < 0.5)

    prefix = [state() for _ in range(rng.randint(0, max_prefix))]
    loop = [state() for _ in range(rng.randint(1, max_loop))]
    return LassoTrace(prefix, loop)


@dataclass(frozen=True)
class OTimesMismatch:
    left: Formula
    right: Formula
    trace: LassoTrace
    definitional: bool
    expanded: bool


def otimes_mismatch(
    left: Formula, right: Formula, trace: LassoTrace
) -> OTimesMismatch | None:
    """Compare the definitional compensation connective against its
    Globally/Finally expansion at the start of the trace."""
    combined = OTimes(left, right)
    definitional = evaluate_at(combined, trace, 0)
    expanded = evaluate_at(expand_otimes(combined), trace, 0)
    if definitional == expanded:
        return None
    return OTimesMismatch(left, right, trace, definitional, expanded)


def check_otimes_equivalence(
    seed: int,
    cases: int,
    max_depth: int = 4,
    atoms: Sequence[str] = ("p", "q", "r"),
    max_prefix: int = 3,
    max_loop: int = 3,
) -> list[OTimesMismatch]:
    """Randomized equivalence check, reproducible from the seed.  Returns all
    mismatches found; an empty list is the expected outcome."""
    if cases < 1:
        raise ValueError("need at least one case")
    rng = random.Random(seed)
    mismatches = []
    for _ in range(cases):
        left = random_formula(rng, atoms, max_depth, allow_otimes=False)
        right = random_formula(rng, atoms, max_depth, allow_otimes=False)
        trace = random_trace(rng, atoms, max_prefix, max_loop)
        found = otimes_mismatch(left, right, trace)
        if found is not None:
            mismatches.append(found)
    return mismatches


# --- the misclassified run ----------------------------------------------------


@dataclass(frozen=True)
class ParadoxReport:
    trace: LassoTrace
    norm_verdicts: tuple[tuple[str, bool], ...]
    classification: ComplianceClass
    violating_witness: bool

    @property
    def reproduced(self) -> bool:
        """True when the run satisfies every N formula yet is a violating run
        witnessed by an unauthorised D state."""
        return (
            all(verdict for _, verdict in self.norm_verdicts)
            and self.classification is ComplianceClass.VIOLATING
            and self.violating_witness
        )


def reproduce_paradox() -> ParadoxReport:
    """Evaluate N1..N4 on the two-state run, classify it under the compiled
    example classifiers, and check that an unauthorised D state occurs."""
    trace = paradox_run()
    verdicts = tuple(
        (name, evaluate_at(formula, trace, 0))
        for name, formula in otimes_norm_formulas()
    )
    classification = classify(compile_norms(example_norms()), trace)
    witness = evaluate_at(
        Finally(And(Not(Atom("C")), Atom("D"))), trace, 0
    )
    return ParadoxReport(
        trace=trace,
        norm_verdicts=verdicts,
        classification=classification,
        violating_witness=witness,
    )


def render_paradox_report(report: ParadoxReport) -> str:
    lines = [f"trace: {print_trace(report.trace)}"]
    for name, verdict in report.norm_verdicts:
        lines.append(f"{name}: {'true' if verdict else 'false'}")
    lines.append(f"classification: {report.classification.value}")
    lines.append(f"F(!C & D): {'true' if report.violating_witness else 'false'}")
    return "\n".join(lines)
