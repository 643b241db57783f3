"""Acceptance suite: the headline claims checked end to end, one per test.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line
per criterion.
"""

import random
import time

from normtrace.formulas import (
    And,
    Atom,
    BINARY_NODES,
    FalseConst,
    Finally,
    Globally,
    Implies,
    Next,
    Not,
    OTimes,
    TrueConst,
    UNARY_NODES,
    Until,
    depth,
)
from normtrace.norms import (
    Deadline,
    Norm,
    NormSet,
    compile_norms,
    example_norms,
    paradox_run,
    reference_classifiers,
)
from normtrace.oracle import evaluate_by_unfolding
from normtrace.semantics import evaluate_at
from normtrace.syntax import parse_formula, parse_trace, print_formula, print_trace
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
    reproduce_paradox,
)

ORACLE_SEED = 12345
ROUND_TRIP_SEED = 20240817


def _report(criterion, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} {criterion}: {detail}")
    assert ok, f"{criterion}: {detail}"


def test_criterion_1_paradox_reproduction():
    started = time.perf_counter()
    report = reproduce_paradox()
    elapsed = time.perf_counter() - started
    ok = (
        report.norm_verdicts
        == (("N1", True), ("N2", True), ("N3", True), ("N4", True))
        and report.classification is ComplianceClass.VIOLATING
        and report.violating_witness is True
        and report.trace == LassoTrace([{"A", "D"}, {"B"}], [set()])
        and elapsed < 1.0
    )
    _report(
        "criterion 1 (paradox reproduction)",
        ok,
        f"N1..N4 true, classification {report.classification.value}, "
        f"F(!C & D) {report.violating_witness}, {elapsed:.3f}s",
    )


def test_criterion_2_partition_exhaustive():
    started = time.perf_counter()
    report = check_partition(
        compile_norms(example_norms()), ("A", "B", "C", "D"), 2, 2
    )
    elapsed = time.perf_counter() - started
    ok = report.total == 74256 and report.anomaly_count == 0 and elapsed < 30.0
    _report(
        "criterion 2 (partition, exhaustive)",
        ok,
        f"{report.total} traces, {report.anomaly_count} anomalies, {elapsed:.1f}s",
    )


def test_criterion_3_compiled_matches_reference():
    compiled = compile_norms(example_norms())
    reference = reference_classifiers()
    pairs = [
        (compiled.full, reference.full),
        (compiled.weak, reference.weak),
        (compiled.violating, reference.violating),
    ]
    disagreements = 0
    total = 0
    for trace in enumerate_lassos(("A", "B", "C", "D"), 2, 2):
        total += 1
        memo = {}
        for ours, theirs in pairs:
            if evaluate_at(ours, trace, 0, memo) != evaluate_at(theirs, trace, 0, memo):
                disagreements += 1
    ok = total == 74256 and disagreements == 0
    _report(
        "criterion 3 (compiled vs reference classifiers)",
        ok,
        f"{total} traces x 3 formulas, {disagreements} disagreements",
    )


def test_criterion_4_otimes_equivalence():
    started = time.perf_counter()
    operands = [Atom("A"), Not(Atom("A")), Atom("B"), Not(Atom("B"))]
    exhaustive = [
        found
        for left in operands
        for right in operands
        for trace in enumerate_lassos(("A", "B"), 1, 1)
        if (found := otimes_mismatch(left, right, trace)) is not None
    ]
    randomized = check_otimes_equivalence(
        seed=42, cases=10000, max_depth=4, atoms=("p", "q", "r"),
        max_prefix=3, max_loop=3,
    )
    elapsed = time.perf_counter() - started
    ok = not exhaustive and not randomized and elapsed < 30.0
    _report(
        "criterion 4 (compensation-connective equivalence)",
        ok,
        f"exhaustive {len(exhaustive)} mismatches, "
        f"randomized {len(randomized)} mismatches, {elapsed:.1f}s",
    )


def _formulas_up_to_depth(atoms, max_depth):
    level = [TrueConst(), FalseConst()] + [Atom(a) for a in atoms]
    for _ in range(max_depth):
        level = (
            [TrueConst(), FalseConst()]
            + [Atom(a) for a in atoms]
            + [op(f) for op in UNARY_NODES for f in level]
            + [op(f, g) for op in BINARY_NODES for f in level for g in level]
        )
    return level


def test_criterion_5_evaluator_vs_oracle():
    rng = random.Random(ORACLE_SEED)
    random_disagreements = 0
    for _ in range(10000):
        f = random_formula(rng, ("p", "q", "r"), 4, allow_otimes=True)
        t = random_trace(rng, ("p", "q", "r"), 3, 3)
        pos = rng.randint(0, 6)
        if evaluate_at(f, t, pos) != evaluate_by_unfolding(f, t, pos):
            random_disagreements += 1

    small_formulas = _formulas_up_to_depth(("A",), 2)
    assert len(small_formulas) == 18243
    assert max(depth(f) for f in small_formulas) == 2
    small_traces = list(enumerate_lassos(("A",), 1, 1))
    assert len(small_traces) == 6
    exhaustive_disagreements = 0
    for t in small_traces:
        memo = {}
        for f in small_formulas:
            if evaluate_at(f, t, 0, memo) != evaluate_by_unfolding(f, t, 0):
                exhaustive_disagreements += 1
    ok = random_disagreements == 0 and exhaustive_disagreements == 0
    _report(
        "criterion 5 (evaluator vs oracle)",
        ok,
        f"10000 random cases: {random_disagreements} disagreements; "
        f"{len(small_formulas)} depth<=2 formulas x 6 lassos: "
        f"{exhaustive_disagreements} disagreements",
    )


def test_criterion_6_classification_examples():
    classifiers = compile_norms(example_norms())
    got = (
        classify(classifiers, parse_trace("|{C}")),
        classify(classifiers, parse_trace("{A}|{B}")),
        classify(classifiers, paradox_run()),
    )
    expected = (
        ComplianceClass.FULLY_COMPLIANT,
        ComplianceClass.WEAKLY_COMPLIANT,
        ComplianceClass.VIOLATING,
    )
    _report(
        "criterion 6 (classification examples)",
        got == expected,
        ", ".join(cls.value for cls in got),
    )


def test_criterion_7_round_trips():
    rng = random.Random(ROUND_TRIP_SEED)
    formula_failures = 0
    for _ in range(1000):
        f = random_formula(rng, ("a", "b", "Read", "x"), 4, allow_otimes=True)
        if parse_formula(print_formula(f)) != f:
            formula_failures += 1
    trace_failures = 0
    for _ in range(1000):
        t = random_trace(rng, ("a", "b", "c", "d"), 4, 4)
        if parse_trace(print_trace(t)) != t:
            trace_failures += 1
    ok = formula_failures == 0 and trace_failures == 0
    _report(
        "criterion 7 (print/parse round-trips)",
        ok,
        f"1000 formulas: {formula_failures} failures, "
        f"1000 traces: {trace_failures} failures",
    )


def _with_deadline(norm_set, deadline):
    return NormSet(
        atoms=norm_set.atoms,
        norms=tuple(
            Norm(
                id=n.id,
                forbidden=n.forbidden,
                unless=n.unless,
                compensation=n.compensation,
                deadline=deadline if n.compensation is not None else n.deadline,
            )
            for n in norm_set.norms
        ),
    )


def _replace(formula, old, new):
    if formula == old:
        return new
    if isinstance(formula, UNARY_NODES):
        return type(formula)(_replace(formula.operand, old, new))
    if isinstance(formula, BINARY_NODES):
        return type(formula)(
            _replace(formula.left, old, new), _replace(formula.right, old, new)
        )
    return formula


def test_criterion_8_deadline_variants():
    # next-state deadline: F B becomes X B in the compiled output and
    # nothing else changes
    eventually = compile_norms(example_norms())
    next_state = compile_norms(_with_deadline(example_norms(), Deadline.NEXT))
    fb, xb = Finally(Atom("B")), Next(Atom("B"))
    structural_ok = (
        next_state.full == eventually.full
        and next_state.weak == _replace(eventually.weak, fb, xb)
        and next_state.violating == _replace(eventually.violating, fb, xb)
        and "(X B)" in print_formula(next_state.weak)
        and "(F B)" not in print_formula(next_state.weak)
    )

    # run-property compensation under an immediate deadline: the violation is
    # excused when the data is never read until it is destroyed
    norm_set = NormSet(
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
    classifiers = compile_norms(norm_set)
    destroyed_first = LassoTrace([{"A"}, set()], [{"Destroyed"}])
    read_first = LassoTrace([{"A"}, {"Read"}], [{"Destroyed"}])

    # derive the expected classes with the independent oracle
    def oracle_class(trace):
        truths = [
            evaluate_by_unfolding(f, trace, 0)
            for f in (classifiers.full, classifiers.weak, classifiers.violating)
        ]
        assert truths.count(True) == 1
        return (
            ComplianceClass.FULLY_COMPLIANT,
            ComplianceClass.WEAKLY_COMPLIANT,
            ComplianceClass.VIOLATING,
        )[truths.index(True)]

    expected_good = oracle_class(destroyed_first)
    expected_bad = oracle_class(read_first)
    immediate_ok = (
        expected_good is ComplianceClass.WEAKLY_COMPLIANT
        and classify(classifiers, destroyed_first) is expected_good
        and expected_bad is ComplianceClass.VIOLATING
        and classify(classifiers, read_first) is expected_bad
    )

    ok = structural_ok and immediate_ok
    _report(
        "criterion 8 (deadline variants)",
        ok,
        f"next-deadline structural check {'ok' if structural_ok else 'failed'}; "
        f"immediate run-property compensation: destroyed-first "
        f"{classify(classifiers, destroyed_first).value}, read-first "
        f"{classify(classifiers, read_first).value}",
    )
