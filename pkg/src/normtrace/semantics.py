"""Exact LTL evaluation over lasso traces.

Truth is computed bottom-up: for each subformula we build the vector of its
truth values at every canonical position of the trace.  Temporal operators
exploit the lasso structure directly:

* ``Next`` at the last canonical position wraps to the loop start.
* ``Finally`` / ``Globally`` are constant across loop positions (every loop
  position reaches every other), then propagate backwards through the prefix.
* ``Until`` needs a backward sweep over the loop unrolled twice: a witness
  reachable from a loop position always exists within one revolution.
* ``OTimes`` is evaluated definitionally, quantifying over the canonical
  positions reachable from the evaluation point.  It is never rewritten into
  its Globally/Finally equivalent here, which keeps the equivalence checks in
  :mod:`normtrace.verify` meaningful.
"""

from __future__ import annotations

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
)
from .traces import LassoTrace

Table = list[bool]
Memo = dict[int, Table]


def evaluate_at(formula: Formula, trace: LassoTrace, pos: int = 0, memo: Memo | None = None) -> bool:
    """Truth of ``formula`` on the infinite word at position ``pos``.

    ``memo`` may be shared between calls on the same trace to reuse the truth
    tables of subformula objects that occur in several formulas.
    """
    if memo is None:
        memo = {}
    table = truth_table(formula, trace, memo)
    return table[trace.canonical_position(pos)]


def evaluate(formula: Formula, trace: LassoTrace) -> bool:
    """Truth at the start of the run; the satisfaction relation used by the
    classifier and the CLI."""
    return evaluate_at(formula, trace, 0)


def truth_table(formula: Formula, trace: LassoTrace, memo: Memo) -> Table:
    key = id(formula)
    table = memo.get(key)
    if table is None:
        table = _TABLE_BUILDERS[type(formula)](formula, trace, memo)
        memo[key] = table
    return table


def _reach(i: int, m: int, n: int) -> range:
    # Canonical positions of the suffix starting at canonical position i:
    # inside the loop every loop position is reachable.
    return range(i, n) if i < m else range(m, n)


def _atom_table(f: Atom, trace: LassoTrace, memo: Memo) -> Table:
    name = f.name
    return [name in s for s in trace.prefix + trace.loop]


def _true_table(f: TrueConst, trace: LassoTrace, memo: Memo) -> Table:
    return [True] * trace.positions


def _false_table(f: FalseConst, trace: LassoTrace, memo: Memo) -> Table:
    return [False] * trace.positions


def _not_table(f: Not, trace: LassoTrace, memo: Memo) -> Table:
    return [not v for v in truth_table(f.operand, trace, memo)]


def _and_table(f: And, trace: LassoTrace, memo: Memo) -> Table:
    left = truth_table(f.left, trace, memo)
    right = truth_table(f.right, trace, memo)
    return [a and b for a, b in zip(left, right)]


def _or_table(f: Or, trace: LassoTrace, memo: Memo) -> Table:
    left = truth_table(f.left, trace, memo)
    right = truth_table(f.right, trace, memo)
    return [a or b for a, b in zip(left, right)]


def _implies_table(f: Implies, trace: LassoTrace, memo: Memo) -> Table:
    left = truth_table(f.left, trace, memo)
    right = truth_table(f.right, trace, memo)
    return [(not a) or b for a, b in zip(left, right)]


def _next_table(f: Next, trace: LassoTrace, memo: Memo) -> Table:
    sub = truth_table(f.operand, trace, memo)
    m = len(trace.prefix)
    return sub[1:] + [sub[m]]


def _finally_table(f: Finally, trace: LassoTrace, memo: Memo) -> Table:
    sub = truth_table(f.operand, trace, memo)
    m = len(trace.prefix)
    loop_value = any(sub[m:])
    table = [loop_value] * trace.positions
    acc = loop_value
    for i in range(m - 1, -1, -1):
        acc = sub[i] or acc
        table[i] = acc
    return table


def _globally_table(f: Globally, trace: LassoTrace, memo: Memo) -> Table:
    sub = truth_table(f.operand, trace, memo)
    m = len(trace.prefix)
    loop_value = all(sub[m:])
    table = [loop_value] * trace.positions
    acc = loop_value
    for i in range(m - 1, -1, -1):
        acc = sub[i] and acc
        table[i] = acc
    return table


def _until_table(f: Until, trace: LassoTrace, memo: Memo) -> Table:
    left = truth_table(f.left, trace, memo)
    right = truth_table(f.right, trace, memo)
    m = len(trace.prefix)
    l = len(trace.loop)
    # Loop positions: sweep backwards over the loop unrolled twice, seeded
    # false.  Any witness lies within one revolution of its start.
    window = [False] * (2 * l + 1)
    for q in range(2 * l - 1, -1, -1):
        j = m + q % l
        window[q] = right[j] or (left[j] and window[q + 1])
    # Prefix positions: plain backward induction into the loop value.
    result = [False] * m + window[:l]
    acc = result[m]
    for i in range(m - 1, -1, -1):
        acc = right[i] or (left[i] and acc)
        result[i] = acc
    return result


def _otimes_table(f: OTimes, trace: LassoTrace, memo: Memo) -> Table:
    left = truth_table(f.left, trace, memo)
    right = truth_table(f.right, trace, memo)
    m = len(trace.prefix)
    n = trace.positions
    table = []
    for i in range(n):
        reach = _reach(i, m, n)
        if all(left[j] for j in reach):
            table.append(True)
            continue
        table.append(
            any(
                not left[j] and any(right[k] for k in _reach(j, m, n))
                for j in reach
            )
        )
    return table


_TABLE_BUILDERS = {
    TrueConst: _true_table,
    FalseConst: _false_table,
    Atom: _atom_table,
    Not: _not_table,
    And: _and_table,
    Or: _or_table,
    Implies: _implies_table,
    Next: _next_table,
    Finally: _finally_table,
    Globally: _globally_table,
    Until: _until_table,
    OTimes: _otimes_table,
}
