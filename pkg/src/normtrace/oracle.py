"""Reference evaluator based on bounded unfolding of the infinite word.

This is a deliberately naive second implementation used to cross-check the
table-based evaluator in :mod:`normtrace.semantics`.  It shares no temporal
operator code with it: truth is computed by direct recursion over absolute
positions, with every unbounded quantifier cut off at a finite horizon.

A quantifier entered at position ``q`` ranges over ``[q, q + n + 2*l]``
where ``n`` is the number of canonical positions and ``l`` the loop length.
That window is exact: truth values of every subformula are periodic with
period ``l`` from the end of the prefix on, so an existential witness, if
one exists, occurs within one canonical sweep plus one extra loop, and for
the two-position quantifier of OTimes within two extra loops.  The window
travels with the recursion; anchoring it once at the outermost call would
truncate nested quantifiers and is not sound.
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


def evaluate_by_unfolding(formula: Formula, trace: LassoTrace, pos: int = 0) -> bool:
    if pos < 0:
        raise ValueError("position must be nonnegative")
    prefix_len = len(trace.prefix)
    loop_len = len(trace.loop)
    # n + 2l positions beyond the anchor, inclusive.
    window = prefix_len + 3 * loop_len

    def state(i: int) -> frozenset[str]:
        if i < prefix_len:
            return trace.prefix[i]
        return trace.loop[(i - prefix_len) % loop_len]

    memo: dict[tuple[int, int], bool] = {}

    def sat(f: Formula, i: int) -> bool:
        key = (id(f), i)
        cached = memo.get(key)
        if cached is not None:
            return cached
        result = _sat(f, i)
        memo[key] = result
        return result

    def _sat(f: Formula, i: int) -> bool:
        if isinstance(f, TrueConst):
            return True
        if isinstance(f, FalseConst):
            return False
        if isinstance(f, Atom):
            return f.name in state(i)
        if isinstance(f, Not):
            return not sat(f.operand, i)
        if isinstance(f, And):
            return sat(f.left, i) and sat(f.right, i)
        if isinstance(f, Or):
            return sat(f.left, i) or sat(f.right, i)
        if isinstance(f, Implies):
            return not sat(f.left, i) or sat(f.right, i)
        if isinstance(f, Next):
            return sat(f.operand, i + 1)
        if isinstance(f, Finally):
            return any(sat(f.operand, k) for k in range(i, i + window + 1))
        if isinstance(f, Globally):
            return all(sat(f.operand, k) for k in range(i, i + window + 1))
        if isinstance(f, Until):
            return any(
                sat(f.right, k) and all(sat(f.left, j) for j in range(i, k))
                for k in range(i, i + window + 1)
            )
        if isinstance(f, OTimes):
            if all(sat(f.left, k) for k in range(i, i + window + 1)):
                return True
            return any(
                not sat(f.left, j)
                and any(sat(f.right, k) for k in range(j, i + window + 1))
                for j in range(i, i + window + 1)
            )
        raise TypeError(f"not a formula node: {f!r}")

    return sat(formula, pos)
