"""Formula AST for LTL extended with a binary compensation connective.

Constructors mirror the connectives accepted by the concrete grammar in
:mod:`normtrace.syntax`: boolean constants, named atoms, the usual
propositional operators, the temporal operators Next / Finally / Globally /
Until, and ``OTimes``, the compensation connective.  All nodes are frozen
dataclasses, so formulas are immutable, hashable and compared structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

ATOM_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Single-letter temporal operators plus the boolean constants; these words
# can never be atom names.
RESERVED_WORDS = frozenset({"G", "F", "X", "U", "true", "false"})


class Formula:
    """Base class for all formula nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class TrueConst(Formula):
    pass


@dataclass(frozen=True)
class FalseConst(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self) -> None:
        if not ATOM_PATTERN.match(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")
        if self.name in RESERVED_WORDS:
            raise ValueError(f"reserved word used as atom name: {self.name!r}")


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Next(Formula):
    operand: Formula


@dataclass(frozen=True)
class Finally(Formula):
    operand: Formula


@dataclass(frozen=True)
class Globally(Formula):
    operand: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class OTimes(Formula):
    """Compensation connective: either ``left`` holds at every position, or
    some position falsifies ``left`` and a same-or-later position satisfies
    ``right``."""

    left: Formula
    right: Formula


UNARY_NODES = (Not, Next, Finally, Globally)
BINARY_NODES = (And, Or, Implies, Until, OTimes)
TEMPORAL_NODES = (Next, Finally, Globally, Until, OTimes)


def children(formula: Formula) -> tuple[Formula, ...]:
    if isinstance(formula, UNARY_NODES):
        return (formula.operand,)
    if isinstance(formula, BINARY_NODES):
        return (formula.left, formula.right)
    return ()


def subformulas(formula: Formula):
    """Yield every node of the tree, root first."""
    stack = [formula]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def size(formula: Formula) -> int:
    """Number of nodes in the tree."""
    return sum(1 for _ in subformulas(formula))


def depth(formula: Formula) -> int:
    """Height of the tree; leaves have depth 0."""
    kids = children(formula)
    if not kids:
        return 0
    return 1 + max(depth(child) for child in kids)


def atom_names(formula: Formula) -> frozenset[str]:
    return frozenset(
        node.name for node in subformulas(formula) if isinstance(node, Atom)
    )


def is_propositional(formula: Formula) -> bool:
    """True when the formula contains no temporal operator and no OTimes."""
    return not any(isinstance(node, TEMPORAL_NODES) for node in subformulas(formula))


def contains_otimes(formula: Formula) -> bool:
    return any(isinstance(node, OTimes) for node in subformulas(formula))


def expand_otimes(formula: Formula) -> Formula:
    """Rewrite every OTimes node into its plain-LTL equivalent.

    ``OTimes(a, b)`` becomes ``Globally(a) | Finally(!a & Finally(b))``,
    applied bottom-up so the result contains no OTimes node.  No other
    simplification is performed; double negations are left in place.
    """
    if isinstance(formula, OTimes):
        left = expand_otimes(formula.left)
        right = expand_otimes(formula.right)
        return Or(Globally(left), Finally(And(Not(left), Finally(right))))
    if isinstance(formula, Not):
        return Not(expand_otimes(formula.operand))
    if isinstance(formula, Next):
        return Next(expand_otimes(formula.operand))
    if isinstance(formula, Finally):
        return Finally(expand_otimes(formula.operand))
    if isinstance(formula, Globally):
        return Globally(expand_otimes(formula.operand))
    if isinstance(formula, And):
        return And(expand_otimes(formula.left), expand_otimes(formula.right))
    if isinstance(formula, Or):
        return Or(expand_otimes(formula.left), expand_otimes(formula.right))
    if isinstance(formula, Implies):
        return Implies(expand_otimes(formula.left), expand_otimes(formula.right))
    if isinstance(formula, Until):
        return Until(expand_otimes(formula.left), expand_otimes(formula.right))
    return formula
