"""Prohibition norms with exceptions and compensations.

A norm forbids a propositional state property unless an exception guard
holds in the same state; a violation is a state satisfying the prohibited
property while the guard is false.  A norm may name a compensation formula
that excuses violations, checked at the violating state under one of three
deadline modes: some time later (``EVENTUALLY``), in the very next state
(``NEXT``), or at the violating state itself (``IMMEDIATE``, which admits
run properties such as ``!Read U Destroyed`` as compensations).

A norm set compiles into three classifier formulas that split all runs into
fully compliant (no violation ever), weakly compliant (at least one
violation, every violation of a compensable norm compensated in time, no
violation of an uncompensable norm) and violating runs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import yaml

from .formulas import (
    ATOM_PATTERN,
    RESERVED_WORDS,
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
    atom_names,
    is_propositional,
)
from .syntax import ParseError, parse_formula
from .traces import LassoTrace


class Deadline(enum.Enum):
    EVENTUALLY = "eventually"
    NEXT = "next"
    IMMEDIATE = "immediate"


@dataclass(frozen=True)
class Norm:
    """Prohibition of ``forbidden`` unless ``unless`` holds at the same state."""

    id: str
    forbidden: Formula
    unless: Formula
    compensation: Formula | None = None
    deadline: Deadline = Deadline.EVENTUALLY

    def __post_init__(self) -> None:
        if not is_propositional(self.forbidden):
            raise ValueError(f"temporal operator in prohibition of {self.id}")
        if not is_propositional(self.unless):
            raise ValueError(f"temporal operator in guard of {self.id}")

    def violation(self) -> Formula:
        """State property marking a violation of this norm."""
        return And(Not(self.unless), self.forbidden)


@dataclass(frozen=True)
class NormSet:
    atoms: tuple[str, ...]
    norms: tuple[Norm, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "norms", tuple(self.norms))
        for atom in self.atoms:
            if not ATOM_PATTERN.match(atom) or atom in RESERVED_WORDS:
                raise ValueError(f"invalid atom name in alphabet: {atom!r}")
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("alphabet contains duplicate atoms")
        seen = set()
        for norm in self.norms:
            if norm.id in seen:
                raise ValueError(f"duplicate norm id {norm.id}")
            seen.add(norm.id)
        declared = set(self.atoms)
        for norm in self.norms:
            used = atom_names(norm.forbidden) | atom_names(norm.unless)
            if norm.compensation is not None:
                used |= atom_names(norm.compensation)
            missing = used - declared
            if missing:
                raise ValueError(
                    f"undeclared atom {sorted(missing)[0]} in {norm.id}"
                )


@dataclass(frozen=True)
class ClassifierFormulas:
    full: Formula
    weak: Formula
    violating: Formula


def _conjunction(parts: list[Formula]) -> Formula:
    if not parts:
        return TrueConst()
    result = parts[0]
    for part in parts[1:]:
        result = And(result, part)
    return result


def _disjunction(parts: list[Formula]) -> Formula:
    if not parts:
        return FalseConst()
    result = parts[0]
    for part in parts[1:]:
        result = Or(result, part)
    return result


def _deadline_formula(norm: Norm) -> Formula:
    assert norm.compensation is not None
    if norm.deadline is Deadline.EVENTUALLY:
        return Finally(norm.compensation)
    if norm.deadline is Deadline.NEXT:
        return Next(norm.compensation)
    return norm.compensation


def compile_norms(norm_set: NormSet) -> ClassifierFormulas:
    """Compile a norm set into the three run classifiers.

    With ``viol_i`` the violation property of norm ``i`` and ``D_i`` its
    deadline-wrapped compensation:

    * full       = G(and of !viol_i over all norms)
    * weak       = F(or of viol_i over compensable norms)
                   & G(viol_i -> D_i) for each compensable norm
                   & G(!viol_j) for each uncompensable norm
    * violating  = F(or of viol_j over uncompensable norms,
                     or of (viol_i & !D_i) over compensable norms)

    Weak compliance requires at least one violation and every violation
    compensated in time.  The violation subtrees are shared between the
    three formulas, which lets evaluation reuse their truth tables.
    """
    compensable = [n for n in norm_set.norms if n.compensation is not None]
    uncompensable = [n for n in norm_set.norms if n.compensation is None]
    violations = {n.id: n.violation() for n in norm_set.norms}

    full = Globally(_conjunction([Not(violations[n.id]) for n in norm_set.norms]))

    weak_parts: list[Formula] = [
        Finally(_disjunction([violations[n.id] for n in compensable]))
    ]
    weak_parts += [
        Globally(Implies(violations[n.id], _deadline_formula(n))) for n in compensable
    ]
    weak_parts += [Globally(Not(violations[n.id])) for n in uncompensable]
    weak = _conjunction(weak_parts)

    violating_parts = [violations[n.id] for n in uncompensable]
    violating_parts += [
        And(violations[n.id], Not(_deadline_formula(n))) for n in compensable
    ]
    violating = Finally(_disjunction(violating_parts))

    return ClassifierFormulas(full=full, weak=weak, violating=violating)


# --- the personal-data running example --------------------------------------

EXAMPLE_NORM_FILE = """\
atoms: [A, B, C, D]
norms:
  - id: n1
    forbidden: "A"
    unless: "C"
    compensation: "B"
    deadline: eventually
  - id: n2
    forbidden: "D"
    unless: "C"
"""


def example_norms() -> NormSet:
    """The running example: collecting personal information (A) is forbidden
    without court authorisation (C) but destruction of the data before access
    (B) excuses it; collecting medical information (D) is forbidden without
    authorisation, with no excuse."""
    return load_norms(EXAMPLE_NORM_FILE)


def reference_classifiers() -> ClassifierFormulas:
    """Hand-written classifiers for the running example.

    These are fixed reference formulas, not the output of
    :func:`compile_norms`; the test suite checks the two agree on every
    bounded lasso."""
    return ClassifierFormulas(
        full=parse_formula("G(C | (!C & !A & !D))"),
        weak=parse_formula("F(!C & A) & G(!C & A -> F B) & G(!C -> !D)"),
        violating=parse_formula("F(!C & (D | (A & !F B)))"),
    )


def otimes_norm_formulas() -> list[tuple[str, Formula]]:
    """The compensation-connective formalisation N1..N4 of the same norms,
    each evaluated at the start of a run."""
    a, b, c, d = Atom("A"), Atom("B"), Atom("C"), Atom("D")
    return [
        ("N1", Implies(Not(c), OTimes(Not(a), b))),
        ("N2", Implies(c, Finally(a))),
        ("N3", Implies(Globally(Not(a)), Globally(Not(d)))),
        ("N4", Implies(Finally(a), Finally(d))),
    ]


def paradox_run() -> LassoTrace:
    """The run that satisfies N1..N4 yet collects medical information without
    authorisation: an unauthorised A+D state, then a B state, then nothing
    forever.  Only the first two states are forced; the all-false loop is the
    minimal completion and adds no events."""
    return LassoTrace([{"A", "D"}, {"B"}], [set()])


# --- norm files --------------------------------------------------------------


class NormFileError(ValueError):
    """Raised for a norm file that does not describe a valid norm set."""


_DEADLINES = {d.value: d for d in Deadline}


def load_norms(text: str) -> NormSet:
    """Parse a YAML norm file.

    Layout: a mapping with ``atoms``, a list of atom names, and ``norms``, a
    list of records with fields ``id``, ``forbidden``, ``unless``, optional
    ``compensation`` and optional ``deadline`` (one of ``eventually``,
    ``next``, ``immediate``).  Formula fields use the formula grammar.
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise NormFileError(f"not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise NormFileError("norm file must be a mapping with 'atoms' and 'norms'")
    atoms = doc.get("atoms")
    if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
        raise NormFileError("'atoms' must be a list of atom names")
    raw_norms = doc.get("norms")
    if not isinstance(raw_norms, list):
        raise NormFileError("'norms' must be a list of norm records")

    norms = []
    seen: set[str] = set()
    for record in raw_norms:
        if not isinstance(record, dict) or "id" not in record:
            raise NormFileError("each norm record needs at least an 'id'")
        norm_id = str(record["id"])
        if norm_id in seen:
            raise NormFileError(f"duplicate norm id {norm_id}")
        seen.add(norm_id)
        unknown = set(record) - {"id", "forbidden", "unless", "compensation", "deadline"}
        if unknown:
            raise NormFileError(f"unknown field {sorted(unknown)[0]!r} in {norm_id}")
        forbidden = _formula_field(record, "forbidden", norm_id)
        unless = _formula_field(record, "unless", norm_id)
        compensation = None
        if "compensation" in record:
            compensation = _formula_field(record, "compensation", norm_id)
        deadline = Deadline.EVENTUALLY
        if "deadline" in record:
            raw = record["deadline"]
            if raw not in _DEADLINES:
                raise NormFileError(f"unknown deadline {raw!r} in {norm_id}")
            deadline = _DEADLINES[raw]
        try:
            norms.append(
                Norm(
                    id=norm_id,
                    forbidden=forbidden,
                    unless=unless,
                    compensation=compensation,
                    deadline=deadline,
                )
            )
        except ValueError as exc:
            raise NormFileError(str(exc)) from exc

    try:
        return NormSet(atoms=tuple(atoms), norms=tuple(norms))
    except ValueError as exc:
        raise NormFileError(str(exc)) from exc


def _formula_field(record: dict, name: str, norm_id: str) -> Formula:
    if name not in record:
        raise NormFileError(f"missing field {name!r} in {norm_id}")
    raw = record[name]
    if not isinstance(raw, str):
        raise NormFileError(f"field {name!r} in {norm_id} must be a formula string")
    try:
        return parse_formula(raw)
    except ParseError as exc:
        raise NormFileError(f"bad {name} formula in {norm_id}: {exc}") from exc
