"""LTL with a compensation connective over lasso words, and classification
of runs against prohibition norms with exceptions and compensations."""

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
    atom_names,
    contains_otimes,
    depth,
    expand_otimes,
    is_propositional,
    size,
    subformulas,
)
from .norms import (
    ClassifierFormulas,
    Deadline,
    Norm,
    NormFileError,
    NormSet,
    compile_norms,
    example_norms,
    load_norms,
    otimes_norm_formulas,
    paradox_run,
    reference_classifiers,
)
from .oracle import evaluate_by_unfolding
from .semantics import evaluate, evaluate_at
from .syntax import (
    ParseError,
    ParseErrorKind,
    SourceSpan,
    parse_formula,
    parse_trace,
    print_formula,
    print_trace,
)
from .traces import LassoTrace, canonical_position
from .verify import (
    Bounds,
    ComplianceClass,
    OTimesMismatch,
    ParadoxReport,
    PartitionReport,
    PartitionViolation,
    check_otimes_equivalence,
    check_partition,
    classify,
    enumerate_lassos,
    lasso_count,
    render_paradox_report,
    render_partition_report,
    reproduce_paradox,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "Bounds",
    "ClassifierFormulas",
    "ComplianceClass",
    "Deadline",
    "FalseConst",
    "Finally",
    "Formula",
    "Globally",
    "Implies",
    "LassoTrace",
    "Next",
    "Norm",
    "NormFileError",
    "NormSet",
    "Not",
    "OTimes",
    "OTimesMismatch",
    "Or",
    "ParadoxReport",
    "ParseError",
    "ParseErrorKind",
    "PartitionReport",
    "PartitionViolation",
    "SourceSpan",
    "TrueConst",
    "Until",
    "atom_names",
    "canonical_position",
    "check_otimes_equivalence",
    "check_partition",
    "classify",
    "compile_norms",
    "contains_otimes",
    "depth",
    "enumerate_lassos",
    "evaluate",
    "evaluate_at",
    "evaluate_by_unfolding",
    "example_norms",
    "expand_otimes",
    "is_propositional",
    "lasso_count",
    "load_norms",
    "otimes_norm_formulas",
    "paradox_run",
    "parse_formula",
    "parse_trace",
    "print_formula",
    "print_trace",
    "reference_classifiers",
    "render_paradox_report",
    "render_partition_report",
    "reproduce_paradox",
    "size",
    "subformulas",
]
