"""Caps in AG(n, p) built from admissible digit sets, with exact certificates."""

from .zp import (
    DigitSetPair,
    EquationClassPartition,
    LineEquation,
    Prime,
    digit_pair,
    equation_classes,
    equation_str,
    is_prime,
    make_line_equation,
    normalize_digit_set,
)
from .progressions import (
    ConstraintSystem,
    ProgressionTable,
    build_constraint_system,
    enumerate_progressions,
    reverse_table,
    swap_table,
)
from .reducibility import (
    CombinedReport,
    ReducibilityReport,
    ReductionTrace,
    combined_reducible,
    digit_reduce,
    digit_reducible,
    matrix_reduce,
    matrix_reducible,
    rref,
)
from .cone import (
    AdmissibilityReport,
    ConeCertificate,
    admissible,
    cone_trivial,
    integer_oracle,
    verify_certificate,
)

__all__ = [
    "AdmissibilityReport",
    "CombinedReport",
    "ConeCertificate",
    "ConstraintSystem",
    "DigitSetPair",
    "EquationClassPartition",
    "LineEquation",
    "Prime",
    "ProgressionTable",
    "ReducibilityReport",
    "ReductionTrace",
    "admissible",
    "build_constraint_system",
    "combined_reducible",
    "cone_trivial",
    "digit_pair",
    "digit_reduce",
    "digit_reducible",
    "enumerate_progressions",
    "equation_classes",
    "equation_str",
    "integer_oracle",
    "is_prime",
    "make_line_equation",
    "matrix_reduce",
    "matrix_reducible",
    "normalize_digit_set",
    "reverse_table",
    "rref",
    "swap_table",
    "verify_certificate",
]
