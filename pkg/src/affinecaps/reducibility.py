"""Digit- and matrix-reduction: cheap sufficient tests for admissibility.

Both algorithms try to argue every weighted progression away. The digit rule
works on the progression triples directly; the matrix rule works on the
reduced row echelon form of the constraint matrix, deleting columns forced
to zero by single-signed rows. Either one reaching the empty state for every
equation-class representative certifies admissibility of the pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .progressions import (
    ConstraintSystem,
    Triple,
    build_constraint_system,
    enumerate_progressions,
)
from .zp import DigitSetPair, LineEquation, equation_classes, make_line_equation


@dataclass(frozen=True)
class DigitStep:
    """One firing of the digit rule.

    ``digit`` was absent from ``position`` (1-based) in every remaining
    triple while still occurring elsewhere; all triples containing it
    anywhere were removed.
    """

    position: int
    digit: int
    removed: tuple[Triple, ...]


@dataclass(frozen=True)
class MatrixStep:
    """One firing of the matrix rule.

    ``row`` is the 0-based index of the single-signed row in the current
    echelon matrix; ``columns`` are the deleted columns as indices into the
    original constraint system.
    """

    row: int
    columns: tuple[int, ...]


@dataclass(frozen=True)
class ReductionTrace:
    kind: str  # "digit" | "matrix"
    steps: tuple
    reduced: bool

    @property
    def verdict(self) -> str:
        return "reduced-to-empty" if self.reduced else "stuck"


@dataclass(frozen=True)
class ReducibilityReport:
    """Verdict plus one trace per equation-class representative."""

    reducible: bool
    traces: tuple[tuple[int, ReductionTrace], ...]  # (b, trace)


def digit_reduce(
    pair: DigitSetPair,
    eq: LineEquation,
    scan_order: Sequence[tuple[int, int]] | None = None,
) -> ReductionTrace:
    """Run the digit rule to a fixpoint for one equation.

    The default scan fires the first applicable (position, digit) with
    position outer 1..3 and digits ascending, then restarts; ``scan_order``
    overrides this (used to check the verdict is order-independent).
    """
    remaining = list(enumerate_progressions(pair, eq).rows)
    order = list(scan_order) if scan_order is not None else [
        (r, d) for r in (1, 2, 3) for d in pair.fixed
    ]
    steps: list[DigitStep] = []
    progressed = True
    while remaining and progressed:
        progressed = False
        for r, d in order:
            if any(t[r - 1] == d for t in remaining):
                continue
            if not any(d in t for t in remaining):
                continue  # digit gone entirely: rule is vacuous
            removed = tuple(t for t in remaining if d in t)
            remaining = [t for t in remaining if d not in t]
            steps.append(DigitStep(r, d, removed))
            progressed = True
            break
    return ReductionTrace("digit", tuple(steps), not remaining)


def digit_reducible(pair: DigitSetPair) -> ReducibilityReport:
    """True iff the digit rule empties the table for every representative b."""
    traces = []
    ok = True
    for b in equation_classes(pair.p).representatives:
        trace = digit_reduce(pair, make_line_equation(pair.p, b))
        traces.append((b, trace))
        ok = ok and trace.reduced
    return ReducibilityReport(ok, tuple(traces))


def rref(matrix: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form over exact rationals."""
    m = [[Fraction(v) for v in row] for row in matrix]
    if not m:
        return []
    n_rows, n_cols = len(m), len(m[0])
    piv_row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(piv_row, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[piv_row], m[pivot] = m[pivot], m[piv_row]
        lead = m[piv_row][col]
        m[piv_row] = [v / lead for v in m[piv_row]]
        for r in range(n_rows):
            if r != piv_row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[piv_row])]
        piv_row += 1
        if piv_row == n_rows:
            break
    return m


def matrix_rank(matrix: Sequence[Sequence[int | Fraction]]) -> int:
    return sum(1 for row in rref(matrix) if any(v != 0 for v in row))


def matrix_reduce(system: ConstraintSystem) -> ReductionTrace:
    """Run the column-deletion rule on the rational RREF of the matrix.

    Repeatedly fires the lowest-index nonzero row whose entries all share a
    sign, deletes its support (those variables are forced to 0 over the
    nonnegative orthant), and recomputes the echelon form of the survivor.
    Reduced-to-empty iff every column is eventually deleted.
    """
    surviving = list(range(system.n_cols))
    work = rref(system.matrix)
    steps: list[MatrixStep] = []
    while surviving:
        fired = None
        for i, row in enumerate(work):
            support = [j for j, v in enumerate(row) if v != 0]
            if not support:
                continue
            if all(v >= 0 for v in row) or all(v <= 0 for v in row):
                fired = (i, support)
                break
        if fired is None:
            break
        i, support = fired
        steps.append(MatrixStep(i, tuple(surviving[j] for j in support)))
        drop = set(support)
        keep = [j for j in range(len(surviving)) if j not in drop]
        surviving = [surviving[j] for j in keep]
        work = rref([[row[j] for j in keep] for row in work])
    return ReductionTrace("matrix", tuple(steps), not surviving)


def matrix_reducible(pair: DigitSetPair) -> ReducibilityReport:
    """True iff the matrix rule deletes every column for every representative b."""
    traces = []
    ok = True
    for b in equation_classes(pair.p).representatives:
        table = enumerate_progressions(pair, make_line_equation(pair.p, b))
        trace = matrix_reduce(build_constraint_system(table))
        traces.append((b, trace))
        ok = ok and trace.reduced
    return ReducibilityReport(ok, tuple(traces))


@dataclass(frozen=True)
class CombinedReport:
    reducible: bool
    results: tuple[tuple[int, str, ReductionTrace], ...]  # (b, method, trace)


def combined_reducible(pair: DigitSetPair) -> CombinedReport:
    """Allow choosing digit or matrix reduction per equation representative."""
    results = []
    ok = True
    for b in equation_classes(pair.p).representatives:
        eq = make_line_equation(pair.p, b)
        trace = digit_reduce(pair, eq)
        method = "digit"
        if not trace.reduced:
            table = enumerate_progressions(pair, eq)
            trace = matrix_reduce(build_constraint_system(table))
            method = "matrix"
        results.append((b, method, trace))
        ok = ok and trace.reduced
    return CombinedReport(ok, tuple(results))


def verify_digit_trace(pair: DigitSetPair, eq: LineEquation,
                       trace: ReductionTrace) -> bool:
    """Replay a digit trace from scratch, checking every step's applicability."""
    if trace.kind != "digit":
        return False
    remaining = list(enumerate_progressions(pair, eq).rows)
    for step in trace.steps:
        if not isinstance(step, DigitStep) or not 1 <= step.position <= 3:
            return False
        if step.digit not in pair.fixed:
            return False
        if any(t[step.position - 1] == step.digit for t in remaining):
            return False
        hit = tuple(t for t in remaining if step.digit in t)
        if not hit or set(hit) != set(step.removed):
            return False
        remaining = [t for t in remaining if step.digit not in t]
    return (not remaining) == trace.reduced


def verify_matrix_trace(system: ConstraintSystem, trace: ReductionTrace) -> bool:
    """Replay a matrix trace: single-signed rows and recorded column deletions."""
    if trace.kind != "matrix":
        return False
    surviving = list(range(system.n_cols))
    work = rref(system.matrix)
    for step in trace.steps:
        if not isinstance(step, MatrixStep) or not 0 <= step.row < len(work):
            return False
        row = work[step.row]
        support = [j for j, v in enumerate(row) if v != 0]
        if not support:
            return False
        if not (all(v >= 0 for v in row) or all(v <= 0 for v in row)):
            return False
        if tuple(surviving[j] for j in support) != tuple(step.columns):
            return False
        drop = set(support)
        keep = [j for j in range(len(surviving)) if j not in drop]
        surviving = [surviving[j] for j in keep]
        work = rref([[r[j] for j in keep] for r in work])
    return (not surviving) == trace.reduced


def trace_from_jsonable(data: dict) -> ReductionTrace:
    steps: list = []
    for s in data["steps"]:
        if "digit" in s:
            steps.append(DigitStep(s["position"], s["digit"],
                                   tuple(tuple(t) for t in s["removed"])))
        else:
            steps.append(MatrixStep(s["row"], tuple(s["columns"])))
    return ReductionTrace(data["kind"], tuple(steps),
                          data["verdict"] == "reduced-to-empty")


def trace_to_jsonable(trace: ReductionTrace) -> dict:
    steps: list[dict] = []
    for s in trace.steps:
        if isinstance(s, DigitStep):
            steps.append(
                {"position": s.position, "digit": s.digit,
                 "removed": [list(t) for t in s.removed]}
            )
        else:
            steps.append({"row": s.row, "columns": list(s.columns)})
    return {"kind": trace.kind, "verdict": trace.verdict, "steps": steps}


def render_trace(trace: ReductionTrace, indent: str = "  ") -> str:
    """Human-readable narration of a reduction, one line per step."""
    lines = []
    for s in trace.steps:
        if isinstance(s, DigitStep):
            triples = ", ".join(str(t) for t in s.removed)
            lines.append(
                f"{indent}digit {s.digit} never occurs at position {s.position}: "
                f"delete {triples}"
            )
        else:
            cols = ", ".join(str(c + 1) for c in s.columns)
            lines.append(
                f"{indent}row {s.row + 1} of the echelon form is single-signed: "
                f"delete columns {cols}"
            )
    lines.append(f"{indent}{trace.verdict}")
    return "\n".join(lines)
