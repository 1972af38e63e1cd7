"""Exact decision of whether {x >= 0 : A x = 0} is trivial, with certificates.

Admissibility of a digit-set pair asks for the non-existence of a nonzero
nonnegative integer solution of the balance equations. Because the system is
homogeneous, a nonzero nonnegative rational point scales to an integer one,
so the integer question is decided exactly by rational linear programming:
the cone is trivial iff {A x = 0, sum(x) = 1, x >= 0} is infeasible. A
phase-one simplex over Fractions with Bland's rule always terminates and
yields either a feasible point (scaled to an integer witness) or simplex
multipliers that turn into a dual vector y with A^T y >= 1, which proves
triviality by 0 = y^T A x >= sum(x) for any x >= 0 in the cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .progressions import ConstraintSystem, build_constraint_system, enumerate_progressions
from .zp import DigitSetPair, equation_classes, make_line_equation


class InstanceTooLarge(ValueError):
    """Raised when an exhaustive enumeration would exceed the guard bound."""


@dataclass(frozen=True)
class ConeCertificate:
    """Verifiable proof object for a cone-triviality verdict.

    kind "trivial": ``dual`` has one rational entry per matrix row and
    satisfies A^T dual >= 1 componentwise (scaled so the minimum is exactly
    1). kind "nontrivial": ``witness`` is a nonzero nonnegative integer
    vector with A witness = 0 and gcd of entries 1.
    """

    kind: str
    dual: tuple[Fraction, ...] | None = None
    witness: tuple[int, ...] | None = None

    @property
    def trivial(self) -> bool:
        return self.kind == "trivial"


def _pivot(tab: list[list[Fraction]], obj: list[Fraction], basis: list[int],
           leave: int, enter: int) -> None:
    lead = tab[leave][enter]
    tab[leave] = [v / lead for v in tab[leave]]
    for i in range(len(tab)):
        if i != leave and tab[i][enter] != 0:
            f = tab[i][enter]
            tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
    if obj[enter] != 0:
        f = obj[enter]
        obj[:] = [a - f * b for a, b in zip(obj, tab[leave])]
    basis[leave] = enter


def _phase_one(a_rows: Sequence[Sequence[int]], n_cols: int):
    """Feasibility of {A x = 0, sum(x) = 1, x >= 0} by exact phase-one simplex.

    Returns ("feasible", x) with x a rational point, or ("infeasible", y*)
    with y* the optimal simplex multipliers (one per constraint row, the
    normalization row last).
    """
    m = len(a_rows) + 1
    # columns: n_cols original variables, m artificials, then the RHS
    tab: list[list[Fraction]] = []
    for row in a_rows:
        tab.append([Fraction(v) for v in row]
                   + [Fraction(0)] * m + [Fraction(0)])
    tab.append([Fraction(1)] * n_cols + [Fraction(0)] * m + [Fraction(1)])
    for i in range(m):
        tab[i][n_cols + i] = Fraction(1)
    basis = [n_cols + i for i in range(m)]
    # objective row: z_j - c_j for min sum(artificials); last entry = value
    obj = [sum(tab[i][j] for i in range(m)) for j in range(n_cols)]
    obj += [Fraction(0)] * m + [Fraction(1)]

    while True:
        enter = next((j for j in range(n_cols + m) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            coeff = tab[i][enter]
            if coeff > 0:
                ratio = tab[i][-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:  # cannot happen: objective is bounded below by 0
            raise RuntimeError("phase-one objective unbounded")
        _pivot(tab, obj, basis, leave, enter)

    if obj[-1] > 0:
        multipliers = tuple(obj[n_cols + i] + 1 for i in range(m))
        return "infeasible", multipliers
    x = [Fraction(0)] * n_cols
    for i, var in enumerate(basis):
        if var < n_cols:
            x[var] = tab[i][-1]
    return "feasible", tuple(x)


def _dot_col(system: ConstraintSystem, j: int, y: Sequence[Fraction]) -> Fraction:
    return sum(Fraction(system.matrix[i][j]) * y[i] for i in range(system.n_rows))


def cone_trivial(system: ConstraintSystem) -> ConeCertificate:
    """Decide triviality of {x >= 0 : A x = 0} and return a certificate."""
    status, vec = _phase_one(system.matrix, system.n_cols)
    if status == "infeasible":
        t = vec[-1]
        assert t > 0
        y = tuple(-u / t for u in vec[:-1])
        if system.n_cols:
            scale = min(_dot_col(system, j, y) for j in range(system.n_cols))
            y = tuple(v / scale for v in y)
        return ConeCertificate("trivial", dual=y)
    denom_lcm = math.lcm(*(v.denominator for v in vec)) if vec else 1
    ints = [int(v * denom_lcm) for v in vec]
    g = math.gcd(*ints)
    return ConeCertificate("nontrivial", witness=tuple(v // g for v in ints))


def verify_certificate(system: ConstraintSystem, cert: ConeCertificate) -> bool:
    """Re-check a certificate by direct multiplication."""
    if cert.kind == "trivial":
        if cert.dual is None or len(cert.dual) != system.n_rows:
            raise ValueError("dual certificate has wrong dimension")
        return all(_dot_col(system, j, cert.dual) >= 1 for j in range(system.n_cols))
    if cert.kind == "nontrivial":
        if cert.witness is None or len(cert.witness) != system.n_cols:
            raise ValueError("witness has wrong dimension")
        w = cert.witness
        if any(v < 0 for v in w) or not any(v > 0 for v in w):
            return False
        return all(
            sum(system.matrix[i][j] * w[j] for j in range(system.n_cols)) == 0
            for i in range(system.n_rows)
        )
    raise ValueError(f"unknown certificate kind {cert.kind!r}")


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    certificates: tuple[tuple[int, ConeCertificate], ...]  # (b, certificate)


def admissible(pair: DigitSetPair) -> AdmissibilityReport:
    """Cone-test every equation-class representative of the pair."""
    certs = []
    ok = True
    for b in equation_classes(pair.p).representatives:
        table = enumerate_progressions(pair, make_line_equation(pair.p, b))
        cert = cone_trivial(build_constraint_system(table))
        certs.append((b, cert))
        ok = ok and cert.trivial
    return AdmissibilityReport(ok, tuple(certs))


ENUMERATION_GUARD = 10**8


def integer_oracle(system: ConstraintSystem, bound: int):
    """Exhaustive search for a witness with entries in {0, ..., bound}.

    Returns the lexicographically first nonzero solution of A x = 0, or None
    when no solution exists within the bound. Guarded against blow-up.
    """
    n = system.n_cols
    if (bound + 1) ** n > ENUMERATION_GUARD:
        raise InstanceTooLarge(f"(bound+1)^cols = {(bound + 1) ** n} exceeds guard")
    from itertools import product

    for x in product(range(bound + 1), repeat=n):
        if not any(x):
            continue
        if all(
            sum(system.matrix[i][j] * x[j] for j in range(n)) == 0
            for i in range(system.n_rows)
        ):
            return x
    return None


def _frac_str(v: Fraction | int) -> str:
    return str(v)


def certificate_to_jsonable(cert: ConeCertificate) -> dict:
    """Decimal-string encoding, lossless for arbitrary-precision values."""
    out: dict = {"kind": cert.kind}
    if cert.dual is not None:
        out["dual"] = [_frac_str(v) for v in cert.dual]
    if cert.witness is not None:
        out["witness"] = [_frac_str(v) for v in cert.witness]
    return out


def certificate_from_jsonable(data: dict) -> ConeCertificate:
    dual = tuple(Fraction(s) for s in data["dual"]) if "dual" in data else None
    witness = tuple(int(s) for s in data["witness"]) if "witness" in data else None
    return ConeCertificate(data["kind"], dual=dual, witness=witness)
