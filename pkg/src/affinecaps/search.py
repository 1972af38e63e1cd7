"""Candidate enumeration and the admissibility sweep over digit-set sizes.

The sweep exploits monotonicity in the fixed digits: enlarging the set of
frequency-pinned digits only adds balance equations, shrinking the cone, so
a pair is admissible for some choice of fixed digits iff it is admissible
with every digit pinned. Levels are therefore swept with fixed = all of D;
maximality at size l means every size-(l+1) candidate was refuted by a
nonzero cone witness for some equation representative.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .cone import ConeCertificate, certificate_to_jsonable, cone_trivial
from .progressions import build_constraint_system, enumerate_progressions
from .reducibility import ReductionTrace, digit_reduce, matrix_reduce, trace_to_jsonable
from .zp import DigitSetPair, Prime, digit_pair, equation_classes, make_line_equation, normalize_digit_set


def candidates(p: int, size: int, canonical_only: bool = False):
    """All ascending digit sets of the given size containing 0 and 1.

    Every orbit under affine maps has such a member, so nothing admissible
    is missed. With ``canonical_only`` only lexicographically least orbit
    representatives are produced.
    """
    p = Prime(p)
    if not 2 <= size <= p - 1:
        raise ValueError(f"size must lie in 2..{p - 1}, got {size}")
    for rest in combinations(range(2, p), size - 2):
        digits = (0, 1) + rest
        if canonical_only and normalize_digit_set(digits, p) != digits:
            continue
        yield digits


@dataclass(frozen=True)
class RepOutcome:
    """How one equation-class representative was settled."""

    b: int
    method: str  # "digit" | "matrix" | "cone"
    trivial: bool
    trace: ReductionTrace | None = None
    certificate: ConeCertificate | None = None


@dataclass(frozen=True)
class PairVerdict:
    pair: DigitSetPair
    admissible: bool
    outcomes: tuple[RepOutcome, ...]


def check_pair(pair: DigitSetPair) -> PairVerdict:
    """Cheap reductions first, exact cone test last, per representative.

    Stops at the first representative with a nonzero cone witness; the
    returned outcomes then end with that refutation.
    """
    outcomes = []
    for b in equation_classes(pair.p).representatives:
        eq = make_line_equation(pair.p, b)
        trace = digit_reduce(pair, eq)
        if trace.reduced:
            outcomes.append(RepOutcome(b, "digit", True, trace=trace))
            continue
        system = build_constraint_system(enumerate_progressions(pair, eq))
        trace = matrix_reduce(system)
        if trace.reduced:
            outcomes.append(RepOutcome(b, "matrix", True, trace=trace))
            continue
        cert = cone_trivial(system)
        outcomes.append(RepOutcome(b, "cone", cert.trivial, certificate=cert))
        if not cert.trivial:
            return PairVerdict(pair, False, tuple(outcomes))
    return PairVerdict(pair, True, tuple(outcomes))


def outcome_to_jsonable(outcome: RepOutcome) -> dict:
    out: dict = {"b": outcome.b, "method": outcome.method, "trivial": outcome.trivial}
    if outcome.trace is not None:
        out["trace"] = trace_to_jsonable(outcome.trace)
    if outcome.certificate is not None:
        out["certificate"] = certificate_to_jsonable(outcome.certificate)
    return out


@dataclass(frozen=True)
class Refutation:
    digits: tuple[int, ...]
    b: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class SearchBudget:
    max_seconds: float | None = None
    max_candidates: int | None = None


@dataclass(frozen=True)
class SearchReport:
    p: int
    max_size: int | None
    witness_digits: tuple[int, ...] | None
    witness_fixed: tuple[int, ...] | None
    witness_bundle: tuple[RepOutcome, ...] | None
    candidates_examined: int
    maximality: str  # "proven" | "not-attempted"
    refutations: tuple[Refutation, ...]
    budget_exhausted: bool


def report_to_jsonable(report: SearchReport) -> dict:
    witness = None
    if report.witness_digits is not None:
        witness = {
            "digits": list(report.witness_digits),
            "fixed": list(report.witness_fixed),
            "bundle": [outcome_to_jsonable(o) for o in report.witness_bundle],
        }
    return {
        "p": report.p,
        "max_size": report.max_size,
        "witness": witness,
        "candidates_examined": report.candidates_examined,
        "maximality": report.maximality,
        "refutations": [
            {"digits": list(r.digits), "b": r.b,
             "witness": [str(v) for v in r.witness]}
            for r in report.refutations
        ],
        "budget_exhausted": report.budget_exhausted,
    }


def render_report(report: SearchReport) -> str:
    """Canonical bytes for report files: sorted keys, two-space indent."""
    return json.dumps(report_to_jsonable(report), sort_keys=True, indent=2) + "\n"


def store_certificate(payload: dict, directory) -> str:
    """Write a JSON payload content-addressed by its SHA-256; returns the hash."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    blob = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    digest = hashlib.sha256(blob.encode()).hexdigest()
    path = directory / f"{digest}.json"
    if not path.exists():
        path.write_text(blob)
    return digest


def certificate_payload(pair: DigitSetPair, outcome: RepOutcome) -> dict:
    """Self-contained certificate document: context plus proof object."""
    payload = {
        "p": int(pair.p),
        "digits": list(pair.digits),
        "fixed": list(pair.fixed),
        "b": outcome.b,
        "method": outcome.method,
    }
    if outcome.trace is not None:
        payload["trace"] = trace_to_jsonable(outcome.trace)
    if outcome.certificate is not None:
        payload["certificate"] = certificate_to_jsonable(outcome.certificate)
    return payload


def _candidate_record(p: int, digits: tuple[int, ...]) -> dict:
    verdict = check_pair(digit_pair(p, digits))
    record: dict = {
        "size": len(digits),
        "digits": list(digits),
        "admissible": verdict.admissible,
        "methods": [[o.b, o.method] for o in verdict.outcomes],
    }
    if not verdict.admissible:
        refuting = verdict.outcomes[-1]
        record["refuted_b"] = refuting.b
        record["witness"] = [str(v) for v in refuting.certificate.witness]
    return record


def _sweep_worker(args) -> dict:
    return _candidate_record(*args)


class _Checkpoint:
    """Append-only JSONL store of candidate verdicts, keyed by (size, digits)."""

    def __init__(self, path) -> None:
        self.path = Path(path) if path else None
        self.records: dict[tuple[int, tuple[int, ...]], dict] = {}
        if self.path and self.path.exists():
            for line in self.path.read_text().splitlines():
                if line.strip():
                    rec = json.loads(line)
                    self.records[(rec["size"], tuple(rec["digits"]))] = rec
        self._fh = self.path.open("a") if self.path else None

    def get(self, size: int, digits: tuple[int, ...]):
        return self.records.get((size, digits))

    def add(self, rec: dict) -> None:
        self.records[(rec["size"], tuple(rec["digits"]))] = rec
        if self._fh:
            self._fh.write(json.dumps(rec, sort_keys=True) + "\n")
            self._fh.flush()

    def close(self) -> None:
        if self._fh:
            self._fh.close()


def max_admissible_size(
    p: int,
    budget: SearchBudget | None = None,
    checkpoint_path=None,
    workers: int = 1,
    cert_dir=None,
    min_size: int = 2,
    max_size: int | None = None,
) -> SearchReport:
    """Find the largest admissible digit-set size and prove its maximality.

    Ascends through sizes; a size is settled by the first admissible
    candidate, and the sweep ends at the first size where the full scan
    refutes every candidate, which is the maximality proof for size - 1.
    An exceeded budget yields a partial report (maximality not attempted),
    never an unproven claim; the same holds when the sweep is capped by
    ``max_size`` before reaching a fully refuted level.
    """
    p = Prime(p)
    budget = budget or SearchBudget()
    top = p - 1 if max_size is None else min(max_size, p - 1)
    started = time.monotonic()
    ckpt = _Checkpoint(checkpoint_path)
    examined = 0
    best: dict | None = None

    def exhausted() -> bool:
        if budget.max_seconds is not None and time.monotonic() - started > budget.max_seconds:
            return True
        if budget.max_candidates is not None and examined >= budget.max_candidates:
            return True
        return False

    def partial() -> SearchReport:
        return _finalize(p, best, examined, maximality="not-attempted",
                         refutations=(), budget_exhausted=True, cert_dir=cert_dir)

    pool = None
    try:
        if workers > 1:
            from multiprocessing import Pool
            pool = Pool(workers)
        for size in range(min_size, top + 1):
            level = list(candidates(p, size))
            pending = [(int(p), d) for d in level if ckpt.get(size, d) is None]
            results = pool.imap(_sweep_worker, pending, chunksize=8) if pool \
                else map(_sweep_worker, pending)
            found = None
            level_records = []
            for digits in level:
                if exhausted():
                    return partial()
                rec = ckpt.get(size, digits)
                if rec is None:
                    rec = next(results)
                    if cert_dir is not None and not rec["admissible"]:
                        rec["cert"] = store_certificate(
                            _refutation_payload(p, rec), cert_dir)
                    ckpt.add(rec)
                examined += 1
                level_records.append(rec)
                if rec["admissible"]:
                    found = rec
                    break
            if found is None:
                refutations = tuple(
                    Refutation(tuple(r["digits"]), r["refuted_b"],
                               tuple(int(v) for v in r["witness"]))
                    for r in level_records
                )
                return _finalize(p, best, examined, maximality="proven",
                                 refutations=refutations, budget_exhausted=False,
                                 cert_dir=cert_dir)
            best = found
        return _finalize(p, best, examined, maximality="not-attempted",
                         refutations=(), budget_exhausted=False, cert_dir=cert_dir)
    finally:
        ckpt.close()
        if pool is not None:
            pool.terminate()
            pool.join()


def _refutation_payload(p: int, rec: dict) -> dict:
    return {
        "p": int(p),
        "digits": rec["digits"],
        "fixed": rec["digits"],
        "b": rec["refuted_b"],
        "method": "cone",
        "certificate": {"kind": "nontrivial", "witness": rec["witness"]},
    }


def _finalize(p, best, examined, maximality, refutations, budget_exhausted,
              cert_dir) -> SearchReport:
    if best is None:
        return SearchReport(int(p), None, None, None, None, examined,
                            maximality, refutations, budget_exhausted)
    digits = tuple(best["digits"])
    minimal = minimize_fixed_digits(digits, p)
    bundle = check_pair(minimal).outcomes
    if cert_dir is not None:
        for outcome in bundle:
            store_certificate(certificate_payload(minimal, outcome), cert_dir)
    return SearchReport(
        int(p), len(digits), digits, minimal.fixed, bundle,
        examined, maximality, refutations, budget_exhausted,
    )


def minimize_fixed_digits(digits, p: int) -> DigitSetPair:
    """Smallest (then lexicographically least) admissible set of fixed digits."""
    digits = tuple(sorted(set(digits)))
    if not check_pair(digit_pair(p, digits)).admissible:
        raise ValueError(f"digit set {digits} is not admissible mod {p}")
    for size in range(len(digits) + 1):
        for fixed in combinations(digits, size):
            pair = digit_pair(p, digits, fixed)
            if check_pair(pair).admissible:
                return pair
    raise AssertionError("unreachable: the full digit set is admissible")
