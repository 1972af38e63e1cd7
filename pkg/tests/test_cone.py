import random
from fractions import Fraction

import pytest

import golden as G
from affinecaps import (
    admissible,
    build_constraint_system,
    cone_trivial,
    digit_pair,
    digit_reducible,
    enumerate_progressions,
    integer_oracle,
    make_line_equation,
    matrix_reducible,
    verify_certificate,
)
from affinecaps.cone import InstanceTooLarge
from affinecaps.progressions import ConstraintSystem


def synth(rows):
    """Wrap a raw coefficient matrix as a constraint system for cone tests."""
    n = len(rows[0]) if rows else 0
    return ConstraintSystem(
        tuple(tuple(r) for r in rows),
        tuple((2, i) for i in range(len(rows))),
        tuple((j, j, j) for j in range(n)),
    )


def system_for(p, digits, fixed, b):
    pair = digit_pair(p, digits, fixed)
    return build_constraint_system(enumerate_progressions(pair, make_line_equation(p, b)))


def test_single_positive_column_is_trivial():
    cert = cone_trivial(synth([[1]]))
    assert cert.trivial
    assert cert.dual == (Fraction(1),)
    assert verify_certificate(synth([[1]]), cert)


def test_balanced_pair_is_nontrivial():
    cert = cone_trivial(synth([[1, -1]]))
    assert not cert.trivial
    assert cert.witness == (1, 1)
    assert verify_certificate(synth([[1, -1]]), cert)


def test_verify_rejects_bad_witness():
    system = synth([[1, -1]])
    from affinecaps.cone import ConeCertificate

    assert not verify_certificate(system, ConeCertificate("nontrivial", witness=(1, 0)))
    assert not verify_certificate(system, ConeCertificate("nontrivial", witness=(0, 0)))
    with pytest.raises(ValueError):
        verify_certificate(system, ConeCertificate("nontrivial", witness=(1, 0, 0)))
    with pytest.raises(ValueError):
        verify_certificate(system, ConeCertificate("trivial", dual=(Fraction(1), Fraction(1))))


def test_p23_published_pair_admissible_with_four_certificates():
    report = admissible(digit_pair(23, G.P23_DIGITS, G.P23_FIXED))
    assert report.admissible
    assert [b for b, _ in report.certificates] == [1, 2, 3, 4]
    for b, cert in report.certificates:
        assert cert.trivial
        assert verify_certificate(system_for(23, G.P23_DIGITS, G.P23_FIXED, b), cert)


def test_all_published_pairs_admissible():
    for p, (digits, fixed) in G.PUBLISHED_PAIRS.items():
        assert admissible(digit_pair(p, digits, fixed)).admissible


def test_p5_smallest_case_admissible():
    assert admissible(digit_pair(5, (0, 1, 2))).admissible


def test_p13_size5_samples_inadmissible():
    rng = random.Random(13)
    from itertools import combinations

    all_sets = [(0, 1) + rest for rest in combinations(range(2, 13), 3)]
    for digits in rng.sample(all_sets, 12):
        report = admissible(digit_pair(13, digits))
        assert not report.admissible
        refuting = [c for _, c in report.certificates if not c.trivial]
        assert refuting and all(
            verify_certificate(
                system_for(13, digits, digits, b), c
            ) for b, c in report.certificates if not c.trivial
        )


def test_dual_normalization_and_witness_gcd():
    rng = random.Random(555)
    for _ in range(60):
        rows = [[rng.choice((-1, 0, 0, 1)) for _ in range(rng.randint(1, 6))]
                for _ in range(rng.randint(1, 4))]
        width = max(len(r) for r in rows)
        rows = [r + [0] * (width - len(r)) for r in rows]
        system = synth(rows)
        cert = cone_trivial(system)
        assert verify_certificate(system, cert)
        if cert.trivial and system.n_cols:
            products = [
                sum(Fraction(system.matrix[i][j]) * cert.dual[i]
                    for i in range(system.n_rows))
                for j in range(system.n_cols)
            ]
            assert min(products) == 1
        if not cert.trivial:
            from math import gcd

            assert gcd(*cert.witness) == 1
            assert all(isinstance(v, int) for v in cert.witness)


def test_integer_oracle_examples():
    assert integer_oracle(synth([[1, -1]]), 1) == (1, 1)
    assert integer_oracle(synth([[1]]), 3) is None
    system = system_for(11, G.P11_DIGITS, G.P11_FIXED, 9)
    assert integer_oracle(system, 2) is None
    with pytest.raises(InstanceTooLarge):
        integer_oracle(synth([[1] * 40]), 3)


def test_oracle_agreement_small_fuzz():
    # a trivial cone contains nothing, so the box oracle must come up empty;
    # a nontrivial verdict must be confirmed by the oracle whenever the
    # emitted witness itself fits inside the box (rare instances need larger
    # entries, which the bounded oracle cannot see)
    rng = random.Random(808)
    for _ in range(200):
        n_cols = rng.randint(1, 5)
        n_rows = rng.randint(1, 4)
        rows = [[rng.choice((-1, 0, 0, 1)) for _ in range(n_cols)] for _ in range(n_rows)]
        system = synth(rows)
        cert = cone_trivial(system)
        found = integer_oracle(system, 3)
        if cert.trivial:
            assert found is None
        elif max(cert.witness) <= 3:
            assert found is not None
        else:
            assert integer_oracle(system, max(cert.witness)) is not None


def test_monotone_in_fixed_digits():
    rng = random.Random(909)
    for _ in range(25):
        p = rng.choice((5, 7, 11, 13))
        digits = tuple(sorted(rng.sample(range(p), rng.randint(2, min(5, p - 1)))))
        small = tuple(sorted(rng.sample(digits, rng.randint(0, len(digits)))))
        extra = tuple(sorted(set(small) | set(rng.sample(digits, rng.randint(0, len(digits))))))
        if admissible(digit_pair(p, digits, small)).admissible:
            assert admissible(digit_pair(p, digits, extra)).admissible


def test_reducibility_implies_cone_trivial():
    for p, (digits, fixed) in G.PUBLISHED_PAIRS.items():
        pair = digit_pair(p, digits, fixed)
        if digit_reducible(pair).reducible or matrix_reducible(pair).reducible:
            assert admissible(pair).admissible


def test_empty_fixed_set_detects_progressions():
    # with nothing pinned the cone is nontrivial as soon as any progression exists
    report = admissible(digit_pair(11, (0, 1, 3, 4, 5), ()))
    assert not report.admissible
    report2 = admissible(digit_pair(5, (0, 1), ()))
    assert report2.admissible  # no progressions at all


def test_certificates_use_exact_rationals():
    cert = cone_trivial(system_for(23, G.P23_DIGITS, G.P23_FIXED, 1))
    assert cert.trivial
    assert all(isinstance(v, Fraction) for v in cert.dual)
