from __future__ import annotations

import random

import pytest

from contrapunctus.closure import (
    ClosureOperator,
    close_involutive,
    close_iterated,
    close_single_step,
    verify_kuratowski,
)
from contrapunctus.errors import StructuralError
from contrapunctus.lattice import MapTable, SubSet, image, join
from contrapunctus.worlds import AffineWorld, parse_morphism

A12 = AffineWorld(12)
Z12 = A12.carrier
E25 = parse_morphism("e2.5", A12)
E11 = parse_morphism("e1.1", A12)
THREE_CYCLE = MapTable(Z12, (1, 2, 0) + tuple(range(3, 12)))


def subset(*indices):
    return SubSet.from_indices(Z12, indices)


def every_subset():
    return (SubSet(Z12, bits) for bits in range(1 << 12))


def test_close_involutive_examples():
    assert close_involutive(E25, subset(0)) == subset(0, 2)
    consonant = subset(0, 3, 4, 7, 8, 9)
    assert close_involutive(E25, consonant) == SubSet.full(Z12)
    assert close_involutive(E25, SubSet.empty(Z12)) == SubSet.empty(Z12)


def test_close_involutive_rejects_non_involutions():
    with pytest.raises(StructuralError):
        close_involutive(E11, subset(0))
    with pytest.raises(StructuralError):
        ClosureOperator.of(E11, "involutive")


def test_close_single_step_examples():
    assert close_single_step(E11, subset(0)) == subset(0, 1)
    once = close_single_step(E11, subset(0))
    twice = close_single_step(E11, once)
    assert twice == subset(0, 1, 2) and twice != once
    constant = MapTable(Z12, (7,) * 12)
    assert close_single_step(constant, subset(3)) == subset(3, 7)


def test_close_iterated_examples():
    assert close_iterated(E11, subset(0)) == SubSet.full(Z12)
    for bits in range(0, 1 << 12, 17):
        m = SubSet(Z12, bits)
        assert close_iterated(E25, m) == close_involutive(E25, m)


def test_involutive_equals_iterated_exhaustively():
    for m in every_subset():
        assert close_iterated(E25, m) == close_involutive(E25, m)


def test_collapse_formula_for_finite_order_maps():
    # f^n = id collapses the iterated closure to the first n forward images
    cases = [(E25.table, 2), (THREE_CYCLE, 3), (E11.table, 12)]
    rng = random.Random(3)
    for table, order in cases:
        power = MapTable.identity(Z12)
        powers = []
        for _ in range(order):
            powers.append(power)
            power = table.compose(power)
        assert power == MapTable.identity(Z12)
        for _ in range(300):
            m = SubSet(Z12, rng.getrandbits(12))
            expected = SubSet.empty(Z12)
            for p in powers:
                expected = join(expected, image(p, m))
            assert close_iterated(table, m) == expected


def test_iterated_closure_is_a_fixpoint():
    rng = random.Random(5)
    for _ in range(200):
        m = SubSet(Z12, rng.getrandbits(12))
        closed = close_iterated(E11, m)
        assert close_single_step(E11, closed) == closed


def test_monotonicity_of_all_modes():
    rng = random.Random(9)
    for _ in range(200):
        small_bits = rng.getrandbits(12)
        big = SubSet(Z12, small_bits | rng.getrandbits(12))
        small = SubSet(Z12, small_bits)
        assert close_single_step(E11, small).le(close_single_step(E11, big))
        assert close_iterated(E11, small).le(close_iterated(E11, big))
        assert close_involutive(E25, small).le(close_involutive(E25, big))


def test_verify_involutive_exhaustive_clean():
    report = verify_kuratowski(ClosureOperator.of(E25, "involutive"), trials=200)
    assert report.exhaustive and report.ok
    assert report.checked["extensive"] == 4096 + 200


def test_verify_iterated_exhaustive_clean():
    report = verify_kuratowski(ClosureOperator.of(E11, "iterated"), trials=200)
    assert report.ok


def test_verify_single_step_reports_idempotence_witness():
    report = verify_kuratowski(ClosureOperator.of(E11, "single_step"))
    assert not report.ok
    idempotence = [v for v in report.violations if v.law == "idempotent"]
    assert idempotence and idempotence[0].witness_bits == (0b1,)  # the subset {0}
    assert all(v.law == "idempotent" for v in report.violations)


def test_closure_accepts_world_morphisms_and_tables():
    assert close_iterated(E25, subset(0)) == close_iterated(E25.table, subset(0))


def test_mode_validation():
    with pytest.raises(StructuralError):
        ClosureOperator.of(E25, "sideways")
