from __future__ import annotations

import random
from fractions import Fraction

import pytest

from contrapunctus.errors import StructuralError
from contrapunctus.fuzzy import FuzzyConsonance, is_crisp, pseudocomplement
from contrapunctus.lattice import Carrier, SubSet, complement

Z3 = Carrier(3, "graded 3-element carrier")


def test_pseudocomplement_example():
    kappa = FuzzyConsonance.of(Z3, ["1/2", 0, 1])
    assert pseudocomplement(kappa).grades == (Fraction(0), Fraction(1), Fraction(0))


def test_pseudocomplement_of_crisp_indicator_is_bitmask_complement():
    carrier = Carrier(12, "graded 12-element carrier")
    half = SubSet.from_indices(carrier, [0, 3, 4, 7, 8, 9])
    negated = pseudocomplement(FuzzyConsonance.from_crisp(half))
    assert negated.to_crisp() == complement(half)


def test_double_pseudocomplement_is_crisp():
    kappa = FuzzyConsonance.of(Z3, ["1/2", 0, 1])
    double = pseudocomplement(pseudocomplement(kappa))
    assert double.grades == (Fraction(1), Fraction(0), Fraction(1))
    assert is_crisp(double)


def test_is_crisp_examples():
    four = Carrier(4, "graded 4-element carrier")
    assert is_crisp(FuzzyConsonance.of(four, [0, 1, 1, 0]))
    two = Carrier(2, "graded 2-element carrier")
    assert not is_crisp(FuzzyConsonance.of(two, ["3/10", 1]))
    assert is_crisp(pseudocomplement(FuzzyConsonance.of(two, ["3/10", 1])))


def test_grade_bounds_are_enforced():
    with pytest.raises(StructuralError):
        FuzzyConsonance.of(Z3, [0, "3/2", 1])
    with pytest.raises(StructuralError):
        FuzzyConsonance.of(Z3, [0, -1, 1])


def test_float_grades_are_read_exactly():
    kappa = FuzzyConsonance.of(Z3, [0.5, 0.1, 1.0])
    assert kappa.grades == (Fraction(1, 2), Fraction(1, 10), Fraction(1))


def random_grading(rng: random.Random, size: int) -> FuzzyConsonance:
    carrier = Carrier(size, f"graded {size}-element carrier")
    grades = [Fraction(rng.randrange(0, 7), rng.randrange(7, 13)) for _ in range(size)]
    return FuzzyConsonance(carrier, tuple(grades))


def test_fuzzy_laws_on_random_gradings():
    rng = random.Random(42)
    for _ in range(100):
        kappa = random_grading(rng, rng.randrange(1, 17))
        negated = pseudocomplement(kappa)
        assert is_crisp(negated)
        assert pseudocomplement(pseudocomplement(negated)) == negated
