"""Fuzzy consonance grades and the Heyting pseudocomplement.

Grades are exact rationals so the "grade > 0" case split is exact; float
inputs are read through their decimal string form.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .errors import StructuralError
from .lattice import Carrier, SubSet


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        value = str(value)
    grade = Fraction(value)
    if not 0 <= grade <= 1:
        raise StructuralError(f"grade {grade} outside [0, 1]")
    return grade


@dataclass(frozen=True)
class FuzzyConsonance:
    """A grading of carrier elements by rational consonance degrees."""

    carrier: Carrier
    grades: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.grades) != self.carrier.size:
            raise StructuralError(
                f"{len(self.grades)} grades for a carrier of size {self.carrier.size}"
            )
        for grade in self.grades:
            if not 0 <= grade <= 1:
                raise StructuralError(f"grade {grade} outside [0, 1]")

    @classmethod
    def of(cls, carrier: Carrier, grades: Iterable) -> FuzzyConsonance:
        return cls(carrier, tuple(_as_fraction(g) for g in grades))

    @classmethod
    def from_crisp(cls, subset: SubSet) -> FuzzyConsonance:
        grades = tuple(
            Fraction(1) if i in subset else Fraction(0) for i in range(subset.carrier.size)
        )
        return cls(subset.carrier, grades)

    def to_crisp(self) -> SubSet:
        if not is_crisp(self):
            raise StructuralError("grading is not crisp")
        return SubSet.from_indices(
            self.carrier, (i for i, g in enumerate(self.grades) if g == 1)
        )


def pseudocomplement(kappa: FuzzyConsonance) -> FuzzyConsonance:
    """Pointwise: positive grades drop to 0, zero grades rise to 1."""
    grades = tuple(Fraction(0) if g > 0 else Fraction(1) for g in kappa.grades)
    return FuzzyConsonance(kappa.carrier, grades)


def is_crisp(kappa: FuzzyConsonance) -> bool:
    return all(g == 0 or g == 1 for g in kappa.grades)
