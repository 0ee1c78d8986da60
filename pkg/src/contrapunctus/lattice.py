"""Finite carriers, subsets as bitmasks, and total endomap tables.

The subobject lattice of a finite carrier is the Boolean lattice of
bitmasks: meet is bitwise AND, join is bitwise OR, and endomaps act on
subsets through `image`. Everything here is immutable and safe to share.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .errors import CarrierMismatchError, SizeCapError, StructuralError

#: Largest supported carrier; keeps bitmask values allocation-cheap.
CARRIER_SIZE_CAP = 65_536


@dataclass(frozen=True)
class Carrier:
    """A finite set of `size` elements addressed by indices 0..size-1.

    `codec` is a short description of what the indices encode (residues,
    member bitmasks, cantus/interval pairs). Values are interchangeable
    only between carriers that agree on both size and codec.
    """

    size: int
    codec: str

    def __post_init__(self) -> None:
        if self.size < 1:
            raise StructuralError(f"carrier needs at least one element, got size {self.size}")
        if self.size > CARRIER_SIZE_CAP:
            raise SizeCapError(
                f"carrier size {self.size} exceeds the configured cap of {CARRIER_SIZE_CAP}"
            )

    def check_index(self, index: int) -> int:
        if not 0 <= index < self.size:
            raise StructuralError(f"index {index} out of range for carrier of size {self.size}")
        return index


def _same_carrier(a: SubSet | MapTable, b: SubSet | MapTable) -> Carrier:
    if a.carrier != b.carrier:
        raise CarrierMismatchError(
            f"incompatible carriers: {a.carrier.codec!r} (size {a.carrier.size}) "
            f"vs {b.carrier.codec!r} (size {b.carrier.size})"
        )
    return a.carrier


@dataclass(frozen=True)
class SubSet:
    """A subobject of a finite carrier, stored as a bitmask."""

    carrier: Carrier
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.carrier.size:
            raise StructuralError(
                f"bitmask {self.bits:#x} has bits outside a carrier of size {self.carrier.size}"
            )

    @classmethod
    def from_indices(cls, carrier: Carrier, indices: Iterable[int]) -> SubSet:
        bits = 0
        for i in indices:
            bits |= 1 << carrier.check_index(i)
        return cls(carrier, bits)

    @classmethod
    def empty(cls, carrier: Carrier) -> SubSet:
        return cls(carrier, 0)

    @classmethod
    def full(cls, carrier: Carrier) -> SubSet:
        return cls(carrier, (1 << carrier.size) - 1)

    def indices(self) -> list[int]:
        return list(self)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.carrier.size and (self.bits >> index) & 1 == 1

    def is_empty(self) -> bool:
        return self.bits == 0

    def le(self, other: SubSet) -> bool:
        """Subobject order: inclusion of bitmasks."""
        _same_carrier(self, other)
        return self.bits & ~other.bits == 0


@dataclass(frozen=True)
class MapTable:
    """A total endomap of a carrier, tabulated entry by entry."""

    carrier: Carrier
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.carrier.size:
            raise StructuralError(
                f"table has {len(self.table)} entries for a carrier of size {self.carrier.size}"
            )
        for value in self.table:
            if not 0 <= value < self.carrier.size:
                raise StructuralError(f"table entry {value} out of range")

    @classmethod
    def identity(cls, carrier: Carrier) -> MapTable:
        return cls(carrier, tuple(range(carrier.size)))

    def __call__(self, index: int) -> int:
        return self.table[self.carrier.check_index(index)]

    def compose(self, other: MapTable) -> MapTable:
        """self after other: x -> self(other(x))."""
        _same_carrier(self, other)
        mine = self.table
        return MapTable(self.carrier, tuple(mine[v] for v in other.table))

    def is_bijection(self) -> bool:
        return len(set(self.table)) == self.carrier.size


def image(f: MapTable, subset: SubSet) -> SubSet:
    """The image { f(x) : x in subset }."""
    _same_carrier(f, subset)
    table = f.table
    out = 0
    bits = subset.bits
    while bits:
        low = bits & -bits
        out |= 1 << table[low.bit_length() - 1]
        bits ^= low
    return SubSet(subset.carrier, out)


def meet(a: SubSet, b: SubSet) -> SubSet:
    carrier = _same_carrier(a, b)
    return SubSet(carrier, a.bits & b.bits)


def join(a: SubSet, b: SubSet) -> SubSet:
    carrier = _same_carrier(a, b)
    return SubSet(carrier, a.bits | b.bits)


def complement(subset: SubSet) -> SubSet:
    full = (1 << subset.carrier.size) - 1
    return SubSet(subset.carrier, subset.bits ^ full)


def fixed_point_free(f: MapTable) -> bool:
    """True iff f(x) != x for every x."""
    return all(value != x for x, value in enumerate(f.table))
