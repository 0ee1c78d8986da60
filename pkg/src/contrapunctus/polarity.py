"""Quasipolarities, dichotomies, strong dichotomies, and their search.

A quasipolarity is an involutive, fixed-point-free member of a world's
morphism family. A dichotomy splits the carrier into halves K and D that
the quasipolarity exchanges; it is strong when exactly one quasipolarity
of the world does so. Strongness therefore always refers to an explicit
world: the same function can be a polarity in one morphism family and
fail uniqueness in a larger one.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import islice
from math import comb

from .errors import InvalidPolarityError, SizeCapError, StructuralError, WorldMismatchError
from .lattice import SubSet, complement, fixed_point_free, image
from .parallel import map_chunks
from .worlds import FinSetWorld, Morphism, World

#: classify_dichotomies caps: carrier size and iso-group size.
CLASSIFY_CARRIER_CAP = 16
CLASSIFY_ISO_CAP = 200_000
#: transversal searches refuse more than 2^TRANSVERSAL_BITS_CAP candidates.
TRANSVERSAL_BITS_CAP = 16


@dataclass(frozen=True)
class Dichotomy:
    """A (K/D) partition together with the quasipolarities exchanging K and D."""

    world: World
    K: SubSet
    D: SubSet
    witnesses: tuple[Morphism, ...]

    def __post_init__(self) -> None:
        if self.K.carrier != self.world.carrier or self.D.carrier != self.world.carrier:
            raise StructuralError("dichotomy halves must live on the world's carrier")
        if self.K.bits & self.D.bits:
            raise StructuralError("dichotomy halves overlap")
        if self.K.bits | self.D.bits != (1 << self.world.carrier.size) - 1:
            raise StructuralError("dichotomy halves do not cover the carrier")
        for witness in self.witnesses:
            if not is_quasipolarity(self.world, witness):
                raise InvalidPolarityError(f"witness {witness} is not a quasipolarity")
            if image(witness.table, self.K) != self.D:
                raise InvalidPolarityError(f"witness {witness} does not map K onto D")

    @property
    def is_strong(self) -> bool:
        return len(self.witnesses) == 1


@dataclass(frozen=True)
class DichotomyClass:
    """An orbit of half-size subsets under the world's isomorphism group."""

    representative: Dichotomy
    orbit_size: int
    is_strong: bool
    has_quasipolarity: bool


def is_quasipolarity(world: World, p: Morphism) -> bool:
    """Involutive, fixed-point-free isomorphism of the world."""
    if p.world != world:
        raise WorldMismatchError(f"morphism of {p.world.id} offered to {world.id}")
    if not p.is_iso():
        return False
    if not p.compose(p).is_identity():
        return False
    return fixed_point_free(p.table)


def _iter_quasipolarities(world: World) -> Iterator[Morphism]:
    if isinstance(world, FinSetWorld):
        # Quasipolarities of a bare finite set are exactly the fixed-point-free
        # involutions; generate them directly instead of scanning all n! maps.
        yield from (Morphism(world, table) for table in _fpf_involution_tables(world.n))
        return
    identity = world.identity_params()
    for candidate in world.enumerate_isos():
        if world.compose_params(candidate.params, candidate.params) != identity:
            continue
        if fixed_point_free(candidate.table):
            yield candidate


def enumerate_quasipolarities(world: World) -> list[Morphism]:
    """All quasipolarities of the world in canonical order."""
    return list(_iter_quasipolarities(world))


def _fpf_involution_tables(n: int) -> Iterator[tuple[int, ...]]:
    """Fixed-point-free involutions of {0..n-1} in lexicographic table order."""
    if n % 2:
        return
    table = [-1] * n

    def pair_from(start: int) -> Iterator[tuple[int, ...]]:
        while start < n and table[start] >= 0:
            start += 1
        if start == n:
            yield tuple(table)
            return
        for partner in range(start + 1, n):
            if table[partner] >= 0:
                continue
            table[start], table[partner] = partner, start
            yield from pair_from(start + 1)
            table[start], table[partner] = -1, -1

    yield from pair_from(0)


def is_dichotomy(world: World, p: Morphism, half: SubSet) -> bool:
    """True iff p exchanges `half` with its complement."""
    if not is_quasipolarity(world, p):
        raise InvalidPolarityError(f"{p} is not a quasipolarity of {world.id}")
    return image(p.table, half) == complement(half)


def _check_half_subset(world: World, half: SubSet) -> None:
    size = world.carrier.size
    if size % 2:
        raise StructuralError(f"carrier of {world.id} has odd size {size}; no half-size partition")
    if half.carrier != world.carrier:
        raise StructuralError("subset does not live on the world's carrier")
    if len(half) != size // 2:
        raise StructuralError(f"subset has {len(half)} elements, expected {size // 2}")


def _iter_witnesses(world: World, half: SubSet) -> Iterator[Morphism]:
    target = complement(half)
    for p in _iter_quasipolarities(world):
        if image(p.table, half) == target:
            yield p


def quasipolarities_for(world: World, half: SubSet) -> list[Morphism]:
    """All quasipolarities mapping `half` onto its complement, canonical order."""
    _check_half_subset(world, half)
    return list(_iter_witnesses(world, half))


def is_strong(world: World, half: SubSet) -> bool:
    """Exactly one quasipolarity of the world exchanges the halves."""
    _check_half_subset(world, half)
    return len(list(islice(_iter_witnesses(world, half), 2))) == 1


def dichotomy_for(world: World, half: SubSet) -> Dichotomy:
    witnesses = tuple(quasipolarities_for(world, half))
    return Dichotomy(world, half, complement(half), witnesses)


def _apply_bits(table: tuple[int, ...], bits: int) -> int:
    out = 0
    while bits:
        low = bits & -bits
        out |= 1 << table[low.bit_length() - 1]
        bits ^= low
    return out


def classify_dichotomies(
    world: World,
    *,
    carrier_cap: int = CLASSIFY_CARRIER_CAP,
    iso_cap: int = CLASSIFY_ISO_CAP,
) -> list[DichotomyClass]:
    """Partition all half-size subsets into orbits under the iso group.

    Deterministic: representatives are the lexicographically least bitmasks
    of their orbits and classes are sorted by representative.
    """
    size = world.carrier.size
    if size % 2:
        raise StructuralError(f"carrier of {world.id} has odd size {size}; nothing to classify")
    if size > carrier_cap:
        raise SizeCapError(f"carrier size {size} exceeds the classification cap {carrier_cap}")
    if world.iso_group_size > iso_cap:
        raise SizeCapError(
            f"iso group of {world.id} has {world.iso_group_size} elements, cap is {iso_cap}"
        )

    iso_tables = [morphism.table.table for morphism in world.enumerate_isos()]
    half = size // 2
    subsets = [bits for bits in range(1 << size) if bits.bit_count() == half]

    def canonical_chunk(chunk: list[int]) -> list[tuple[int, int]]:
        return [(bits, min(_apply_bits(table, bits) for table in iso_tables)) for bits in chunk]

    orbit_sizes: dict[int, int] = {}
    for chunk_result in map_chunks(canonical_chunk, subsets, chunk_size=256):
        for _bits, canon in chunk_result:
            orbit_sizes[canon] = orbit_sizes.get(canon, 0) + 1

    total = sum(orbit_sizes.values())
    if total != comb(size, half):
        raise StructuralError(f"orbit partition lost subsets: {total} != {comb(size, half)}")

    classes = []
    for canon in sorted(orbit_sizes):
        representative = dichotomy_for(world, SubSet(world.carrier, canon))
        classes.append(
            DichotomyClass(
                representative=representative,
                orbit_size=orbit_sizes[canon],
                is_strong=representative.is_strong,
                has_quasipolarity=bool(representative.witnesses),
            )
        )
    return classes


def _polarity_cycles(p: Morphism) -> list[tuple[int, int]]:
    """The 2-cycles of a quasipolarity, sorted by smaller element."""
    table = p.table.table
    return [(x, table[x]) for x in range(len(table)) if x < table[x]]


def find_dichotomy(world: World, p: Morphism) -> SubSet | None:
    """Some half-size subset exchanged with its complement by p, if any.

    On a finite set carrier every quasipolarity pairs the elements, so the
    set of cycle minima always works; the result is verified, not assumed.
    """
    if not is_quasipolarity(world, p):
        raise InvalidPolarityError(f"{p} is not a quasipolarity of {world.id}")
    half = SubSet.from_indices(world.carrier, (low for low, _high in _polarity_cycles(p)))
    if image(p.table, half) != complement(half):
        return None
    return half


def _transversals(world: World, p: Morphism) -> Iterator[SubSet]:
    """All half-size subsets K with p(K) = complement(K), ascending bitmask."""
    cycles = _polarity_cycles(p)
    if len(cycles) > TRANSVERSAL_BITS_CAP:
        raise SizeCapError(
            f"{1 << len(cycles)} transversals exceed the cap of 2^{TRANSVERSAL_BITS_CAP}"
        )
    masks = []
    for choice in range(1 << len(cycles)):
        bits = 0
        for index, (low, high) in enumerate(cycles):
            bits |= 1 << (high if (choice >> index) & 1 else low)
        masks.append(bits)
    for bits in sorted(masks):
        yield SubSet(world.carrier, bits)


def dichotomies_for(world: World, p: Morphism) -> list[SubSet]:
    """All K making (K/complement K) a dichotomy for p, ascending bitmask."""
    if not is_quasipolarity(world, p):
        raise InvalidPolarityError(f"{p} is not a quasipolarity of {world.id}")
    return list(_transversals(world, p))


def search_nonpolar_quasipolarity(
    world: World, *, require: str = "strong"
) -> tuple[Morphism, dict] | None:
    """First quasipolarity lacking a dichotomy (require="dichotomy") or a
    strong dichotomy (require="strong"), with evidence; None if all pass."""
    if require not in ("dichotomy", "strong"):
        raise ValueError(f"unknown search mode {require!r}")
    for p in _iter_quasipolarities(world):
        half = find_dichotomy(world, p)
        if require == "dichotomy":
            if half is None:
                return p, {"searched": "dichotomy", "has_dichotomy": False}
            continue
        tested = 0
        found_strong = None
        for candidate in _transversals(world, p):
            tested += 1
            witnesses = list(islice(_iter_witnesses(world, candidate), 2))
            if len(witnesses) == 1:
                found_strong = candidate
                break
        if found_strong is None:
            sample = next(_transversals(world, p), None)
            sample_witnesses: tuple[str, ...] = ()
            if sample is not None:
                sample_witnesses = tuple(
                    str(q) for q in islice(_iter_witnesses(world, sample), 4)
                )
            return p, {
                "searched": "strong",
                "has_dichotomy": half is not None,
                "tested_subsets": tested,
                "sample_subset": tuple(sample) if sample is not None else None,
                "sample_witnesses": sample_witnesses,
            }
    return None
