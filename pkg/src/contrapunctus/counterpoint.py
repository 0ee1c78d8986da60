"""Counterpoint symmetries and admitted-successor search on dual worlds.

A contrapuntal context pairs a ring world with a dichotomy whose polarity
e<u>.<a> lifts to the dual world as p_0 = e<0>+e<u>.(<a>+e<0>): the
eps-translation-only involution that restricts to the base polarity on
the cantus-0 fiber. Consonant dyads are the pairs x + eps*k with k in K.

A counterpoint symmetry for a consonance is a dual-world isomorphism that
commutes with p_0, turns the consonance into a deformed dissonance, and
maximizes the overlap of deformed consonances with consonances; admitted
successors are that overlap, united over all maximizing symmetries.
Searches run over the full iso group by default; `restricted=True` limits
candidates to the eps-only family e<0>+e<U>.(<1>+e<W>).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    AdmissibilityError,
    CarrierMismatchError,
    InvalidPolarityError,
    StructuralError,
    WorldMismatchError,
)
from .lattice import SubSet, image
from .parallel import map_chunks
from .polarity import Dichotomy, is_quasipolarity, quasipolarities_for
from .worlds import DualElement, DualWorld, Morphism, RingAffineWorld, dual_lift


@dataclass(frozen=True)
class ContrapuntalContext:
    """A ring world, a dichotomy with designated polarity, and its dual lift."""

    base: RingAffineWorld
    dichotomy: Dichotomy
    polarity: Morphism
    dual: DualWorld
    consonances_eps: SubSet
    dissonances_eps: SubSet
    induced_polarity: Morphism

    @classmethod
    def build(
        cls,
        base: RingAffineWorld,
        half: SubSet | Iterable[int],
        polarity: Morphism | None = None,
    ) -> ContrapuntalContext:
        """Build a context from the consonance half K.

        Without an explicit polarity the dichotomy must be strong; the
        witnesses of a non-strong one are attached to the raised error.
        An explicit polarity only needs to exchange K with its complement.
        """
        dual = dual_lift(base)  # validates that `base` is a liftable ring world
        if not isinstance(half, SubSet):
            half = SubSet.from_indices(base.carrier, half)
        witnesses = quasipolarities_for(base, half)
        if polarity is None:
            if len(witnesses) != 1:
                raise InvalidPolarityError(
                    f"dichotomy is not strong in {base.id}: "
                    f"{len(witnesses)} quasipolarities exchange the halves",
                    witnesses=witnesses,
                )
            polarity = witnesses[0]
        elif polarity not in witnesses:
            raise InvalidPolarityError(
                f"{polarity} does not exchange the given halves in {base.id}",
                witnesses=witnesses,
            )
        dichotomy = Dichotomy(base, half, _complement_in(half), tuple(witnesses))

        size = base.carrier.size
        cons_bits = 0
        diss_bits = 0
        for x in range(size):
            cons_bits |= dichotomy.K.bits << (x * size)
            diss_bits |= dichotomy.D.bits << (x * size)
        consonances = SubSet(dual.carrier, cons_bits)
        dissonances = SubSet(dual.carrier, diss_bits)

        u, a = polarity.params
        induced = dual.morphism(
            (dual.dual_ring.encode(base.ring.zero, u), dual.dual_ring.encode(a, base.ring.zero))
        )
        if not is_quasipolarity(dual, induced):
            raise InvalidPolarityError(f"induced morphism {induced} is not a quasipolarity")
        if image(induced.table, consonances) != dissonances:
            raise InvalidPolarityError(
                f"induced polarity {induced} does not exchange consonances and dissonances"
            )
        return cls(
            base=base,
            dichotomy=dichotomy,
            polarity=polarity,
            dual=dual,
            consonances_eps=consonances,
            dissonances_eps=dissonances,
            induced_polarity=induced,
        )

    def interval_indices(self) -> list[int]:
        """Consonant intervals (elements of K) in ascending encoding."""
        return self.dichotomy.K.indices()

    def dyad(self, cantus: int, interval: int) -> int:
        return self.dual.encode_element(cantus, interval)

    def zero_fiber(self) -> SubSet:
        """The cantus-0 fiber {0 + eps*y} of the dual carrier."""
        return SubSet(self.dual.carrier, (1 << self.base.carrier.size) - 1)


def _complement_in(half: SubSet) -> SubSet:
    full = (1 << half.carrier.size) - 1
    return SubSet(half.carrier, half.bits ^ full)


@dataclass(frozen=True)
class SymmetryReport:
    """Maximizing symmetries of one consonance and the steps they admit."""

    consonance: SubSet
    symmetries: tuple[Morphism, ...]
    max_meet_size: int
    admitted: SubSet


@dataclass(frozen=True)
class _Survivor:
    morphism: Morphism
    deformed_cons_bits: int
    deformed_diss_bits: int
    meet_size: int


def restricted_family(dual: DualWorld) -> Iterator[Morphism]:
    """The eps-only isomorphisms e<0>+e<U>.(<1>+e<W>), canonical order."""
    ring = dual.dual_ring
    base = dual.base.ring
    for u in range(base.size):
        translation = ring.encode(base.zero, u)
        for w in range(base.size):
            yield Morphism(dual, (translation, ring.encode(base.one, w)))


def is_restricted_family_morphism(g: Morphism) -> bool:
    if not isinstance(g.world, DualWorld):
        return False
    ring = g.world.dual_ring
    base = g.world.base.ring
    translation, multiplier = g.params
    tc, _ti = ring.decode(translation)
    ma, _mb = ring.decode(multiplier)
    return tc == base.zero and ma == base.one


def _apply_bits(table: tuple[int, ...], bits: int) -> int:
    out = 0
    while bits:
        low = bits & -bits
        out |= 1 << table[low.bit_length() - 1]
        bits ^= low
    return out


@lru_cache(maxsize=32)
def _survivors(
    ctx: ContrapuntalContext, restricted: bool, polarity: Morphism
) -> tuple[_Survivor, ...]:
    """Commuting iso candidates with their deformed sets, canonical order."""
    dual = ctx.dual
    cons_bits = ctx.consonances_eps.bits
    diss_bits = ctx.dissonances_eps.bits
    p0_params = polarity.params

    def eval_chunk(chunk: list[Morphism]) -> list[_Survivor]:
        kept = []
        for g in chunk:
            if dual.compose_params(g.params, p0_params) != dual.compose_params(
                p0_params, g.params
            ):
                continue
            table = g.table.table
            deformed_cons = _apply_bits(table, cons_bits)
            deformed_diss = _apply_bits(table, diss_bits)
            kept.append(
                _Survivor(g, deformed_cons, deformed_diss, (deformed_cons & cons_bits).bit_count())
            )
        return kept

    candidates = restricted_family(dual) if restricted else dual.enumerate_isos()
    chunks = map_chunks(eval_chunk, candidates, chunk_size=512)
    return tuple(survivor for chunk in chunks for survivor in chunk)


def _as_consonance_subset(ctx: ContrapuntalContext, consonance) -> SubSet:
    """Coerce a point (DualElement, (cantus, interval) pair, or dual index)
    or a generalized consonance (SubSet of the cantus-0 fiber) to a SubSet."""
    if isinstance(consonance, SubSet):
        if consonance.carrier != ctx.dual.carrier:
            raise CarrierMismatchError("generalized consonance must live on the dual carrier")
        if consonance.is_empty():
            raise StructuralError("generalized consonance must be nonempty")
        if not consonance.le(ctx.zero_fiber()):
            raise StructuralError("generalized consonances are supported on the cantus-0 fiber")
        if not consonance.le(ctx.consonances_eps):
            raise StructuralError("generalized consonance contains dissonant intervals")
        return consonance
    if isinstance(consonance, DualElement):
        index = ctx.dyad(consonance.cantus, consonance.interval)
    elif isinstance(consonance, tuple) and len(consonance) == 2:
        index = ctx.dyad(*consonance)
    elif isinstance(consonance, int):
        index = ctx.dual.carrier.check_index(consonance)
    else:
        raise StructuralError(f"cannot interpret {consonance!r} as a consonance")
    if index not in ctx.consonances_eps:
        raise StructuralError(
            f"dyad {ctx.dual.element_label(index)} is not consonant in this context"
        )
    return SubSet(ctx.dual.carrier, 1 << index)


def deformed_consonances(ctx: ContrapuntalContext, g: Morphism) -> SubSet:
    """Image of the consonant dyads under g."""
    _check_dual_iso(ctx, g)
    return image(g.table, ctx.consonances_eps)


def deformed_dissonances(ctx: ContrapuntalContext, g: Morphism) -> SubSet:
    _check_dual_iso(ctx, g)
    return image(g.table, ctx.dissonances_eps)


def _check_dual_iso(ctx: ContrapuntalContext, g: Morphism) -> None:
    if g.world != ctx.dual:
        raise WorldMismatchError(f"morphism of {g.world.id} offered to {ctx.dual.id}")
    if not g.is_iso():
        raise AdmissibilityError(f"{g} is not an isomorphism of {ctx.dual.id}")


def is_deformed_dissonance(ctx: ContrapuntalContext, g: Morphism, consonance) -> bool:
    """Condition i: the consonance lies inside the g-deformed dissonances."""
    subset = _as_consonance_subset(ctx, consonance)
    deformed = deformed_dissonances(ctx, g)
    return subset.le(deformed)


def commutes_with_polarity(ctx: ContrapuntalContext, g: Morphism) -> bool:
    """Condition ii, decided on realized tables: g o p_0 = p_0 o g."""
    _check_dual_iso(ctx, g)
    p0 = ctx.induced_polarity
    return g.compose(p0).table == p0.compose(g).table


def _cantus_translation(ctx: ContrapuntalContext, cantus: int) -> Morphism:
    ring = ctx.dual.dual_ring
    return ctx.dual.morphism((ring.encode(cantus, ctx.base.ring.zero), ring.one))


def _search_zero_fiber(
    ctx: ContrapuntalContext,
    subset: SubSet,
    *,
    restricted: bool,
    polarity: Morphism,
) -> SymmetryReport:
    survivors = _survivors(ctx, restricted, polarity)
    bits = subset.bits
    candidates = [s for s in survivors if bits & ~s.deformed_diss_bits == 0]
    if not candidates:
        return SymmetryReport(subset, (), 0, SubSet.empty(ctx.dual.carrier))
    best = max(s.meet_size for s in candidates)
    winners = [s for s in candidates if s.meet_size == best]
    admitted = 0
    for s in winners:
        admitted |= s.deformed_cons_bits & ctx.consonances_eps.bits
    return SymmetryReport(
        consonance=subset,
        symmetries=tuple(s.morphism for s in winners),
        max_meet_size=best,
        admitted=SubSet(ctx.dual.carrier, admitted),
    )


def counterpoint_symmetries(
    ctx: ContrapuntalContext, consonance, *, restricted: bool = False
) -> SymmetryReport:
    """All maximizing counterpoint symmetries for the consonance.

    Cantus values other than 0 are handled by conjugating the cantus-0
    report with the cantus translation; `_search_direct` below performs
    the unreduced search and is used to test that convention.
    """
    subset = _as_consonance_subset(ctx, consonance)
    point = subset.indices()
    if len(point) == 1:
        cantus, interval = ctx.dual.dual_ring.decode(point[0])
        if cantus != ctx.base.ring.zero:
            zero_report = counterpoint_symmetries(ctx, (0, interval), restricted=restricted)
            return _conjugate_report(ctx, zero_report, cantus)
    return _search_zero_fiber(ctx, subset, restricted=restricted, polarity=ctx.induced_polarity)


def _conjugate_report(
    ctx: ContrapuntalContext, report: SymmetryReport, cantus: int
) -> SymmetryReport:
    translation = _cantus_translation(ctx, cantus)
    inverse = translation.inverse()
    symmetries = tuple(
        sorted(
            (translation.compose(g).compose(inverse) for g in report.symmetries),
            key=lambda m: m.params,
        )
    )
    admitted = image(translation.table, report.admitted)
    consonance = image(translation.table, report.consonance)
    return SymmetryReport(consonance, symmetries, report.max_meet_size, admitted)


def _search_direct(
    ctx: ContrapuntalContext, consonance, *, restricted: bool = False
) -> SymmetryReport:
    """Unreduced search for a single dyad: conditions are evaluated against
    the polarity conjugated to the dyad's own cantus."""
    subset = _as_consonance_subset(ctx, consonance)
    (index,) = subset.indices()
    cantus, _interval = ctx.dual.dual_ring.decode(index)
    polarity = ctx.induced_polarity
    if cantus != ctx.base.ring.zero:
        translation = _cantus_translation(ctx, cantus)
        polarity = translation.compose(polarity).compose(translation.inverse())
    return _search_zero_fiber(ctx, subset, restricted=restricted, polarity=polarity)


def successors_table(
    ctx: ContrapuntalContext, *, restricted: bool = False
) -> dict[int, SymmetryReport]:
    """One report per consonant interval, for cantus firmus 0."""
    return {
        interval: counterpoint_symmetries(ctx, (ctx.base.ring.zero, interval), restricted=restricted)
        for interval in ctx.interval_indices()
    }


def admitted_next_intervals(
    ctx: ContrapuntalContext, report: SymmetryReport, next_cantus: int
) -> SubSet:
    """The fiber of the admitted steps over a chosen next cantus note."""
    ctx.base.carrier.check_index(next_cantus)
    size = ctx.base.carrier.size
    fiber = (report.admitted.bits >> (next_cantus * size)) & ((1 << size) - 1)
    return SubSet(ctx.base.carrier, fiber)


def admitted_pairs(ctx: ContrapuntalContext, report: SymmetryReport) -> list[tuple[int, int]]:
    """Admitted steps as (cantus, interval) pairs in ascending encoding."""
    decode = ctx.dual.dual_ring.decode
    return [decode(index) for index in report.admitted]


def report_entry(ctx: ContrapuntalContext, interval: int, report: SymmetryReport) -> dict:
    return {
        "interval": interval,
        "symmetries": [str(m) for m in report.symmetries],
        "max_meet_size": report.max_meet_size,
        "admitted": [[cantus, step] for cantus, step in admitted_pairs(ctx, report)],
    }


def successors_document(ctx: ContrapuntalContext, table: dict[int, SymmetryReport]) -> dict:
    """Canonical JSON document for a full successors table."""
    return {
        "world": ctx.base.id,
        "K": ctx.dichotomy.K.indices(),
        "polarity": str(ctx.polarity),
        "intervals": [report_entry(ctx, interval, table[interval]) for interval in sorted(table)],
    }
