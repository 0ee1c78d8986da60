from __future__ import annotations

from itertools import islice

import pytest

from contrapunctus.errors import ParseError, StructuralError
from contrapunctus.worlds import (
    AffineWorld,
    FinSetWorld,
    PowerSetWorld,
    SymAffineWorld,
    dual_lift,
    parse_morphism,
    parse_world,
)

A12 = AffineWorld(12)


def test_realize_affine_example():
    table = parse_morphism("e2.5", A12).table
    assert table(0) == 2 and table(3) == 5 and table(7) == 1


def test_realize_powerset_complementation():
    world = PowerSetWorld(3)
    comp = parse_morphism("eS.S", world).table
    assert all(comp(x) == x ^ 0b111 for x in range(8))


def test_realize_dual_example():
    dual = dual_lift(AffineWorld(12))
    morphism = parse_morphism("e0+e2.(5+e0)", dual)
    start = dual.encode_element(0, 7)
    end = dual.decode_element(morphism.table(start))
    assert (end.cantus, end.interval) == (0, 1)


def test_compose_affine_examples():
    p = parse_morphism("e2.5", A12)
    assert p.compose(p).params == (0, 1)
    q = parse_morphism("e1.11", A12)
    assert q.compose(q).params == (0, 1)
    g = parse_morphism("e7.5", A12)
    assert A12.identity().compose(g) == g and g.compose(A12.identity()) == g


def test_parse_normalizes_negative_multipliers():
    assert str(parse_morphism("e1.-1", A12)) == "e1.11"
    assert parse_morphism("e1.-1", A12) == parse_morphism("e1.11", A12)


def test_parse_round_trips_are_bit_exact():
    cases = [
        (A12, ["e0.1", "e2.5", "e11.11"]),
        (FinSetWorld(4), ["perm:1,0,3,2", "perm:0,0,0,0"]),
        (PowerSetWorld(3), ["e0.S", "eS.S", "ea-c.b", "eb.0"]),
        (dual_lift(AffineWorld(12)), ["e0+e2.(5+e0)", "e3+e11.(11+e4)"]),
        (dual_lift(PowerSetWorld(2)), ["e0+eS.(S+e0)", "ea+eb.(S+ea)"]),
        (dual_lift(PowerSetWorld(3)), ["ea-b+ec.(S+ea-c)"]),
    ]
    for world, texts in cases:
        for text in texts:
            assert str(parse_morphism(text, world)) == text


def test_parse_errors_carry_the_offending_token():
    with pytest.raises(ParseError) as err:
        parse_morphism("e2x.5", A12)
    assert err.value.token == "e2x.5"
    with pytest.raises(ParseError):
        parse_morphism("perm:0,1,2,should-be-int", FinSetWorld(4))
    with pytest.raises(ParseError):
        parse_morphism("eq.S", PowerSetWorld(2))
    with pytest.raises(ParseError):
        parse_world("affine")
    with pytest.raises(ParseError):
        parse_world("galaxy:12")


def test_symaffine_rejects_non_unit_multipliers():
    with pytest.raises(ParseError):
        parse_morphism("e2.5", SymAffineWorld(12))
    assert str(parse_morphism("e1.-1", SymAffineWorld(12))) == "e1.11"


def test_enumerate_isos_counts():
    assert sum(1 for _ in A12.enumerate_isos()) == 48 == A12.iso_group_size
    assert sum(1 for _ in FinSetWorld(3).enumerate_isos()) == 6
    assert sum(1 for _ in PowerSetWorld(2).enumerate_isos()) == 4
    dual = dual_lift(AffineWorld(12))
    assert dual.iso_group_size == 6912
    assert sum(1 for _ in dual.enumerate_isos()) == 6912


def test_enumerate_isos_is_lazy_and_canonical():
    dual = dual_lift(AffineWorld(12))
    first = list(islice(dual.enumerate_isos(), 3))
    params = [m.params for m in first]
    assert params == sorted(params)
    assert str(first[0]) == "e0+e0.(1+e0)"


def test_realize_is_functorial_on_affine12():
    morphisms = [A12.morphism((u, a)) for u in range(12) for a in range(12)]
    for g in morphisms:
        for h in morphisms:
            composed = g.compose(h)
            assert composed.table == g.table.compose(h.table)
    assert A12.identity().table.table == tuple(range(12))


def test_realization_is_faithful_for_small_affine_worlds():
    for n in range(2, 13):
        world = AffineWorld(n)
        tables = {world.morphism((u, a)).table.table for u in range(n) for a in range(n)}
        assert len(tables) == n * n


def test_iso_group_closure_under_compose_and_inverse():
    for world in (AffineWorld(12), FinSetWorld(3), PowerSetWorld(2)):
        isos = list(world.enumerate_isos())
        iso_params = {m.params for m in isos}
        for g in isos:
            assert g.inverse().params in iso_params
        for g in isos[:12]:
            for h in isos[:12]:
                assert g.compose(h).params in iso_params


def test_dual_ring_eps_squared_is_zero():
    dual = dual_lift(AffineWorld(12))
    ring = dual.dual_ring
    eps = ring.encode(0, 1)
    assert ring.mul(eps, eps) == ring.zero
    assert dual.carrier.size == 144


def test_dual_lift_sizes_and_errors():
    assert dual_lift(AffineWorld(12)).carrier.size == 144
    assert dual_lift(PowerSetWorld(2)).carrier.size == 16
    with pytest.raises(StructuralError):
        dual_lift(FinSetWorld(3))
    with pytest.raises(StructuralError):
        dual_lift(dual_lift(AffineWorld(12)))
    with pytest.raises(StructuralError):
        dual_lift(SymAffineWorld(12))


def test_powerset_dual_multiplication_matches_symmetric_difference_form():
    # (1 + eps.W)(x + eps.y) = x + eps.(y xor (W and x)) for every x, y, W
    dual = dual_lift(PowerSetWorld(2))
    ring = dual.dual_ring
    for w in range(4):
        multiplier = ring.encode(0b11, w)
        for x in range(4):
            for y in range(4):
                product = ring.mul(multiplier, ring.encode(x, y))
                assert product == ring.encode(x, y ^ (w & x))


def test_parse_world_round_trip():
    for spec in ("affine:12", "symaffine:12", "finset:5", "powerset:3", "dual:affine:12", "dual:powerset:2"):
        assert parse_world(spec).id == spec
    with pytest.raises(ParseError):
        parse_world("dual:finset:3")
    with pytest.raises(ParseError):
        parse_world("dual:dual:affine:12")


def test_morphism_equality_is_parametric():
    assert A12.morphism((2, 5)) == parse_morphism("e2.5", A12)
    assert A12.morphism((2, 5)) != A12.morphism((2, 7))
    other = AffineWorld(12)
    assert A12.morphism((2, 5)) == other.morphism((2, 5))  # same world id
