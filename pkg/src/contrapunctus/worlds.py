"""Morphism worlds: finite carriers with a distinguished morphism family.

A world couples a carrier with a parametric family of endomaps and
realizes every morphism as a total function table. Supported worlds:

* ``affine:<n>``     affine maps ``e<u>.<a>: x -> a*x + u`` on Z_n
* ``symaffine:<n>``  the same maps restricted to ``a = +-1``
* ``finset:<n>``     all total maps of an n-point set, ``perm:<images>``
* ``powerset:<n>``   affine maps ``e<U>.<W>: x -> U xor (W and x)`` on the
                     Boolean ring of subsets of an n-member set
* ``dual:<base>``    dual numbers over an affine or power-set base,
                     ``e<U>+e<V>.(<A>+e<B>)`` acting on pairs x + eps*y

Isomorphism groups are enumerated lazily in a canonical order:
lexicographic on the parameter record (translation first, multiplier
second; table order for finset permutations).
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from math import factorial

from .errors import AdmissibilityError, ParseError, StructuralError, WorldMismatchError
from .lattice import Carrier, MapTable
from .rings import BooleanSubsetRing, DualNumberRing, Ring, ZModRing

_POWERSET_MEMBER_NAMES = "abcdefghijklmnop"


@dataclass(frozen=True)
class Morphism:
    """A world-tagged endomap with parametric form and cached table."""

    world: "World"
    params: tuple

    @cached_property
    def table(self) -> MapTable:
        return self.world.realize_params(self.params)

    def compose(self, other: Morphism) -> Morphism:
        """self after other: x -> self(other(x))."""
        if self.world != other.world:
            raise WorldMismatchError(
                f"cannot compose morphisms of {self.world.id} and {other.world.id}"
            )
        return Morphism(self.world, self.world.compose_params(self.params, other.params))

    def inverse(self) -> Morphism:
        return Morphism(self.world, self.world.invert_params(self.params))

    def is_iso(self) -> bool:
        return self.world.is_iso_params(self.params)

    def is_identity(self) -> bool:
        return self.params == self.world.identity_params()

    def __str__(self) -> str:
        return self.world.format_params(self.params)

    def __repr__(self) -> str:
        return f"Morphism({self.world.id}, {self})"


@dataclass(frozen=True)
class DualElement:
    """A point x + eps*y of a dual world: cantus firmus plus interval."""

    cantus: int
    interval: int


class World:
    """Base class; concrete worlds fill in the parametric hooks."""

    kind: str
    id: str
    carrier: Carrier
    morphism_family: str

    def __eq__(self, other: object) -> bool:
        return isinstance(other, World) and self.id == other.id

    def __hash__(self) -> int:
        return hash(self.id)

    def __repr__(self) -> str:
        return f"<world {self.id}>"

    @property
    def iso_group_size(self) -> int:
        raise NotImplementedError

    def morphism(self, params) -> Morphism:
        return Morphism(self, self.normalize_params(params))

    def identity(self) -> Morphism:
        return Morphism(self, self.identity_params())

    def element_label(self, index: int) -> str:
        return str(self.carrier.check_index(index))

    def parse_element(self, token: str) -> int:
        try:
            value = int(token)
        except ValueError:
            raise ParseError(f"expected an element index, got {token!r}", token=token) from None
        if not 0 <= value < self.carrier.size:
            raise ParseError(f"element {token!r} out of range for {self.id}", token=token)
        return value

    # hooks -----------------------------------------------------------------
    def normalize_params(self, params) -> tuple:
        raise NotImplementedError

    def realize_params(self, params) -> MapTable:
        raise NotImplementedError

    def compose_params(self, f: tuple, g: tuple) -> tuple:
        raise NotImplementedError

    def invert_params(self, f: tuple) -> tuple:
        raise NotImplementedError

    def identity_params(self) -> tuple:
        raise NotImplementedError

    def is_iso_params(self, params: tuple) -> bool:
        raise NotImplementedError

    def enumerate_isos(self) -> Iterator[Morphism]:
        raise NotImplementedError

    def format_params(self, params: tuple) -> str:
        raise NotImplementedError

    def parse_params(self, text: str) -> tuple:
        raise NotImplementedError


class RingAffineWorld(World):
    """Affine maps x -> a*x + u over a finite commutative ring.

    Parameters are the pair (u, a) of ring indices; `multipliers`
    restricts the admissible linear parts (None means the whole ring).
    """

    def __init__(self, ring: Ring, *, multipliers: frozenset[int] | None = None):
        self.ring = ring
        self.multipliers = multipliers

    def _check_multiplier(self, a: int) -> int:
        if self.multipliers is not None and a not in self.multipliers:
            raise AdmissibilityError(
                f"multiplier {self.scalar_token(a)} is not admissible in {self.id}"
            )
        return a

    def normalize_params(self, params) -> tuple:
        try:
            u, a = params
        except (TypeError, ValueError):
            raise AdmissibilityError(f"expected (u, a) parameters, got {params!r}") from None
        return (self._normalize_scalar(u), self._check_multiplier(self._normalize_scalar(a)))

    def _normalize_scalar(self, value: int) -> int:
        if not isinstance(value, int):
            raise AdmissibilityError(f"ring element must be an integer index, got {value!r}")
        if not 0 <= value < self.ring.size:
            raise AdmissibilityError(f"ring index {value} out of range for {self.id}")
        return value

    def realize_params(self, params) -> MapTable:
        u, a = params
        ring = self.ring
        return MapTable(self.carrier, tuple(ring.add(ring.mul(a, x), u) for x in range(ring.size)))

    def compose_params(self, f: tuple, g: tuple) -> tuple:
        # e^u.a after e^v.b = e^(a*v + u).(a*b)
        u, a = f
        v, b = g
        ring = self.ring
        return (ring.add(ring.mul(a, v), u), ring.mul(a, b))

    def invert_params(self, f: tuple) -> tuple:
        u, a = f
        ring = self.ring
        if not ring.is_unit(a):
            raise AdmissibilityError(f"{self.format_params(f)} is not invertible in {self.id}")
        ai = ring.inv(a)
        return (ring.neg(ring.mul(ai, u)), self._check_multiplier(ai))

    def identity_params(self) -> tuple:
        return (self.ring.zero, self.ring.one)

    def is_iso_params(self, params: tuple) -> bool:
        return self.ring.is_unit(params[1])

    def iso_multipliers(self) -> tuple[int, ...]:
        units = self.ring.units()
        if self.multipliers is None:
            return units
        return tuple(a for a in units if a in self.multipliers)

    @property
    def iso_group_size(self) -> int:
        return self.ring.size * len(self.iso_multipliers())

    def enumerate_isos(self) -> Iterator[Morphism]:
        units = self.iso_multipliers()
        for u in range(self.ring.size):
            for a in units:
                yield Morphism(self, (u, a))

    # scalar text -----------------------------------------------------------
    def scalar_token(self, value: int) -> str:
        raise NotImplementedError

    def parse_scalar(self, token: str) -> int:
        raise NotImplementedError


class AffineWorld(RingAffineWorld):
    kind = "affine"

    def __init__(self, n: int):
        super().__init__(ZModRing(n))
        self.n = n
        self.id = f"affine:{n}"
        self.carrier = Carrier(n, f"residue mod {n}")
        self.morphism_family = f"e<u>.<a>: x -> a*x + u mod {n}"

    def scalar_token(self, value: int) -> str:
        return str(value)

    def parse_scalar(self, token: str) -> int:
        try:
            return int(token) % self.n
        except ValueError:
            raise ParseError(f"expected an integer, got {token!r}", token=token) from None

    def _normalize_scalar(self, value: int) -> int:
        if not isinstance(value, int):
            raise AdmissibilityError(f"ring element must be an integer, got {value!r}")
        return value % self.n

    def format_params(self, params: tuple) -> str:
        u, a = params
        return f"e{u}.{a}"

    def parse_params(self, text: str) -> tuple:
        match = re.fullmatch(r"e(-?\d+)\.(-?\d+)", text)
        if match is None:
            raise ParseError(f"cannot parse {text!r} as a morphism of {self.id}", token=text)
        return self.normalize_params((self.parse_scalar(match[1]), self.parse_scalar(match[2])))


class SymAffineWorld(AffineWorld):
    kind = "symaffine"

    def __init__(self, n: int):
        RingAffineWorld.__init__(
            self, ZModRing(n), multipliers=frozenset({1 % n, (n - 1) % n})
        )
        self.n = n
        self.id = f"symaffine:{n}"
        self.carrier = Carrier(n, f"residue mod {n}")
        self.morphism_family = f"e<u>.<a>: x -> a*x + u mod {n}, a = +-1"


class PowerSetWorld(RingAffineWorld):
    kind = "powerset"

    def __init__(self, n: int):
        if n > len(_POWERSET_MEMBER_NAMES):
            raise StructuralError(f"power-set world supports at most {len(_POWERSET_MEMBER_NAMES)} members")
        super().__init__(BooleanSubsetRing(n))
        self.n = n
        self.id = f"powerset:{n}"
        members = "".join(_POWERSET_MEMBER_NAMES[:n])
        self.carrier = Carrier(1 << n, f"subset of {{{members}}} as member bitmask")
        self.morphism_family = "e<U>.<W>: x -> U xor (W and x) on the Boolean ring 2^S"

    def scalar_token(self, value: int) -> str:
        if value == 0:
            return "0"
        if value == self.ring.one:
            return "S"
        return "-".join(_POWERSET_MEMBER_NAMES[i] for i in range(self.n) if (value >> i) & 1)

    def parse_scalar(self, token: str) -> int:
        if token == "0":
            return 0
        if token == "S":
            return self.ring.one
        bits = 0
        for name in token.split("-"):
            index = _POWERSET_MEMBER_NAMES.find(name)
            if index < 0 or index >= self.n or len(name) != 1:
                raise ParseError(f"unknown member {name!r} in subset token {token!r}", token=token)
            bits |= 1 << index
        return bits

    def element_label(self, index: int) -> str:
        return self.scalar_token(self.carrier.check_index(index))

    def parse_element(self, token: str) -> int:
        return self.parse_scalar(token)

    def format_params(self, params: tuple) -> str:
        u, w = params
        return f"e{self.scalar_token(u)}.{self.scalar_token(w)}"

    def parse_params(self, text: str) -> tuple:
        match = re.fullmatch(r"e([^.]+)\.(.+)", text)
        if match is None:
            raise ParseError(f"cannot parse {text!r} as a morphism of {self.id}", token=text)
        return self.normalize_params((self.parse_scalar(match[1]), self.parse_scalar(match[2])))


class DualWorld(RingAffineWorld):
    """Dual numbers over a ring base world; carrier indices encode pairs
    x + eps*y as x * base_size + y (cantus firmus x, interval y)."""

    kind = "dual"

    def __init__(self, base: RingAffineWorld):
        super().__init__(DualNumberRing(base.ring))
        self.base = base
        self.id = f"dual:{base.id}"
        self.carrier = Carrier(self.ring.size, f"pair x + eps*y over {base.id}")
        self.morphism_family = "e<U>+e<V>.(<A>+e<B>): x+eps*y -> (A*x+U) + eps*(B*x+A*y+V)"

    @property
    def dual_ring(self) -> DualNumberRing:
        return self.ring  # typed accessor

    def encode_element(self, cantus: int, interval: int) -> int:
        self.base.carrier.check_index(cantus)
        self.base.carrier.check_index(interval)
        return self.dual_ring.encode(cantus, interval)

    def decode_element(self, index: int) -> DualElement:
        x, y = self.dual_ring.decode(self.carrier.check_index(index))
        return DualElement(x, y)

    def params_from_components(self, u: int, v: int, a: int, b: int) -> tuple:
        ring = self.dual_ring
        return self.normalize_params((ring.encode(u, v), ring.encode(a, b)))

    def scalar_token(self, value: int) -> str:
        x, y = self.dual_ring.decode(value)
        return f"{self.base.scalar_token(x)}+e{self.base.scalar_token(y)}"

    def element_label(self, index: int) -> str:
        point = self.decode_element(index)
        return f"({self.base.element_label(point.cantus)},{self.base.element_label(point.interval)})"

    def format_params(self, params: tuple) -> str:
        t, m = params
        u, v = self.dual_ring.decode(t)
        a, b = self.dual_ring.decode(m)
        base = self.base
        return (
            f"e{base.scalar_token(u)}+e{base.scalar_token(v)}"
            f".({base.scalar_token(a)}+e{base.scalar_token(b)})"
        )

    def parse_params(self, text: str) -> tuple:
        match = re.fullmatch(r"e([^+]+)\+e([^.]+)\.\(([^+]+)\+e([^)]+)\)", text)
        if match is None:
            raise ParseError(f"cannot parse {text!r} as a morphism of {self.id}", token=text)
        u, v, a, b = (self.base.parse_scalar(tok) for tok in match.groups())
        return self.params_from_components(u, v, a, b)


class FinSetWorld(World):
    """All total maps of an n-point set; isomorphisms are permutations."""

    kind = "finset"

    def __init__(self, n: int):
        self.n = n
        self.id = f"finset:{n}"
        self.carrier = Carrier(n, f"point of a {n}-element set")
        self.morphism_family = "perm:<comma-separated images>, any total map"

    def normalize_params(self, params) -> tuple:
        table = tuple(params)
        if len(table) != self.n:
            raise AdmissibilityError(f"map table must have {self.n} entries, got {len(table)}")
        for value in table:
            if not isinstance(value, int) or not 0 <= value < self.n:
                raise AdmissibilityError(f"table entry {value!r} out of range for {self.id}")
        return table

    def realize_params(self, params) -> MapTable:
        return MapTable(self.carrier, params)

    def compose_params(self, f: tuple, g: tuple) -> tuple:
        return tuple(f[value] for value in g)

    def invert_params(self, f: tuple) -> tuple:
        if not self.is_iso_params(f):
            raise AdmissibilityError(f"{self.format_params(f)} is not a permutation")
        inverse = [0] * self.n
        for x, value in enumerate(f):
            inverse[value] = x
        return tuple(inverse)

    def identity_params(self) -> tuple:
        return tuple(range(self.n))

    def is_iso_params(self, params: tuple) -> bool:
        return len(set(params)) == self.n

    @property
    def iso_group_size(self) -> int:
        return factorial(self.n)

    def enumerate_isos(self) -> Iterator[Morphism]:
        for table in permutations(range(self.n)):
            yield Morphism(self, table)

    def format_params(self, params: tuple) -> str:
        return "perm:" + ",".join(str(value) for value in params)

    def parse_params(self, text: str) -> tuple:
        if not text.startswith("perm:"):
            raise ParseError(f"cannot parse {text!r} as a morphism of {self.id}", token=text)
        body = text[len("perm:"):]
        try:
            table = tuple(int(tok) for tok in body.split(","))
        except ValueError:
            raise ParseError(f"bad permutation body {body!r}", token=text) from None
        try:
            return self.normalize_params(table)
        except AdmissibilityError as exc:
            raise ParseError(str(exc), token=text) from None


def dual_lift(world: World) -> DualWorld:
    """The dual-numbers world over an affine or power-set base."""
    if isinstance(world, DualWorld) or not isinstance(world, RingAffineWorld):
        raise StructuralError(f"dual lift is unsupported for {world.id}")
    if isinstance(world, SymAffineWorld):
        raise StructuralError(f"dual lift is unsupported for {world.id}")
    return DualWorld(world)


#: kind, spec grammar, morphism grammar, example; consumed by cli and service.
WORLD_KINDS: tuple[tuple[str, str, str, str], ...] = (
    ("affine", "affine:<n>", "e<u>.<a>", "affine:12"),
    ("symaffine", "symaffine:<n>", "e<u>.<a> with a = +-1", "symaffine:12"),
    ("finset", "finset:<n>", "perm:<comma-separated images>", "finset:12"),
    ("powerset", "powerset:<n>", "e<U>.<W> with subsets as hyphen-joined members, S, or 0", "powerset:3"),
    ("dual", "dual:<base-spec>", "e<U>+e<V>.(<A>+e<B>)", "dual:affine:12"),
)


def parse_world(spec: str) -> World:
    """Parse a world spec like ``affine:12`` or ``dual:powerset:2``."""
    kind, sep, rest = spec.partition(":")
    if not sep or not rest:
        raise ParseError(f"malformed world spec {spec!r}", token=spec)
    if kind == "dual":
        base = parse_world(rest)
        try:
            return dual_lift(base)
        except StructuralError as exc:
            raise ParseError(str(exc), token=spec) from None
    try:
        n = int(rest)
    except ValueError:
        raise ParseError(f"malformed world spec {spec!r}", token=spec) from None
    if n < 1:
        raise ParseError(f"world size must be positive in {spec!r}", token=spec)
    if kind == "affine":
        return AffineWorld(n)
    if kind == "symaffine":
        return SymAffineWorld(n)
    if kind == "finset":
        return FinSetWorld(n)
    if kind == "powerset":
        return PowerSetWorld(n)
    raise ParseError(f"unknown world kind {kind!r} in {spec!r}", token=spec)


def parse_morphism(text: str, world: World) -> Morphism:
    """Parse morphism text in the world's syntax (see module docstring)."""
    try:
        return Morphism(world, world.parse_params(text))
    except AdmissibilityError as exc:
        raise ParseError(f"{text!r}: {exc}", token=text) from None
