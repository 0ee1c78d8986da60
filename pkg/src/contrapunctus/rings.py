"""Finite commutative ring backends for the affine morphism worlds.

Ring elements are carrier indices 0..size-1; each ring fixes how indices
add and multiply. Three rings cover all supported worlds: integers mod n,
the Boolean ring of subsets of a finite set (symmetric difference and
intersection), and dual numbers over either.
"""

from __future__ import annotations

from functools import cache
from math import gcd

from .errors import AdmissibilityError


class Ring:
    """Commutative ring structure on indices 0..size-1."""

    size: int
    zero: int
    one: int

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def is_unit(self, a: int) -> bool:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def units(self) -> tuple[int, ...]:
        return _units(self)


@cache
def _units(ring: Ring) -> tuple[int, ...]:
    return tuple(a for a in range(ring.size) if ring.is_unit(a))


class ZModRing(Ring):
    """Integers modulo n."""

    def __init__(self, n: int):
        if n < 1:
            raise AdmissibilityError(f"modulus must be positive, got {n}")
        self.n = n
        self.size = n
        self.zero = 0
        self.one = 1 % n

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def neg(self, a: int) -> int:
        return (-a) % self.n

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.n

    def is_unit(self, a: int) -> bool:
        return gcd(a, self.n) == 1

    def inv(self, a: int) -> int:
        if not self.is_unit(a):
            raise AdmissibilityError(f"{a} is not a unit mod {self.n}")
        return pow(a, -1, self.n)


class BooleanSubsetRing(Ring):
    """The ring 2^S for |S| = members: + is symmetric difference, * is
    intersection, the unit is S itself. Elements are member bitmasks."""

    def __init__(self, members: int):
        if members < 1:
            raise AdmissibilityError(f"need at least one member, got {members}")
        self.members = members
        self.size = 1 << members
        self.zero = 0
        self.one = self.size - 1

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def neg(self, a: int) -> int:
        return a  # characteristic 2

    def mul(self, a: int, b: int) -> int:
        return a & b

    def is_unit(self, a: int) -> bool:
        return a == self.one

    def inv(self, a: int) -> int:
        if a != self.one:
            raise AdmissibilityError("only the full set is a unit of the Boolean ring")
        return a


class DualNumberRing(Ring):
    """Dual numbers x + eps*y over a base ring, eps^2 = 0.

    The pair (x, y) is encoded as x * base.size + y, so plain integer
    order on encodings is lexicographic order on components.
    """

    def __init__(self, base: Ring):
        self.base = base
        self.size = base.size * base.size
        self.zero = self.encode(base.zero, base.zero)
        self.one = self.encode(base.one, base.zero)

    def encode(self, x: int, y: int) -> int:
        return x * self.base.size + y

    def decode(self, a: int) -> tuple[int, int]:
        return divmod(a, self.base.size)

    def add(self, a: int, b: int) -> int:
        x1, y1 = self.decode(a)
        x2, y2 = self.decode(b)
        base = self.base
        return self.encode(base.add(x1, x2), base.add(y1, y2))

    def neg(self, a: int) -> int:
        x, y = self.decode(a)
        return self.encode(self.base.neg(x), self.base.neg(y))

    def mul(self, a: int, b: int) -> int:
        # (x1 + eps y1)(x2 + eps y2) = x1 x2 + eps (x1 y2 + y1 x2)
        x1, y1 = self.decode(a)
        x2, y2 = self.decode(b)
        base = self.base
        return self.encode(
            base.mul(x1, x2),
            base.add(base.mul(x1, y2), base.mul(y1, x2)),
        )

    def is_unit(self, a: int) -> bool:
        x, _ = self.decode(a)
        return self.base.is_unit(x)

    def inv(self, a: int) -> int:
        # (x + eps y)^-1 = x^-1 - eps x^-2 y
        x, y = self.decode(a)
        base = self.base
        xi = base.inv(x)
        return self.encode(xi, base.neg(base.mul(base.mul(xi, xi), y)))
