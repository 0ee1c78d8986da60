"""Independent brute-force oracles the engine is checked against.

Nothing here imports the engine. Tables, images, commutation, and
maximization are re-derived from raw parameter grids with plain modular
arithmetic; numpy only vectorizes the big candidate scans, it does not
change what is scanned.
"""

from __future__ import annotations

from itertools import permutations
from math import gcd

import numpy as np


def affine_table(n: int, u: int, a: int) -> tuple[int, ...]:
    return tuple((a * x + u) % n for x in range(n))


def apply_table_to_bits(table, bits: int) -> int:
    out = 0
    for x, target in enumerate(table):
        if bits >> x & 1:
            out |= 1 << target
    return out


def brute_quasipolarities_zn(n: int) -> list[tuple[int, int]]:
    """All (u, a) pairs, units or not, whose affine map is an involution
    with no fixed point."""
    found = []
    for u in range(n):
        for a in range(n):
            t = affine_table(n, u, a)
            if all(t[t[x]] == x for x in range(n)) and all(t[x] != x for x in range(n)):
                found.append((u, a))
    return found


def brute_iso_tables_zn(n: int) -> list[tuple[int, ...]]:
    return [affine_table(n, u, a) for u in range(n) for a in range(n) if gcd(a, n) == 1]


def brute_strong_half_sets(n: int = 12) -> list[int]:
    """Bitmasks of the half-size subsets exchanged with their complement by
    exactly one quasipolarity; a straight double loop over subsets."""
    tables = [affine_table(n, u, a) for u, a in brute_quasipolarities_zn(n)]
    full = (1 << n) - 1
    strong = []
    for bits in range(1 << n):
        if bits.bit_count() != n // 2:
            continue
        count = 0
        for t in tables:
            if apply_table_to_bits(t, bits) == bits ^ full:
                count += 1
                if count > 1:
                    break
        if count == 1:
            strong.append(bits)
    return strong


def brute_strong_class_count(n: int = 12) -> int:
    """Strong orbits counted with no orbit machinery: a strong subset counts
    iff no isomorphism sends it to a smaller bitmask."""
    isos = brute_iso_tables_zn(n)
    count = 0
    for bits in brute_strong_half_sets(n):
        if all(apply_table_to_bits(t, bits) >= bits for t in isos):
            count += 1
    return count


def count_swapping_involutions(n: int, half: list[int], limit: int | None = None) -> int:
    """Count fixed-point-free involutions exchanging `half` with its
    complement by checking every bijection between the two halves."""
    inside = sorted(half)
    outside = sorted(set(range(n)) - set(inside))
    count = 0
    for images in permutations(outside):
        table = [0] * n
        for k, d in zip(inside, images):
            table[k] = d
            table[d] = k
        ok = all(table[table[x]] == x and table[x] != x for x in range(n))
        swaps = {table[k] for k in inside} == set(outside)
        if ok and swaps:
            count += 1
            if limit is not None and count >= limit:
                return count
    return count


def finset_quasipolarities_all_maps(n: int) -> list[tuple[int, ...]]:
    """Scan all n^n total maps for involutions without fixed points."""
    found = []
    for code in range(n**n):
        table = []
        rest = code
        for _ in range(n):
            rest, digit = divmod(rest, n)
            table.append(digit)
        if all(table[table[x]] == x for x in range(n)) and all(table[x] != x for x in range(n)):
            found.append(tuple(table))
    return sorted(found)


def half_subsets(n: int) -> list[int]:
    return [bits for bits in range(1 << n) if bits.bit_count() == n // 2]


def dual_world_successors(n: int, kappa: list[int], polarity: tuple[int, int]) -> dict:
    """Brute-force admitted-successor computation over Z_n[eps].

    Every one of the n^2 * n * phi-ish isomorphisms e^(u,v).(a,b) is
    enumerated; commutation, deformed sets, and meets are read off the raw
    144-entry tables. Returns, per consonant interval k, the maximizing
    parameter tuples (u, v, a, b), the meet size, and the admitted
    (cantus, interval) pairs.
    """
    pu, pa = polarity
    size = n * n
    idx = np.arange(size)
    x_of, y_of = idx // n, idx % n

    params = [
        (u, v, a, b)
        for u in range(n)
        for v in range(n)
        for a in range(n)
        if gcd(a, n) == 1
        for b in range(n)
    ]
    us = np.array([p[0] for p in params])[:, None]
    vs = np.array([p[1] for p in params])[:, None]
    aas = np.array([p[2] for p in params])[:, None]
    bs = np.array([p[3] for p in params])[:, None]
    tables = ((aas * x_of + us) % n) * n + (bs * x_of + aas * y_of + vs) % n

    p0 = ((pa * x_of) % n) * n + (pa * y_of + pu) % n
    commuting = (tables[:, p0] == p0[tables]).all(axis=1)

    kappa = sorted(kappa)
    cons = np.array([x * n + k for x in range(n) for k in kappa])
    diss = np.array([x * n + d for x in range(n) for d in range(n) if d not in kappa])
    consonant = np.zeros(size, dtype=bool)
    consonant[cons] = True

    survivors = np.where(commuting)[0]
    for row in survivors:
        assert sorted(tables[row]) == list(range(size)), "iso table is not a bijection"
    deformed_cons = tables[survivors][:, cons]
    deformed_diss = tables[survivors][:, diss]
    meets = consonant[deformed_cons].sum(axis=1)

    out = {}
    for k in kappa:
        target = 0 * n + k
        hits = (deformed_diss == target).any(axis=1)
        if not hits.any():
            out[k] = {"symmetries": [], "max_meet_size": 0, "admitted": []}
            continue
        best = int(meets[hits].max())
        rows = np.where(hits & (meets == best))[0]
        admitted: set[int] = set()
        symmetries = []
        for row in rows:
            symmetries.append(params[survivors[row]])
            admitted.update(int(t) for t in deformed_cons[row] if consonant[t])
        out[k] = {
            "symmetries": sorted(symmetries),
            "max_meet_size": best,
            "admitted": sorted((t // n, t % n) for t in admitted),
        }
    return out


def powerset_deformed_dissonance_closed_form(
    members: int, kappa: list[int], translation: int, interval: int
) -> bool:
    """Closed-form condition-i verdict for eps-only morphisms on a power-set
    dual world: the consonant interval equals translation xor some dissonant
    set (the multiplier part plays no role at cantus 0)."""
    delta = [d for d in range(1 << members) if d not in set(kappa)]
    return any(interval == translation ^ d for d in delta)


def powerset_consonance_families(members: int) -> list[list[int]]:
    """Every family picking exactly one set from each complement pair."""
    full = (1 << members) - 1
    pairs = sorted({tuple(sorted((s, s ^ full))) for s in range(1 << members)})
    families = []
    for choice in range(1 << len(pairs)):
        family = [pair[(choice >> i) & 1] for i, pair in enumerate(pairs)]
        families.append(sorted(family))
    return families


def closure_pairwise_join_violations(closure_map: list[int]) -> list[tuple[int, int]]:
    """All pairs (M, M') where closure(M | M') != closure(M) | closure(M'),
    checked exhaustively over every pair of subsets."""
    cl = np.asarray(closure_map, dtype=np.uint32)
    ids = np.arange(len(cl), dtype=np.uint32)
    unions = np.bitwise_or.outer(ids, ids)
    left = cl[unions]
    right = np.bitwise_or.outer(cl, cl)
    bad = np.argwhere(left != right)
    return [(int(i), int(j)) for i, j in bad]
