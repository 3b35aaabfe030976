"""Independent oracles and random generators for the test suite.

Everything here recomputes results from definitions (set arithmetic, explicit
search) without going through the library's optimized code paths, so a shared
bug cannot hide.
"""

from __future__ import annotations

import numpy as np


def brute_all_subgroups(group):
    """Every subgroup of the group, as frozensets of element indices.

    Grows closures by adjoining single elements until no new subgroup shows
    up; only uses the group's scalar multiplication.
    """

    def close(seed):
        member = set(seed) | {0}
        work = sorted(member)
        i = 0
        while i < len(work):
            x = work[i]
            i += 1
            for y in list(work):
                for z in (group.mul(x, y), group.mul(y, x)):
                    if z not in member:
                        member.add(z)
                        work.append(z)
        return frozenset(member)

    subgroups = {frozenset([0])}
    frontier = {close([x]) for x in range(group.order)}
    subgroups |= frontier
    while frontier:
        fresh = set()
        for sub in frontier:
            for x in range(group.order):
                if x not in sub:
                    grown = close(sub | {x})
                    if grown not in subgroups:
                        fresh.add(grown)
        subgroups |= fresh
        frontier = fresh
    return subgroups


def brute_centralizer(group, members):
    out = []
    for g in range(group.order):
        if all(group.mul(g, s) == group.mul(s, g) for s in members):
            out.append(g)
    return set(out)


def brute_normalizer(group, members):
    member_set = set(members)
    inv = group.inverses
    out = []
    for g in range(group.order):
        conj = {group.mul(group.mul(g, s), int(inv[g])) for s in members}
        if conj == member_set:
            out.append(g)
    return set(out)


def naive_core_size(lt: np.ndarray) -> int:
    """Beat-point reduction straight from the definitions, with its own
    (arbitrary) removal order."""
    alive = set(range(lt.shape[0]))

    def down_beat(x):
        below = [y for y in alive if lt[y, x]]
        if not below:
            return False
        maxima = [y for y in below if not any(lt[y, z] for z in below)]
        return len(maxima) == 1

    def up_beat(x):
        above = [y for y in alive if lt[x, y]]
        if not above:
            return False
        minima = [y for y in above if not any(lt[z, y] for z in above)]
        return len(minima) == 1

    while True:
        hit = None
        for x in sorted(alive, reverse=True):
            if up_beat(x) or down_beat(x):
                hit = x
                break
        if hit is None:
            return len(alive)
        alive.remove(hit)


def random_poset(rng, n: int, density: float) -> np.ndarray:
    lt = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                lt[i, j] = True
    for k in range(n):
        lt |= np.outer(lt[:, k], lt[k, :])
    return lt


def random_atomic_reduced_lattice(rng, max_elements: int):
    """Random atomic reduced lattice as a strict-order matrix, or None.

    Dual of an intersection-closed family generated by an antichain of sets:
    such families are coatomic reduced lattices, so the opposite order is
    atomic.
    """
    universe = rng.randrange(3, 7)
    n_sets = rng.randrange(2, 6)
    family = []
    for _ in range(n_sets):
        size = rng.randrange(1, universe + 1)
        family.append(frozenset(rng.sample(range(universe), size)))
    tops = [s for s in family if not any(s < t for t in family)]
    closed = set(tops)
    queue = list(closed)
    while queue:
        a = queue.pop()
        for b in list(closed):
            c = a & b
            if c and c not in closed:
                closed.add(c)
                queue.append(c)
    if not 1 <= len(closed) <= max_elements:
        return None
    members = sorted(closed, key=lambda s: (len(s), sorted(s)))
    n = len(members)
    lt = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            # opposite of strict containment makes the lattice atomic
            if i != j and members[j] < members[i]:
                lt[i, j] = True
    return lt


def random_monotone_below_id(rng, poset):
    """Random order-preserving self-map f with f <= id."""
    le = poset.le
    f = np.empty(poset.n, dtype=np.int64)
    for x in poset.linear_extension():
        candidates = [
            z
            for z in range(poset.n)
            if le[z, x] and all(le[f[y], z] for y in range(poset.n) if poset.lt[y, x])
        ]
        f[x] = rng.choice(candidates)
    return f


def random_monotone_above(rng, poset, floor):
    """Random order-preserving g with g >= floor pointwise, or None."""
    le = poset.le
    g = np.empty(poset.n, dtype=np.int64)
    for x in poset.linear_extension():
        candidates = [
            z
            for z in range(poset.n)
            if le[floor[x], z]
            and all(le[g[y], z] for y in range(poset.n) if poset.lt[y, x])
        ]
        if not candidates:
            return None
        g[x] = rng.choice(candidates)
    return g


def is_monotone(poset, f) -> bool:
    for a in range(poset.n):
        for b in range(poset.n):
            if poset.lt[a, b] and not poset.le[f[a], f[b]]:
                return False
    return True
