"""Families of p-subgroups and p-tori, their inclusion posets, and the
algebraic characterizations of low-step contractibility.

Enumeration is level by level: level 1 holds the cyclic subgroups of order p;
a level-(k+1) subgroup arises from a level-k subgroup Q by adjoining a
p-element x of the normalizer with x^p in Q, in which case Q together with
the cosets Q x^i is a subgroup of order p^(k+1).  Every p-subgroup of order
p^(k+1) contains a normal subgroup of index p, so the sweep is complete.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bitsets, _kernels
from .errors import EmptyFamily
from .finposet import Poset
from .groups import Group, Subgroup, centralizer, omega1, p_part, require_prime_divisor

ALL_P_SUBGROUPS = "all_p_subgroups"
P_TORI = "p_tori"


@dataclass(frozen=True)
class PSubgroupFamily:
    """Deduplicated non-trivial subgroups of p-power order (or p-tori)."""

    group: Group
    p: int
    members: tuple
    kind: str

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class ToriIntersectionFamily:
    """All non-trivial intersections of non-empty sets of maximal p-tori."""

    group: Group
    p: int
    members: tuple


def _member_key(sub: Subgroup):
    return (sub.order, sub.bits)


def enumerate_p_subgroups(group: Group, p: int) -> PSubgroupFamily:
    """All non-trivial subgroups of p-power order, sorted by (order, bitset)."""
    require_prime_divisor(group, p)
    key = ("sp_family", p)
    if key in group.cache:
        return group.cache[key]

    orders = group.element_orders()
    p_powers = []
    q = p
    while q <= orders.max(initial=1):
        p_powers.append(q)
        q *= p
    is_pel = np.isin(orders, p_powers)
    xs = np.nonzero(is_pel)[0].astype(np.int32)

    # x -> x^p, aligned with xs
    xp = xs.copy()
    for _ in range(p - 1):
        xp = group.mul_many(xp, xs)

    found: dict[bytes, Subgroup] = {}
    level: list[Subgroup] = []
    roots = xs[orders[xs] == p]
    if roots.size:
        powers = np.zeros((roots.size, p), dtype=np.int32)
        powers[:, 1] = roots
        cur = roots
        for i in range(2, p):
            cur = group.mul_many(cur, roots)
            powers[:, i] = cur
        for row in powers:
            bits = bitsets.pack_indices(row, group.order)
            if bits not in found:
                sub = group.subgroup_from_bits(bits)
                found[bits] = sub
                level.append(sub)

    inv = group.inverses
    target = p_part(group.order, p)
    size = p
    while level and size < target:
        nxt: list[Subgroup] = []
        for sub in level:
            mask = sub.mask()
            qidx = sub.indices()
            cand = xs[~mask[xs] & mask[xp]]
            if cand.size == 0:
                continue
            conj = group.mul_many(
                group.mul_many(cand[:, None], qidx[None, :]), inv[cand][:, None]
            )
            cand = cand[mask[conj].all(axis=1)]
            for x in cand:
                pows = np.empty(p - 1, dtype=np.int32)
                cur = int(x)
                for i in range(p - 1):
                    pows[i] = cur
                    cur = group.mul(cur, int(x))
                cosets = group.mul_many(qidx[:, None], pows[None, :])
                members = np.concatenate([qidx, cosets.ravel()])
                bits = bitsets.pack_indices(members, group.order)
                if bits not in found:
                    new = group.subgroup_from_bits(bits)
                    found[bits] = new
                    nxt.append(new)
        level = nxt
        size *= p

    members = tuple(sorted(found.values(), key=_member_key))
    family = PSubgroupFamily(group=group, p=p, members=members, kind=ALL_P_SUBGROUPS)
    group.cache[key] = family
    return family


def enumerate_p_tori(group: Group, p: int) -> PSubgroupFamily:
    """The elementary abelian members of the p-subgroup family."""
    require_prime_divisor(group, p)
    key = ("ap_family", p)
    if key in group.cache:
        return group.cache[key]
    base = enumerate_p_subgroups(group, p)
    members = tuple(s for s in base.members if s.is_elementary_abelian(p))
    family = PSubgroupFamily(group=group, p=p, members=members, kind=P_TORI)
    group.cache[key] = family
    return family


def build_poset(family: PSubgroupFamily) -> Poset:
    """Inclusion poset of the family, carrying the conjugation action of the
    group generators."""
    members = family.members
    m = len(members)
    group = family.group
    if m == 0:
        return Poset(np.zeros((0, 0), dtype=bool), labels=(), action=None)
    bits_mat = bitsets.rows_as_matrix([s.bits for s in members])
    lt = _kernels.strict_subset_matrix(bits_mat)
    index = {s.bits: i for i, s in enumerate(members)}
    action = []
    for gen in group.generators:
        g = group.index_of(gen)
        ginv = int(group.inverses[g])
        perm = np.empty(m, dtype=np.int32)
        for i, sub in enumerate(members):
            conj_idx = group.mul_many(group.mul_many(g, sub.indices()), ginv)
            perm[i] = index[bitsets.pack_indices(conj_idx, group.order)]
        action.append(perm)
    return Poset(lt, labels=members, action=action or None)


def sp_poset(group: Group, p: int) -> Poset:
    key = ("sp_poset", p)
    if key not in group.cache:
        group.cache[key] = build_poset(enumerate_p_subgroups(group, p))
    return group.cache[key]


def ap_poset(group: Group, p: int) -> Poset:
    key = ("ap_poset", p)
    if key not in group.cache:
        group.cache[key] = build_poset(enumerate_p_tori(group, p))
    return group.cache[key]


def maximal_tori(group: Group, p: int) -> list[Subgroup]:
    """Maximal elements of the p-torus family."""
    family = enumerate_p_tori(group, p)
    members = family.members
    if not members:
        return []
    bits_mat = bitsets.rows_as_matrix([s.bits for s in members])
    lt = _kernels.strict_subset_matrix(bits_mat)
    return [members[i] for i in np.nonzero(~lt.any(axis=1))[0]]


def tori_all_conjugate(group: Group, p: int) -> bool:
    """True iff conjugation is transitive on the maximal p-tori."""
    maxima = maximal_tori(group, p)
    gens = [group.index_of(g) for g in group.generators]
    orbit = {maxima[0].bits}
    frontier = [maxima[0]]
    while frontier:
        sub = frontier.pop()
        for g in gens:
            image = sub.conjugate(g)
            if image.bits not in orbit:
                orbit.add(image.bits)
                frontier.append(image)
    return len(orbit) == len(maxima)


def tori_intersections(group: Group, p: int) -> ToriIntersectionFamily:
    """Close the maximal p-tori under non-trivial pairwise intersection."""
    maxima = maximal_tori(group, p)
    seen = {s.bits: s for s in maxima}
    queue = list(maxima)
    k = 0
    while k < len(queue):
        a = queue[k]
        for b in queue[:k]:
            bits = bitsets.intersect(a.bits, b.bits)
            if bitsets.popcount(bits) > 1 and bits not in seen:
                sub = group.subgroup_from_bits(bits)
                seen[bits] = sub
                queue.append(sub)
        k += 1
    members = tuple(sorted(seen.values(), key=_member_key))
    return ToriIntersectionFamily(group=group, p=p, members=members)


def step_predicate(group: Group, p: int, n: int) -> bool:
    """Algebraic test for contractibility of the torus poset in at most n
    steps, computed without touching the poset machinery."""
    require_prime_divisor(group, p)
    omega = omega1(group, p)
    if n == 0:
        return omega.order == p
    if n == 1:
        return omega.is_abelian()
    if n == 2:
        algebraic = centralizer(group, omega).order % p == 0
        maxima = maximal_tori(group, p)
        bits = maxima[0].bits
        for sub in maxima[1:]:
            bits = bitsets.intersect(bits, sub.bits)
        combinatorial = bitsets.popcount(bits) > 1
        if algebraic != combinatorial:
            raise RuntimeError(
                "centralizer and torus-intersection tests disagree; "
                "this indicates a bug in the enumeration"
            )
        return algebraic
    if n == 3:
        family = tori_intersections(group, p)
        tori = sorted(
            enumerate_p_tori(group, p).members, key=_member_key, reverse=True
        )
        for candidate in tori:
            if all(
                bitsets.popcount(bitsets.intersect(candidate.bits, s.bits)) > 1
                for s in family.members
            ):
                return True
        return False
    raise ValueError("step predicate is defined for n in 0..3")


def ultim_check(group: Group, p: int, n: int, members) -> bool:
    """Algebraic contractibility-in-n-steps test from the boundary family of
    the (n-1)-th retraction term: even n needs a non-trivial common
    intersection, odd n an abelian join."""
    require_prime_divisor(group, p)
    if n == 0:
        return len(enumerate_p_tori(group, p).members) == 1
    members = list(members)
    if not members:
        raise EmptyFamily("boundary family must be non-empty")
    if n % 2 == 0:
        bits = members[0].bits
        for sub in members[1:]:
            bits = bitsets.intersect(bits, sub.bits)
        return bitsets.popcount(bits) > 1
    seeds = np.concatenate([sub.indices() for sub in members])
    return group.generated_subgroup(seeds).is_abelian()


def mn_family(terms, k: int) -> list[Subgroup]:
    """Boundary family of the k-th retraction term: minimal elements for even
    k, maximal for odd k (the sequence stabilizes past its last term)."""
    term = terms[min(k, len(terms) - 1)]
    mask = term.minimal_mask() if k % 2 == 0 else term.maximal_mask()
    return [term.labels[i] for i in np.nonzero(mask)[0]]
