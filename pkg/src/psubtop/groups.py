"""Finite permutation groups with indexed element tables.

Elements are indexed 0..order-1 with the identity at index 0; the indexing is
produced by a breadth-first walk from the identity applying the generators in
input order on the right, so it is reproducible across runs.  Groups of order
at most ``TABLE_LIMIT`` carry a full multiplication table; larger groups fall
back to composing permutations on the fly.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from . import _kernels, bitsets
from .errors import OrderLimitExceeded, PrimeDoesNotDivide
from .perms import Perm

TABLE_LIMIT = 4096
DEFAULT_MAX_ORDER = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


class Group:
    """A finite permutation group with a fixed element indexing."""

    def __init__(self, degree, generators, elements, table=None, name=""):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.order = len(elements)
        self.table = table
        self.name = name
        self._index = {perm.key(): i for i, perm in enumerate(elements)}
        self._inv = None
        self._orders = None
        self.cache: dict = {}

    def __repr__(self):
        label = self.name or "Group"
        return f"<{label}: order {self.order}, degree {self.degree}>"

    def index_of(self, perm: Perm) -> int:
        return self._index[perm.key()]

    @property
    def inverses(self) -> np.ndarray:
        if self._inv is None:
            if self.table is not None:
                self._inv = np.argmax(self.table == 0, axis=1).astype(np.int32)
            else:
                self._inv = np.asarray(
                    [self.index_of(e.inverse()) for e in self.elements], dtype=np.int32
                )
        return self._inv

    def mul(self, i: int, j: int) -> int:
        if self.table is not None:
            return int(self.table[i, j])
        return self.index_of(self.elements[i] * self.elements[j])

    def mul_many(self, a, b) -> np.ndarray:
        """Elementwise product of index arrays (with broadcasting)."""
        if self.table is not None:
            return self.table[a, b]
        a_arr, b_arr = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        flat = [
            self.index_of(self.elements[int(x)] * self.elements[int(y)])
            for x, y in zip(a_arr.ravel(), b_arr.ravel())
        ]
        return np.asarray(flat, dtype=np.int32).reshape(a_arr.shape)

    def conjugate_many(self, g: int, idx) -> np.ndarray:
        """Indices of g x g^-1 for every x in idx."""
        ginv = int(self.inverses[g])
        return self.mul_many(self.mul_many(g, idx), ginv)

    def power(self, i: int, k: int) -> int:
        out = 0
        base = i
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            self._orders = np.asarray([e.order() for e in self.elements], dtype=np.int32)
            self._orders.setflags(write=False)
        return self._orders

    # -- subgroup constructors -------------------------------------------

    def subgroup(self, indices) -> "Subgroup":
        bits = bitsets.pack_indices(indices, self.order)
        return Subgroup(self, bits)

    def subgroup_from_bits(self, bits: bytes) -> "Subgroup":
        return Subgroup(self, bits)

    def trivial_subgroup(self) -> "Subgroup":
        return self.subgroup([0])

    def full_subgroup(self) -> "Subgroup":
        key = "full"
        if key not in self.cache:
            self.cache[key] = self.subgroup(np.arange(self.order))
        return self.cache[key]

    def generated_subgroup(self, seeds) -> "Subgroup":
        seeds = np.asarray(seeds, dtype=np.int32)
        if self.table is not None:
            idx = _kernels.mul_closure(self.table, seeds)
        else:
            idx = self._closure_slow(seeds)
        return self.subgroup(idx)

    def _closure_slow(self, seeds) -> np.ndarray:
        member = {0}
        member.update(int(s) for s in seeds)
        current = sorted(member)
        i = 0
        while i < len(current):
            x = current[i]
            i += 1
            for y in list(current):
                for z in (self.mul(x, y), self.mul(y, x)):
                    if z not in member:
                        member.add(z)
                        current.append(z)
        return np.asarray(sorted(member), dtype=np.int32)


class Subgroup:
    """A subgroup of an ambient :class:`Group`, stored as a packed bitset."""

    __slots__ = ("group", "bits", "order", "_indices")

    def __init__(self, group: Group, bits: bytes):
        self.group = group
        self.bits = bits
        self.order = bitsets.popcount(bits)
        self._indices = None
        if not bitsets.contains(bits, 0):
            raise ValueError("subgroup must contain the identity")

    def indices(self) -> np.ndarray:
        if self._indices is None:
            self._indices = bitsets.indices(self.bits, self.group.order)
            self._indices.setflags(write=False)
        return self._indices

    def mask(self) -> np.ndarray:
        return bitsets.unpack(self.bits, self.group.order)

    def contains(self, i: int) -> bool:
        return bitsets.contains(self.bits, i)

    def is_subset(self, other: "Subgroup") -> bool:
        return bitsets.is_subset(self.bits, other.bits)

    def meet(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.group, bitsets.intersect(self.bits, other.bits))

    def join(self, other: "Subgroup") -> "Subgroup":
        seeds = np.concatenate([self.indices(), other.indices()])
        return self.group.generated_subgroup(seeds)

    def conjugate(self, g: int) -> "Subgroup":
        idx = self.group.conjugate_many(g, self.indices())
        return self.group.subgroup(idx)

    def is_abelian(self) -> bool:
        idx = self.indices()
        if self.group.table is not None:
            sub = self.group.table[np.ix_(idx, idx)]
            return bool(np.array_equal(sub, sub.T))
        return all(
            self.group.mul(int(a), int(b)) == self.group.mul(int(b), int(a))
            for a in idx
            for b in idx
        )

    def is_elementary_abelian(self, p: int) -> bool:
        orders = self.group.element_orders()[self.indices()]
        good = bool(np.all((orders == 1) | (orders == p)))
        return good and self.is_abelian()

    def small_generators(self, limit: int = 4) -> list[Perm]:
        """A short generating list (greedy), for human-readable labels."""
        gens: list[int] = []
        span = self.group.trivial_subgroup()
        for i in self.indices():
            if span.contains(int(i)):
                continue
            gens.append(int(i))
            span = self.group.generated_subgroup(np.asarray(gens))
            if span.order == self.order or len(gens) >= limit:
                break
        return [self.group.elements[i] for i in gens]

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((id(self.group), self.bits))

    def __repr__(self):
        return f"<Subgroup of order {self.order} in {self.group!r}>"


# -- operations ------------------------------------------------------------


def closure(degree: int, gens, max_order: int = DEFAULT_MAX_ORDER, name: str = "") -> Group:
    """Group generated by ``gens``, breadth-first indexed from the identity."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    gens = tuple(gens)
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator degree {g.degree} does not match {degree}")
    identity = Perm.identity(degree)
    elements = [identity]
    index = {identity.key(): 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            key = y.key()
            if key not in index:
                if len(elements) >= max_order:
                    raise OrderLimitExceeded(
                        f"closure exceeds max_order={max_order} (degree {degree})"
                    )
                index[key] = len(elements)
                elements.append(y)
                queue.append(y)
    table = _build_table(elements, index) if len(elements) <= TABLE_LIMIT else None
    return Group(degree, gens, elements, table=table, name=name)


def _build_table(elements, index) -> np.ndarray:
    n = len(elements)
    images = np.stack([e.images for e in elements])
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        rows = images[i][images]
        table[i] = [index[row.tobytes()] for row in rows]
    return table


def group_from_table(table: np.ndarray, name: str = "", generator_indices=None) -> Group:
    """Group given by a multiplication table (index 0 must be the identity).

    Elements are realised as permutations via the left-regular action, so the
    degree equals the order.  When ``generator_indices`` is omitted a small
    generating set is found greedily; the generators must generate the whole
    group because conjugation actions are driven by them.
    """
    table = np.ascontiguousarray(table, dtype=np.int32)
    n = table.shape[0]
    if table.shape != (n, n):
        raise ValueError("table must be square")
    if not np.array_equal(table[0], np.arange(n)) or not np.array_equal(
        table[:, 0], np.arange(n)
    ):
        raise ValueError("index 0 must be the identity")
    if generator_indices is None:
        generator_indices = []
        span = _kernels.mul_closure(table, np.zeros(0, dtype=np.int32))
        covered = np.zeros(n, dtype=bool)
        covered[span] = True
        for i in range(n):
            if covered[i]:
                continue
            generator_indices.append(i)
            span = _kernels.mul_closure(table, np.asarray(generator_indices, dtype=np.int32))
            covered[:] = False
            covered[span] = True
            if covered.all():
                break
    elements = [Perm(table[i]) for i in range(n)]
    gens = tuple(elements[int(i)] for i in generator_indices)
    kept = table if n <= TABLE_LIMIT else None
    return Group(n, gens, elements, table=kept, name=name)


def element_order(group: Group, i: int) -> int:
    """Smallest k >= 1 with g^k = e."""
    return int(group.element_orders()[i])


def centralizer(group: Group, sub: Subgroup) -> Subgroup:
    """Elements commuting with every member of ``sub``."""
    _check_ambient(group, sub)
    idx = sub.indices()
    if group.table is not None:
        left = group.table[:, idx]
        right = group.table[idx, :].T
        mask = np.all(left == right, axis=1)
    else:
        mask = np.asarray(
            [
                all(group.mul(g, int(s)) == group.mul(int(s), g) for s in idx)
                for g in range(group.order)
            ]
        )
    return group.subgroup(np.nonzero(mask)[0])


def center(group: Group) -> Subgroup:
    return centralizer(group, group.full_subgroup())


def normalizer(group: Group, sub: Subgroup) -> Subgroup:
    """Elements g with g S g^-1 = S."""
    _check_ambient(group, sub)
    idx = sub.indices()
    member = sub.mask()
    if group.table is not None:
        gs = group.table[:, idx]
        conj = group.table[gs, group.inverses[:, None]]
        mask = member[conj].all(axis=1)
    else:
        mask = np.asarray(
            [
                all(member[group.conjugate_many(g, np.asarray([int(s)]))[0]] for s in idx)
                for g in range(group.order)
            ]
        )
    return group.subgroup(np.nonzero(mask)[0])


def omega1(group: Group, p: int, within: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by all elements of order exactly p (of the whole
    group, or of ``within``)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    orders = group.element_orders()
    if within is None:
        seeds = np.nonzero(orders == p)[0]
    else:
        _check_ambient(group, within)
        idx = within.indices()
        seeds = idx[orders[idx] == p]
    if seeds.size == 0:
        return group.trivial_subgroup()
    return group.generated_subgroup(seeds)


def sylow_subgroups(group: Group, p: int) -> list[Subgroup]:
    """All Sylow p-subgroups (the maximal members of the p-subgroup family)."""
    from .plattice import enumerate_p_subgroups

    family = enumerate_p_subgroups(group, p)
    target = p_part(group.order, p)
    return [s for s in family.members if s.order == target]


def o_p(group: Group, p: int) -> Subgroup:
    """Intersection of all Sylow p-subgroups (the p-core)."""
    sylows = sylow_subgroups(group, p)
    bits = sylows[0].bits
    for s in sylows[1:]:
        bits = bitsets.intersect(bits, s.bits)
    return group.subgroup_from_bits(bits)


def fitting(group: Group) -> Subgroup:
    """Subgroup generated by the p-cores over all primes dividing the order."""
    primes = prime_divisors(group.order)
    if not primes:
        return group.trivial_subgroup()
    seeds = np.concatenate([o_p(group, q).indices() for q in primes])
    return group.generated_subgroup(seeds)


def _check_ambient(group: Group, sub: Subgroup):
    if sub.group is not group:
        raise ValueError("subgroup belongs to a different ambient group")


def require_prime_divisor(group: Group, p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if group.order % p != 0:
        raise PrimeDoesNotDivide(f"{p} does not divide group order {group.order}")
