"""Finite posets as finite topological spaces.

A poset is stored as a strict-order bool matrix (lt[i, j] iff i < j) together
with opaque per-element labels and an optional group action given by order
automorphisms.  Homotopy-theoretic operations (beat points, cores, the
alternating meet/join retraction sequence, step counts) follow the
combinatorial description of homotopy types of finite spaces.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    EmptyPoset,
    MissingAction,
    NeitherAtomicNorCoatomic,
    NotReducedLattice,
    SizeLimitExceeded,
)


class Poset:
    """Immutable finite poset with labels and an optional action."""

    def __init__(self, lt, labels=None, action=None, validate=False):
        lt = np.ascontiguousarray(lt, dtype=bool)
        if lt.ndim != 2 or lt.shape[0] != lt.shape[1]:
            raise ValueError("lt must be a square matrix")
        self.n = lt.shape[0]
        lt.setflags(write=False)
        self.lt = lt
        self.labels = tuple(labels) if labels is not None else tuple(range(self.n))
        if len(self.labels) != self.n:
            raise ValueError("labels length must match element count")
        if len(set(self.labels)) != self.n:
            raise ValueError("labels must be pairwise distinct")
        if action is not None:
            action = tuple(np.asarray(a, dtype=np.int32) for a in action)
        self.action = action
        self._cache: dict = {}
        if validate:
            self.validate()

    def validate(self):
        if np.any(np.diag(self.lt)):
            raise ValueError("strict order must be irreflexive")
        reach = (self.lt.astype(np.uint8) @ self.lt.astype(np.uint8)) > 0
        if np.any(reach & ~self.lt):
            raise ValueError("strict order must be transitive")
        if np.any(self.lt & self.lt.T):
            raise ValueError("strict order must be antisymmetric")
        for sigma in self.action or ():
            if not np.array_equal(self.lt[np.ix_(sigma, sigma)], self.lt):
                raise ValueError("action permutation does not preserve the order")

    @property
    def le(self) -> np.ndarray:
        if "le" not in self._cache:
            le = self.lt | np.eye(self.n, dtype=bool)
            le.setflags(write=False)
            self._cache["le"] = le
        return self._cache["le"]

    def linear_extension(self) -> np.ndarray:
        """Element indices sorted compatibly with the order (stable by index)."""
        if "lin" not in self._cache:
            below_counts = self.lt.sum(axis=0)
            self._cache["lin"] = np.argsort(below_counts, kind="stable")
        return self._cache["lin"]

    def maximal_mask(self) -> np.ndarray:
        return ~self.lt.any(axis=1)

    def minimal_mask(self) -> np.ndarray:
        return ~self.lt.any(axis=0)

    def covers(self) -> np.ndarray:
        """cover[i, j] iff j covers i (i < j with nothing strictly between)."""
        if "covers" not in self._cache:
            if self.n <= 1024:
                two = (self.lt.astype(np.uint8) @ self.lt.astype(np.uint8)) > 0
            else:
                two = (self.lt.astype(np.float32) @ self.lt.astype(np.float32)) > 0.5
            self._cache["covers"] = self.lt & ~two
        return self._cache["covers"]

    def index_of_label(self, label) -> int:
        if "label_index" not in self._cache:
            self._cache["label_index"] = {lab: i for i, lab in enumerate(self.labels)}
        return self._cache["label_index"][label]

    def subposet(self, indices, keep_action=False) -> "Poset":
        idx = np.asarray(sorted(int(i) for i in indices), dtype=np.int64)
        lt = self.lt[np.ix_(idx, idx)]
        labels = tuple(self.labels[i] for i in idx)
        action = None
        if keep_action:
            if self.action is None:
                raise MissingAction("poset carries no action")
            pos = {int(v): k for k, v in enumerate(idx)}
            action = []
            for sigma in self.action:
                image = sigma[idx]
                if set(int(v) for v in image) != set(pos):
                    raise ValueError("subposet is not invariant under the action")
                action.append(np.asarray([pos[int(v)] for v in image], dtype=np.int32))
        return Poset(lt, labels=labels, action=action)

    def __repr__(self):
        return f"<Poset: {self.n} elements>"


@dataclass(frozen=True)
class RemovalTrace:
    """Ordered beat-point removals; ``changes`` counts adjacent kind switches."""

    steps: tuple
    changes: int

    @classmethod
    def from_steps(cls, steps) -> "RemovalTrace":
        steps = tuple(steps)
        changes = sum(1 for a, b in zip(steps, steps[1:]) if a[1] != b[1])
        return cls(steps=steps, changes=changes)


def is_down_beat(poset: Poset, x: int) -> bool:
    """True iff the strict down-set of x has a maximum."""
    below = np.nonzero(poset.lt[:, x])[0]
    if below.size == 0:
        return False
    sub = poset.lt[np.ix_(below, below)]
    return int(np.count_nonzero(~sub.any(axis=1))) == 1


def is_up_beat(poset: Poset, x: int) -> bool:
    """True iff the strict up-set of x has a minimum."""
    above = np.nonzero(poset.lt[x, :])[0]
    if above.size == 0:
        return False
    sub = poset.lt[np.ix_(above, above)]
    return int(np.count_nonzero(~sub.any(axis=0))) == 1


def core(poset: Poset, policy: str = "first") -> tuple[Poset, RemovalTrace]:
    """Remove beat points until none remain.

    ``policy`` selects the deterministic removal order ("first": ascending
    indices preferring down beats; "last": descending preferring up beats);
    the resulting minimal space is independent of the policy up to
    isomorphism, which the test suite checks.
    """
    pol = {"first": _kernels.POLICY_FIRST, "last": _kernels.POLICY_LAST}[policy]
    removed, kinds = _kernels.core_reduce(poset.lt, pol)
    steps = tuple(
        (poset.labels[int(i)], "down" if k == _kernels.DOWN else "up")
        for i, k in zip(removed, kinds)
    )
    keep = np.setdiff1d(np.arange(poset.n), removed)
    return poset.subposet(keep), RemovalTrace.from_steps(steps)


def verify_trace(poset: Poset, trace: RemovalTrace) -> bool:
    """Replay a removal trace, checking each step removes a genuine beat point."""
    current = poset
    for label, kind in trace.steps:
        x = current.index_of_label(label)
        ok = is_down_beat(current, x) if kind == "down" else is_up_beat(current, x)
        if not ok:
            return False
        current = current.subposet([i for i in range(current.n) if i != x])
    return True


# -- isomorphism ------------------------------------------------------------


def _hash64(parts) -> int:
    # Stable 64-bit mix (fnv-style over the integer stream); collisions only
    # cost backtracking time, never correctness.
    h = 0xCBF29CE484222325
    for v in parts:
        h ^= v & 0xFFFFFFFFFFFFFFFF
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def _refined_colors(poset: Poset) -> np.ndarray:
    n = poset.n
    lt = poset.lt
    colors = np.asarray(
        [_hash64([int(lt[:, i].sum()), int(lt[i, :].sum())]) for i in range(n)],
        dtype=np.uint64,
    )
    for _ in range(n):
        nxt = np.empty(n, dtype=np.uint64)
        for i in range(n):
            down = sorted(int(c) for c in colors[lt[:, i]])
            up = sorted(int(c) for c in colors[lt[i, :]])
            nxt[i] = _hash64([int(colors[i]), 0xD0] + down + [0x0B] + up)
        if len(set(nxt.tolist())) == len(set(colors.tolist())):
            colors = nxt
            break
        colors = nxt
    return colors


def poset_iso(x: Poset, y: Poset):
    """An order isomorphism x -> y as an index array, or None.

    Exact decision: iterated invariant refinement prunes, backtracking
    certifies.
    """
    if x.n != y.n:
        return None
    n = x.n
    if n == 0:
        return np.zeros(0, dtype=np.int32)
    cx = _refined_colors(x)
    cy = _refined_colors(y)
    if sorted(cx.tolist()) != sorted(cy.tolist()):
        return None
    candidates = {i: np.nonzero(cy == cx[i])[0] for i in range(n)}
    order = sorted(range(n), key=lambda i: (candidates[i].size, i))
    mapping = np.full(n, -1, dtype=np.int32)
    used = np.zeros(n, dtype=bool)
    placed: list[int] = []

    def backtrack(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        src = np.asarray(placed, dtype=np.int64)
        dst = mapping[src]
        for j in candidates[i]:
            if used[j]:
                continue
            if src.size:
                if not np.array_equal(x.lt[src, i], y.lt[dst, j]):
                    continue
                if not np.array_equal(x.lt[i, src], y.lt[j, dst]):
                    continue
            mapping[i] = j
            used[j] = True
            placed.append(i)
            if backtrack(k + 1):
                return True
            placed.pop()
            used[j] = False
            mapping[i] = -1
        return False

    if backtrack(0):
        return mapping
    return None


def same_homotopy_type(x: Poset, y: Poset) -> bool:
    """Homotopy equivalence of finite spaces: the cores are isomorphic."""
    cx, _ = core(x)
    cy, _ = core(y)
    return poset_iso(cx, cy) is not None


def height(poset: Poset) -> int:
    """Longest chain length minus one."""
    if poset.n == 0:
        raise EmptyPoset("height of the empty poset")
    h = np.zeros(poset.n, dtype=np.int64)
    for i in poset.linear_extension():
        below = poset.lt[:, i]
        if below.any():
            h[i] = h[below].max() + 1
    return int(h.max())


# -- reduced lattices and the alternating retraction sequence ---------------


def is_reduced_lattice(poset: Poset) -> bool:
    """Every pair with an upper bound has a supremum (proper part of a lattice)."""
    n = poset.n
    if n == 0:
        return True
    lin = poset.linear_extension()
    lt = poset.lt[np.ix_(lin, lin)]
    le = lt | np.eye(n, dtype=bool)
    for i in range(n):
        common = le[i] & le
        bounded = common.any(axis=1)
        if not bounded.any():
            continue
        first = np.argmax(common, axis=1)
        bad = bounded & (common & ~le[first]).any(axis=1)
        if bad.any():
            return False
    return True


def is_atomic(poset: Poset) -> bool:
    """Every element is the supremum of the minimal elements below it."""
    if poset.n == 0:
        return True
    le = poset.le
    minimal = poset.minimal_mask()
    for x in range(poset.n):
        atoms = np.nonzero(minimal & le[:, x])[0]
        uppers = le[atoms].all(axis=0)
        if (uppers & ~le[x]).any():
            return False
    return True


def is_coatomic(poset: Poset) -> bool:
    """Every element is the infimum of the maximal elements above it."""
    if poset.n == 0:
        return True
    le = poset.le
    maximal = poset.maximal_mask()
    for x in range(poset.n):
        coatoms = np.nonzero(maximal & le[x])[0]
        lowers = le[:, coatoms].all(axis=1)
        if (lowers & ~le[:, x]).any():
            return False
    return True


def _meet_index(poset: Poset, rank: np.ndarray, a: int, b: int):
    """Index of a ∧ b, None if {a, b} has no lower bound.

    Raises NotReducedLattice when lower bounds exist but no greatest one.
    """
    le = poset.le
    lower = le[:, a] & le[:, b]
    idx = np.nonzero(lower)[0]
    if idx.size == 0:
        return None
    cand = int(idx[np.argmax(rank[idx])])
    if (lower & ~le[:, cand]).any():
        raise NotReducedLattice("lower-bounded pair without an infimum")
    return cand

def _join_index(poset: Poset, rank: np.ndarray, a: int, b: int):
    le = poset.le
    upper = le[a] & le[b]
    idx = np.nonzero(upper)[0]
    if idx.size == 0:
        return None
    cand = int(idx[np.argmin(rank[idx])])
    if (upper & ~le[cand]).any():
        raise NotReducedLattice("upper-bounded pair without a supremum")
    return cand


def _rank(poset: Poset) -> np.ndarray:
    rank = np.empty(poset.n, dtype=np.int64)
    rank[poset.linear_extension()] = np.arange(poset.n)
    return rank


def i_op(poset: Poset) -> Poset:
    """Subposet of meets of lower-bounded non-empty sets of maximal elements.

    A strong deformation retract reached by removing only up beat points.
    """
    return _ops_closure(poset, _meet_index, poset.maximal_mask())


def s_op(poset: Poset) -> Poset:
    """Subposet of joins of upper-bounded non-empty sets of minimal elements.

    Dual of :func:`i_op`; removes only down beat points.
    """
    return _ops_closure(poset, _join_index, poset.minimal_mask())


def _ops_closure(poset: Poset, combine, seed_mask) -> Poset:
    rank = _rank(poset)
    members = sorted(int(i) for i in np.nonzero(seed_mask)[0])
    seen = set(members)
    queue = list(members)
    k = 0
    while k < len(queue):
        a = queue[k]
        for b in queue[:k]:
            c = combine(poset, rank, a, b)
            if c is not None and c not in seen:
                seen.add(c)
                queue.append(c)
        k += 1
    return poset.subposet(sorted(seen), keep_action=poset.action is not None)


def xn_sequence(poset: Poset) -> list[Poset]:
    """Alternating i/s retraction sequence down to the core.

    Starts with the meet operator for atomic posets and the join operator for
    coatomic ones; successive terms are strong deformation retracts and the
    limit is a core.
    """
    if poset.n == 0:
        raise EmptyPoset("retraction sequence of the empty poset")
    if not is_reduced_lattice(poset):
        raise NotReducedLattice("poset is not the proper part of a lattice")
    atomic = is_atomic(poset)
    if atomic:
        ops = itertools.cycle((i_op, s_op))
    elif is_coatomic(poset):
        ops = itertools.cycle((s_op, i_op))
    else:
        raise NeitherAtomicNorCoatomic("sequence needs an atomic or coatomic start")
    seq = [poset]
    for op in ops:
        nxt = op(seq[-1])
        if nxt.n == seq[-1].n:
            break
        seq.append(nxt)
    return seq


def steps_to_contract(poset: Poset):
    """Least n with X_n a single point, or None when the space is not
    contractible."""
    seq = xn_sequence(poset)
    if seq[-1].n != 1:
        return None
    for k, term in enumerate(seq):
        if term.n == 1:
            return k
    raise AssertionError("unreachable")


def invariant_core(poset: Poset) -> Poset:
    """Core computed equivariantly via the alternating retractions.

    Works for any reduced lattice carrying an action; the result keeps the
    induced action, and when the space is contractible it is a fixed point.
    """
    if poset.action is None:
        raise MissingAction("invariant core needs a group action")
    if poset.n == 0:
        raise EmptyPoset("invariant core of the empty poset")
    if not is_reduced_lattice(poset):
        raise NotReducedLattice("poset is not the proper part of a lattice")
    first = s_op if (is_coatomic(poset) and not is_atomic(poset)) else i_op
    ops = itertools.cycle((first, s_op if first is i_op else i_op))
    current = poset
    for op in ops:
        nxt = op(current)
        if nxt.n == current.n:
            other = s_op(current) if op is i_op else i_op(current)
            if other.n == current.n:
                return current
            current = other
        else:
            current = nxt
    raise AssertionError("unreachable")


def min_changes_oracle(poset: Poset, limit: int = 12):
    """Exhaustive minimum number of kind changes over beat-point removal
    sequences reaching a single point; None when the space is not
    contractible.  Intended as a small-case oracle."""
    if poset.n > limit:
        raise SizeLimitExceeded(f"oracle limited to {limit} elements, got {poset.n}")
    if poset.n == 0:
        return None
    n = poset.n
    down = [0] * n
    up = [0] * n
    for i in range(n):
        for j in range(n):
            if poset.lt[j, i]:
                down[i] |= 1 << j
            if poset.lt[i, j]:
                up[i] |= 1 << j

    def beat_kinds(alive: int, x: int):
        kinds = []
        d = down[x] & alive
        if d:
            count = 0
            m = d
            while m:
                z = m & -m
                zi = z.bit_length() - 1
                if not (up[zi] & d):
                    count += 1
                m ^= z
            if count == 1:
                kinds.append(0)
        u = up[x] & alive
        if u:
            count = 0
            m = u
            while m:
                z = m & -m
                zi = z.bit_length() - 1
                if not (down[zi] & u):
                    count += 1
                m ^= z
            if count == 1:
                kinds.append(1)
        return kinds

    full = (1 << n) - 1
    start = (full, 2)  # 2 = no removals yet
    dist = {start: 0}
    heap = [(0, start)]
    while heap:
        d, state = heapq.heappop(heap)
        if d > dist.get(state, 1 << 30):
            continue
        alive, last = state
        if alive.bit_count() == 1:
            return d
        m = alive
        while m:
            z = m & -m
            x = z.bit_length() - 1
            m ^= z
            for kind in beat_kinds(alive, x):
                cost = d + (0 if last in (kind, 2) else 1)
                nxt = (alive ^ (1 << x), kind)
                if cost < dist.get(nxt, 1 << 30):
                    dist[nxt] = cost
                    heapq.heappush(heap, (cost, nxt))
    return None


# -- order complex, Euler characteristic, DOT rendering ---------------------


def order_complex(poset: Poset):
    """Simplicial complex of non-empty chains (use on small posets/cores)."""
    from .homol import SimplicialComplex

    by_dim: dict[int, list] = {}
    succ = [np.nonzero(poset.lt[i])[0] for i in range(poset.n)]
    stack = [(i,) for i in range(poset.n - 1, -1, -1)]
    while stack:
        chain = stack.pop()
        by_dim.setdefault(len(chain) - 1, []).append(tuple(sorted(chain)))
        last = chain[-1]
        for z in succ[last]:
            stack.append(chain + (int(z),))
    dims = max(by_dim) + 1 if by_dim else 0
    return SimplicialComplex([sorted(by_dim.get(k, [])) for k in range(dims)])


def euler_char(poset: Poset) -> int:
    """Euler characteristic of the order complex, via exact chain counts."""
    if poset.n == 0:
        return 0
    ltt = np.ascontiguousarray(poset.lt.T, dtype=np.uint8)
    vec = np.ones(poset.n, dtype=np.int64)
    total = 0
    sign = 1
    while True:
        count = int(vec.sum())
        if count == 0:
            return total
        total += sign * count
        sign = -sign
        if count > (1 << 40):  # keep int64 matmul exact
            return total + _euler_bigint(poset, vec, sign)
        vec = ltt @ vec


def _euler_bigint(poset: Poset, vec, sign: int) -> int:
    counts = [int(v) for v in vec]
    lt = poset.lt
    total = 0
    while True:
        nxt = [0] * poset.n
        for j in range(poset.n):
            if counts[j]:
                for i in np.nonzero(lt[j])[0]:
                    nxt[i] += counts[j]
        s = sum(nxt)
        if s == 0:
            return total
        total += sign * s
        sign = -sign
        counts = nxt


def hasse_dot(poset: Poset, node_labels=None) -> str:
    """DOT text of the Hasse diagram (covering edges only)."""
    if node_labels is None:
        node_labels = [str(lab) for lab in poset.labels]
    covers = poset.covers()
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i in range(poset.n):
        text = str(node_labels[i]).replace('"', r"\"")
        lines.append(f'  n{i} [label="{text}"];')
    for i in range(poset.n):
        for j in np.nonzero(covers[i])[0]:
            lines.append(f"  n{i} -> n{int(j)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
