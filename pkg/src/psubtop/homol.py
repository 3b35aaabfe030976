"""Reduced integral simplicial homology via Smith normal form.

Exact integer arithmetic throughout: elimination runs in int64 and promotes
to Python big integers before any intermediate could overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

import numpy as np

from .errors import DimensionOutOfRange, EmptyComplex


class SimplicialComplex:
    """Simplices grouped by dimension; vertex tuples strictly increasing."""

    def __init__(self, simplices_by_dim, validate=False):
        self.simplices_by_dim = tuple(
            tuple(tuple(int(v) for v in s) for s in level) for level in simplices_by_dim
        )
        while self.simplices_by_dim and not self.simplices_by_dim[-1]:
            self.simplices_by_dim = self.simplices_by_dim[:-1]
        if validate:
            self.validate()

    @classmethod
    def closure_of(cls, simplices) -> "SimplicialComplex":
        """Complex generated by the given simplices (closed under faces)."""
        levels: dict[int, set] = {}
        for s in simplices:
            s = tuple(sorted(set(int(v) for v in s)))
            for size in range(1, len(s) + 1):
                for face in combinations(s, size):
                    levels.setdefault(size - 1, set()).add(face)
        dims = max(levels) + 1 if levels else 0
        return cls([sorted(levels.get(k, ())) for k in range(dims)])

    def validate(self):
        seen_prev: set = set()
        for k, level in enumerate(self.simplices_by_dim):
            if list(level) != sorted(set(level)):
                raise ValueError(f"dimension {k} simplices must be sorted and distinct")
            for s in level:
                if len(s) != k + 1 or list(s) != sorted(set(s)):
                    raise ValueError(f"bad {k}-simplex {s}")
                if k > 0:
                    for face in combinations(s, k):
                        if face not in seen_prev:
                            raise ValueError(f"missing face {face} of {s}")
            seen_prev = set(level)

    @property
    def dim(self) -> int:
        return len(self.simplices_by_dim) - 1

    def counts(self) -> list[int]:
        return [len(level) for level in self.simplices_by_dim]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(level) for k, level in enumerate(self.simplices_by_dim))

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.simplices_by_dim == other.simplices_by_dim
        )

    def __repr__(self):
        return f"<SimplicialComplex: counts {self.counts()}>"


@dataclass(frozen=True)
class HomologySummary:
    """Reduced Betti numbers and torsion coefficients per dimension.

    Stored in normalized form (trailing trivial dimensions dropped) so that
    equality means isomorphic reduced homology.
    """

    betti: tuple
    torsion: tuple
    reduced: bool = True

    @classmethod
    def of(cls, betti, torsion) -> "HomologySummary":
        betti = [int(b) for b in betti]
        torsion = [tuple(int(d) for d in t) for t in torsion]
        dims = max(len(betti), len(torsion))
        betti += [0] * (dims - len(betti))
        torsion += [()] * (dims - len(torsion))
        while dims and betti[-1] == 0 and not torsion[-1]:
            betti.pop()
            torsion.pop()
            dims -= 1
        return cls(betti=tuple(betti), torsion=tuple(torsion))

    def is_trivial(self) -> bool:
        return not self.betti and all(not t for t in self.torsion)

    def serialize(self) -> str:
        left = ";".join(str(b) for b in self.betti)
        right = ";".join(
            f"{k}:{d}" for k, t in enumerate(self.torsion) for d in t
        )
        return f"{left}|{right}"


def boundary_matrix(complex_: SimplicialComplex, k: int) -> np.ndarray:
    """Matrix of the k-th boundary map with alternating-sign incidence."""
    if k < 1 or k > complex_.dim:
        raise DimensionOutOfRange(f"k={k} outside 1..{complex_.dim}")
    rows = complex_.simplices_by_dim[k - 1]
    cols = complex_.simplices_by_dim[k]
    row_index = {s: i for i, s in enumerate(rows)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, simplex in enumerate(cols):
        for drop in range(len(simplex)):
            face = simplex[:drop] + simplex[drop + 1 :]
            mat[row_index[face], j] = (-1) ** drop
    return mat


_INT64_GUARD = 1 << 62


def _max_abs(arr) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(v)) for v in arr.ravel())
    return int(np.abs(arr).max())


def smith_normal_form(mat) -> tuple[list[int], int]:
    """Invariant factors (with the divisibility chain) and the rank."""
    work = np.array(mat, dtype=np.int64, copy=True)
    if work.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    rows, cols = work.shape
    factors: list[int] = []
    t = 0
    while t < min(rows, cols):
        sub = work[t:, t:]
        nz = np.nonzero(sub)
        if nz[0].size == 0:
            break
        vals = sub[nz]
        pick = int(np.argmin(np.abs(vals))) if sub.dtype != object else min(
            range(len(vals)), key=lambda i: abs(int(vals[i]))
        )
        r, c = int(nz[0][pick]) + t, int(nz[1][pick]) + t
        work[[t, r], :] = work[[r, t], :]
        work[:, [t, c]] = work[:, [c, t]]
        while True:
            if work[t, t] < 0:
                work[t, :] = -work[t, :]
            pivot = int(work[t, t])
            col = work[t + 1 :, t]
            if np.any(col != 0):
                work = _guarded_axpy(work, t, pivot, axis=0)
                col = work[t + 1 :, t]
                if np.any(col != 0):
                    r = int(np.nonzero(col != 0)[0][0]) + t + 1
                    work[[t, r], :] = work[[r, t], :]
                    continue
            row = work[t, t + 1 :]
            if np.any(row != 0):
                work = _guarded_axpy(work, t, pivot, axis=1)
                row = work[t, t + 1 :]
                if np.any(row != 0):
                    c = int(np.nonzero(row != 0)[0][0]) + t + 1
                    work[:, [t, c]] = work[:, [c, t]]
                    continue
            if np.any(work[t + 1 :, t] != 0):
                continue
            break
        factors.append(int(abs(work[t, t])))
        t += 1
    factors = _divisibility_chain(factors)
    return factors, len(factors)


def _guarded_axpy(work, t, pivot, axis):
    """Subtract multiples of the pivot row/column, promoting dtype if the
    update could overflow int64."""
    if axis == 0:
        vec = work[t + 1 :, t]
        q = vec // pivot if work.dtype == object else vec // np.int64(pivot)
        if work.dtype != object:
            bound = _max_abs(q) * _max_abs(work[t, :]) + _max_abs(work[t + 1 :, :])
            if bound >= _INT64_GUARD:
                work = work.astype(object)
                q = work[t + 1 :, t] // pivot
        work[t + 1 :, :] = work[t + 1 :, :] - np.outer(q, work[t, :])
    else:
        vec = work[t, t + 1 :]
        q = vec // pivot if work.dtype == object else vec // np.int64(pivot)
        if work.dtype != object:
            bound = _max_abs(q) * _max_abs(work[:, t]) + _max_abs(work[:, t + 1 :])
            if bound >= _INT64_GUARD:
                work = work.astype(object)
                q = work[t, t + 1 :] // pivot
        work[:, t + 1 :] = work[:, t + 1 :] - np.outer(work[:, t], q)
    return work


def _divisibility_chain(factors: list[int]) -> list[int]:
    out = list(factors)
    for _ in range(len(out) * len(out) + 1):
        changed = False
        for i in range(len(out) - 1):
            a, b = out[i], out[i + 1]
            if b % a:
                g = gcd(a, b)
                out[i], out[i + 1] = g, a // g * b
                changed = True
        if not changed:
            return out
    raise AssertionError("divisibility sweep failed to converge")


def reduced_homology(complex_: SimplicialComplex) -> HomologySummary:
    """Reduced integral homology from Smith normal forms of the boundaries."""
    counts = complex_.counts()
    if not counts:
        raise EmptyComplex("homology of the empty complex")
    top = complex_.dim
    ranks = [1 if counts[0] else 0]  # augmentation in dimension 0
    torsion_at = [()] * (top + 1)
    for k in range(1, top + 1):
        factors, rank = smith_normal_form(boundary_matrix(complex_, k))
        ranks.append(rank)
        torsion_at[k - 1] = tuple(d for d in factors if d > 1)
    ranks.append(0)
    betti = [counts[k] - ranks[k] - ranks[k + 1] for k in range(top + 1)]
    return HomologySummary.of(betti, torsion_at)
