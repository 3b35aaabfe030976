"""Permutations on {0, ..., degree-1} with disjoint-cycle text form.

Composition is ``(p * q)(x) == p(q(x))`` (apply the right factor first).
Cycle text is 1-based, e.g. ``(1 2 8 3)(4 7)``; fixed points are omitted and
the identity prints as ``()``.
"""

from __future__ import annotations

from math import lcm

import numpy as np

from .errors import DegreeMismatch, ParseError


class Perm:
    __slots__ = ("images", "degree")

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int32)
        if arr.ndim != 1:
            raise ValueError("images must be one-dimensional")
        n = arr.shape[0]
        if not np.array_equal(np.sort(arr), np.arange(n, dtype=np.int32)):
            raise ValueError("images must be a bijection on 0..degree-1")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "images", arr)
        object.__setattr__(self, "degree", n)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(np.arange(degree, dtype=np.int32))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Perm":
        """Build from 0-based cycles, e.g. [(0, 1, 7, 2), (3, 6)]."""
        images = np.arange(degree, dtype=np.int32)
        seen = set()
        for cyc in cycles:
            for pt in cyc:
                if not 0 <= pt < degree:
                    raise DegreeMismatch(f"point {pt + 1} outside degree {degree}")
                if pt in seen:
                    raise ValueError(f"point {pt + 1} repeated")
                seen.add(pt)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(images)

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise DegreeMismatch("cannot compose permutations of different degree")
        return Perm(self.images[other.images])

    def inverse(self) -> "Perm":
        inv = np.empty(self.degree, dtype=np.int32)
        inv[self.images] = np.arange(self.degree, dtype=np.int32)
        return Perm(inv)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point, sorted."""
        out = []
        seen = np.zeros(self.degree, dtype=bool)
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = int(self.images[start])
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = int(self.images[nxt])
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def key(self) -> bytes:
        return self.images.tobytes()

    def __eq__(self, other):
        return isinstance(other, Perm) and self.degree == other.degree and np.array_equal(
            self.images, other.images
        )

    def __hash__(self):
        return hash((self.degree, self.key()))

    def __repr__(self):
        return f"Perm({cycle_text(self)!r}, degree={self.degree})"


def cycle_text(perm: Perm) -> str:
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(pt + 1) for pt in cyc) + ")" for cyc in cycles)


def parse_cycle_text(text: str, degree: int, *, line: int | None = None, offset: int = 0) -> Perm:
    """Parse 1-based disjoint-cycle notation into a Perm.

    ``line``/``offset`` locate the text within a larger file so that errors
    carry useful positions.
    """
    cycles: list[list[int]] = []
    seen: set[int] = set()
    pos = 0
    n = len(text)

    def err(message, at):
        raise ParseError(message, line=line, column=offset + at + 1)

    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != "(":
            err(f"expected '(' but found {ch!r}", pos)
        close = text.find(")", pos)
        if close < 0:
            err("unclosed cycle", pos)
        body = text[pos + 1 : close]
        points: list[int] = []
        cursor = pos + 1
        for tok in body.split():
            at = text.index(tok, cursor)
            cursor = at + len(tok)
            if not tok.isdigit():
                err(f"expected a point number, found {tok!r}", at)
            pt = int(tok)
            if pt < 1:
                err("points are 1-based", at)
            if pt > degree:
                raise DegreeMismatch(
                    f"point {pt} exceeds degree {degree}"
                    + (f" (line {line})" if line is not None else "")
                )
            if pt - 1 in seen:
                err(f"point {pt} repeated within one permutation", at)
            seen.add(pt - 1)
            points.append(pt - 1)
        if points:
            cycles.append(points)
        pos = close + 1
    images = np.arange(degree, dtype=np.int32)
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
    return Perm(images)
