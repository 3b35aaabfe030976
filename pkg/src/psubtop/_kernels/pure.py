"""Pure-Python (numpy) implementations of the hot kernels.

The compiled backend in ``_speedups`` mirrors these functions exactly; both
must produce identical outputs for identical inputs, including the removal
traces (the deterministic scan policies are part of the contract).
"""

from __future__ import annotations

import numpy as np

DOWN = 0
UP = 1

POLICY_FIRST = 0  # ascending index scan, down beats preferred
POLICY_LAST = 1  # descending index scan, up beats preferred


def mul_closure(table: np.ndarray, seeds) -> np.ndarray:
    """Indices of the subgroup generated by ``seeds`` in a multiplication table.

    Always contains index 0 (the identity).  Returns a sorted int32 array.
    """
    n = table.shape[0]
    member = np.zeros(n, dtype=bool)
    member[0] = True
    seeds = np.asarray(seeds, dtype=np.int64).ravel()
    member[seeds] = True
    current = np.nonzero(member)[0]
    frontier = current
    while frontier.size:
        prod = np.concatenate(
            [
                table[np.ix_(frontier, current)].ravel(),
                table[np.ix_(current, frontier)].ravel(),
            ]
        )
        prod = np.unique(prod)
        new = prod[~member[prod]]
        member[new] = True
        current = np.nonzero(member)[0]
        frontier = new
    return current.astype(np.int32)


def strict_subset_matrix(bits: np.ndarray) -> np.ndarray:
    """lt[i, j] = bitset row i is a proper subset of row j.

    Rows must be pairwise distinct (guaranteed by family deduplication).
    """
    m = bits.shape[0]
    out = np.zeros((m, m), dtype=bool)
    if m == 0:
        return out
    words = bits.shape[1]
    inv = ~bits
    block = max(1, (1 << 23) // max(1, m * max(1, words)))
    for start in range(0, m, block):
        chunk = bits[start : start + block]
        t = chunk[:, None, :] & inv[None, :, :]
        out[start : start + block] = ~t.any(axis=2)
    np.fill_diagonal(out, False)
    return out


def _pack_rows(mat: np.ndarray) -> np.ndarray:
    m, n = mat.shape
    raw = np.packbits(mat, axis=1, bitorder="little")
    width = ((n + 63) // 64) * 8
    buf = np.zeros((m, width), dtype=np.uint8)
    buf[:, : raw.shape[1]] = raw
    return buf.view(np.uint64)


def core_reduce(lt: np.ndarray, policy: int = POLICY_FIRST):
    """Iteratively remove beat points until none remain.

    ``lt`` is the strict-order bool matrix (lt[i, j] iff i < j).  Scan order
    and beat-kind preference are fixed by ``policy`` so that traces are
    reproducible; the resulting core is the same up to isomorphism either way.
    Returns (removed_indices int32[r], kinds uint8[r]) with 0=down, 1=up.
    """
    n = lt.shape[0]
    removed: list[int] = []
    kinds: list[int] = []
    if n == 0:
        return np.zeros(0, dtype=np.int32), np.zeros(0, dtype=np.uint8)

    above = np.ascontiguousarray(lt)
    below = np.ascontiguousarray(lt.T)
    up_words = _pack_rows(above)
    down_words = _pack_rows(below)
    width = up_words.shape[1]

    alive = np.ones(n, dtype=bool)
    alive_words = np.full(width, ~np.uint64(0), dtype=np.uint64)
    tail = n % 64
    if tail:
        alive_words[-1] = np.uint64((1 << tail) - 1)
    pending = np.ones(n, dtype=bool)  # elements whose beat status needs (re)checking

    bit_word = np.arange(n) >> 6
    bit_mask = np.uint64(1) << (np.arange(n, dtype=np.uint64) & np.uint64(63))

    def down_beat(x: int) -> bool:
        d_words = down_words[x] & alive_words
        if not d_words.any():
            return False
        d_idx = np.nonzero(below[x] & alive)[0]
        blocked = (up_words[d_idx] & d_words).any(axis=1)
        return int(d_idx.size - np.count_nonzero(blocked)) == 1

    def up_beat(x: int) -> bool:
        u_words = up_words[x] & alive_words
        if not u_words.any():
            return False
        u_idx = np.nonzero(above[x] & alive)[0]
        blocked = (down_words[u_idx] & u_words).any(axis=1)
        return int(u_idx.size - np.count_nonzero(blocked)) == 1

    while True:
        scan = np.nonzero(alive & pending)[0]
        if policy == POLICY_LAST:
            scan = scan[::-1]
        hit = -1
        kind = DOWN
        for x in scan:
            if policy == POLICY_FIRST:
                if down_beat(x):
                    hit, kind = x, DOWN
                    break
                if up_beat(x):
                    hit, kind = x, UP
                    break
            else:
                if up_beat(x):
                    hit, kind = x, UP
                    break
                if down_beat(x):
                    hit, kind = x, DOWN
                    break
            pending[x] = False
        if hit < 0:
            break
        removed.append(int(hit))
        kinds.append(kind)
        alive[hit] = False
        alive_words[bit_word[hit]] &= ~bit_mask[hit]
        touched = (below[hit] | above[hit]) & alive
        pending |= touched

    return np.asarray(removed, dtype=np.int32), np.asarray(kinds, dtype=np.uint8)
