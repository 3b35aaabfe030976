# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels.  Must stay output-identical to ``pure`` (including the
deterministic removal traces); the equivalence is enforced by tests."""

import numpy as np

DOWN = 0
UP = 1
POLICY_FIRST = 0
POLICY_LAST = 1

cdef extern from *:
    """
    static inline int psubtop_ctz64(unsigned long long x) {
        return __builtin_ctzll(x);
    }
    """
    int psubtop_ctz64(unsigned long long x) nogil


def mul_closure(table, seeds):
    """Indices of the subgroup generated by ``seeds``; sorted, contains 0."""
    cdef const int[:, ::1] t = np.ascontiguousarray(table, dtype=np.int32)
    cdef Py_ssize_t n = t.shape[0]
    member_arr = np.zeros(n, dtype=np.uint8)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef unsigned char[::1] member = member_arr
    cdef int[::1] queue = queue_arr
    cdef Py_ssize_t qlen = 0, i, j
    cdef int x, y, z
    member[0] = 1
    queue[qlen] = 0
    qlen += 1
    seeds_arr = np.unique(np.asarray(seeds, dtype=np.int64))
    for s in seeds_arr:
        x = <int> s
        if not member[x]:
            member[x] = 1
            queue[qlen] = x
            qlen += 1
    i = 0
    while i < qlen:
        x = queue[i]
        j = 0
        while j < qlen:
            y = queue[j]
            z = t[x, y]
            if not member[z]:
                member[z] = 1
                queue[qlen] = z
                qlen += 1
            z = t[y, x]
            if not member[z]:
                member[z] = 1
                queue[qlen] = z
                qlen += 1
            j += 1
        i += 1
    out = np.nonzero(member_arr)[0].astype(np.int32)
    return out


def strict_subset_matrix(bits):
    """lt[i, j] = row i proper subset of row j (rows pairwise distinct)."""
    arr = np.ascontiguousarray(bits, dtype=np.uint64)
    cdef const unsigned long long[:, ::1] b = arr
    cdef Py_ssize_t m = b.shape[0], words = b.shape[1]
    out_arr = np.zeros((m, m), dtype=bool)
    cdef unsigned char[:, ::1] out = out_arr.view(np.uint8)
    cdef Py_ssize_t i, j, w
    cdef bint sub
    with nogil:
        for i in range(m):
            for j in range(m):
                if i == j:
                    continue
                sub = 1
                for w in range(words):
                    if b[i, w] & ~b[j, w]:
                        sub = 0
                        break
                if sub:
                    out[i, j] = 1
    return out_arr


def _pack_rows(mat):
    m, n = mat.shape
    raw = np.packbits(mat, axis=1, bitorder="little")
    width = ((n + 63) // 64) * 8
    buf = np.zeros((m, width), dtype=np.uint8)
    buf[:, : raw.shape[1]] = raw
    return np.ascontiguousarray(buf.view(np.uint64))


cdef bint _down_beat(unsigned long long[:, ::1] down_words,
                     unsigned long long[:, ::1] up_words,
                     unsigned long long[::1] alive_words,
                     unsigned long long[::1] scratch,
                     Py_ssize_t words, int x) nogil:
    cdef Py_ssize_t w, v
    cdef unsigned long long word
    cdef int z, count = 0
    cdef bint empty = 1, blocked
    for w in range(words):
        scratch[w] = down_words[x, w] & alive_words[w]
        if scratch[w]:
            empty = 0
    if empty:
        return 0
    for w in range(words):
        word = scratch[w]
        while word:
            z = <int> (w * 64) + psubtop_ctz64(word)
            word &= word - 1
            blocked = 0
            for v in range(words):
                if up_words[z, v] & scratch[v]:
                    blocked = 1
                    break
            if not blocked:
                count += 1
                if count > 1:
                    return 0
    return count == 1


cdef bint _up_beat(unsigned long long[:, ::1] down_words,
                   unsigned long long[:, ::1] up_words,
                   unsigned long long[::1] alive_words,
                   unsigned long long[::1] scratch,
                   Py_ssize_t words, int x) nogil:
    cdef Py_ssize_t w, v
    cdef unsigned long long word
    cdef int z, count = 0
    cdef bint empty = 1, blocked
    for w in range(words):
        scratch[w] = up_words[x, w] & alive_words[w]
        if scratch[w]:
            empty = 0
    if empty:
        return 0
    for w in range(words):
        word = scratch[w]
        while word:
            z = <int> (w * 64) + psubtop_ctz64(word)
            word &= word - 1
            blocked = 0
            for v in range(words):
                if down_words[z, v] & scratch[v]:
                    blocked = 1
                    break
            if not blocked:
                count += 1
                if count > 1:
                    return 0
    return count == 1


def core_reduce(lt, policy=POLICY_FIRST):
    """Beat-point reduction; same trace contract as the pure backend."""
    lt_arr = np.ascontiguousarray(lt, dtype=bool)
    cdef Py_ssize_t n = lt_arr.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int32), np.zeros(0, dtype=np.uint8)
    above_arr = lt_arr
    below_arr = np.ascontiguousarray(lt_arr.T)
    cdef const unsigned char[:, ::1] above = above_arr.view(np.uint8)
    cdef const unsigned char[:, ::1] below = below_arr.view(np.uint8)
    up_words_arr = _pack_rows(above_arr)
    down_words_arr = _pack_rows(below_arr)
    cdef unsigned long long[:, ::1] up_words = up_words_arr
    cdef unsigned long long[:, ::1] down_words = down_words_arr
    cdef Py_ssize_t words = up_words_arr.shape[1]

    alive_arr = np.ones(n, dtype=np.uint8)
    pending_arr = np.ones(n, dtype=np.uint8)
    alive_words_arr = np.full(words, ~np.uint64(0), dtype=np.uint64)
    if n % 64:
        # shift in 64-bit arithmetic; a C int shift would be UB for n % 64 >= 32
        alive_words_arr[words - 1] = np.uint64(
            ((<unsigned long long> 1) << (n % 64)) - 1
        )
    scratch_arr = np.empty(words, dtype=np.uint64)
    removed_arr = np.empty(n, dtype=np.int32)
    kinds_arr = np.empty(n, dtype=np.uint8)

    cdef unsigned char[::1] alive = alive_arr
    cdef unsigned char[::1] pending = pending_arr
    cdef unsigned long long[::1] alive_words = alive_words_arr
    cdef unsigned long long[::1] scratch = scratch_arr
    cdef int[::1] removed = removed_arr
    cdef unsigned char[::1] kinds = kinds_arr

    cdef Py_ssize_t count = 0
    cdef int x, hit, kind, pol = policy
    cdef Py_ssize_t y
    with nogil:
        while True:
            hit = -1
            kind = 0
            if pol == 0:  # ascending scan, down beats preferred
                for x in range(<int> n):
                    if not (alive[x] and pending[x]):
                        continue
                    if _down_beat(down_words, up_words, alive_words, scratch, words, x):
                        hit = x
                        kind = 0
                        break
                    if _up_beat(down_words, up_words, alive_words, scratch, words, x):
                        hit = x
                        kind = 1
                        break
                    pending[x] = 0
            else:  # descending scan, up beats preferred
                for x in range(<int> n - 1, -1, -1):
                    if not (alive[x] and pending[x]):
                        continue
                    if _up_beat(down_words, up_words, alive_words, scratch, words, x):
                        hit = x
                        kind = 1
                        break
                    if _down_beat(down_words, up_words, alive_words, scratch, words, x):
                        hit = x
                        kind = 0
                        break
                    pending[x] = 0
            if hit < 0:
                break
            removed[count] = hit
            kinds[count] = <unsigned char> kind
            count += 1
            alive[hit] = 0
            alive_words[hit >> 6] &= ~((<unsigned long long> 1) << (hit & 63))
            for y in range(n):
                if alive[y] and (above[hit, y] or below[hit, y]):
                    pending[y] = 1
    return removed_arr[:count].copy(), kinds_arr[:count].copy()
