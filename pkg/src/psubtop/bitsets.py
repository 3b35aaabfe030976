"""Packed little-endian bitsets over element indices.

A bitset over a universe of size ``n`` is stored as ``ceil(n/64)`` uint64
words; bit ``i`` of the buffer marks element ``i``.  The byte image of the
padded buffer is the canonical (hashable, orderable) form used as a
deduplication key throughout the package.
"""

from __future__ import annotations

import numpy as np


def words_for(n: int) -> int:
    return (n + 63) // 64


def pack_indices(indices, n: int) -> bytes:
    mask = np.zeros(n, dtype=bool)
    mask[np.asarray(indices, dtype=np.int64)] = True
    return pack_mask(mask)


def pack_mask(mask: np.ndarray) -> bytes:
    n = mask.shape[0]
    raw = np.packbits(mask, bitorder="little")
    buf = np.zeros(words_for(n) * 8, dtype=np.uint8)
    buf[: raw.shape[0]] = raw
    return buf.tobytes()


def unpack(bits: bytes, n: int) -> np.ndarray:
    raw = np.frombuffer(bits, dtype=np.uint8)
    return np.unpackbits(raw, count=n, bitorder="little").astype(bool)


def indices(bits: bytes, n: int) -> np.ndarray:
    return np.nonzero(unpack(bits, n))[0].astype(np.int32)


def popcount(bits: bytes) -> int:
    return int.from_bytes(bits, "little").bit_count()


def intersect(a: bytes, b: bytes) -> bytes:
    return (np.frombuffer(a, dtype=np.uint64) & np.frombuffer(b, dtype=np.uint64)).tobytes()


def union(a: bytes, b: bytes) -> bytes:
    return (np.frombuffer(a, dtype=np.uint64) | np.frombuffer(b, dtype=np.uint64)).tobytes()


def is_subset(a: bytes, b: bytes) -> bool:
    wa = np.frombuffer(a, dtype=np.uint64)
    wb = np.frombuffer(b, dtype=np.uint64)
    return not bool(np.any(wa & ~wb))


def contains(bits: bytes, i: int) -> bool:
    return bool(bits[i >> 3] & (1 << (i & 7)))


def pack_bool_matrix(mat: np.ndarray) -> np.ndarray:
    """Pack each row of a bool matrix into uint64 words (shape m x words_for(n))."""
    m, n = mat.shape
    raw = np.packbits(mat, axis=1, bitorder="little")
    buf = np.zeros((m, words_for(n) * 8), dtype=np.uint8)
    buf[:, : raw.shape[1]] = raw
    return buf.view(np.uint64)


def rows_as_matrix(rows: list[bytes]) -> np.ndarray:
    """Stack canonical byte images into a uint64 matrix, one bitset per row."""
    if not rows:
        return np.zeros((0, 0), dtype=np.uint64)
    return np.frombuffer(b"".join(rows), dtype=np.uint64).reshape(len(rows), -1)
