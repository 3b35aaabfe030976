import random

import numpy as np
import pytest

from psubtop._kernels import backends
from psubtop import fixtures
from util import random_poset

BACKENDS = backends()
needs_compiled = pytest.mark.skipif(
    "compiled" not in BACKENDS, reason="compiled kernels not built"
)


@needs_compiled
def test_mul_closure_agrees():
    rng = np.random.default_rng(4)
    for name in ["S4", "Q8", "A4", "Z12"]:
        table = fixtures.build(name).table
        for _ in range(10):
            k = int(rng.integers(0, 3))
            seeds = rng.integers(0, table.shape[0], size=k)
            a = BACKENDS["pure"].mul_closure(table, seeds)
            b = BACKENDS["compiled"].mul_closure(table, seeds)
            assert np.array_equal(a, b)


@needs_compiled
def test_strict_subset_matrix_agrees():
    rng = np.random.default_rng(5)
    for _ in range(20):
        m = int(rng.integers(0, 40))
        words = int(rng.integers(1, 4))
        rows = {rng.integers(0, 2**50, dtype=np.uint64).tobytes() for _ in range(m)}
        bits = (
            np.frombuffer(b"".join(sorted(rows)), dtype=np.uint64).reshape(len(rows), 1)
            if rows
            else np.zeros((0, 1), dtype=np.uint64)
        )
        bits = np.repeat(bits, words, axis=1)
        a = BACKENDS["pure"].strict_subset_matrix(bits)
        b = BACKENDS["compiled"].strict_subset_matrix(bits)
        assert np.array_equal(a, b)


@needs_compiled
def test_core_reduce_agrees_both_policies():
    rng = random.Random(6)
    for _ in range(120):
        n = rng.randrange(0, 90)
        lt = random_poset(rng, n, rng.random() * 0.4)
        for policy in (0, 1):
            a = BACKENDS["pure"].core_reduce(lt, policy)
            b = BACKENDS["compiled"].core_reduce(lt, policy)
            assert np.array_equal(a[0], b[0])
            assert np.array_equal(a[1], b[1])


@needs_compiled
def test_core_reduce_word_boundaries():
    # sizes around the 32- and 64-bit marks once hid a shift-width bug
    rng = random.Random(60)
    for n in [31, 32, 33, 53, 63, 64, 65, 96, 127, 128, 129]:
        lt = random_poset(rng, n, 0.15)
        for policy in (0, 1):
            a = BACKENDS["pure"].core_reduce(lt, policy)
            b = BACKENDS["compiled"].core_reduce(lt, policy)
            assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1]), n


def test_mul_closure_identity_only():
    table = fixtures.build("S4").table
    for impl in BACKENDS.values():
        out = impl.mul_closure(table, np.zeros(0, dtype=np.int32))
        assert out.tolist() == [0]


def test_backend_selection_env(monkeypatch):
    import importlib
    import psubtop._kernels as kernels

    monkeypatch.setenv("PSUBTOP_PURE", "1")
    reloaded = importlib.reload(kernels)
    assert reloaded.BACKEND == "pure"
    monkeypatch.delenv("PSUBTOP_PURE")
    importlib.reload(kernels)
