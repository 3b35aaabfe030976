"""Bundled catalog of small permutation groups used by tests and demos.

Every entry carries its expected order; :func:`build` verifies it, so a typo
in a generator cannot silently produce the wrong group.  The two large
examples with composite descriptions, ``((Z3xZ3):Z8):Z2`` of order 144 and
``(((Z2xZ2)x((Z2^4):Z3)):Z3):Z3`` of order 1728, have no hand-written
permutation generators here; :func:`g144_candidates` searches for the first
via the semidirect-product builder, validated by its homotopy invariants.
"""

from __future__ import annotations

import numpy as np

from .groups import DEFAULT_MAX_ORDER, Group, closure, group_from_table
from .perms import Perm, parse_cycle_text


def _cyc(degree: int, text: str) -> Perm:
    return parse_cycle_text(text, degree)


def _cycle_range(a: int, b: int) -> str:
    return "(" + " ".join(str(i) for i in range(a, b + 1)) + ")"


def _dihedral_gens(n: int) -> tuple[int, list[str]]:
    rotation = _cycle_range(1, n)
    reflection = "".join(
        f"({i + 1} {n - i + 1})" for i in range(1, (n - 1) // 2 + 1)
    )
    return n, [rotation, reflection or "(1 2)"]


def _sl23_gens() -> tuple[int, list[str]]:
    # Action on the 8 non-zero vectors of F_3^2, ordered lexicographically.
    vectors = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}
    out = []
    for mat in ([(1, 1), (0, 1)], [(0, 2), (1, 0)]):
        images = np.empty(8, dtype=np.int32)
        for v, i in index.items():
            w = (
                (mat[0][0] * v[0] + mat[0][1] * v[1]) % 3,
                (mat[1][0] * v[0] + mat[1][1] * v[1]) % 3,
            )
            images[i] = index[w]
        out.append(images)
    from .perms import cycle_text

    return 8, [cycle_text(Perm(im)) for im in out]


def _catalog() -> list[tuple[str, int, int, list[str]]]:
    entries: list[tuple[str, int, int, list[str]]] = []

    def add(name, order, degree, gens):
        entries.append((name, order, degree, gens))

    add("Z2", 2, 2, ["(1 2)"])
    add("Z3", 3, 3, ["(1 2 3)"])
    add("Z4", 4, 4, ["(1 2 3 4)"])
    add("Z6", 6, 5, ["(1 2 3)(4 5)"])
    add("Z8", 8, 8, [_cycle_range(1, 8)])
    add("Z12", 12, 7, ["(1 2 3 4)(5 6 7)"])
    add("Z2xZ2", 4, 4, ["(1 2)", "(3 4)"])
    add("Z2xZ4", 8, 6, ["(1 2)", "(3 4 5 6)"])
    add("Z2xZ2xZ2", 8, 6, ["(1 2)", "(3 4)", "(5 6)"])
    add("Z3xZ3", 9, 6, ["(1 2 3)", "(4 5 6)"])
    for n in range(3, 13):
        degree, gens = _dihedral_gens(n)
        add(f"D{n}", 2 * n, degree, gens)
    add("Q8", 8, 8, ["(1 3 2 4)(5 7 6 8)", "(1 5 2 6)(3 8 4 7)"])
    add("S3", 6, 3, ["(1 2 3)", "(1 2)"])
    add("S4", 24, 4, ["(1 2)", "(1 2 3 4)"])
    add("S5", 120, 5, ["(1 2)", "(1 2 3 4 5)"])
    add("A4", 12, 4, ["(1 2 3)", "(2 3 4)"])
    add("A5", 60, 5, ["(1 2 3)", "(1 2 3 4 5)"])
    sl_degree, sl_gens = _sl23_gens()
    add("SL23", 24, sl_degree, sl_gens)
    add("Z3sdZ4", 12, 7, ["(1 2 3)", "(2 3)(4 5 6 7)"])
    add("Z5sdZ4", 20, 5, ["(1 2 3 4 5)", "(2 3 5 4)"])
    add("S3xS3", 36, 6, ["(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)"])
    add("D4xZ2", 16, 6, ["(1 2 3 4)", "(1 3)", "(5 6)"])
    add("S3wrZ2", 72, 6, ["(1 2 3)", "(1 2)", "(4 5 6)", "(4 5)", "(1 4)(2 5)(3 6)"])
    add("G576", 576, 8, ["(1 2 8 3)(4 7)", "(1 6 3 7 8 5)(2 4)"])
    return entries


CATALOG = _catalog()
CATALOG_NAMES = [entry[0] for entry in CATALOG]

_built: dict[str, Group] = {}


def build(name: str) -> Group:
    """Build (and cache) a catalog group, verifying its expected order."""
    if name in _built:
        return _built[name]
    for entry_name, order, degree, gens in CATALOG:
        if entry_name == name:
            group = closure(
                degree,
                [_cyc(degree, g) for g in gens],
                max_order=max(DEFAULT_MAX_ORDER, order),
                name=name,
            )
            if group.order != order:
                raise AssertionError(
                    f"catalog entry {name}: got order {group.order}, expected {order}"
                )
            _built[name] = group
            return group
    raise KeyError(f"unknown catalog group {name!r}")


def groups_below(order_bound: int) -> list[Group]:
    return [build(name) for name, order, _, _ in CATALOG if order < order_bound]


def write_fixture_files(directory) -> list:
    """Materialize the catalog as .grp files (for the batch pipeline)."""
    from pathlib import Path

    from .groupfile import format_group_file

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, order, degree, gens in CATALOG:
        text = format_group_file(name, degree, [_cyc(degree, g) for g in gens])
        path = directory / f"{name}.grp"
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written


# -- semidirect products ----------------------------------------------------


def cyclic_table(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n


def semidirect_table(n_table: np.ndarray, h_table: np.ndarray, act: np.ndarray) -> np.ndarray:
    """Multiplication table of N : H on pair indices a*|H| + h.

    ``act[h, a]`` is the automorphism image of a under h, so the product is
    (a, h)(b, k) = (a . act[h, b], h k).  Index 0 = (identity, identity).
    """
    nn, nh = n_table.shape[0], h_table.shape[0]
    a_idx = np.arange(nn * nh) // nh
    h_idx = np.arange(nn * nh) % nh
    table = np.empty((nn * nh, nn * nh), dtype=np.int32)
    for x in range(nn * nh):
        a, h = int(a_idx[x]), int(h_idx[x])
        twisted = act[h, a_idx]  # act of h on every b
        table[x] = n_table[a, twisted] * nh + h_table[h, h_idx]
    return table


def automorphism_powers(perm: np.ndarray, order: int) -> np.ndarray:
    """Stack id, f, f^2, ... f^(order-1) for an automorphism permutation."""
    n = perm.shape[0]
    out = np.empty((order, n), dtype=np.int64)
    out[0] = np.arange(n)
    for k in range(1, order):
        out[k] = perm[out[k - 1]]
    return out


def gl23_matrices() -> list[np.ndarray]:
    """All 48 invertible 2x2 matrices over F_3."""
    out = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    if (a * d - b * c) % 3:
                        out.append(np.asarray([[a, b], [c, d]]))
    return out


def _matrix_perm_on_z3sq(mat: np.ndarray) -> np.ndarray:
    """Permutation of Z3 x Z3 (index 3a+b) induced by an invertible matrix."""
    perm = np.empty(9, dtype=np.int64)
    for a in range(3):
        for b in range(3):
            x = (mat[0, 0] * a + mat[0, 1] * b) % 3
            y = (mat[1, 0] * a + mat[1, 1] * b) % 3
            perm[3 * a + b] = 3 * x + y
    return perm


def z3sq_table() -> np.ndarray:
    idx = np.arange(9)
    a, b = idx // 3, idx % 3
    return (((a[:, None] + a[None, :]) % 3) * 3 + (b[:, None] + b[None, :]) % 3).astype(
        np.int32
    )


def g144_candidates():
    """Yield order-144 groups of shape ((Z3xZ3):Z8):Z2.

    The Z8 acts through an order-8 matrix over F_3; the order-2 layer acts by
    (v, i) -> (S v, j*i) for an involutive S normalizing the Z8 action.  The
    caller filters candidates by their homotopy invariants.
    """
    m8 = None
    for mat in gl23_matrices():
        perm = _matrix_perm_on_z3sq(mat)
        pow_perm = automorphism_powers(perm, 9)
        if np.array_equal(pow_perm[8], pow_perm[0]) and not any(
            np.array_equal(pow_perm[k], pow_perm[0]) for k in (1, 2, 4)
        ):
            m8 = mat
            break
    if m8 is None:
        return
    m_perm = _matrix_perm_on_z3sq(m8)
    m_pows = automorphism_powers(m_perm, 8)
    k_table = semidirect_table(z3sq_table(), cyclic_table(8), m_pows)

    for s_mat in gl23_matrices():
        s_perm = _matrix_perm_on_z3sq(s_mat)
        if not np.array_equal(s_perm[s_perm], np.arange(9)):
            continue
        conj = _matrix_perm_on_z3sq((s_mat @ m8 @ _mat_inverse(s_mat)) % 3)
        j = next((k for k in range(8) if np.array_equal(conj, m_pows[k])), None)
        if j is None or (j * j) % 8 != 1:
            continue
        # automorphism of K = Z3^2 : Z8 as a permutation of pair indices
        sigma = np.empty(72, dtype=np.int64)
        for a in range(9):
            for i in range(8):
                sigma[a * 8 + i] = int(s_perm[a]) * 8 + (j * i) % 8
        if not _is_table_automorphism(k_table, sigma):
            continue
        g_table = semidirect_table(
            k_table, cyclic_table(2), np.stack([np.arange(72), sigma])
        )
        yield group_from_table(g_table, name="G144")


def _mat_inverse(mat: np.ndarray) -> np.ndarray:
    det = (mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]) % 3
    det_inv = {1: 1, 2: 2}[int(det)]
    return (
        det_inv
        * np.asarray([[mat[1, 1], -mat[0, 1]], [-mat[1, 0], mat[0, 0]]])
    ) % 3


def _is_table_automorphism(table: np.ndarray, perm: np.ndarray) -> bool:
    return np.array_equal(perm[table], table[np.ix_(perm, perm)])
