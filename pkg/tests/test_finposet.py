import random

import numpy as np
import pytest

from psubtop import (
    Poset,
    ap_poset,
    core,
    euler_char,
    hasse_dot,
    height,
    i_op,
    invariant_core,
    is_atomic,
    is_coatomic,
    is_down_beat,
    is_reduced_lattice,
    is_up_beat,
    min_changes_oracle,
    o_p,
    order_complex,
    poset_iso,
    s_op,
    same_homotopy_type,
    sp_poset,
    steps_to_contract,
    xn_sequence,
)
from psubtop.errors import (
    EmptyPoset,
    MissingAction,
    NeitherAtomicNorCoatomic,
    NotReducedLattice,
    SizeLimitExceeded,
)
from psubtop.finposet import verify_trace
from psubtop.groups import p_part
from psubtop.perms import parse_cycle_text
from util import (
    is_monotone,
    naive_core_size,
    random_monotone_above,
    random_monotone_below_id,
    random_poset,
)


def chain(n):
    lt = np.triu(np.ones((n, n), dtype=bool), k=1)
    return Poset(lt)


def antichain(n):
    return Poset(np.zeros((n, n), dtype=bool))


def from_covers(n, covers):
    lt = np.zeros((n, n), dtype=bool)
    for a, b in covers:
        lt[a, b] = True
    for k in range(n):
        lt |= np.outer(lt[:, k], lt[k, :])
    return Poset(lt, validate=True)


def bowtie():
    # two minima each below two maxima: upper-bounded pair without a join
    return from_covers(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


def fence_circle():
    # a < c > b < d > a: minimal non-contractible 4-element space
    return from_covers(4, [(0, 2), (1, 2), (1, 3), (0, 3)])


# -- beat points ------------------------------------------------------------


def test_chain_beats():
    c = chain(3)
    assert is_down_beat(c, 2) and is_down_beat(c, 1)
    assert is_up_beat(c, 0) and is_up_beat(c, 1)
    assert not is_down_beat(c, 0) and not is_up_beat(c, 2)


def test_antichain_has_no_beats():
    a = antichain(3)
    assert not any(is_down_beat(a, i) or is_up_beat(a, i) for i in range(3))


def test_transposition_subgroup_is_up_beat_in_torus_poset(catalog):
    s4 = catalog["S4"]
    ap = ap_poset(s4, 2)
    idx = next(
        i
        for i, sub in enumerate(ap.labels)
        if sub.order == 2 and sub.contains(s4.index_of(parse_cycle_text("(1 2)", 4)))
    )
    assert is_up_beat(ap, idx)
    assert not is_down_beat(ap, idx)


# -- core -------------------------------------------------------------------


def test_core_of_poset_with_maximum_is_point():
    got, trace = core(from_covers(4, [(0, 3), (1, 3), (2, 3)]))
    assert got.n == 1
    assert trace.changes == 0  # only one kind of beat point needed


def test_core_idempotent_and_traces_replay():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randrange(1, 25)
        poset = Poset(random_poset(rng, n, rng.random() * 0.4))
        reduced, trace = core(poset)
        assert verify_trace(poset, trace)
        again, trace2 = core(reduced)
        assert again.n == reduced.n
        assert trace2.steps == ()


def test_core_policy_independent_up_to_iso():
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randrange(1, 31)
        poset = Poset(random_poset(rng, n, rng.random() * 0.4))
        first, _ = core(poset, policy="first")
        last, _ = core(poset, policy="last")
        assert poset_iso(first, last) is not None


def test_core_size_matches_naive_reduction():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randrange(1, 22)
        lt = random_poset(rng, n, rng.random() * 0.5)
        got, _ = core(Poset(lt))
        assert got.n == naive_core_size(lt)


def test_wreath_core_sizes(catalog):
    w = catalog["S3wrZ2"]
    sp_core, _ = core(sp_poset(w, 2))
    ap_core, _ = core(ap_poset(w, 2))
    assert (sp_core.n, ap_core.n) == (21, 39)
    assert poset_iso(sp_core, ap_core) is None


def test_empty_core():
    got, trace = core(antichain(0))
    assert got.n == 0 and trace.steps == ()


# -- isomorphism ------------------------------------------------------------


def test_iso_identity_and_negatives():
    c = chain(2)
    assert poset_iso(c, c) is not None
    assert poset_iso(c, antichain(2)) is None
    assert poset_iso(chain(3), chain(4)) is None


def test_iso_found_after_relabeling():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randrange(1, 20)
        lt = random_poset(rng, n, rng.random() * 0.5)
        perm = list(range(n))
        rng.shuffle(perm)
        perm = np.asarray(perm)
        relabeled = np.zeros_like(lt)
        relabeled[np.ix_(perm, perm)] = lt
        mapping = poset_iso(Poset(lt), Poset(relabeled))
        assert mapping is not None
        x = Poset(lt)
        y = Poset(relabeled)
        assert np.array_equal(y.lt[np.ix_(mapping, mapping)], x.lt)


def test_iso_falls_through_to_backtracking():
    # 8-crown vs two disjoint 4-crowns: every degree/neighborhood invariant
    # agrees, only exact search can tell them apart
    ring = from_covers(8, [(0, 4), (0, 5), (1, 5), (1, 6), (2, 6), (2, 7), (3, 7), (3, 4)])
    pair = from_covers(8, [(0, 4), (0, 5), (1, 4), (1, 5), (2, 6), (2, 7), (3, 6), (3, 7)])
    assert poset_iso(ring, pair) is None
    assert poset_iso(ring, ring) is not None
    assert poset_iso(pair, pair) is not None


def test_same_homotopy_type(catalog):
    s4 = catalog["S4"]
    assert same_homotopy_type(sp_poset(s4, 2), ap_poset(s4, 2))
    assert same_homotopy_type(chain(4), chain(1))
    w = catalog["S3wrZ2"]
    assert not same_homotopy_type(sp_poset(w, 2), ap_poset(w, 2))
    assert same_homotopy_type(antichain(0), antichain(0))


# -- height -----------------------------------------------------------------


def test_height():
    assert height(antichain(5)) == 0
    assert height(chain(4)) == 3
    with pytest.raises(EmptyPoset):
        height(antichain(0))


def test_height_of_subgroup_posets(catalog):
    assert height(sp_poset(catalog["S4"], 2)) == 2
    assert height(ap_poset(catalog["G576"], 2)) == 3


# -- reduced lattices, i/s, retraction sequence -----------------------------


def test_reduced_lattice_checks(catalog):
    assert is_reduced_lattice(chain(3))
    assert not is_reduced_lattice(bowtie())
    for name in ["S4", "D4", "Q8", "S3wrZ2"]:
        ap = ap_poset(catalog[name], 2)
        assert is_reduced_lattice(ap)
        assert is_atomic(ap)


def test_core_of_reduced_lattice_is_atomic_and_coatomic(catalog):
    for name in ["S4", "S3wrZ2", "S5"]:
        for build in (sp_poset, ap_poset):
            poset = build(catalog[name], 2)
            if not is_reduced_lattice(poset):
                continue
            reduced, _ = core(poset)
            assert is_atomic(reduced)
            assert is_coatomic(reduced)


def test_atomic_iff_fixed_by_join_operator(catalog):
    ap = ap_poset(catalog["S4"], 2)
    assert s_op(ap).n == ap.n
    sp = sp_poset(catalog["S4"], 2)
    assert is_atomic(sp) == (s_op(sp).n == sp.n)


def test_i_op_of_s4_matches_published_diagram(catalog):
    got = i_op(ap_poset(catalog["S4"], 2))
    assert got.n == 7
    # one maximal torus over three atoms, three others over one atom each
    expected = from_covers(7, [(0, 3), (1, 3), (2, 3), (0, 4), (1, 5), (2, 6)])
    assert poset_iso(got, expected) is not None


def test_i_op_of_bounded_poset_is_maximum():
    poset = from_covers(4, [(0, 3), (1, 3), (2, 3)])
    assert i_op(poset).n == 1


def test_i_s_ops_preserve_action(catalog):
    ap = ap_poset(catalog["S4"], 2)
    sub = i_op(ap)
    assert sub.action is not None
    for sigma in sub.action:
        assert np.array_equal(sub.lt[np.ix_(sigma, sigma)], sub.lt)


def test_ops_raise_on_non_lattice():
    with pytest.raises(NotReducedLattice):
        s_op(bowtie())


def test_xn_sequence_s4(catalog):
    seq = xn_sequence(ap_poset(catalog["S4"], 2))
    assert [term.n for term in seq] == [13, 7, 4, 1]


def test_xn_sequence_point():
    seq = xn_sequence(chain(1))
    assert len(seq) == 1 and seq[0].n == 1


def test_xn_sequence_errors():
    with pytest.raises(EmptyPoset):
        xn_sequence(antichain(0))
    with pytest.raises(NotReducedLattice):
        xn_sequence(bowtie())


def test_xn_sequence_needs_atomic_or_coatomic(catalog):
    sp = sp_poset(catalog["S4"], 2)
    assert is_reduced_lattice(sp)
    assert not is_atomic(sp) and not is_coatomic(sp)
    with pytest.raises(NeitherAtomicNorCoatomic):
        xn_sequence(sp)


def test_steps_to_contract(catalog):
    assert steps_to_contract(ap_poset(catalog["S4"], 2)) == 3
    assert steps_to_contract(from_covers(3, [(0, 2), (1, 2)])) == 1
    assert steps_to_contract(chain(1)) == 0
    assert steps_to_contract(ap_poset(catalog["G576"], 2)) is None


def test_min_changes_oracle():
    assert min_changes_oracle(from_covers(4, [(0, 3), (1, 3), (2, 3)])) == 0
    assert min_changes_oracle(fence_circle()) is None
    with pytest.raises(SizeLimitExceeded):
        min_changes_oracle(chain(13))
    assert min_changes_oracle(chain(13), limit=13) == 0


def test_min_changes_matches_steps_on_s4_example(catalog):
    poset = i_op(ap_poset(catalog["S4"], 2))  # 7 elements, fits the oracle
    assert min_changes_oracle(poset) == steps_to_contract(poset) - 1


def test_invariant_core_s4(catalog):
    s4 = catalog["S4"]
    sp = sp_poset(s4, 2)
    result = invariant_core(sp)
    assert result.n == 1
    assert result.labels[0].bits == o_p(s4, 2).bits
    assert all(int(sigma[0]) == 0 for sigma in result.action)


def test_invariant_core_needs_action():
    with pytest.raises(MissingAction):
        invariant_core(chain(3))


def test_invariant_core_matches_plain_core(catalog):
    for name in ["S4", "D4", "S3wrZ2"]:
        ap = ap_poset(catalog[name], 2)
        inv = invariant_core(ap)
        plain, _ = core(ap)
        assert poset_iso(inv, plain) is not None


# -- fence property over torus posets ---------------------------------------


def test_monotone_below_identity_is_identity_on_torus_posets(catalog):
    rng = random.Random(17)
    posets = [ap_poset(catalog[name], 2) for name in ["S4", "D4", "Q8", "D6"]]
    done = 0
    while done < 100:
        poset = posets[done % len(posets)]
        f = random_monotone_below_id(rng, poset)
        assert is_monotone(poset, f)
        assert np.all(poset.le[f, np.arange(poset.n)])
        # on an atomic reduced lattice the only monotone map below the
        # identity is the identity itself, hence id <= g for any g >= f
        assert np.array_equal(f, np.arange(poset.n))
        g = random_monotone_above(rng, poset, f)
        if g is not None:
            assert is_monotone(poset, g)
            assert np.all(poset.le[np.arange(poset.n), g])
        done += 1


# -- order complex, Euler characteristic ------------------------------------


def test_order_complex_chain():
    k = order_complex(chain(2))
    assert k.counts() == [2, 1]
    k.validate()


def test_order_complex_antichain():
    k = order_complex(antichain(4))
    assert k.counts() == [4]


def test_order_complex_s4_tori(catalog):
    k = order_complex(ap_poset(catalog["S4"], 2))
    assert k.counts() == [13, 12]


def test_euler_char_examples(catalog):
    assert euler_char(chain(1)) == 1
    assert euler_char(antichain(0)) == 0
    chi = euler_char(sp_poset(catalog["S4"], 2))
    assert (chi - 1) % p_part(24, 2) == 0


def test_euler_matches_complex_count():
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randrange(1, 15)
        poset = Poset(random_poset(rng, n, rng.random() * 0.5))
        assert euler_char(poset) == order_complex(poset).euler_characteristic()


def test_euler_invariant_under_core(catalog):
    for name in ["S4", "D6", "S3wrZ2", "A4"]:
        poset = ap_poset(catalog[name], 2)
        reduced, _ = core(poset)
        assert euler_char(poset) == euler_char(reduced)


# -- DOT --------------------------------------------------------------------


def test_hasse_dot_counts():
    text = hasse_dot(from_covers(4, [(0, 1), (1, 2), (1, 3)]))
    assert text.count("[label=") == 4
    assert text.count("->") == 3
    assert text.startswith("digraph")
