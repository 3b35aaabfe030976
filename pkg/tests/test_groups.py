import numpy as np
import pytest

from psubtop import (
    center,
    centralizer,
    closure,
    element_order,
    fitting,
    normalizer,
    o_p,
    omega1,
    sylow_subgroups,
)
from psubtop.errors import OrderLimitExceeded, PrimeDoesNotDivide
from psubtop.groups import p_part, prime_divisors
from psubtop.perms import parse_cycle_text
from util import brute_centralizer, brute_normalizer


def perm(text, degree):
    return parse_cycle_text(text, degree)


def test_closure_s4():
    g = closure(4, [perm("(1 2)", 4), perm("(1 2 3 4)", 4)])
    assert g.order == 24
    assert g.elements[0].is_identity()


def test_closure_counterexample_group_has_order_576(catalog):
    assert catalog["G576"].order == 576


def test_closure_trivial():
    g = closure(3, [])
    assert g.order == 1


def test_closure_order_limit():
    with pytest.raises(OrderLimitExceeded):
        closure(4, [perm("(1 2)", 4), perm("(1 2 3 4)", 4)], max_order=10)


def test_closure_indexing_deterministic(catalog):
    a = closure(4, [perm("(1 2)", 4), perm("(1 2 3 4)", 4)])
    b = closure(4, [perm("(1 2)", 4), perm("(1 2 3 4)", 4)])
    assert [e.key() for e in a.elements] == [e.key() for e in b.elements]


def test_element_orders(catalog):
    s4 = catalog["S4"]
    assert element_order(s4, 0) == 1
    four_cycle = s4.index_of(perm("(1 2 3 4)", 4))
    assert element_order(s4, four_cycle) == 4
    v = catalog["Z2xZ2"]
    assert all(element_order(v, i) == 2 for i in range(1, 4))


def test_lagrange_and_mul_table(catalog):
    for name in ["S4", "D4", "Q8", "A4"]:
        g = catalog[name]
        assert np.array_equal(g.table[0], np.arange(g.order))
        for p in prime_divisors(g.order):
            for sub in sylow_subgroups(g, p):
                assert g.order % sub.order == 0


def test_centralizer_of_klein_in_s4(catalog):
    s4 = catalog["S4"]
    klein = s4.generated_subgroup(
        [s4.index_of(perm("(1 2)(3 4)", 4)), s4.index_of(perm("(1 3)(2 4)", 4))]
    )
    cent = centralizer(s4, klein)
    assert cent.order == 4
    assert cent.bits == klein.bits


def test_centralizer_matches_bruteforce(small_groups):
    rng = np.random.default_rng(42)
    for g in small_groups:
        seeds = rng.choice(g.order, size=min(2, g.order), replace=False)
        sub = g.generated_subgroup(seeds)
        expected = brute_centralizer(g, [int(i) for i in sub.indices()])
        assert set(map(int, centralizer(g, sub).indices())) == expected


def test_centralizer_extremes(catalog):
    s4 = catalog["S4"]
    assert centralizer(s4, s4.trivial_subgroup()).order == s4.order
    assert centralizer(s4, s4.full_subgroup()).bits == center(s4).bits


def test_centers(catalog):
    assert center(catalog["Z6"]).order == 6
    assert center(catalog["S4"]).order == 1
    assert center(catalog["D4"]).order == 2


def test_normalizer_of_transposition_in_s4(catalog):
    s4 = catalog["S4"]
    sub = s4.generated_subgroup([s4.index_of(perm("(1 2)", 4))])
    assert normalizer(s4, sub).order == 4


def test_normalizer_matches_bruteforce(small_groups):
    rng = np.random.default_rng(7)
    for g in small_groups:
        seeds = rng.choice(g.order, size=1)
        sub = g.generated_subgroup(seeds)
        expected = brute_normalizer(g, [int(i) for i in sub.indices()])
        assert set(map(int, normalizer(g, sub).indices())) == expected


def test_normalizer_of_normal_subgroup_is_whole_group(catalog):
    s4 = catalog["S4"]
    klein = o_p(s4, 2)
    assert normalizer(s4, klein).order == 24


def test_omega1(catalog):
    s4 = catalog["S4"]
    assert omega1(s4, 2).order == 24
    z4 = catalog["Z4"]
    assert omega1(z4, 2).order == 2
    assert omega1(catalog["G576"], 2).order == 576


def test_omega1_monotone(catalog):
    s4 = catalog["S4"]
    for syl in sylow_subgroups(s4, 2):
        inner = omega1(s4, 2, within=syl)
        assert inner.is_subset(omega1(s4, 2))


def test_omega1_trivial_when_no_elements(catalog):
    z4 = catalog["Z4"]
    assert omega1(z4, 3).order == 1


def test_sylow_counts(catalog):
    s4 = catalog["S4"]
    syl2 = sylow_subgroups(s4, 2)
    assert len(syl2) == 3 and all(s.order == 8 for s in syl2)
    syl3 = sylow_subgroups(s4, 3)
    assert len(syl3) == 4 and all(s.order == 3 for s in syl3)


def test_sylow_count_congruence_and_conjugacy(catalog):
    for name in ["S4", "A4", "D6", "Z12", "S3xS3", "SL23"]:
        g = catalog[name]
        for p in prime_divisors(g.order):
            sylows = sylow_subgroups(g, p)
            assert len(sylows) % p == 1
            # conjugating one Sylow by every element recovers the whole set
            first = sylows[0]
            orbit = {first.conjugate(x).bits for x in range(g.order)}
            assert orbit == {s.bits for s in sylows}


def test_sylow_of_p_group_is_itself(catalog):
    q8 = catalog["Q8"]
    assert [s.order for s in sylow_subgroups(q8, 2)] == [8]


def test_sylow_requires_dividing_prime(catalog):
    with pytest.raises(PrimeDoesNotDivide):
        sylow_subgroups(catalog["S4"], 5)
    with pytest.raises(ValueError):
        sylow_subgroups(catalog["S4"], 4)


def test_o_p(catalog):
    s4 = catalog["S4"]
    klein = o_p(s4, 2)
    assert klein.order == 4
    s5 = catalog["S5"]
    assert o_p(s5, 2).order == 1
    assert o_p(catalog["G576"], 2).order > 1


def test_o_p_invariant_under_generators(catalog):
    for name in ["S4", "S3wrZ2", "A4"]:
        g = catalog[name]
        for p in prime_divisors(g.order):
            sub = o_p(g, p)
            for gen in g.generators:
                assert sub.conjugate(g.index_of(gen)).bits == sub.bits


def test_fitting(catalog):
    s4 = catalog["S4"]
    assert fitting(s4).order == 4
    z12 = catalog["Z12"]
    assert fitting(z12).order == 12
    g576 = catalog["G576"]
    assert fitting(g576).bits == o_p(g576, 2).bits


def test_p_part():
    assert p_part(576, 2) == 64
    assert p_part(576, 3) == 9
    assert p_part(7, 2) == 1
