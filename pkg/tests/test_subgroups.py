import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endotorsion.permcore import (
    alternating_group,
    commutator,
    compose,
    conjugate,
    group_from_generators,
    inverse,
    parse_cycles,
    perm_order,
    symmetric_group,
)
from endotorsion.subgroups import (
    AbelianInvariants,
    AbelianQuotient,
    NotASubgroupError,
    QuotientError,
    SubgroupHandle,
    all_nontrivial_subgroups,
    centralizer,
    commutator_subgroup,
    commutator_subgroup_bruteforce,
    conjugate_subgroup,
    generated_subgroup,
    intersect,
    invariants_from_orders,
    is_normal,
    normal_closure,
    normalizer,
    prime_factors,
    prime_part,
    quotient_abelian_invariants,
    subgroup_from_generators,
    sylow_subgroup,
    trivial_subgroup,
    whole,
)


def disjoint_cycles_group(lengths):
    """Z/n_1 x ... x Z/n_k as a group of disjoint cycles."""
    degree = sum(lengths)
    gens, start = [], 0
    for n in lengths:
        img = list(range(degree))
        for i in range(n):
            img[start + i] = start + (i + 1) % n
        gens.append(tuple(img))
        start += n
    return group_from_generators(gens)


def invariant_factors_oracle(lengths):
    """Invariant factors of Z/n_1 x ... x Z/n_k via primary parts."""
    primary = {}
    for n in lengths:
        for ell in prime_factors(n):
            primary.setdefault(ell, []).append(prime_part(n, ell))
    width = max((len(v) for v in primary.values()), default=0)
    cols = [1] * width
    for powers in primary.values():
        for j, q in enumerate(sorted(powers, reverse=True)):
            cols[j] *= q
    return sorted(c for c in cols if c > 1)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(2, 12), min_size=1, max_size=3))
def test_invariants_of_direct_products(lengths):
    G = disjoint_cycles_group(lengths)
    got = quotient_abelian_invariants(G, trivial_subgroup(G))
    assert got.as_list() == invariant_factors_oracle(lengths)
    assert got.order == math.prod(lengths)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 9), min_size=1, max_size=3))
def test_quotient_coordinates_are_additive(lengths):
    G = disjoint_cycles_group(lengths)
    Q = AbelianQuotient(G, trivial_subgroup(G))
    factors = Q.invariants.factors
    for a, b in itertools.islice(itertools.product(G.elements, repeat=2), 400):
        ca, cb, cab = Q.coordinates(a), Q.coordinates(b), Q.coordinates(compose(a, b))
        assert all((x + y - z) % d == 0 for x, y, z, d in zip(ca, cb, cab, factors))


def test_invariants_from_orders_examples():
    assert invariants_from_orders([1, 2, 2, 2]).as_list() == [2, 2]
    assert invariants_from_orders([1, 2, 3, 3, 6, 6]).as_list() == [6]
    assert invariants_from_orders([1]).as_list() == []
    assert str(AbelianInvariants((2, 2))) == "Z/2 x Z/2"
    assert str(AbelianInvariants(())) == "trivial"
    with pytest.raises(ValueError):
        AbelianInvariants((2, 3))
    with pytest.raises(ValueError):
        AbelianInvariants((1,))


def brute_normalizer(G, H):
    return {g for g in G.elements if {conjugate(g, h) for h in H.elements} == H.element_set}


def brute_centralizer(G, H):
    return {g for g in G.elements if all(compose(g, h) == compose(h, g) for h in H.elements)}


@pytest.mark.parametrize("make", [lambda: symmetric_group(4), lambda: alternating_group(5)])
def test_normalizer_and_centralizer_against_brute_force(make):
    G = make()
    for x in G.elements[:: max(1, G.order // 15)]:
        H = subgroup_from_generators(G, [x])
        assert normalizer(G, H).element_set == brute_normalizer(G, H)
        assert centralizer(G, H).element_set == brute_centralizer(G, H)


@pytest.mark.parametrize(
    "make,order",
    [(lambda: symmetric_group(4), 12), (lambda: symmetric_group(5), 60), (lambda: alternating_group(4), 4),
     (lambda: alternating_group(5), 60)],
)
def test_commutator_subgroup(make, order):
    G = make()
    C = commutator_subgroup(G)
    assert C.order == order
    assert C == commutator_subgroup_bruteforce(G)
    assert is_normal(C, G)


@pytest.mark.parametrize(
    "make,p,order",
    [(lambda: symmetric_group(4), 2, 8), (lambda: symmetric_group(5), 3, 3), (lambda: alternating_group(6), 3, 9),
     (lambda: alternating_group(5), 2, 4), (lambda: symmetric_group(6), 2, 16)],
)
def test_sylow_subgroup(make, p, order):
    G = make()
    S = sylow_subgroup(G, p)
    assert S.order == order
    assert all(math.gcd(perm_order(x), order) == perm_order(x) for x in S.elements)
    # deterministic
    assert sylow_subgroup(G, p) == S


def test_sylow_rejects_bad_primes():
    G = alternating_group(4)
    with pytest.raises(ValueError):
        sylow_subgroup(G, 5)
    with pytest.raises(ValueError):
        sylow_subgroup(G, 4)


def test_all_nontrivial_subgroups_counts():
    # D8 has 9 nontrivial subgroups; (Z/3)^2 has 4 of order 3 and itself
    S = sylow_subgroup(symmetric_group(4), 2)
    assert len(all_nontrivial_subgroups(S)) == 9
    E = sylow_subgroup(alternating_group(6), 3)
    subs = all_nontrivial_subgroups(E)
    assert [H.order for H in subs] == [3, 3, 3, 3, 9]
    assert len(set(subs)) == len(subs)


def test_subgroup_handle_protocol():
    G = symmetric_group(4)
    H = subgroup_from_generators(G, [parse_cycles("(1,2,3,4)")])
    K = subgroup_from_generators(G, [parse_cycles("(1,3)(2,4)")])
    assert K < H and K <= H and not H <= K
    assert H.is_cyclic() and H.is_abelian()
    assert intersect(H, K) == K
    assert whole(G).order == 24
    assert len(trivial_subgroup(G)) == 1
    assert generated_subgroup(G, [H.generators, [parse_cycles("(1,3)", 4)]]).order == 8


def test_conjugate_subgroup_and_normal_closure():
    G = symmetric_group(4)
    H = subgroup_from_generators(G, [parse_cycles("(1,2)", 4)])
    g = parse_cycles("(2,3)", 4)
    assert conjugate_subgroup(H, g).elements[1] == parse_cycles("(1,3)", 4)
    assert normal_closure(G, H.generators).order == 24
    with pytest.raises(NotASubgroupError):
        conjugate_subgroup(subgroup_from_generators(alternating_group(4), [(1, 2, 0, 3)]), g)


def test_quotient_errors():
    G = symmetric_group(4)
    H = subgroup_from_generators(G, [parse_cycles("(1,2)", 4)])
    with pytest.raises(QuotientError):
        AbelianQuotient(G, H)  # not normal
    V = subgroup_from_generators(G, [parse_cycles("(1,2)(3,4)"), parse_cycles("(1,3)(2,4)")])
    with pytest.raises(QuotientError):
        AbelianQuotient(G, V)  # S3 quotient is not abelian
    A = commutator_subgroup(G)
    assert quotient_abelian_invariants(G, A).as_list() == [2]


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)))
def test_commutators_lie_in_commutator_subgroup(x, y):
    G = symmetric_group(5)
    assert commutator(tuple(x), tuple(y)) in commutator_subgroup(G)
    assert compose(tuple(x), inverse(tuple(x))) in SubgroupHandle(G, frozenset({G.identity}))
