import json

import pytest

from endotorsion.linear import psl_as_permutation
from endotorsion.permcore import alternating_group, closure, commutator, is_identity, perm_order, symmetric_group
from endotorsion.rho import build_tower, check_diamond, diamond, rho1, subgroup_key
from endotorsion.subgroups import (
    SubgroupHandle,
    all_nontrivial_subgroups,
    commutator_subgroup,
    normalizer,
    sylow_subgroup,
    trivial_subgroup,
)


def diamond_oracle(H, p):
    """Generated by all commutators and all elements of p-power order."""
    elems = H.elements
    seeds = {commutator(x, y) for x in elems for y in elems}
    seeds |= {x for x in elems if not is_identity(x) and perm_order(x) in {p**k for k in range(1, 12)}}
    return frozenset(closure(seeds, H.degree, start=[H.identity]))


def tower_oracle(G, p):
    S = sylow_subgroup(G, p)
    qs = all_nontrivial_subgroups(S)
    norms = [normalizer(G, Q) for Q in qs]
    levels = [[diamond_oracle(N, p) for N in norms]]
    while True:
        prev = levels[-1]
        nxt = []
        for N in norms:
            seeds = set()
            for R in prev:
                seeds |= N.element_set & R
            nxt.append(frozenset(closure(seeds, G.degree, start=[G.identity])))
        if nxt == prev:
            return qs, levels
        levels.append(nxt)


CASES = [
    (lambda: symmetric_group(4), 2),
    (lambda: symmetric_group(4), 3),
    (lambda: alternating_group(5), 2),
    (lambda: alternating_group(6), 3),
    (lambda: psl_as_permutation(2, 7)[0], 2),
    (lambda: symmetric_group(5), 2),
]


@pytest.mark.parametrize("make,p", CASES)
def test_tower_matches_oracle(make, p):
    G = make()
    tower = build_tower(G, p)
    qs, levels = tower_oracle(G, p)
    assert tower.q_list == qs
    assert tower.stable_at == len(levels)
    for i, lvl in enumerate(levels, start=1):
        for Q, R in zip(qs, lvl):
            assert tower.rho(Q, i).element_set == R


@pytest.mark.parametrize("make,p", CASES)
def test_diamond_matches_oracle(make, p):
    G = make()
    D = diamond(G, p)
    assert D.element_set == diamond_oracle(G, p)
    assert check_diamond(G, D, p)


def test_check_diamond_rejects_wrong_subgroups():
    G = symmetric_group(4)
    assert not check_diamond(G, commutator_subgroup(G), 2)  # index 2 is divisible by p
    assert not check_diamond(G, trivial_subgroup(G), 3)


def test_tower_is_monotone():
    G = alternating_group(7)
    tower = build_tower(G, 3)
    for k, Q in enumerate(tower.q_list):
        orders = [lvl[k].order for lvl in tower.levels]
        assert orders == sorted(orders)
        assert tower.rho(Q, 1) == rho1(G, Q, 3)
        assert Q <= tower.rho(Q)


def test_a4_tower_is_sylow():
    G = alternating_group(4)
    tower = build_tower(G, 3)
    S = tower.sylow
    assert tower.rho_inf() == S
    assert tower.stable_at == 1
    assert tower.normalizer_of(S) == S


def test_psl34_tower(psl34):
    tower = build_tower(psl34, 3)
    S = tower.sylow
    N = tower.normalizer_of(S)
    NN = commutator_subgroup(N)
    assert N.order == 72
    assert [tower.rho(S, i) for i in (1, 2, 3, 10)] == [NN] * 4
    assert N.order // NN.order == 4


def test_rho1_rejects_trivial():
    G = symmetric_group(3)
    with pytest.raises(ValueError):
        rho1(G, trivial_subgroup(G), 3)


def test_level_indexing():
    tower = build_tower(alternating_group(5), 2)
    with pytest.raises(ValueError):
        tower.rho(tower.sylow, 0)
    with pytest.raises(KeyError):
        tower.index_of(SubgroupHandle(tower.group, frozenset({tower.group.identity})))


def test_tower_json_is_deterministic():
    a = build_tower(alternating_group(6), 3).to_json()
    b = build_tower(alternating_group(6), 3).to_json()
    assert a == b
    data = json.loads(a)
    assert data["schema"] == 1 and data["kind"] == "rho_tower"
    assert data["sylow_rho_orders"][-1] == 9
    assert data["normalizer_of_sylow_order"] == 36
    row = data["subgroups"][-1]
    assert row["order"] == 9 and row["rho_inf_order"] == 9
    assert subgroup_key(build_tower(alternating_group(6), 3).sylow) == data["sylow_generators"]
