import json

import pytest

from endotorsion.kgroup import (
    ABELIAN,
    CONJECTURE,
    CYCLIC,
    describe,
    k_group,
    k_group_cyclic,
    sylow_shape,
    unique_order_p_subgroup,
)
from endotorsion.linear import psl_as_permutation
from endotorsion.permcore import alternating_group, group_from_generators, parse_cycles, symmetric_group
from endotorsion.rho import diamond
from endotorsion.subgroups import quotient_abelian_invariants, sylow_subgroup
from endotorsion.weakhom import enumerate_A_group


@pytest.mark.parametrize(
    "make,p,expected",
    [
        (lambda: psl_as_permutation(2, 5)[0], 2, [3]),
        (lambda: alternating_group(5), 2, [3]),
        (lambda: alternating_group(5), 3, [2]),
        (lambda: alternating_group(5), 5, [2]),
        (lambda: alternating_group(4), 3, []),
        (lambda: symmetric_group(3), 3, [2]),
        (lambda: alternating_group(6), 3, [4]),
        (lambda: alternating_group(7), 3, [4]),
        (lambda: psl_as_permutation(2, 8)[0], 3, [2]),
    ],
)
def test_known_values(make, p, expected):
    assert k_group(make(), p).invariants.as_list() == expected


def test_psl34(psl34):
    rep = k_group(psl34, 3)
    assert rep.invariants.as_list() == [2, 2]
    assert rep.theorem == ABELIAN and not rep.conjecture_flag
    assert rep.sylow_shape == "abelian-noncyclic"
    d = rep.to_dict()
    assert (d["j_order"], d["j_index"], d["normalizer_order"]) == (18, 4, 72)


def test_report_schema(psl25):
    d = json.loads(k_group(psl25, 2).to_json())
    for key in ("prime", "group_order", "sylow_order", "sylow_shape", "theorem", "j_order", "j_index",
                "invariant_factors", "hypothesis_checks", "conjecture_flag"):
        assert key in d
    assert d["schema"] == 1


def test_p_group_is_trivial():
    D8 = group_from_generators([parse_cycles("(1,2,3,4)"), parse_cycles("(1,3)", 4)])
    rep = k_group(D8, 2)
    assert rep.invariants.as_list() == []
    assert rep.sylow_shape == "nonabelian"
    assert rep.theorem == "fusion-controlled"


def test_unverified_hypotheses_are_flagged(s4, twisted24):
    for G in (s4, twisted24):
        rep = k_group(G, 2)
        assert rep.theorem == CONJECTURE and rep.conjecture_flag
        assert rep.j_subgroup == rep.tower.rho_inf()
        assert "upper bound" in rep.to_dict()["note"]
        assert "note" in describe(rep)


def test_cyclic_shortcut():
    G = symmetric_group(5)
    rep = k_group_cyclic(G, 5)
    assert rep.theorem == CYCLIC
    assert rep.invariants.as_list() == [4]
    Z = unique_order_p_subgroup(sylow_subgroup(G, 5), 5)
    assert Z.order == 5
    with pytest.raises(ValueError):
        k_group_cyclic(alternating_group(5), 2)


def test_errors():
    with pytest.raises(ValueError):
        k_group(alternating_group(4), 5)
    with pytest.raises(ValueError):
        k_group_cyclic(alternating_group(4), 5)


@pytest.mark.parametrize(
    "make,p",
    [(lambda: psl_as_permutation(2, 5)[0], 2), (lambda: alternating_group(6), 3), (lambda: symmetric_group(5), 3),
     (lambda: psl_as_permutation(2, 7)[0], 3), (lambda: alternating_group(5), 5)],
)
def test_weak_hom_group_has_the_same_order(make, p):
    G = make()
    rep = k_group(G, p)
    A = enumerate_A_group(G, p, verify=None)
    assert A.order == rep.order
    assert A.invariants == rep.invariants


def test_normal_sylow_gives_quotient_by_diamond():
    G = group_from_generators([parse_cycles("(1,2,3,4,5)"), parse_cycles("(2,3,5,4)")])
    assert G.order == 20
    assert k_group(G, 5).invariants == quotient_abelian_invariants(G, diamond(G, 5))


def test_shape_labels():
    assert sylow_shape(sylow_subgroup(symmetric_group(5), 5)) == "cyclic"
    assert sylow_shape(sylow_subgroup(alternating_group(4), 2)) == "abelian-noncyclic"
    assert sylow_shape(sylow_subgroup(symmetric_group(4), 2)) == "nonabelian"
