import json

import pytest

from endotorsion.classical import (
    homomorphism_check,
    matrix_relations,
    psl2_klein_report,
    psl3_sylow3_generators,
    verify_psl3_sylow3,
)
from endotorsion.fields import GF
from endotorsion.linear import LinearAction, det


@pytest.fixture(scope="module")
def report4():
    return verify_psl3_sylow3(4)


def test_every_check_passes_for_q4(report4):
    failed = [c.name for c in report4.checks if not c.holds]
    assert failed == []
    assert report4.facts["normalizer_order"] == 72
    assert report4.facts["k_invariants"] == [2, 2]


def test_conjugate_of_x_by_v_is_recorded(report4):
    detail = report4.check("v^-1 x v lies in <a, x, z>").detail
    assert detail["computed"] == "a^2x"
    assert detail["matches_a^2_v"] is False


def test_exact_relations_for_q4(report4):
    for name in ("u^-1 x u = a", "u^-1 a u = x^-1", "v^-1 a v = zeta (a x)^-1"):
        assert report4.check(name).detail["exact"]


def test_maximal_subgroups_swapped_in_pairs(report4):
    for name in ("u", "v"):
        images = report4.check(f"{name} swaps the maximal subgroups of S in pairs").detail["images"]
        assert sorted(images) == [0, 1, 2, 3]
        assert all(images[images[k]] == k != images[k] for k in range(4))


def test_q7_matrix_checks():
    rep = verify_psl3_sylow3(7, permutation_checks=False)
    assert rep.passed
    assert rep.facts["permutation_checks"] is False
    assert rep.facts["group_order"] == 1876896
    assert rep.check("det u = det v = 1 after scaling").detail["u_scale"] == "3"


def test_generators_have_determinant_one():
    for q in (4, 7, 13, 16):
        g = psl3_sylow3_generators(q)
        assert all(det(g.field, M) == 1 for M in (g.a, g.x, g.u, g.v))
    with pytest.raises(ValueError):
        psl3_sylow3_generators(5)


def test_relations_hold_modulo_scalars_for_other_q():
    for q in (13, 16, 19):
        assert all(c.holds for c in matrix_relations(psl3_sylow3_generators(q)))


def test_q_must_be_4_or_7_mod_9():
    with pytest.raises(ValueError):
        verify_psl3_sylow3(19)


def test_homomorphism_check_uses_seed():
    action = LinearAction(GF.of_order(4), 3, projective=True)
    res = homomorphism_check(action, samples=50, seed=5)
    assert res.holds and res.detail == {"samples": 50, "seed": 5}


@pytest.mark.parametrize("q", [3, 5, 11, 13])
def test_psl2_klein(q):
    rep = psl2_klein_report(q)
    assert rep.passed and rep.invariants == [3]


def test_psl2_rejects_other_q():
    with pytest.raises(ValueError):
        psl2_klein_report(7)


def test_report_json(report4):
    data = json.loads(report4.to_json())
    assert data["kind"] == "psl3_sylow3" and data["passed"] is True
    assert data["field_modulus"] == "x^2 + x + 1"
    assert data["zeta"] == "w"
