"""Acceptance criteria, one test per criterion.

Every test records a single PASS/FAIL line; the lines are printed in the
terminal summary (see ``conftest.py``) and immediately with ``-s``.
The optional M11 row reads its generators from a file written at test time.
"""

import time

import pytest

from endotorsion.classical import verify_psl3_sylow3
from endotorsion.kgroup import k_group, k_group_cyclic
from endotorsion.linear import psl_as_permutation
from endotorsion.permcore import (
    alternating_group,
    conjugate,
    group_from_generators,
    parse_cycles,
    parse_generator_file,
    symmetric_group,
)
from endotorsion.rho import build_tower, diamond
from endotorsion.subgroups import (
    SubgroupHandle,
    all_nontrivial_subgroups,
    commutator_subgroup,
    quotient_abelian_invariants,
    sylow_subgroup,
)
from endotorsion.weakhom import BurnsideDecomposer, SylowConjugates, ThetaBuilder, enumerate_A_group

LINES: list[str] = []


def record(label, ok, seconds, limit, detail=""):
    bound = f"limit {limit}s" if limit else "no limit"
    line = f"{'PASS' if ok else 'FAIL'}  {label:<50} {seconds:6.2f}s ({bound})  {detail}"
    LINES.append(line)
    print("\n" + line)


def psl2(q):
    return psl_as_permutation(2, q)[0]


@pytest.mark.parametrize("q", [3, 5, 11, 13])
def test_c1_psl2_klein_four(q):
    t0 = time.perf_counter()
    inv = k_group(psl2(q), 2).invariants.as_list()
    dt = time.perf_counter() - t0
    ok = inv == [3] and dt < 5
    record(f"1  PSL(2,{q}) p=2: K = [3]", ok, dt, 5, f"got {inv}")
    assert inv == [3]
    assert dt < 5


def test_c2_psl34_tower_and_k():
    t0 = time.perf_counter()
    G = psl_as_permutation(3, 4)[0]
    tower = build_tower(G, 3)
    S = tower.sylow
    N = tower.normalizer_of(S)
    NN = commutator_subgroup(N)
    rows = [tower.rho(S, i) for i in (1, 2, 3)]
    inv = k_group(G, 3, tower).invariants.as_list()
    dt = time.perf_counter() - t0
    ok = all(R == NN for R in rows) and N.order // NN.order == 4 and inv == [2, 2] and dt < 60
    record("2  PSL(3,4) p=3: rho^i(S) = [N,N], index 4, K = [2,2]", ok, dt, 60,
           f"rho orders {[R.order for R in rows]}, |N| {N.order}, K {inv}")
    assert all(R == NN for R in rows)
    assert N.order == 4 * NN.order
    assert inv == [2, 2]
    assert dt < 60


def test_c3_psl34_structure():
    t0 = time.perf_counter()
    rep = verify_psl3_sylow3(4)
    dt = time.perf_counter() - t0
    needed = [
        "u^-1 x u = a",
        "u^-1 a u = x^-1",
        "v^-1 x v lies in <a, x, z>",
        "v^-1 a v = zeta (a x)^-1",
        "sigma inverts every element of S",
        "C_G(S) = S",
        "N_G(S) = <a, x, u, v, sigma>",
    ]
    failed = [c.name for c in rep.checks if not c.holds]
    ok = not failed and all(rep.check(n).holds for n in needed) and dt < 60
    relation = rep.check("v^-1 x v lies in <a, x, z>").detail["computed"]
    record("3  PSL(3,4) relations, sigma, C_G(S), N_G(S)", ok, dt, 60, f"v^-1 x v = {relation}; failed {failed}")
    assert failed == []
    assert relation is not None
    assert dt < 60


def cyclic_cases():
    return [
        (alternating_group(4), 3),
        (symmetric_group(3), 3),
        (symmetric_group(4), 3),
        (alternating_group(5), 5),
        (symmetric_group(5), 3),
        (psl2(7), 7),
        (psl2(11), 5),
    ]


def test_c4_cyclic_consistency():
    t0 = time.perf_counter()
    rows = []
    for G, p in cyclic_cases():
        assert sylow_subgroup(G, p).is_cyclic()
        rows.append((G.name, p, k_group(G, p).invariants, k_group_cyclic(G, p).invariants))
    dt = time.perf_counter() - t0
    ok = all(a == b for _, _, a, b in rows) and len(rows) == 7 and dt < 10
    record("4  cyclic Sylow: k_group == k_group_cyclic (7 groups)", ok, dt, 10,
           ", ".join(f"{n} p={p}: {a}" for n, p, a, _ in rows))
    assert all(a == b for _, _, a, b in rows)
    assert dt < 10


def test_c5_weak_hom_round_trip():
    t0 = time.perf_counter()
    failures, summary = [], []
    for q in (5, 11):
        A = enumerate_A_group(psl2(q), 2, verify="exhaustive")
        index = A.normalizer.order // A.kernel.order
        checks = {
            "count": len(A.weak_homs) == index,
            "distinct": len(set(A.weak_homs)) == index,
            "verified": all(v.passed and v.mode == "exhaustive" for v in A.verifications),
            "restricts": all(
                w.restrict(A.normalizer.elements) == chi for w, chi in zip(A.weak_homs, A.characters)
            ),
            "closed": A.is_closed(),
        }
        failures += [f"PSL(2,{q}) {k}" for k, v in checks.items() if not v]
        summary.append(f"PSL(2,{q}): {len(A.weak_homs)} tables for index {index}")
    dt = time.perf_counter() - t0
    record("5  weak-hom round trip on PSL(2,5), PSL(2,11)", not failures and dt < 120, dt, 120,
           "; ".join(summary) + (f"; failed {failures}" if failures else ""))
    assert failures == []
    assert dt < 120


def test_c6_decomposition_independence():
    t0 = time.perf_counter()
    G = alternating_group(5)
    S = sylow_subgroup(G, 2)
    tower = build_tower(G, 2, S)
    conj = SylowConjugates(G, S)
    builder = ThetaBuilder(G, S, tower)
    decomposer = BurnsideDecomposer(G, S, conj)
    A = enumerate_A_group(G, 2, S, tower, verify=None)
    violations = checked = 0
    for g in G.elements:
        meet = conj.meet(g)
        if len(meet) == 1:
            continue
        for R in all_nontrivial_subgroups(SubgroupHandle(G, meet)):
            decomps = decomposer.all_decompositions(R.element_set, g)
            assert decomps
            for chi, w in zip(A.characters, A.weak_homs):
                psi = builder.psi(R.element_set, chi)
                values = {(psi(c) + chi(n)) % chi.modulus for c, n in decomps}
                checked += len(decomps)
                if values != {w(g) % chi.modulus}:
                    violations += 1
    dt = time.perf_counter() - t0
    ok = violations == 0 and checked > 0 and dt < 30
    record("6  A5 p=2: value independent of decomposition", ok, dt, 30,
           f"{checked} decompositions, {violations} violations")
    assert violations == 0 and checked > 0
    assert dt < 30


def kernel_cases():
    cases = [(psl2(q), 2) for q in (3, 5, 11, 13)]
    cases.append((psl_as_permutation(3, 4)[0], 3))
    return cases + cyclic_cases()


def test_c7_kernel_suite():
    t0 = time.perf_counter()
    rows, failures = [], []
    for G, p in kernel_cases():
        S = sylow_subgroup(G, p)
        tower = build_tower(G, p, S)
        A = enumerate_A_group(G, p, S, tower, verify=None)
        rho_inf = tower.rho_inf().elements
        if not all(w.vanishes_on(rho_inf) for w in A.weak_homs):
            failures.append(f"{G.name} p={p}: nonzero on rho^inf(S)")
        if S.is_abelian() and tower.stable_at > 2:
            failures.append(f"{G.name} p={p}: stable_at {tower.stable_at}")
        rows.append(f"{G.name}:{tower.stable_at}")
    dt = time.perf_counter() - t0
    record("7  weak homs vanish on rho^inf(S); stable_at <= 2", not failures, dt, None,
           "stable_at " + " ".join(rows) + (f"; failed {failures}" if failures else ""))
    assert failures == []


def normal_sylow_cases():
    f20 = group_from_generators([parse_cycles("(1,2,3,4,5)"), parse_cycles("(2,3,5,4)")], name="F20")
    f21 = group_from_generators([parse_cycles("(1,2,3,4,5,6,7)"), parse_cycles("(2,3,5)(4,7,6)")], name="F21")
    return [(symmetric_group(3), 3), (alternating_group(4), 2), (f20, 5), (f21, 7)]


def test_c8_normal_sylow():
    t0 = time.perf_counter()
    rows, failures = [], []
    for G, p in normal_sylow_cases():
        S = sylow_subgroup(G, p)
        normal_abelian = S.is_abelian() and all(
            conjugate(g, s) in S.element_set for g in G.generators for s in S.generators
        )
        got = k_group(G, p).invariants
        want = quotient_abelian_invariants(G, diamond(G, p))
        if not normal_abelian or got != want:
            failures.append(f"{G.name} p={p}: {got} vs {want}")
        rows.append(f"{G.name} p={p}: {got}")
    dt = time.perf_counter() - t0
    record("8  normal abelian Sylow: K = G/diamond(G)", not failures, dt, None,
           "; ".join(rows) + (f"; failed {failures}" if failures else ""))
    assert failures == []


M11_TEXT = "(1,2,3,4,5,6,7,8,9,10,11)\n(3,7,11,8)(4,10,5,6)\n"


def test_c9_optional_m11_and_psl37(tmp_path):
    path = tmp_path / "m11.gens"
    path.write_text(M11_TEXT)
    t0 = time.perf_counter()
    G = group_from_generators(parse_generator_file(path.read_text()), name="M11")
    inv = k_group(G, 3).invariants.as_list()
    rep = verify_psl3_sylow3(7, permutation_checks=False)
    dt = time.perf_counter() - t0
    ok = G.order == 7920 and inv == [2, 2] and rep.passed
    record("9  (optional) M11 p=3 = [2,2]; PSL(3,7) matrices", ok, dt, None, f"M11 K {inv}, PSL(3,7) {rep.passed}")
    assert G.order == 7920
    assert inv == [2, 2]
    assert rep.passed
