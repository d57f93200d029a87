"""End-to-end verification suite run by ``endotorsion verify-suite``.

Each entry recomputes a known result from scratch and compares it against
the expected value, with a wall-clock limit.  Entries marked non-gating are
reported but do not affect the exit status.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .classical import psl2_klein_report, verify_psl3_sylow3
from .kgroup import k_group, k_group_cyclic
from .linear import psl_as_permutation
from .permcore import GroupHandle, alternating_group, group_from_generators, parse_generator_file, symmetric_group
from .rho import build_tower, diamond
from .subgroups import (
    SubgroupHandle,
    all_nontrivial_subgroups,
    commutator_subgroup,
    quotient_abelian_invariants,
    sylow_subgroup,
)
from .weakhom import BurnsideDecomposer, SylowConjugates, ThetaBuilder, enumerate_A_group


@dataclass
class SuiteEntry:
    key: str
    title: str
    passed: bool
    seconds: float
    limit: float
    gating: bool = True
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "key": self.key,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "limit_seconds": self.limit,
            "gating": self.gating,
            "detail": self.detail,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tag = "" if self.gating else " (optional)"
        return f"{status}  {self.key:<22} {self.seconds:7.2f}s / {self.limit:g}s  {self.title}{tag}"


def affine_group(p: int) -> GroupHandle:
    """``AGL(1, p)``: ``x -> ax + b`` on ``Z/p``, with normal Sylow ``p``."""
    translate = tuple((i + 1) % p for i in range(p))
    prim = next(g for g in range(2, p) if all(pow(g, (p - 1) // r, p) != 1 for r in _prime_divisors(p - 1)))
    scale = tuple(prim * i % p for i in range(p))
    return group_from_generators([translate, scale], name=f"agl1:{p}")


def frobenius_21() -> GroupHandle:
    """``Z/7 ⋊ Z/3`` of order 21."""
    translate = tuple((i + 1) % 7 for i in range(7))
    cube = tuple(2 * i % 7 for i in range(7))
    return group_from_generators([translate, cube], name="frob21")


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def psl2(q: int) -> GroupHandle:
    return psl_as_permutation(2, q)[0]


def cyclic_sylow_cases() -> list[tuple[GroupHandle, int]]:
    return [
        (alternating_group(4), 3),
        (symmetric_group(3), 3),
        (symmetric_group(4), 3),
        (alternating_group(5), 5),
        (symmetric_group(5), 3),
        (psl2(7), 7),
        (psl2(11), 5),
    ]


def normal_sylow_cases() -> list[tuple[GroupHandle, int]]:
    return [
        (symmetric_group(3), 3),
        (alternating_group(4), 2),
        (affine_group(5), 5),
        (frobenius_21(), 7),
    ]


def _timed(fn: Callable[[], tuple[bool, dict]]) -> tuple[bool, dict, float]:
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


def check_psl2_klein() -> tuple[bool, dict]:
    out = {}
    ok = True
    for q in (3, 5, 11, 13):
        t0 = time.perf_counter()
        rep = psl2_klein_report(q)
        dt = time.perf_counter() - t0
        out[f"psl2:{q}"] = {"invariants": rep.invariants, "within_5s": dt < 5}
        ok &= rep.invariants == [3] and dt < 5
    return ok, out


def check_psl3_4_tower() -> tuple[bool, dict]:
    G, _ = psl_as_permutation(3, 4)
    tower = build_tower(G, 3)
    S = tower.sylow
    N = tower.normalizer_of(S)
    NN = commutator_subgroup(N)
    rows = [tower.rho(S, i) for i in (1, 2, 3)]
    K = k_group(G, 3, tower)
    ok = all(R == NN for R in rows) and N.order == 4 * NN.order and K.invariants.as_list() == [2, 2]
    return ok, {
        "rho_orders": [R.order for R in rows],
        "normalizer_order": N.order,
        "commutator_order": NN.order,
        "invariants": K.invariants.as_list(),
    }


def check_psl3_4_structure() -> tuple[bool, dict]:
    rep = verify_psl3_sylow3(4)
    failed = [c.name for c in rep.checks if not c.holds]
    relation = rep.check("v^-1 x v lies in <a, x, z>").detail["computed"]
    return rep.passed, {"failed": failed, "v^-1 x v": relation}


def check_cyclic_consistency() -> tuple[bool, dict]:
    out = {}
    ok = True
    for G, p in cyclic_sylow_cases():
        a = k_group(G, p).invariants.as_list()
        b = k_group_cyclic(G, p).invariants.as_list()
        out[f"{G.name} p={p}"] = {"k_group": a, "k_group_cyclic": b}
        ok &= a == b
    return ok, out


def check_weakhom_round_trip() -> tuple[bool, dict]:
    out = {}
    ok = True
    for q in (5, 11):
        G = psl2(q)
        A = enumerate_A_group(G, 2, verify="exhaustive")
        index = A.normalizer.order // A.kernel.order
        restricts = all(
            w.restrict(A.normalizer.elements) == chi for w, chi in zip(A.weak_homs, A.characters)
        )
        distinct = len(set(A.weak_homs)) == len(A.weak_homs)
        row = {
            "count": len(A.weak_homs),
            "index": index,
            "all_verified": all(v.passed for v in A.verifications),
            "restricts": restricts,
            "closed": A.is_closed(),
        }
        out[f"psl2:{q}"] = row
        ok &= len(A.weak_homs) == index and distinct and row["all_verified"] and restricts and row["closed"]
    return ok, out


def decomposition_violations(G: GroupHandle, p: int) -> tuple[int, int]:
    """For every ``g``, every nontrivial subgroup ``R`` of ``S ∩ gSg^-1``,
    every decomposition ``g = cn`` with ``c`` in ``C_G(R)`` and ``n`` in
    ``N_G(S)``, and every character, compare ``psi_R(c) + chi(n)`` against
    the value used in the weak homomorphism.  Returns (violations, checked)."""
    S = sylow_subgroup(G, p)
    tower = build_tower(G, p, S)
    conj = SylowConjugates(G, S)
    builder = ThetaBuilder(G, S, tower)
    decomposer = BurnsideDecomposer(G, S, conj)
    A = enumerate_A_group(G, p, S, tower, verify=None)
    violations = checked = 0
    for g in G.elements:
        meet = conj.meet(g)
        if len(meet) == 1:
            continue
        for R in all_nontrivial_subgroups(SubgroupHandle(G, meet)):
            decomps = decomposer.all_decompositions(R.element_set, g)
            for chi, w in zip(A.characters, A.weak_homs):
                psi = builder.psi(R.element_set, chi)
                for c, n in decomps:
                    checked += 1
                    if (psi(c) + chi(n) - w(g)) % chi.modulus:
                        violations += 1
    return violations, checked


def check_decomposition_independence() -> tuple[bool, dict]:
    violations, checked = decomposition_violations(alternating_group(5), 2)
    return violations == 0 and checked > 0, {"violations": violations, "checked": checked}


def kernel_cases() -> list[tuple[GroupHandle, int]]:
    cases = [(psl2(q), 2) for q in (3, 5, 11, 13)]
    cases.append((psl_as_permutation(3, 4)[0], 3))
    cases += cyclic_sylow_cases()
    return cases


def check_kernel_suite() -> tuple[bool, dict]:
    out = {}
    ok = True
    for G, p in kernel_cases():
        S = sylow_subgroup(G, p)
        tower = build_tower(G, p, S)
        A = enumerate_A_group(G, p, S, tower, verify=None)
        rho_inf = tower.rho_inf().elements
        vanish = all(w.vanishes_on(rho_inf) for w in A.weak_homs)
        stable = tower.stable_at <= 2 if S.is_abelian() else True
        out[f"{G.name} p={p}"] = {"vanish_on_rho_inf": vanish, "stable_at": tower.stable_at}
        ok &= vanish and stable
    return ok, out


def check_normal_sylow() -> tuple[bool, dict]:
    out = {}
    ok = True
    for G, p in normal_sylow_cases():
        got = k_group(G, p).invariants.as_list()
        want = quotient_abelian_invariants(G, diamond(G, p)).as_list()
        out[f"{G.name} p={p}"] = {"k_group": got, "G/diamond(G)": want}
        ok &= got == want
    return ok, out


def check_optional(m11_file: str | None) -> tuple[bool, dict]:
    out: dict[str, Any] = {}
    rep = verify_psl3_sylow3(7, permutation_checks=False)
    out["psl3:7 matrix checks"] = rep.passed
    ok = rep.passed
    if m11_file is None:
        out["m11"] = "skipped: no generator file given"
    else:
        G = group_from_generators(parse_generator_file(Path(m11_file).read_text()), name="m11")
        inv = k_group(G, 3).invariants.as_list()
        out["m11"] = {"order": G.order, "invariants": inv}
        ok &= inv == [2, 2]
    return ok, out


def run_suite(m11_file: str | None = None, include_optional: bool = True) -> list[SuiteEntry]:
    plan: list[tuple[str, str, Callable[[], tuple[bool, dict]], float, bool]] = [
        ("psl2-klein", "PSL(2,q), p=2, q in 3,5,11,13: K = Z/3", check_psl2_klein, 20, True),
        ("psl3-4-tower", "PSL(3,4), p=3: rho^i(S) = [N,N] of index 4, K = (Z/2)^2", check_psl3_4_tower, 60, True),
        ("psl3-4-structure", "PSL(3,4): relations, sigma inverts S, C_G(S) = S, N_G(S) generated", check_psl3_4_structure, 60, True),
        ("cyclic-consistency", "cyclic Sylow: k_group agrees with k_group_cyclic", check_cyclic_consistency, 10, True),
        ("weakhom-round-trip", "PSL(2,5), PSL(2,11): weak homomorphisms from characters", check_weakhom_round_trip, 120, True),
        ("decomposition", "A5, p=2: value independent of the decomposition", check_decomposition_independence, 30, True),
        ("kernel", "weak homs vanish on rho^inf(S); stable_at <= 2 for abelian S", check_kernel_suite, 300, True),
        ("normal-sylow", "normal abelian Sylow: K = G/diamond(G)", check_normal_sylow, 30, True),
    ]
    if include_optional:
        plan.append(
            ("optional", "M11 from a generator file; PSL(3,7) matrix checks", lambda: check_optional(m11_file), 600, False)
        )
    entries = []
    for key, title, fn, limit, gating in plan:
        try:
            ok, detail, dt = _timed(fn)
        except Exception as exc:  # a crash is a failure, reported not raised
            ok, detail, dt = False, {"error": f"{type(exc).__name__}: {exc}"}, 0.0
        entries.append(SuiteEntry(key, title, ok and dt < limit, dt, limit, gating, detail))
    return entries
