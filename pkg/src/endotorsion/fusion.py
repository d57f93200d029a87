"""Hypothesis checkers for the non-abelian Sylow case: control of ``p``-fusion
by ``N_G(S)`` and the Frattini condition ``N_H(S) diamond(H) = H`` for
centralizers ``H = C_G(Q)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .permcore import GroupHandle, Perm, conjugate, format_cycles
from .rho import diamond, subgroup_key
from .subgroups import (
    SubgroupHandle,
    all_nontrivial_subgroups,
    centralizer,
    intersect,
    normalizer,
    sylow_subgroup,
)


@dataclass
class CheckResult:
    name: str
    holds: bool
    witness: dict[str, Any] | None = None
    detail: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        out = {"name": self.name, "holds": self.holds, "witness": self.witness}
        if self.detail:
            out["detail"] = self.detail
        return out


def controls_fusion(
    G: GroupHandle,
    p: int,
    S: SubgroupHandle | None = None,
    N: SubgroupHandle | None = None,
) -> CheckResult:
    """Does ``N = N_G(S)`` control ``p``-fusion in ``S``?

    For each ``g`` the largest ``A <= S`` with ``gAg^-1 <= S`` is
    ``S ∩ g^-1 S g``; an ``n`` in ``N`` agreeing with conjugation by ``g`` on it
    also agrees on every smaller ``A``, so checking that one subgroup per
    ``g`` covers all pairs ``(A, g)``.
    """
    S = S if S is not None else sylow_subgroup(G, p)
    N = N if N is not None else normalizer(G, S)
    sset = S.element_set
    gens_of: dict[frozenset, tuple[Perm, ...]] = {}
    realizable: dict[frozenset, set[tuple[Perm, ...]]] = {}
    for g in G.elements:
        A = frozenset(a for a in sset if conjugate(g, a) in sset)
        if len(A) == 1:
            continue
        gens = gens_of.get(A)
        if gens is None:
            gens = SubgroupHandle(G, A).generators
            gens_of[A] = gens
            realizable[A] = {tuple(conjugate(n, a) for a in gens) for n in N.elements}
        if tuple(conjugate(g, a) for a in gens) not in realizable[A]:
            return CheckResult(
                "controls_fusion",
                False,
                {
                    "subgroup": sorted(format_cycles(a) for a in gens),
                    "subgroup_order": len(A),
                    "element": format_cycles(g),
                },
            )
    return CheckResult("controls_fusion", True)


def controls_fusion_by_subgroups(G: GroupHandle, p: int) -> CheckResult:
    """The same check phrased literally: every subgroup ``A <= S`` and every
    ``g`` with ``gAg^-1 <= S``.  Slower; used to cross-check."""
    S = sylow_subgroup(G, p)
    N = normalizer(G, S)
    for A in all_nontrivial_subgroups(S):
        maps = {tuple(conjugate(n, a) for a in A.generators) for n in N.elements}
        for g in G.elements:
            img = tuple(conjugate(g, a) for a in A.generators)
            if all(x in S.element_set for x in img) and img not in maps:
                return CheckResult(
                    "controls_fusion",
                    False,
                    {"subgroup": subgroup_key(A), "subgroup_order": A.order, "element": format_cycles(g)},
                )
    return CheckResult("controls_fusion", True)


def frattini_condition(
    G: GroupHandle,
    p: int,
    S: SubgroupHandle | None = None,
    N: SubgroupHandle | None = None,
    q_list: list[SubgroupHandle] | None = None,
) -> CheckResult:
    """For every nontrivial ``Q <= S`` with ``H = C_G(Q)``: is
    ``(N_G(S) ∩ H) diamond(H) = H``?"""
    S = S if S is not None else sylow_subgroup(G, p)
    N = N if N is not None else normalizer(G, S)
    q_list = q_list if q_list is not None else all_nontrivial_subgroups(S)
    for Q in q_list:
        H = centralizer(G, Q)
        NH = intersect(N, H)
        D = diamond(H, p)
        product_size = NH.order * D.order // intersect(NH, D).order
        if product_size != H.order:
            return CheckResult(
                "frattini_condition",
                False,
                {
                    "subgroup": subgroup_key(Q),
                    "subgroup_order": Q.order,
                    "centralizer_order": H.order,
                    "product_order": product_size,
                },
            )
    return CheckResult("frattini_condition", True)
