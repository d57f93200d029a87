"""The group ``K(G) ≅ (N_G(S)/J)*`` of torsion endotrivial classes.

Which subgroup ``J`` is used depends on what can be proved about ``G``:

``abelian-sylow``
    ``S`` abelian: ``J = rho^2(S)`` exactly.
``fusion-controlled``
    ``S`` non-abelian, ``N_G(S)`` controls fusion and every centralizer
    ``H = C_G(Q)`` satisfies ``N_H(S) diamond(H) = H``: ``J = rho^2(S)``.
``conjecture-only``
    anything else: ``J = rho^inf(S)``, which is only known to be contained in
    the true ``J``; the reported group is then an upper bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .fusion import CheckResult, controls_fusion, frattini_condition
from .permcore import GroupHandle, is_identity, perm_order
from .rho import RhoTower, build_tower, diamond, subgroup_key
from .subgroups import (
    AbelianInvariants,
    SubgroupHandle,
    normalizer,
    quotient_abelian_invariants,
    subgroup_from_generators,
    sylow_subgroup,
)

ABELIAN = "abelian-sylow"
CYCLIC = "cyclic-sylow"
FUSION = "fusion-controlled"
CONJECTURE = "conjecture-only"


def sylow_shape(S: SubgroupHandle) -> str:
    if S.is_cyclic():
        return "cyclic"
    if S.is_abelian():
        return "abelian-noncyclic"
    return "nonabelian"


@dataclass
class KGroupReport:
    group: GroupHandle
    p: int
    sylow: SubgroupHandle
    sylow_shape: str
    theorem: str
    normalizer: SubgroupHandle
    j_subgroup: SubgroupHandle
    invariants: AbelianInvariants
    hypothesis_checks: list[CheckResult] = field(default_factory=list)
    tower: RhoTower | None = None

    @property
    def conjecture_flag(self) -> bool:
        return self.theorem == CONJECTURE

    @property
    def order(self) -> int:
        return self.invariants.order

    def to_dict(self) -> dict:
        out = {
            "schema": 1,
            "kind": "k_group",
            "group": self.group.name,
            "prime": self.p,
            "group_order": self.group.order,
            "sylow_order": self.sylow.order,
            "sylow_shape": self.sylow_shape,
            "theorem": self.theorem,
            "normalizer_order": self.normalizer.order,
            "j_order": self.j_subgroup.order,
            "j_index": self.normalizer.order // self.j_subgroup.order,
            "invariant_factors": self.invariants.as_list(),
            "hypothesis_checks": [c.to_dict() for c in self.hypothesis_checks],
            "conjecture_flag": self.conjecture_flag,
        }
        if self.conjecture_flag:
            out["note"] = (
                "J was taken to be rho^inf(S); the invariants describe an upper bound "
                "for K(G), exact only if J = rho^inf(S) holds for this group"
            )
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def k_group(G: GroupHandle, p: int, tower: RhoTower | None = None) -> KGroupReport:
    if G.order % p:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    S = tower.sylow if tower is not None else sylow_subgroup(G, p)
    tower = tower if tower is not None else build_tower(G, p, S)
    N = tower.normalizer_of(S)
    shape = sylow_shape(S)
    rho2 = tower.rho(S, 2)
    rho_inf = tower.rho_inf()
    checks = [CheckResult("sylow_abelian", shape != "nonabelian")]
    if shape != "nonabelian":
        theorem, J = ABELIAN, rho2
        checks.append(CheckResult("rho2_equals_rho_inf", rho2 == rho_inf))
    else:
        q_list = tower.q_list
        fusion = controls_fusion(G, p, S, N)
        frattini = frattini_condition(G, p, S, N, q_list)
        checks += [fusion, frattini]
        if fusion and frattini:
            theorem, J = FUSION, rho2
            checks.append(CheckResult("rho2_equals_rho_inf", rho2 == rho_inf))
        else:
            theorem, J = CONJECTURE, rho_inf
    invariants = quotient_abelian_invariants(N, J)
    return KGroupReport(G, p, S, shape, theorem, N, J, invariants, checks, tower)


def unique_order_p_subgroup(S: SubgroupHandle, p: int) -> SubgroupHandle:
    """The subgroup of order ``p`` of a cyclic ``p``-group."""
    for x in S.elements:
        if not is_identity(x) and perm_order(x) == p:
            return subgroup_from_generators(S, [x])
    raise ValueError("trivial Sylow subgroup")


def k_group_cyclic(G: GroupHandle, p: int) -> KGroupReport:
    """``K(G)`` for cyclic ``S`` from ``N_G(Z)/diamond(N_G(Z))`` with ``Z``
    the subgroup of order ``p``."""
    if G.order % p:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    S = sylow_subgroup(G, p)
    if not S.is_cyclic():
        raise ValueError("Sylow subgroup is not cyclic")
    Z = unique_order_p_subgroup(S, p)
    NZ = normalizer(G, Z)
    D = diamond(NZ, p)
    invariants = quotient_abelian_invariants(NZ, D)
    checks = [CheckResult("sylow_cyclic", True)]
    report = KGroupReport(G, p, S, "cyclic", CYCLIC, NZ, D, invariants, checks)
    return report


def describe(report: KGroupReport) -> str:
    """Plain-text rendering of a report."""
    d = report.to_dict()
    lines = [
        f"group            {d['group']} (order {d['group_order']})",
        f"prime            {d['prime']}",
        f"Sylow            order {d['sylow_order']}, {d['sylow_shape']}: {' '.join(subgroup_key(report.sylow))}",
        f"N_G(S)           order {d['normalizer_order']}",
        f"J                order {d['j_order']}, index {d['j_index']}",
        f"method           {d['theorem']}",
        f"K(G)             {report.invariants}  (invariant factors {d['invariant_factors']})",
    ]
    for c in report.hypothesis_checks:
        lines.append(f"check            {c.name}: {'yes' if c.holds else 'no'}")
    if report.conjecture_flag:
        lines.append("note             " + d["note"])
    return "\n".join(lines)
