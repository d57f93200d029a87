"""The diamond subgroup and the tower of local subgroups ``rho^i(Q)``.

For a subgroup ``H`` and prime ``p``, ``diamond(H, p)`` is the smallest normal
subgroup of ``H`` with abelian ``p'``-quotient, i.e. ``[H,H]`` together with a
Sylow ``p``-subgroup of ``H``.

For every nontrivial ``Q <= S``:

* ``rho^1(Q) = diamond(N_G(Q))``
* ``rho^i(Q)`` is generated by ``N_G(Q) ∩ rho^(i-1)(Q')`` over all
  nontrivial ``Q' <= S``.

The whole family is iterated level by level until no member changes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .permcore import GroupHandle, format_cycles
from .subgroups import (
    Ambient,
    AbelianQuotient,
    SubgroupHandle,
    all_nontrivial_subgroups,
    commutator_subgroup,
    generated_subgroup,
    normalizer,
    prime_part,
    root,
    sylow_subgroup,
)


def diamond(H: Ambient, p: int) -> SubgroupHandle:
    comm = commutator_subgroup(H)
    if H.order % p:
        return comm
    syl = sylow_subgroup(H, p)
    D = generated_subgroup(H, [comm.generators, syl.generators])
    return D


def check_diamond(H: Ambient, D: SubgroupHandle, p: int) -> bool:
    """``H/D`` is an abelian group of order prime to ``p``."""
    index = H.order // D.order
    if index % p:
        try:
            AbelianQuotient(H, D)
        except ValueError:
            return False
        return True
    return False


def rho1(G: Ambient, Q: SubgroupHandle, p: int) -> SubgroupHandle:
    if Q.is_trivial:
        raise ValueError("rho^1 is defined for nontrivial p-subgroups only")
    return diamond(normalizer(G, Q), p)


def subgroup_key(Q: SubgroupHandle) -> list[str]:
    """Sorted cycle strings of a greedy generating set: a stable label for
    reports."""
    return sorted(format_cycles(g) for g in Q.generators)


@dataclass
class RhoTower:
    """The family ``{rho^i(Q)}`` over all nontrivial ``Q <= S``.

    ``levels[i-1][k]`` is ``rho^i`` of ``q_list[k]``; levels after
    ``stable_at`` repeat the last one and are not stored.
    """

    group: GroupHandle
    p: int
    sylow: SubgroupHandle
    q_list: list[SubgroupHandle]
    normalizers: list[SubgroupHandle]
    levels: list[list[SubgroupHandle]] = field(default_factory=list)

    @property
    def stable_at(self) -> int:
        return len(self.levels)

    def index_of(self, Q: SubgroupHandle) -> int:
        for k, Q2 in enumerate(self.q_list):
            if Q2 == Q:
                return k
        raise KeyError("not a nontrivial subgroup of the Sylow subgroup")

    def rho(self, Q: SubgroupHandle, i: int | None = None) -> SubgroupHandle:
        """``rho^i(Q)``; ``i=None`` gives the limit."""
        k = self.index_of(Q)
        if i is None:
            i = self.stable_at
        if i < 1:
            raise ValueError("levels start at 1")
        return self.levels[min(i, self.stable_at) - 1][k]

    def rho_inf(self, Q: SubgroupHandle | None = None) -> SubgroupHandle:
        return self.rho(self.sylow if Q is None else Q)

    def normalizer_of(self, Q: SubgroupHandle) -> SubgroupHandle:
        return self.normalizers[self.index_of(Q)]

    def to_dict(self) -> dict:
        rows = []
        for k, Q in enumerate(self.q_list):
            rows.append(
                {
                    "subgroup": subgroup_key(Q),
                    "order": Q.order,
                    "normalizer_order": self.normalizers[k].order,
                    "rho_orders": [lvl[k].order for lvl in self.levels],
                    "rho_inf_order": self.levels[-1][k].order,
                }
            )
        S_idx = self.index_of(self.sylow)
        return {
            "schema": 1,
            "kind": "rho_tower",
            "group": self.group.name,
            "group_order": self.group.order,
            "prime": self.p,
            "sylow_order": self.sylow.order,
            "sylow_generators": subgroup_key(self.sylow),
            "subgroup_count": len(self.q_list),
            "stable_at": self.stable_at,
            "sylow_rho_orders": [lvl[S_idx].order for lvl in self.levels],
            "normalizer_of_sylow_order": self.normalizers[S_idx].order,
            "subgroups": rows,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def build_tower(G: GroupHandle, p: int, sylow: SubgroupHandle | None = None) -> RhoTower:
    """Compute every ``rho^i(Q)`` until the whole family is stable."""
    S = sylow if sylow is not None else sylow_subgroup(G, p)
    if S.order != prime_part(G.order, p):
        raise ValueError("given subgroup is not a Sylow subgroup")
    q_list = all_nontrivial_subgroups(S)
    norms = [normalizer(G, Q) for Q in q_list]
    level = [diamond(N, p) for N in norms]
    tower = RhoTower(root(G), p, S, q_list, norms, [level])
    while True:
        prev = tower.levels[-1]
        nxt = []
        for k, N in enumerate(norms):
            nset = N.element_set
            # rho^{i-1}(Q) itself is one of the generating pieces
            pieces = [prev[k].element_set]
            pieces.extend(nset & R.element_set for j, R in enumerate(prev) if j != k)
            nxt.append(_join(G, prev[k], pieces))
        if all(a == b for a, b in zip(prev, nxt)):
            return tower
        tower.levels.append(nxt)


def _join(G: Ambient, start: SubgroupHandle, pieces) -> SubgroupHandle:
    missing = set()
    for piece in pieces:
        missing |= piece - start.element_set
    if not missing:
        return start
    return generated_subgroup(G, [start.generators, sorted(missing)])
