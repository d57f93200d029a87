"""Subgroups of an enumerable permutation group, held as explicit element sets.

Everything here works by scanning elements: normalizers, centralizers and
Sylow subgroups are found by running over the ambient element list, which is
fine for groups up to the enumeration bound.  An "ambient" argument may be a
:class:`GroupHandle` or a :class:`SubgroupHandle`; subgroups always keep a
reference to the top-level group they live in.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from .permcore import (
    GroupHandle,
    GroupTooLargeError,
    Perm,
    _mul,
    closure,
    commutator,
    conjugate,
    is_identity,
    perm_order,
)

MAX_TOWER_SYLOW_ORDER = 2**12
MAX_SUBGROUP_COUNT = 10**4


class NotASubgroupError(ValueError):
    pass


class ParentMismatchError(ValueError):
    pass


class SubgroupHandle:
    """A subgroup of ``parent`` with its full element set.

    Two handles are equal when their element sets are equal, whatever
    generators they were built from.
    """

    def __init__(
        self,
        parent: GroupHandle,
        elements: Iterable[Perm],
        generators: Sequence[Perm] | None = None,
    ):
        self.parent = parent
        self.element_set = frozenset(elements)
        if generators is not None:
            self.__dict__["generators"] = tuple(generators)

    @property
    def degree(self) -> int:
        return self.parent.degree

    @property
    def identity(self) -> Perm:
        return self.parent.identity

    @property
    def order(self) -> int:
        return len(self.element_set)

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        return tuple(sorted(self.element_set))

    @cached_property
    def generators(self) -> tuple[Perm, ...]:
        """A small generating set, chosen greedily in element order."""
        gens: list[Perm] = []
        current = {self.identity}
        for e in self.elements:
            if e not in current:
                gens.append(e)
                current = closure(gens, self.degree, start=current)
                if len(current) == self.order:
                    break
        return tuple(gens)

    def __contains__(self, p: Perm) -> bool:
        return p in self.element_set

    def __len__(self) -> int:
        return len(self.element_set)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubgroupHandle):
            return NotImplemented
        return self.element_set == other.element_set

    def __hash__(self) -> int:
        return hash(self.element_set)

    def __le__(self, other: "SubgroupHandle") -> bool:
        return self.element_set <= other.element_set

    def __lt__(self, other: "SubgroupHandle") -> bool:
        return self.element_set < other.element_set

    def __repr__(self) -> str:
        return f"<SubgroupHandle order {self.order} of {self.parent!r}>"

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(_mul(x, y) == _mul(y, x) for x, y in itertools.combinations(gens, 2))

    def is_cyclic(self) -> bool:
        return any(perm_order(e) == self.order for e in self.elements)


Ambient = Union[GroupHandle, SubgroupHandle]


def root(X: Ambient) -> GroupHandle:
    return X.parent if isinstance(X, SubgroupHandle) else X


def _elements(X: Ambient) -> tuple[Perm, ...]:
    if isinstance(X, GroupHandle) and not X.enumerable:
        raise GroupTooLargeError(X.order, X.enumeration_bound)
    return X.elements


def _element_set(X: Ambient) -> frozenset[Perm]:
    if isinstance(X, GroupHandle) and not X.enumerable:
        raise GroupTooLargeError(X.order, X.enumeration_bound)
    return X.element_set


def whole(G: Ambient) -> SubgroupHandle:
    """``G`` itself as a subgroup handle."""
    if isinstance(G, SubgroupHandle):
        return G
    return SubgroupHandle(G, _elements(G), G.generators)


def trivial_subgroup(G: Ambient) -> SubgroupHandle:
    return SubgroupHandle(root(G), [G.identity], ())


def subgroup_from_generators(G: Ambient, gens: Iterable[Perm]) -> SubgroupHandle:
    gens = list(gens)
    big = _element_set(G) if isinstance(G, SubgroupHandle) else None
    for g in gens:
        if (big is not None and g not in big) or (big is None and not G.contains(g)):
            raise NotASubgroupError(f"generator {g} is not in the ambient group")
    return SubgroupHandle(root(G), closure(gens, G.degree), [g for g in gens if not is_identity(g)])


def _contains(G: Ambient, p: Perm) -> bool:
    if isinstance(G, SubgroupHandle):
        return p in G.element_set
    return G.contains(p)


def conjugate_subgroup(H: SubgroupHandle, g: Perm) -> SubgroupHandle:
    """The subgroup ``g H g^-1``."""
    if not H.parent.contains(g):
        raise NotASubgroupError("conjugating element lies outside the parent group")
    return SubgroupHandle(
        H.parent,
        (conjugate(g, h) for h in H.element_set),
        [conjugate(g, h) for h in H.generators],
    )


def conjugate_set(g: Perm, elems: Iterable[Perm]) -> frozenset[Perm]:
    return frozenset(conjugate(g, h) for h in elems)


def intersect(H: SubgroupHandle, K: SubgroupHandle) -> SubgroupHandle:
    if H.parent is not K.parent:
        raise ParentMismatchError("subgroups of different parent groups")
    return SubgroupHandle(H.parent, H.element_set & K.element_set)


def normalizer(G: Ambient, H: SubgroupHandle) -> SubgroupHandle:
    """``{g in G : g H g^-1 = H}`` by a full scan of ``G``."""
    hset = H.element_set
    gens = H.generators
    found = [g for g in _elements(G) if all(conjugate(g, h) in hset for h in gens)]
    return SubgroupHandle(root(G), found)


def centralizer(G: Ambient, H: SubgroupHandle | Iterable[Perm]) -> SubgroupHandle:
    """``{g in G : gh = hg for all h in H}`` by a full scan of ``G``."""
    gens = H.generators if isinstance(H, SubgroupHandle) else list(H)
    found = [g for g in _elements(G) if all(_mul(g, h) == _mul(h, g) for h in gens)]
    return SubgroupHandle(root(G), found)


def is_normal(K: SubgroupHandle, G: Ambient) -> bool:
    kset = K.element_set
    return all(conjugate(g, k) in kset for g in G.generators for k in K.generators)


def normal_closure(G: Ambient, gens: Iterable[Perm]) -> SubgroupHandle:
    """Smallest normal subgroup of ``G`` containing ``gens``."""
    degree = G.degree
    current_gens = [g for g in gens if not is_identity(g)]
    current = closure(current_gens, degree)
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            for c in list(current_gens):
                y = conjugate(g, c)
                if y not in current:
                    current_gens.append(y)
                    current = closure([y] + current_gens, degree, start=current)
                    changed = True
    return SubgroupHandle(root(G), current)


def commutator_subgroup(H: Ambient) -> SubgroupHandle:
    """``[H, H]`` as the normal closure of commutators of generator pairs."""
    gens = H.generators
    comms = [commutator(x, y) for x, y in itertools.combinations(gens, 2)]
    return normal_closure(H, comms)


def commutator_subgroup_bruteforce(H: Ambient) -> SubgroupHandle:
    """``[H, H]`` generated by every commutator of every pair of elements."""
    elems = _elements(H)
    comms = {commutator(x, y) for x in elems for y in elems}
    return SubgroupHandle(root(H), closure(comms, H.degree))


def generated_subgroup(G: Ambient, seeds: Iterable[Iterable[Perm]]) -> SubgroupHandle:
    """Subgroup generated by the union of the given element sets."""
    current = {G.identity}
    gens: list[Perm] = []
    for seed in seeds:
        for x in seed:
            if x in current:
                continue
            if not _contains(G, x):
                raise NotASubgroupError(f"seed element {x} lies outside the ambient group")
            gens.append(x)
            current = closure(gens, G.degree, start=current)
    return SubgroupHandle(root(G), current, gens)


def prime_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def is_p_power(n: int, p: int) -> bool:
    return prime_part(n, p) == n


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def sylow_subgroup(G: Ambient, p: int) -> SubgroupHandle:
    """A Sylow ``p``-subgroup of ``G``, built deterministically.

    Start from the first element of ``p``-power order in element order, then
    repeatedly adjoin the first element of the current normalizer that has
    order ``p`` modulo the current subgroup.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if G.order % p:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    target = prime_part(G.order, p)
    elems = _elements(G)
    first = next(e for e in elems if not is_identity(e) and is_p_power(perm_order(e), p))
    P = SubgroupHandle(root(G), closure([first], G.degree), [first])
    while P.order < target:
        N = normalizer(G, P)
        pset = P.element_set
        for x in N.elements:
            if x not in pset and _pow_in(x, p, pset):
                P = SubgroupHandle(
                    root(G), closure([x], G.degree, start=pset), P.generators + (x,)
                )
                break
        else:  # pragma: no cover - excluded by Sylow's theorem
            raise AssertionError("p-subgroup could not be extended")
    return P


def _pow_in(x: Perm, p: int, target: frozenset[Perm]) -> bool:
    y = x
    for _ in range(p - 1):
        y = _mul(y, x)
    return y in target


def all_nontrivial_subgroups(S: SubgroupHandle) -> list[SubgroupHandle]:
    """Every subgroup ``1 != Q <= S`` of a ``p``-group ``S`` exactly once,
    sorted by order and then by element list."""
    if S.order > MAX_TOWER_SYLOW_ORDER:
        raise GroupTooLargeError(S.order, MAX_TOWER_SYLOW_ORDER, what="p-group")
    if S.order > 1 and len(prime_factors(S.order)) != 1:
        raise ValueError("all_nontrivial_subgroups expects a p-group")
    degree = S.degree
    cyclics: dict[frozenset, Perm] = {}
    for x in S.elements:
        if is_identity(x):
            continue
        c = frozenset(closure([x], degree))
        cyclics.setdefault(c, x)
    found: dict[frozenset, SubgroupHandle] = {
        c: SubgroupHandle(S.parent, c, [x]) for c, x in cyclics.items()
    }
    queue = list(found.values())
    for H in queue:
        for c, x in cyclics.items():
            if c <= H.element_set:
                continue
            J = frozenset(closure(H.generators + (x,), degree, start=H.element_set))
            if J not in found:
                if len(found) >= MAX_SUBGROUP_COUNT:
                    raise GroupTooLargeError(len(found), MAX_SUBGROUP_COUNT, what="subgroup list")
                sub = SubgroupHandle(S.parent, J, H.generators + (x,))
                found[J] = sub
                queue.append(sub)
    return sorted(found.values(), key=lambda H: (H.order, H.elements))


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of a finite abelian group,
    each greater than one."""

    factors: tuple[int, ...]

    def __post_init__(self):
        for d in self.factors:
            if d <= 1:
                raise ValueError("invariant factors must exceed 1")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {self.factors}")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    def as_list(self) -> list[int]:
        return list(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.factors)


def invariants_from_orders(orders: Sequence[int]) -> AbelianInvariants:
    """Invariant factors of an abelian group from the multiset of its element
    orders.

    For each prime ``l`` the number of elements with order dividing ``l^k``
    is ``l^(sum_i min(e_i, k))`` over the ``l``-primary exponents ``e_i``;
    successive ratios give how many cyclic factors have exponent ``>= k``.
    """
    n = len(orders)
    primary: dict[int, list[int]] = {}
    for ell in prime_factors(n):
        exps = []
        prev = 1
        k = 1
        while True:
            cnt = sum(1 for o in orders if (ell**k) % o == 0)
            ratio = cnt // prev
            r = round(math.log(ratio, ell)) if ratio > 1 else 0
            if r == 0:
                break
            exps.append(r)  # number of factors with exponent >= k
            prev = cnt
            k += 1
        # convert "at least k" counts to a descending exponent list
        counts = exps + [0]
        desc = []
        for k in range(len(exps), 0, -1):
            desc.extend([k] * (counts[k - 1] - counts[k]))
        primary[ell] = desc
    width = max((len(v) for v in primary.values()), default=0)
    factors = []
    for j in range(width):
        d = 1
        for ell, desc in primary.items():
            if j < len(desc):
                d *= ell ** desc[j]
        factors.append(d)
    return AbelianInvariants(tuple(sorted(factors)))


class QuotientError(ValueError):
    pass


class AbelianQuotient:
    """The quotient ``G/K`` for normal ``K`` with abelian quotient.

    Cosets are numbered in order of their smallest element.  ``basis`` holds
    coset representatives ``b_1, ..., b_r`` of orders ``d_1 | ... | d_r`` with
    ``G/K`` the internal direct sum of the cyclic groups they generate, and
    ``coordinates(g)`` writes the coset of ``g`` in that basis.
    """

    def __init__(self, G: Ambient, K: SubgroupHandle):
        kset = K.element_set
        gset = _element_set(G)
        if not kset <= gset:
            raise QuotientError("kernel is not contained in the group")
        if not is_normal(K, G):
            raise QuotientError("kernel is not normal")
        if not commutator_subgroup(G).element_set <= kset:
            raise QuotientError("quotient is not abelian")
        self.group = G
        self.kernel = K
        self.label: dict[Perm, int] = {}
        self.reps: list[Perm] = []
        kelems = K.elements
        for g in _elements(G):
            if g in self.label:
                continue
            idx = len(self.reps)
            self.reps.append(g)
            for k in kelems:
                self.label[_mul(g, k)] = idx
        self.index = len(self.reps)
        self.coset_orders = [self._coset_order(r) for r in self.reps]
        self.invariants = invariants_from_orders(self.coset_orders)
        self.basis = self._find_basis()
        self._coords = self._coordinate_table()

    def _coset_order(self, g: Perm) -> int:
        kset = self.kernel.element_set
        y, m = g, 1
        while y not in kset:
            y = _mul(y, g)
            m += 1
        return m

    def mul(self, i: int, j: int) -> int:
        return self.label[_mul(self.reps[i], self.reps[j])]

    def _span(self, gens: list[int]) -> set[int]:
        span = {0}
        frontier = [0]
        for c in frontier:
            for g in gens:
                y = self.mul(c, g)
                if y not in span:
                    span.add(y)
                    frontier.append(y)
        return span

    def _find_basis(self) -> list[Perm]:
        factors = list(self.invariants.factors)
        by_order: dict[int, list[int]] = {}
        for i, o in enumerate(self.coset_orders):
            by_order.setdefault(o, []).append(i)

        def search(chosen: list[int], remaining: list[int]) -> list[int] | None:
            if not remaining:
                return chosen
            d = remaining[-1]
            target = math.prod(factors[len(remaining) - 1:])
            for c in by_order.get(d, []):
                if len(self._span(chosen + [c])) == target:
                    got = search(chosen + [c], remaining[:-1])
                    if got is not None:
                        return got
            return None

        found = search([], factors)
        if found is None:  # pragma: no cover - invariants guarantee a basis
            raise AssertionError("no basis matching the invariant factors")
        # found lists the largest factor first
        return [self.reps[i] for i in reversed(found)]

    def _coordinate_table(self) -> dict[int, tuple[int, ...]]:
        table: dict[int, tuple[int, ...]] = {}
        factors = self.invariants.factors
        for coords in itertools.product(*(range(d) for d in factors)):
            y = self.group.identity
            for b, c in zip(self.basis, coords):
                for _ in range(c):
                    y = _mul(y, b)
            table[self.label[y]] = coords
        if len(table) != self.index:  # pragma: no cover
            raise AssertionError("basis does not span the quotient")
        return table

    def coordinates(self, g: Perm) -> tuple[int, ...]:
        return self._coords[self.label[g]]


def quotient_abelian_invariants(G: Ambient, K: SubgroupHandle) -> AbelianInvariants:
    """Invariant factors of the abelian quotient ``G/K``.

    A finite abelian group and its dual have the same invariants, so this is
    also the answer for ``(G/K)*``.
    """
    return AbelianQuotient(G, K).invariants


def element_orders(H: Ambient) -> list[int]:
    return [perm_order(e) for e in _elements(H)]


__all__ = [
    "AbelianInvariants",
    "AbelianQuotient",
    "Ambient",
    "NotASubgroupError",
    "ParentMismatchError",
    "QuotientError",
    "SubgroupHandle",
    "all_nontrivial_subgroups",
    "centralizer",
    "commutator_subgroup",
    "commutator_subgroup_bruteforce",
    "conjugate_subgroup",
    "generated_subgroup",
    "intersect",
    "invariants_from_orders",
    "is_normal",
    "normal_closure",
    "normalizer",
    "prime_part",
    "quotient_abelian_invariants",
    "root",
    "subgroup_from_generators",
    "sylow_subgroup",
    "trivial_subgroup",
    "whole",
]
