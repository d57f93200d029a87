"""Weak homomorphisms ``G -> k^x`` and the construction of one from a
character of ``N_G(S)``.

Values in ``k^x`` are roots of unity of order prime to ``p``; a table with
modulus ``m`` stores each value as a residue ``r`` mod ``m``, standing for
``exp(2 pi i r / m)``, so multiplication in ``k^x`` is addition of residues.

A map ``chi: G -> k^x`` is a weak homomorphism when

* ``chi(s) = 1`` for ``s`` in ``S``;
* ``chi(g) = 1`` whenever ``S ∩ gSg^-1 = 1``;
* ``chi(ab) = chi(a) chi(b)`` whenever ``S ∩ aSa^-1 ∩ abS(ab)^-1 != 1``.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .fusion import controls_fusion, frattini_condition
from .permcore import GroupHandle, Perm, _mul, conjugate, format_cycles, inverse, parse_cycles
from .rho import RhoTower, build_tower, diamond
from .subgroups import (
    AbelianInvariants,
    AbelianQuotient,
    Ambient,
    SubgroupHandle,
    centralizer,
    intersect,
    normalizer,
    prime_factors,
    root,
    sylow_subgroup,
)

EXHAUSTIVE_BOUND = 10**4
DEFAULT_SAMPLES = 10**6


class PreconditionError(ValueError):
    """A named hypothesis of a construction does not hold."""

    def __init__(self, name: str, message: str):
        super().__init__(f"{name}: {message}")
        self.name = name


class CharacterTable:
    """A map from group elements to residues mod ``modulus``."""

    def __init__(self, values: Mapping[Perm, int], modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.modulus = modulus
        self.values = {g: r % modulus for g, r in values.items()}

    def __call__(self, g: Perm) -> int:
        return self.values[g]

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacterTable):
            return NotImplemented
        if self.values.keys() != other.values.keys():
            return False
        L = math.lcm(self.modulus, other.modulus)
        a, b = L // self.modulus, L // other.modulus
        return all(r * a % L == other.values[g] * b % L for g, r in self.values.items())

    def __hash__(self) -> int:
        return hash(frozenset(self.normalized().values.items()))

    def normalized(self) -> "CharacterTable":
        """The same values over the smallest modulus that holds them."""
        g = self.modulus
        for r in self.values.values():
            g = math.gcd(g, r)
        return CharacterTable({k: r // g for k, r in self.values.items()}, self.modulus // g)

    def rescaled(self, modulus: int) -> "CharacterTable":
        if modulus % self.modulus:
            raise ValueError("new modulus must be a multiple of the old one")
        f = modulus // self.modulus
        return CharacterTable({g: r * f for g, r in self.values.items()}, modulus)

    def restrict(self, elems: Iterable[Perm]) -> "CharacterTable":
        return CharacterTable({g: self.values[g] for g in elems}, self.modulus)

    def __add__(self, other: "CharacterTable") -> "CharacterTable":
        L = math.lcm(self.modulus, other.modulus)
        a, b = self.rescaled(L), other.rescaled(L)
        return CharacterTable({g: a.values[g] + b.values[g] for g in a.values}, L)

    def is_trivial(self) -> bool:
        return all(r == 0 for r in self.values.values())

    def vanishes_on(self, elems: Iterable[Perm]) -> bool:
        return all(self.values[g] == 0 for g in elems)

    def is_homomorphism(self, H: Ambient | None = None, exhaustive: bool = True) -> bool:
        """Additivity over ``H`` (default: the table's own domain)."""
        elems = list(H.elements) if H is not None else sorted(self.values)
        vals, m = self.values, self.modulus
        if exhaustive:
            pairs = itertools.product(elems, elems)
        else:
            gens = H.generators if H is not None else elems
            pairs = itertools.product(elems, gens)
        return all((vals[a] + vals[b] - vals[_mul(a, b)]) % m == 0 for a, b in pairs)

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "values": [[format_cycles(g), self.values[g]] for g in sorted(self.values)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], degree: int) -> "CharacterTable":
        try:
            modulus = int(data["modulus"])
            rows = data["values"]
        except (KeyError, TypeError) as exc:
            raise ValueError("table needs 'modulus' and 'values'") from exc
        values = {}
        for text, residue in rows:
            values[parse_cycles(text, degree)] = int(residue)
        return cls(values, modulus)


class WeakHom(CharacterTable):
    """A table on all of ``G`` together with the Sylow subgroup it refers to."""

    def __init__(self, group: GroupHandle, sylow: SubgroupHandle, values: Mapping[Perm, int], modulus: int):
        super().__init__(values, modulus)
        self.group = group
        self.sylow = sylow

    def __add__(self, other: "CharacterTable") -> "WeakHom":
        t = super().__add__(other)
        return WeakHom(self.group, self.sylow, t.values, t.modulus)

    __hash__ = CharacterTable.__hash__


class SylowConjugates:
    """The conjugates ``gSg^-1``, indexed, with ``which[g]`` the index for
    each element of ``G``; built from the left cosets of ``N_G(S)``."""

    def __init__(self, G: GroupHandle, S: SubgroupHandle, N: SubgroupHandle | None = None):
        self.group = G
        self.sylow = S
        N = N if N is not None else normalizer(G, S)
        self.normalizer = N
        self.sets: list[frozenset[Perm]] = []
        self.which: dict[Perm, int] = {}
        nelems = N.elements
        for g in G.elements:
            if g in self.which:
                continue
            idx = len(self.sets)
            self.sets.append(frozenset(conjugate(g, s) for s in S.element_set))
            for n in nelems:
                self.which[_mul(g, n)] = idx
        sset = S.element_set
        self.meet_sylow = [sset & X for X in self.sets]
        self._triple: dict[tuple[int, int], bool] = {}

    def meet(self, g: Perm) -> frozenset[Perm]:
        """``S ∩ gSg^-1``."""
        return self.meet_sylow[self.which[g]]

    def triple_nontrivial(self, i: int, j: int) -> bool:
        key = (i, j)
        got = self._triple.get(key)
        if got is None:
            got = len(self.meet_sylow[i] & self.sets[j]) > 1
            self._triple[key] = got
        return got


@dataclass
class VerifyResult:
    passed: bool
    mode: str
    checked_pairs: int
    axiom: str | None = None
    witness: dict[str, Any] | None = None
    seed: int | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "checked_pairs": self.checked_pairs,
            "failed_axiom": self.axiom,
            "witness": self.witness,
            "seed": self.seed,
        }


def verify_weakhom(
    G: GroupHandle,
    S: SubgroupHandle,
    table: CharacterTable,
    mode: str = "auto",
    sample_count: int = DEFAULT_SAMPLES,
    seed: int = 0,
    exhaustive_bound: int = EXHAUSTIVE_BOUND,
    conjugates: SylowConjugates | None = None,
) -> VerifyResult:
    """Check the three weak-homomorphism axioms.

    The first two axioms are always checked on every element.  The third is
    checked on every pair in ``"exhaustive"`` mode and on ``sample_count``
    seeded random pairs in ``"sampled"`` mode; ``"auto"`` picks exhaustive
    when ``|G| <= exhaustive_bound``.  Sampled pairs ``(a, b)`` are drawn so
    that ``S ∩ aSa^-1 ∩ abS(ab)^-1`` is nontrivial, i.e. only from pairs the
    axiom actually constrains.
    """
    if mode == "auto":
        mode = "exhaustive" if G.order <= exhaustive_bound else "sampled"
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown verification mode {mode!r}")
    vals, m = table.values, table.modulus
    missing = [g for g in G.elements if g not in vals]
    if missing:
        raise PreconditionError("partial_table", f"no value for {format_cycles(missing[0])}")
    sc = conjugates if conjugates is not None else SylowConjugates(G, S)

    for s in S.elements:
        if vals[s] % m:
            return VerifyResult(False, mode, 0, "sylow_trivial", {"element": format_cycles(s), "value": vals[s]})
    for g in G.elements:
        if len(sc.meet(g)) == 1 and vals[g] % m:
            return VerifyResult(False, mode, 0, "disjoint_trivial", {"element": format_cycles(g), "value": vals[g]})

    def fail(a: Perm, b: Perm, count: int) -> VerifyResult:
        ab = _mul(a, b)
        return VerifyResult(
            False,
            mode,
            count,
            "multiplicative",
            {
                "a": format_cycles(a),
                "b": format_cycles(b),
                "value_a": vals[a],
                "value_b": vals[b],
                "value_ab": vals[ab],
            },
            seed if mode == "sampled" else None,
        )

    which = sc.which
    count = 0
    if mode == "exhaustive":
        elems = G.elements
        for a in elems:
            ia = which[a]
            if len(sc.meet_sylow[ia]) == 1:
                continue
            va = vals[a]
            for b in elems:
                ab = _mul(a, b)
                if sc.triple_nontrivial(ia, which[ab]):
                    count += 1
                    if (va + vals[b] - vals[ab]) % m:
                        return fail(a, b, count)
        return VerifyResult(True, mode, count)

    rng = random.Random(seed)
    # elements grouped by Sylow conjugate, and for each conjugate index the
    # conjugate indices j with S ∩ X_i ∩ X_j nontrivial
    by_conj: list[list[Perm]] = [[] for _ in sc.sets]
    for g in G.elements:
        by_conj[which[g]].append(g)
    relevant = [i for i in range(len(sc.sets)) if len(sc.meet_sylow[i]) > 1]
    partners = {i: [j for j in range(len(sc.sets)) if sc.triple_nontrivial(i, j)] for i in relevant}
    for _ in range(sample_count):
        i = relevant[rng.randrange(len(relevant))]
        a = by_conj[i][rng.randrange(len(by_conj[i]))]
        js = partners[i]
        j = js[rng.randrange(len(js))]
        c = by_conj[j][rng.randrange(len(by_conj[j]))]
        b = _mul(inverse(a), c)
        count += 1
        if (vals[a] + vals[b] - vals[c]) % m:
            return fail(a, b, count)
    return VerifyResult(True, mode, count, seed=seed)


class BurnsideDecomposer:
    """Factor ``g = c n`` with ``c`` in ``C_G(R)`` and ``n`` in ``N_G(S)``.

    ``c`` is the first element of ``C_G(R)`` (in element order) with
    ``cSc^-1 = gSg^-1``; then ``n = c^-1 g`` normalizes ``S``.  Centralizers
    and the conjugate-to-first-``c`` maps are cached per ``R``.
    """

    def __init__(self, G: GroupHandle, S: SubgroupHandle, conjugates: SylowConjugates | None = None):
        self.group = G
        self.sylow = S
        self.conj = conjugates if conjugates is not None else SylowConjugates(G, S)
        self._centralizers: dict[frozenset, SubgroupHandle] = {}
        self._first: dict[frozenset, dict[int, Perm]] = {}

    def centralizer(self, R: frozenset[Perm]) -> SubgroupHandle:
        C = self._centralizers.get(R)
        if C is None:
            C = centralizer(self.group, SubgroupHandle(self.group, R))
            self._centralizers[R] = C
        return C

    def _first_map(self, R: frozenset[Perm]) -> dict[int, Perm]:
        fm = self._first.get(R)
        if fm is None:
            fm = {}
            for c in self.centralizer(R).elements:
                fm.setdefault(self.conj.which[c], c)
            self._first[R] = fm
        return fm

    def decompose(self, R: frozenset[Perm], g: Perm) -> tuple[Perm, Perm]:
        if len(R) <= 1:
            raise PreconditionError("nontrivial_R", "R must be a nontrivial subgroup")
        if not R <= self.conj.meet(g):
            raise PreconditionError("R_in_intersection", "R is not contained in S ∩ gSg^-1")
        c = self._first_map(R).get(self.conj.which[g])
        if c is None:
            raise PreconditionError(
                "burnside", f"no element of C_G(R) conjugates S to gSg^-1 for g={format_cycles(g)}"
            )
        return c, _mul(inverse(c), g)

    def all_decompositions(self, R: frozenset[Perm], g: Perm) -> list[tuple[Perm, Perm]]:
        """Every ``(c, n)`` with ``c`` in ``C_G(R)``, ``n`` in ``N_G(S)`` and ``cn = g``."""
        nset = self.conj.normalizer.element_set
        out = []
        for c in self.centralizer(R).elements:
            n = _mul(inverse(c), g)
            if n in nset:
                out.append((c, n))
        return out


def burnside_decompose(
    G: GroupHandle, S: SubgroupHandle, R: SubgroupHandle, g: Perm, require_abelian: bool = True
) -> tuple[Perm, Perm]:
    if require_abelian and not S.is_abelian():
        raise PreconditionError("abelian_sylow", "the Sylow subgroup is not abelian")
    return BurnsideDecomposer(G, S).decompose(R.element_set, g)


def frattini_extend(
    H: SubgroupHandle, p: int, phi: CharacterTable, D: SubgroupHandle | None = None
) -> CharacterTable:
    """Extend a character ``phi`` of ``N_H(S)`` to all of ``H``.

    ``phi``'s domain is taken as ``N_H(S)``.  The value at ``h`` is ``phi(n)``
    for any ``n`` in ``N_H(S)`` lying in the coset ``h diamond(H)``; this is
    well defined exactly when ``phi`` vanishes on ``N_H(S) ∩ diamond(H)``, and
    defined everywhere exactly when ``N_H(S) diamond(H) = H``.
    """
    D = D if D is not None else diamond(H, p)
    delems = D.elements
    label: dict[Perm, int] = {}
    coset_value: dict[int, int] = {}
    m = phi.modulus
    for n in sorted(phi.values):
        if n not in H.element_set:
            raise PreconditionError("domain", "character domain is not inside H")
        if n in label:
            idx = label[n]
            if (coset_value[idx] - phi.values[n]) % m:
                raise PreconditionError(
                    "vanishes_on_diamond",
                    "character does not vanish on N_H(S) ∩ diamond(H)",
                )
            continue
        idx = len(coset_value)
        coset_value[idx] = phi.values[n]
        for d in delems:
            label[_mul(n, d)] = idx
    if len(label) != H.order:
        raise PreconditionError("frattini", "N_H(S) diamond(H) is a proper subgroup of H")
    return CharacterTable({h: coset_value[label[h]] for h in H.elements}, m)


def _prime_of(S: SubgroupHandle) -> int:
    primes = prime_factors(S.order)
    if len(primes) != 1:
        raise ValueError("Sylow subgroup must be a nontrivial p-group")
    return primes[0]


class ThetaBuilder:
    """Builds weak homomorphisms from characters of ``N_G(S)``; shares the
    Sylow-conjugate table, centralizers, and diamond subgroups across calls."""

    def __init__(
        self,
        G: GroupHandle,
        S: SubgroupHandle,
        tower: RhoTower | None = None,
        hypotheses_checked: bool = False,
    ):
        if not S.is_abelian() and not hypotheses_checked:
            raise PreconditionError(
                "abelian_sylow",
                "Sylow subgroup is not abelian and the fusion hypotheses were not verified",
            )
        self.group = G
        self.sylow = S
        self.p = _prime_of(S)
        self.tower = tower
        self.conj = SylowConjugates(G, S)
        self.normalizer = self.conj.normalizer
        self.decomposer = BurnsideDecomposer(G, S, self.conj)
        self._diamonds: dict[frozenset, SubgroupHandle] = {}

    @property
    def rho2(self) -> SubgroupHandle:
        if self.tower is None:
            self.tower = build_tower(self.group, self.p, self.sylow)
        return self.tower.rho(self.sylow, 2)

    def _diamond(self, R: frozenset[Perm]) -> SubgroupHandle:
        D = self._diamonds.get(R)
        if D is None:
            D = diamond(self.decomposer.centralizer(R), self.p)
            self._diamonds[R] = D
        return D

    def psi(self, R: frozenset[Perm], chi: CharacterTable) -> CharacterTable:
        """The extension of ``chi`` restricted to ``N_G(S) ∩ C_G(R)`` to a
        character of ``C_G(R)``."""
        C = self.decomposer.centralizer(R)
        phi = chi.restrict(intersect(self.normalizer, C).elements)
        return frattini_extend(C, self.p, phi, self._diamond(R))

    def theta(self, chi: CharacterTable, check_kernel: bool = True) -> WeakHom:
        N = self.normalizer
        if set(chi.values) != N.element_set:
            raise PreconditionError("domain", "character must be defined on N_G(S)")
        if check_kernel and not chi.vanishes_on(self.rho2.elements):
            raise PreconditionError("kernel", "rho^2(S) is not in the kernel of the character")
        psis: dict[frozenset, CharacterTable] = {}
        values = {}
        conj = self.conj
        for g in self.group.elements:
            R = conj.meet(g)
            if len(R) == 1:
                values[g] = 0
                continue
            psi = psis.get(R)
            if psi is None:
                psi = self.psi(R, chi)
                psis[R] = psi
            c, n = self.decomposer.decompose(R, g)
            values[g] = psi.values[c] + chi.values[n]
        return WeakHom(self.group, self.sylow, values, chi.modulus)


def theta_from_chi(
    G: GroupHandle,
    S: SubgroupHandle,
    chi: CharacterTable,
    tower: RhoTower | None = None,
    hypotheses_checked: bool = False,
) -> WeakHom:
    """The unique weak homomorphism of ``G`` restricting to ``chi`` on
    ``N_G(S)``.

    ``theta(g) = 0`` when ``S ∩ gSg^-1 = 1``; otherwise, with
    ``R = S ∩ gSg^-1`` and ``g = cn`` (``c`` centralizing ``R``, ``n``
    normalizing ``S``), ``theta(g) = psi_R(c) + chi(n)`` where ``psi_R``
    extends ``chi`` from ``N_G(S) ∩ C_G(R)`` to ``C_G(R)``.
    """
    return ThetaBuilder(G, S, tower, hypotheses_checked).theta(chi)


def characters_of_quotient(Nq: AbelianQuotient) -> list[CharacterTable]:
    """All characters of ``N`` with ``K`` in their kernel, as tables on ``N``
    over the modulus ``exponent(N/K)``, enumerated by their values on the
    quotient basis in lexicographic order."""
    factors = Nq.invariants.factors
    m = Nq.invariants.exponent
    coords = {g: Nq.coordinates(g) for g in Nq.group.elements}
    out = []
    for ks in itertools.product(*(range(d) for d in factors)):
        weights = [k * (m // d) for k, d in zip(ks, factors)]
        values = {g: sum(w * c for w, c in zip(weights, cs)) for g, cs in coords.items()}
        out.append(CharacterTable(values, m))
    return out


@dataclass
class AGroup:
    """The group of weak homomorphisms, built from the characters of
    ``N_G(S)/rho^2(S)``."""

    group: GroupHandle
    sylow: SubgroupHandle
    normalizer: SubgroupHandle
    kernel: SubgroupHandle
    invariants: AbelianInvariants
    characters: list[CharacterTable]
    weak_homs: list[WeakHom]
    verifications: list[VerifyResult] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.weak_homs)

    def index_of(self, table: CharacterTable) -> int:
        for i, w in enumerate(self.weak_homs):
            if w == table:
                return i
        raise KeyError("table is not in the group")

    def is_closed(self) -> bool:
        """Pointwise sums of members are members."""
        members = set(self.weak_homs)
        return all(a + b in members for a in self.weak_homs for b in self.weak_homs)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": "weak_homomorphism_group",
            "group": self.group.name,
            "group_order": self.group.order,
            "sylow_order": self.sylow.order,
            "normalizer_order": self.normalizer.order,
            "kernel_order": self.kernel.order,
            "order": self.order,
            "invariant_factors": self.invariants.as_list(),
            "verifications": [v.to_dict() for v in self.verifications],
        }


def enumerate_A_group(
    G: GroupHandle,
    p: int | None = None,
    S: SubgroupHandle | None = None,
    tower: RhoTower | None = None,
    verify: str | None = "auto",
    sample_count: int = DEFAULT_SAMPLES,
    seed: int = 0,
    exhaustive_bound: int = EXHAUSTIVE_BOUND,
) -> AGroup:
    """Build a weak homomorphism for each character of ``N_G(S)/rho^2(S)``.

    Non-abelian Sylow subgroups are accepted only when ``N_G(S)`` controls
    fusion and the Frattini condition holds; otherwise a
    :class:`PreconditionError` is raised.  ``verify`` is a
    :func:`verify_weakhom` mode, or ``None`` to skip verification.
    """
    if S is None:
        if p is None:
            raise ValueError("give the prime or the Sylow subgroup")
        S = sylow_subgroup(G, p)
    p = _prime_of(S)
    checked = False
    if not S.is_abelian():
        N = normalizer(G, S)
        if not (controls_fusion(G, p, S, N) and frattini_condition(G, p, S, N)):
            raise PreconditionError(
                "fusion_hypotheses",
                "non-abelian Sylow subgroup without fusion control and the Frattini condition",
            )
        checked = True
    if tower is None:
        tower = build_tower(G, p, S)
    builder = ThetaBuilder(G, S, tower, hypotheses_checked=checked)
    N = builder.normalizer
    J = tower.rho(S, 2)
    Nq = AbelianQuotient(N, J)
    chars = characters_of_quotient(Nq)
    homs = [builder.theta(chi) for chi in chars]
    results = []
    if verify is not None:
        for w in homs:
            results.append(
                verify_weakhom(
                    G, S, w, verify, sample_count, seed, exhaustive_bound, conjugates=builder.conj
                )
            )
    return AGroup(root(G), S, N, J, Nq.invariants, chars, homs, results)
