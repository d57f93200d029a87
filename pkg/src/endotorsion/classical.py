"""Explicit checks for two families of simple groups.

``PSL(3, q)`` with ``q ≡ 4, 7 (mod 9)`` at ``p = 3``: the Sylow 3-subgroup is
elementary abelian of order 9, generated by the classes of the diagonal matrix
``a = diag(1, ζ, ζ²)`` and the permutation matrix ``x``.  Two further matrices
``u`` (a Fourier matrix) and ``v`` normalize it.  :func:`verify_psl3_sylow3`
checks the conjugation relations among them, the structure of ``N_G(S)`` and
the resulting ``K(G) ≅ (Z/2)²``.

``PSL(2, q)`` with ``q ≡ 3, 5 (mod 8)`` at ``p = 2``: the Sylow 2-subgroup is a
Klein four-group with ``C_G(S) = S`` of index 3 in ``N_G(S)``, so
``K(G) ≅ Z/3``.  See :func:`psl2_klein_report`.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Any

from .fields import GF
from .fusion import CheckResult
from .kgroup import k_group
from .linear import (
    LinearAction,
    Matrix,
    det,
    mat_identity,
    mat_inv,
    mat_mul,
    mat_pow,
    mat_scale,
    projectively_equal,
    psl_as_permutation,
    scalar,
)
from .permcore import DEFAULT_ENUMERATION_BOUND, Perm, compose, conjugate, format_cycles, inverse
from .rho import build_tower
from .subgroups import (
    all_nontrivial_subgroups,
    centralizer,
    commutator_subgroup,
    conjugate_subgroup,
    normalizer,
    subgroup_from_generators,
)

HOMOMORPHISM_SAMPLES = 200


@dataclass
class Psl3Generators:
    field: GF
    zeta: int
    a: Matrix
    x: Matrix
    u: Matrix
    v: Matrix
    # scalars applied to the given u, v to bring them into SL(3, q)
    u_scale: int = 1
    v_scale: int = 1

    @property
    def z(self) -> Matrix:
        return scalar(3, self.zeta)

    def sigma(self) -> Matrix:
        F = self.field
        u_inv, v_inv = mat_inv(F, self.u), mat_inv(F, self.v)
        return _prod(F, u_inv, v_inv, self.u, self.v)


def _prod(F: GF, *ms: Matrix) -> Matrix:
    return reduce(lambda A, B: mat_mul(F, A, B), ms)


def _sl_scale(F: GF, A: Matrix) -> int:
    """A scalar ``c`` with ``det(cA) = 1``, or 0 if none exists."""
    d = det(F, A)
    for c in range(1, F.q):
        if F.mul(F.pow(c, 3), d) == 1:
            return c
    return 0


def psl3_sylow3_generators(q: int) -> Psl3Generators:
    """The matrices ``a, x, u, v`` over GF(q), with ``ζ`` the smallest
    primitive cube root of unity.

    ``u`` and ``v`` are rescaled into SL(3, q) when their determinant is not
    1; the scalars used are kept on the result.
    """
    F = GF.of_order(q)
    if (q - 1) % 3:
        raise ValueError(f"GF({q}) has no primitive cube root of unity")
    z = F.zeta()
    z2 = F.mul(z, z)
    a = ((1, 0, 0), (0, z, 0), (0, 0, z2))
    x = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    u = ((1, 1, 1), (1, z, z2), (1, z2, z))
    v = ((z, 1, 1), (z, z, z2), (1, z, 1))
    scales = []
    for M in (u, v):
        c = _sl_scale(F, M)
        if c == 0:
            raise ValueError(f"no scalar multiple of {M} has determinant 1 over GF({q})")
        scales.append(c)
    return Psl3Generators(
        F, z, a, x, mat_scale(F, scales[0], u), mat_scale(F, scales[1], v), scales[0], scales[1]
    )


def _sylow_classes(gens: Psl3Generators) -> list[tuple[int, int, Matrix]]:
    """``(i, j, a^i x^j)`` for ``0 <= i, j < 3``: one representative of each
    class of ``S`` modulo scalars."""
    F = gens.field
    return [
        (i, j, mat_mul(F, mat_pow(F, gens.a, i), mat_pow(F, gens.x, j)))
        for i in range(3)
        for j in range(3)
    ]


def _as_word(gens: Psl3Generators, M: Matrix) -> tuple[int, int, int] | None:
    """Write ``M = z^k a^i x^j`` exactly; ``(i, j, k)`` or None."""
    F = gens.field
    for i, j, rep in _sylow_classes(gens):
        for k in range(3):
            if mat_scale(F, F.pow(gens.zeta, k), rep) == M:
                return i, j, k
    return None


def _word_str(i: int, j: int, k: int) -> str:
    parts = []
    for sym, e in (("z", k), ("a", i), ("x", j)):
        if e:
            parts.append(sym if e == 1 else f"{sym}^{e}")
    return "".join(parts) or "1"


def matrix_relations(gens: Psl3Generators) -> list[CheckResult]:
    """Conjugation of ``a`` and ``x`` by ``u`` and ``v``.

    Each stated relation is checked exactly in SL(3, q) and modulo scalars.
    ``v^-1 x v`` is also expressed as ``z^k a^i x^j`` so the actual relation
    is on record.
    """
    F = gens.field
    a, x, u, v = gens.a, gens.x, gens.u, gens.v
    u_inv, v_inv = mat_inv(F, u), mat_inv(F, v)
    inv = lambda M: mat_inv(F, M)  # noqa: E731
    stated = [
        ("u^-1 x u = a", _prod(F, u_inv, x, u), a),
        ("u^-1 a u = x^-1", _prod(F, u_inv, a, u), inv(x)),
        ("v^-1 a v = zeta (a x)^-1", _prod(F, v_inv, a, v), mat_scale(F, gens.zeta, inv(mat_mul(F, a, x)))),
    ]
    out = []
    for name, lhs, rhs in stated:
        out.append(
            CheckResult(
                name,
                projectively_equal(F, lhs, rhs),
                detail={"exact": lhs == rhs, "lhs_word": _word_str(*w) if (w := _as_word(gens, lhs)) else None},
            )
        )
    lhs = _prod(F, v_inv, x, v)
    word = _as_word(gens, lhs)
    a2v = _prod(F, mat_pow(F, a, 2), v)
    out.append(
        CheckResult(
            "v^-1 x v lies in <a, x, z>",
            word is not None,
            detail={
                "computed": _word_str(*word) if word else None,
                "matches_a^2_v": projectively_equal(F, lhs, a2v),
            },
        )
    )
    return out


def matrix_identities(gens: Psl3Generators) -> list[CheckResult]:
    F = gens.field
    z = gens.z
    one = mat_identity(3)
    checks = [
        CheckResult("zeta is a primitive cube root of unity", gens.zeta != 1 and F.pow(gens.zeta, 3) == 1),
        CheckResult("det a = det x = 1", det(F, gens.a) == 1 and det(F, gens.x) == 1),
        CheckResult("det u = det v = 1 after scaling", det(F, gens.u) == 1 and det(F, gens.v) == 1,
                    detail={"u_scale": F.format(gens.u_scale), "v_scale": F.format(gens.v_scale)}),
        CheckResult("z^3 = 1", mat_pow(F, z, 3) == one),
        CheckResult(
            "z is central",
            all(mat_mul(F, z, M) == mat_mul(F, M, z) for M in (gens.a, gens.x, gens.u, gens.v)),
        ),
        CheckResult("a^3 = x^3 = 1", mat_pow(F, gens.a, 3) == one and mat_pow(F, gens.x, 3) == one),
        CheckResult(
            "a and x commute modulo scalars",
            projectively_equal(F, mat_mul(F, gens.a, gens.x), mat_mul(F, gens.x, gens.a)),
        ),
    ]
    return checks


def matrix_normalizer_checks(gens: Psl3Generators) -> list[CheckResult]:
    """Checks that need only matrix arithmetic: ``u``, ``v`` normalize
    ``<a, x>`` modulo scalars, and ``σ`` inverts ``a`` and ``x``."""
    F = gens.field
    out = []
    for name, g in (("u", gens.u), ("v", gens.v)):
        g_inv = mat_inv(F, g)
        ok = all(
            _as_word(gens, _prod(F, g_inv, s, g)) is not None for s in (gens.a, gens.x)
        )
        out.append(CheckResult(f"{name} normalizes <a, x> modulo scalars", ok))
    sig = gens.sigma()
    sig_inv = mat_inv(F, sig)
    inverted = all(
        projectively_equal(F, _prod(F, sig, s, sig_inv), mat_inv(F, s)) for s in (gens.a, gens.x)
    )
    out.append(CheckResult("sigma inverts a and x modulo scalars", inverted))
    return out


def homomorphism_check(
    action: LinearAction, samples: int = HOMOMORPHISM_SAMPLES, seed: int = 0
) -> CheckResult:
    """``perm(AB) == perm(A) perm(B)`` on random invertible matrices."""
    F = action.field
    d = action.d
    rng = random.Random(seed)

    def rand_matrix() -> Matrix:
        while True:
            M = tuple(tuple(rng.randrange(F.q) for _ in range(d)) for _ in range(d))
            if det(F, M):
                return M

    for _ in range(samples):
        A, B = rand_matrix(), rand_matrix()
        if action.perm(mat_mul(F, A, B)) != compose(action.perm(A), action.perm(B)):
            return CheckResult("matrix action is a homomorphism", False, {"A": A, "B": B})
    return CheckResult("matrix action is a homomorphism", True, detail={"samples": samples, "seed": seed})


def _maximal_subgroup_swaps(S, g: Perm) -> tuple[bool, list[int]]:
    """How conjugation by ``g`` permutes the order-3 subgroups of ``S``."""
    maximal = [Q for Q in all_nontrivial_subgroups(S) if Q.order * 3 == S.order]
    images = [maximal.index(conjugate_subgroup(Q, g)) for Q in maximal]
    is_double_swap = all(images[images[k]] == k and images[k] != k for k in range(len(images)))
    return is_double_swap, images


@dataclass
class Psl3Report:
    q: int
    field_modulus: str
    zeta: str
    checks: list[CheckResult] = field(default_factory=list)
    facts: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": "psl3_sylow3",
            "q": self.q,
            "field_modulus": self.field_modulus,
            "zeta": self.zeta,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "facts": self.facts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def verify_psl3_sylow3(
    q: int,
    permutation_checks: bool | None = None,
    seed: int = 0,
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
) -> Psl3Report:
    """Run the matrix checks for ``PSL(3, q)`` and, when the group is small
    enough to enumerate (by default only if ``|G| <= enumeration_bound``),
    the permutation-group checks on ``S``, ``C_G(S)``, ``N_G(S)``, the tower
    and ``K(G)``."""
    if q % 9 not in (4, 7):
        raise ValueError("need q ≡ 4 or 7 (mod 9)")
    gens = psl3_sylow3_generators(q)
    F = gens.field
    report = Psl3Report(q, F.format_modulus(), F.format(gens.zeta), seed=seed)
    report.checks += matrix_identities(gens)
    report.checks += matrix_relations(gens)
    report.checks += matrix_normalizer_checks(gens)

    G, action = psl_as_permutation(3, q, enumeration_bound=enumeration_bound)
    report.checks.append(homomorphism_check(action, seed=seed))
    perm = {name: action.perm(getattr(gens, name)) for name in ("a", "x", "u", "v")}
    perm["sigma"] = action.perm(gens.sigma())
    report.checks.append(
        CheckResult("a, x, u, v, sigma lie in PSL", all(G.contains(g) for g in perm.values()))
    )
    report.facts["group_order"] = G.order
    report.facts["generator_cycles"] = {k: format_cycles(g) for k, g in sorted(perm.items())}
    if permutation_checks is None:
        permutation_checks = G.order <= enumeration_bound
    report.facts["permutation_checks"] = permutation_checks
    if not permutation_checks:
        return report

    S = subgroup_from_generators(G, [perm["a"], perm["x"]])
    report.checks.append(
        CheckResult("S = <a, x> has order 9 and is abelian", S.order == 9 and S.is_abelian())
    )
    for name in ("u", "v"):
        g = perm[name]
        in_norm = conjugate_subgroup(S, g) == S
        swaps, images = _maximal_subgroup_swaps(S, g) if in_norm else (False, [])
        report.checks.append(CheckResult(f"{name} normalizes S", in_norm))
        report.checks.append(
            CheckResult(f"{name} swaps the maximal subgroups of S in pairs", swaps, detail={"images": images})
        )
    sig = perm["sigma"]
    bad = [s for s in S.elements if conjugate(sig, s) != inverse(s)]
    report.checks.append(
        CheckResult(
            "sigma inverts every element of S",
            not bad,
            {"element": format_cycles(bad[0])} if bad else None,
        )
    )
    C = centralizer(G, S)
    report.checks.append(CheckResult("C_G(S) = S", C == S, detail={"centralizer_order": C.order}))
    N = normalizer(G, S)
    generated = subgroup_from_generators(G, [perm[k] for k in ("a", "x", "u", "v", "sigma")])
    report.checks.append(
        CheckResult(
            "N_G(S) = <a, x, u, v, sigma>",
            generated == N,
            detail={"normalizer_order": N.order, "generated_order": generated.order},
        )
    )
    tower = build_tower(G, 3, S)
    NN = commutator_subgroup(N)
    rows = [tower.rho(S, i) for i in (1, 2, 3)]
    report.checks.append(
        CheckResult(
            "rho^i(S) = [N, N] for i = 1, 2, 3",
            all(R == NN for R in rows),
            detail={"rho_orders": [R.order for R in rows], "commutator_index": N.order // NN.order},
        )
    )
    report.checks.append(CheckResult("[N, N] has index 4 in N", N.order == 4 * NN.order))
    K = k_group(G, 3, tower)
    report.checks.append(
        CheckResult("K(G) invariants are [2, 2]", K.invariants.as_list() == [2, 2])
    )
    report.facts.update(
        normalizer_order=N.order,
        commutator_order=NN.order,
        tower_stable_at=tower.stable_at,
        k_invariants=K.invariants.as_list(),
    )
    return report


@dataclass
class Psl2Report:
    q: int
    checks: list[CheckResult]
    invariants: list[int]

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": "psl2_klein",
            "q": self.q,
            "passed": self.passed,
            "invariant_factors": self.invariants,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def psl2_klein_report(q: int) -> Psl2Report:
    """``PSL(2, q)`` at ``p = 2`` for ``q ≡ 3, 5 (mod 8)``."""
    if q % 8 not in (3, 5):
        raise ValueError("need q ≡ 3 or 5 (mod 8)")
    G, _ = psl_as_permutation(2, q)
    K = k_group(G, 2)
    S, N, tower = K.sylow, K.normalizer, K.tower
    C = centralizer(G, S)
    checks = [
        CheckResult("S is a Klein four-group", S.order == 4 and S.is_abelian() and not S.is_cyclic()),
        CheckResult("C_G(S) = S", C == S),
        CheckResult("[N_G(S) : S] = 3", N.order == 3 * S.order),
        CheckResult("rho^1(S) = rho^2(S) = S", tower.rho(S, 1) == S and tower.rho(S, 2) == S),
        CheckResult("K(G) invariants are [3]", K.invariants.as_list() == [3]),
    ]
    return Psl2Report(q, checks, K.invariants.as_list())
