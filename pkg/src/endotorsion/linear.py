"""2x2 and 3x3 matrices over GF(q), and SL/PSL as permutation groups.

Matrices are tuples of row tuples of field ints.  PSL(d, q) acts on the
projective points of GF(q)^d (column vectors, first nonzero coordinate 1);
SL(d, q) acts faithfully on the nonzero vectors.  The map from matrices to
permutations is a homomorphism under the left-action convention of
:mod:`permcore`: ``perm(A @ B) == compose(perm(A), perm(B))``.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from .fields import GF
from .permcore import DEFAULT_ENUMERATION_BOUND, GroupHandle, Perm

Matrix = tuple[tuple[int, ...], ...]

MAX_POINTS = 400


def mat(F: GF, rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(F.from_int(x) if F.n == 1 else x for x in row) for row in rows)


def mat_identity(d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def scalar(d: int, c: int) -> Matrix:
    return tuple(tuple(c if i == j else 0 for j in range(d)) for i in range(d))


def mat_mul(F: GF, A: Matrix, B: Matrix) -> Matrix:
    add, mul = F._add, F._mul
    d = len(A)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            s = 0
            for k in range(d):
                s = add[s][mul[A[i][k]][B[k][j]]]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_scale(F: GF, c: int, A: Matrix) -> Matrix:
    return tuple(tuple(F.mul(c, x) for x in row) for row in A)


def det(F: GF, A: Matrix) -> int:
    d = len(A)
    if d == 1:
        return A[0][0]
    if d == 2:
        return F.sub(F.mul(A[0][0], A[1][1]), F.mul(A[0][1], A[1][0]))
    if d == 3:
        total = 0
        for j in range(3):
            minor = tuple(tuple(A[i][k] for k in range(3) if k != j) for i in (1, 2))
            term = F.mul(A[0][j], det(F, minor))
            total = F.add(total, term) if j % 2 == 0 else F.sub(total, term)
        return total
    raise ValueError("only 1x1, 2x2 and 3x3 determinants are supported")


def mat_inv(F: GF, A: Matrix) -> Matrix:
    d = len(A)
    dt = det(F, A)
    if dt == 0:
        raise ZeroDivisionError("singular matrix")
    inv_dt = F.inv(dt)
    if d == 2:
        (a, b), (c, e) = A
        return mat_scale(F, inv_dt, ((e, F.neg(b)), (F.neg(c), a)))
    if d == 3:
        cof = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                minor = tuple(
                    tuple(A[r][k] for k in range(3) if k != j) for r in range(3) if r != i
                )
                m = det(F, minor)
                cof[i][j] = m if (i + j) % 2 == 0 else F.neg(m)
        adj = tuple(tuple(cof[j][i] for j in range(3)) for i in range(3))
        return mat_scale(F, inv_dt, adj)
    raise ValueError("only 2x2 and 3x3 inverses are supported")


def mat_pow(F: GF, A: Matrix, k: int) -> Matrix:
    if k < 0:
        A, k = mat_inv(F, A), -k
    out = mat_identity(len(A))
    for _ in range(k):
        out = mat_mul(F, out, A)
    return out


def apply(F: GF, A: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    add, mul = F._add, F._mul
    out = []
    for row in A:
        s = 0
        for a, x in zip(row, v):
            s = add[s][mul[a][x]]
        out.append(s)
    return tuple(out)


def normalize(F: GF, v: Sequence[int]) -> tuple[int, ...]:
    """Scale ``v`` so that its first nonzero coordinate is 1."""
    for x in v:
        if x:
            c = F.inv(x)
            return tuple(F.mul(c, y) for y in v)
    raise ValueError("zero vector has no projective point")


def projective_points(F: GF, d: int) -> list[tuple[int, ...]]:
    """Normalized representatives of the points of PG(d-1, q), in
    lexicographic order."""
    return sorted(
        v for v in itertools.product(range(F.q), repeat=d) if any(v) and normalize(F, v) == v
    )


def nonzero_vectors(F: GF, d: int) -> list[tuple[int, ...]]:
    return [v for v in itertools.product(range(F.q), repeat=d) if any(v)]


def projectively_equal(F: GF, A: Matrix, B: Matrix) -> bool:
    """True iff ``A = cB`` for some nonzero scalar ``c``."""
    flat_a = [x for row in A for x in row]
    flat_b = [x for row in B for x in row]
    for a, b in zip(flat_a, flat_b):
        if b:
            c = F.mul(a, F.inv(b))
            return c != 0 and all(F.mul(c, y) == x for x, y in zip(flat_a, flat_b))
    return False


def elementary(d: int, i: int, j: int, c: int) -> Matrix:
    rows = [list(r) for r in mat_identity(d)]
    rows[i][j] = c
    return tuple(tuple(r) for r in rows)


def sl_generators(F: GF, d: int) -> list[Matrix]:
    """Elementary transvections ``I + c E_ij`` with ``c`` running over an
    additive basis ``1, w, ..., w^(n-1)`` of GF(q); together they generate
    SL(d, q)."""
    basis = [F.p**k for k in range(F.n)]
    return [
        elementary(d, i, j, c)
        for i in range(d)
        for j in range(d)
        if i != j
        for c in basis
    ]


class LinearAction:
    """Matrices of GF(q)^d acting on a list of points (projective points or
    nonzero vectors)."""

    def __init__(self, F: GF, d: int, projective: bool):
        self.field = F
        self.d = d
        self.projective = projective
        self.points = projective_points(F, d) if projective else nonzero_vectors(F, d)
        self.index = {v: i for i, v in enumerate(self.points)}

    def perm(self, A: Matrix) -> Perm:
        F = self.field
        if det(F, A) == 0:
            raise ZeroDivisionError("singular matrix has no permutation image")
        out = []
        for v in self.points:
            w = apply(F, A, v)
            if self.projective:
                w = normalize(F, w)
            out.append(self.index[w])
        return tuple(out)


def _check_scale(d: int, q: int) -> None:
    if d not in (2, 3):
        raise ValueError("only d = 2 and d = 3 are supported")
    npts = (q**d - 1) // (q - 1)
    if npts > MAX_POINTS:
        raise ValueError(f"PSL({d},{q}) acts on {npts} points, beyond the {MAX_POINTS}-point limit")


def psl_order(d: int, q: int) -> int:
    order = q ** (d * (d - 1) // 2)
    for i in range(2, d + 1):
        order *= q**i - 1
    return order // math.gcd(d, q - 1)


def sl_order(d: int, q: int) -> int:
    return psl_order(d, q) * math.gcd(d, q - 1)


def psl_as_permutation(
    d: int, q: int, enumeration_bound: int = DEFAULT_ENUMERATION_BOUND
) -> tuple[GroupHandle, LinearAction]:
    """PSL(d, q) as a permutation group on the projective points.

    Returns the group and the action, whose ``perm`` method maps any
    invertible matrix (of SL or GL) to its permutation of the points.
    """
    _check_scale(d, q)
    F = GF.of_order(q)
    action = LinearAction(F, d, projective=True)
    gens = [action.perm(A) for A in sl_generators(F, d)]
    G = GroupHandle(gens, enumeration_bound=enumeration_bound, name=f"psl{d}:{q}")
    return G, action


def sl_as_permutation(
    d: int, q: int, enumeration_bound: int = DEFAULT_ENUMERATION_BOUND
) -> tuple[GroupHandle, LinearAction]:
    """SL(d, q) acting faithfully on the nonzero vectors of GF(q)^d."""
    if d not in (2, 3):
        raise ValueError("only d = 2 and d = 3 are supported")
    if q**d - 1 > MAX_POINTS:
        raise ValueError(f"SL({d},{q}) acts on {q**d - 1} vectors, beyond the {MAX_POINTS}-point limit")
    F = GF.of_order(q)
    action = LinearAction(F, d, projective=False)
    gens = [action.perm(A) for A in sl_generators(F, d)]
    G = GroupHandle(gens, enumeration_bound=enumeration_bound, name=f"sl{d}:{q}")
    return G, action
