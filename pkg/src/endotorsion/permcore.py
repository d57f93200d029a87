"""Permutations as tuples of images, and permutation groups with a
stabilizer chain.

A permutation of degree ``n`` is a plain tuple ``p`` with ``p[i]`` the image
of point ``i``.  Composition acts on the left: ``compose(p, q)[i] == p[q[i]]``,
so conjugation ``g h g^-1`` and the subgroup ``gSg^-1`` follow the usual
left-action reading.  Points are 0-indexed internally; cycle notation read
from or written to text is 1-indexed.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Perm = tuple[int, ...]

DEFAULT_ENUMERATION_BOUND = 10**6


class GroupTooLargeError(ValueError):
    """Raised when an operation needs the full element list of a group whose
    order exceeds the enumeration bound."""

    def __init__(self, order: int, bound: int, what: str = "group"):
        super().__init__(
            f"{what} of order {order} is too large to enumerate (bound {bound})"
        )
        self.order = order
        self.bound = bound


class DegreeMismatchError(ValueError):
    pass


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def check_perm(p: Sequence[int]) -> Perm:
    """Return ``p`` as a tuple, raising ``ValueError`` unless it is a bijection
    on ``{0, ..., len(p)-1}``."""
    p = tuple(p)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {p!r}")
    return p


def compose(p: Perm, q: Perm) -> Perm:
    """Return ``p∘q``, the permutation ``i -> p[q[i]]``."""
    if len(p) != len(q):
        raise DegreeMismatchError(f"degree mismatch: {len(p)} != {len(q)}")
    return tuple(map(p.__getitem__, q))


def _mul(p: Perm, q: Perm) -> Perm:
    # compose() without the degree check, for inner loops
    return tuple(map(p.__getitem__, q))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conjugate(g: Perm, h: Perm) -> Perm:
    """Return ``g h g^-1``."""
    out = [0] * len(h)
    for i, x in enumerate(h):
        out[g[i]] = g[x]
    return tuple(out)


def commutator(x: Perm, y: Perm) -> Perm:
    """Return ``[x, y] = x^-1 y^-1 x y``."""
    return _mul(_mul(inverse(x), inverse(y)), _mul(x, y))


def power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = inverse(p), -k
    result = identity(len(p))
    base = p
    while k:
        if k & 1:
            result = _mul(result, base)
        base = _mul(base, base)
        k >>= 1
    return result


def perm_order(p: Perm) -> int:
    """Order of ``p`` as the lcm of its cycle lengths."""
    seen = [False] * len(p)
    order = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = order * length // _gcd(order, length)
    return order


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Disjoint cycles of length > 1, each starting at its smallest point."""
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def format_cycles(p: Perm) -> str:
    """1-indexed disjoint-cycle notation, e.g. ``(1,2,3)(4,5)``; ``()`` for
    the identity."""
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cs)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse 1-indexed cycle notation such as ``(1,2,3)(4,5)``.

    Points may be separated by commas or whitespace.  Without ``degree`` the
    degree is the largest point mentioned.
    """
    stripped = text.strip()
    leftover = _CYCLE_RE.sub("", stripped).strip()
    if leftover:
        raise ValueError(f"could not parse permutation {text!r}")
    parsed = []
    for body in _CYCLE_RE.findall(stripped):
        body = body.strip()
        if not body:
            continue
        pts = [int(tok) - 1 for tok in re.split(r"[,\s]+", body) if tok]
        if any(x < 0 for x in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle ({body}) in {text!r}")
        parsed.append(pts)
    n = max((x + 1 for c in parsed for x in c), default=0)
    if degree is not None:
        if n > degree:
            raise ValueError(f"point {n} exceeds degree {degree} in {text!r}")
        n = degree
    images = list(range(n))
    # cycles are disjoint in canonical input; composing keeps non-disjoint
    # input meaningful (rightmost cycle acts first)
    result = tuple(images)
    for c in reversed(parsed):
        cyc = list(range(n))
        for a, b in zip(c, c[1:] + c[:1]):
            cyc[a] = b
        result = _mul(tuple(cyc), result)
    return result


def parse_generator_file(text: str) -> list[Perm]:
    """Read a generator file: one permutation per line in cycle notation,
    optionally preceded by a ``degree N`` line.  Blank lines and ``#``
    comments are ignored."""
    degree = None
    raw = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"degree\s+(\d+)", line, flags=re.IGNORECASE)
        if m:
            if degree is not None or raw:
                raise ValueError("'degree' line must come first")
            degree = int(m.group(1))
            continue
        raw.append(line)
    if not raw:
        raise ValueError("generator file lists no permutations")
    if degree is None:
        degree = max(len(parse_cycles(line)) for line in raw)
        degree = max(degree, 1)
    return [parse_cycles(line, degree) for line in raw]


@dataclass
class _Level:
    base_point: int
    gens: list[Perm]
    # point -> coset representative u with u[base_point] == point
    transversal: dict[int, Perm] = field(default_factory=dict)


class GroupHandle:
    """A permutation group given by generators.

    Construction runs a deterministic Schreier-Sims algorithm; ``order`` and
    ``contains`` come from the resulting stabilizer chain.  The full element
    list is available through ``elements`` when the order does not exceed
    ``enumeration_bound``.
    """

    def __init__(
        self,
        generators: Iterable[Sequence[int]],
        enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
        name: str | None = None,
    ):
        gens = [check_perm(g) for g in generators]
        if not gens:
            raise ValueError("a group needs at least one generator")
        degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatchError("generators have different degrees")
        if enumeration_bound <= 0:
            raise ValueError("enumeration bound must be positive")
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self.enumeration_bound = enumeration_bound
        self.name = name
        self.identity = identity(degree)
        self._levels = _schreier_sims(degree, [g for g in gens if not is_identity(g)])
        order = 1
        for level in self._levels:
            order *= len(level.transversal)
        self.order = order

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}"
        return f"<GroupHandle {label}, order {self.order}>"

    @property
    def base(self) -> list[int]:
        return [lv.base_point for lv in self._levels]

    @property
    def orbit_lengths(self) -> list[int]:
        return [len(lv.transversal) for lv in self._levels]

    def sift(self, p: Perm) -> tuple[Perm, int]:
        """Strip ``p`` through the chain; returns the residue and the depth
        reached."""
        return _sift(self._levels, p)

    def contains(self, p: Sequence[int]) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            raise DegreeMismatchError(f"degree mismatch: {len(p)} != {self.degree}")
        residue, depth = _sift(self._levels, p)
        return depth == len(self._levels) and is_identity(residue)

    __contains__ = contains

    @property
    def enumerable(self) -> bool:
        return self.order <= self.enumeration_bound

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        """All elements, sorted lexicographically by image tuple."""
        if not self.enumerable:
            raise GroupTooLargeError(self.order, self.enumeration_bound)
        elems = [self.identity]
        # every element is u_1 u_2 ... u_k with u_i from the i-th transversal
        for level in reversed(self._levels):
            reps = list(level.transversal.values())
            elems = [_mul(u, e) for u in reps for e in elems]
        elems.sort()
        return tuple(elems)

    @cached_property
    def element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements)

    def random_element(self, rng) -> Perm:
        """Uniform random element built from random transversal choices."""
        result = self.identity
        for level in reversed(self._levels):
            reps = list(level.transversal.values())
            result = _mul(reps[rng.randrange(len(reps))], result)
        return result


def _sift(levels: list[_Level], p: Perm) -> tuple[Perm, int]:
    for depth, level in enumerate(levels):
        u = level.transversal.get(p[level.base_point])
        if u is None:
            return p, depth
        p = _mul(inverse(u), p)
    return p, len(levels)


def _orbit_transversal(base_point: int, gens: list[Perm], degree: int) -> dict[int, Perm]:
    trans = {base_point: identity(degree)}
    queue = [base_point]
    for pt in queue:
        u = trans[pt]
        for g in gens:
            img = g[pt]
            if img not in trans:
                trans[img] = _mul(g, u)
                queue.append(img)
    return trans


def _schreier_sims(degree: int, gens: list[Perm]) -> list[_Level]:
    """Deterministic incremental Schreier-Sims.

    Levels are extended by sifting every Schreier generator; a generator that
    fails to sift is added to the level where sifting stopped (and all deeper
    levels are rebuilt from it).  Base points are chosen as the first point
    moved by some generator.
    """
    levels: list[_Level] = []
    if not gens:
        return levels

    def moved_point(ps: list[Perm]) -> int:
        for i in range(degree):
            if any(p[i] != i for p in ps):
                return i
        raise AssertionError("identity generators only")

    def new_level(ps: list[Perm]) -> _Level:
        bp = moved_point(ps)
        return _Level(bp, list(ps), _orbit_transversal(bp, ps, degree))

    levels.append(new_level(gens))
    # a level is checked only once every deeper level is complete; a change
    # at level j re-checks levels j, j-1, ..., i in that order
    stack = [0]
    while stack:
        i = stack.pop()
        level = levels[i]
        changed = False
        for pt, u in list(level.transversal.items()):
            for s in level.gens:
                # Schreier generator  u_{s(pt)}^-1 * s * u_pt
                v = level.transversal[s[pt]]
                h = _mul(inverse(v), _mul(s, u))
                if is_identity(h):
                    continue
                residue, depth = _sift(levels[i + 1:], h)
                if depth == len(levels) - i - 1 and is_identity(residue):
                    continue
                # residue fixes base points of levels i..i+depth
                j = i + 1 + depth
                if j == len(levels):
                    levels.append(new_level([residue]))
                else:
                    lv = levels[j]
                    lv.gens.append(residue)
                    lv.transversal = _orbit_transversal(lv.base_point, lv.gens, degree)
                for k in range(i + 1, j):
                    lv = levels[k]
                    lv.gens.append(residue)
                    lv.transversal = _orbit_transversal(lv.base_point, lv.gens, degree)
                stack.append(i)
                stack.extend(range(i + 1, j + 1))
                changed = True
                break
            if changed:
                break
    return levels


def group_from_generators(
    gens: Sequence[Sequence[int]],
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
    name: str | None = None,
) -> GroupHandle:
    if not gens:
        raise ValueError("empty generator list")
    return GroupHandle(gens, enumeration_bound=enumeration_bound, name=name)


def enumerate_group(G: GroupHandle) -> tuple[Perm, ...]:
    return G.elements


def closure(gens: Iterable[Perm], degree: int, start: Iterable[Perm] = ()) -> set[Perm]:
    """Element set of the group generated by ``gens`` and ``start``.

    ``start`` must already be a group (closed) when given; it is used as the
    seed of the breadth-first search so that adding a generator to a known
    subgroup does not redo the old part.
    """
    gens = [g for g in gens if not is_identity(g)]
    result = set(start) or {identity(degree)}
    frontier = list(result)
    for e in frontier:
        for g in gens:
            y = _mul(e, g)
            if y not in result:
                result.add(y)
                frontier.append(y)
    return result


def symmetric_group(n: int, **kw) -> GroupHandle:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return GroupHandle([identity(1)], name="sym:1", **kw)
    swap = (1, 0) + tuple(range(2, n))
    cyc = tuple(range(1, n)) + (0,)
    return GroupHandle([swap, cyc], name=f"sym:{n}", **kw)


def alternating_group(n: int, **kw) -> GroupHandle:
    if n < 1:
        raise ValueError("n must be positive")
    if n < 3:
        return GroupHandle([identity(n)], name=f"alt:{n}", **kw)
    gens = []
    for k in range(2, n):
        # 3-cycles (0 1 k) generate A_n
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return GroupHandle(gens, name=f"alt:{n}", **kw)


def lexicographic_perms(n: int):
    """All permutations of degree ``n`` in lexicographic order (small n)."""
    return itertools.permutations(range(n))
