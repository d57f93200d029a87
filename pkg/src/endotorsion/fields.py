"""Finite fields GF(p^n) with table-driven arithmetic.

Field elements are plain ints in ``range(q)``: the base-``p`` digits of an
element are its polynomial coefficients (least significant digit = constant
term) modulo a fixed monic irreducible polynomial.  With ``q`` small, full
addition and multiplication tables are cheap and keep matrix loops fast.
"""

from __future__ import annotations

import itertools

from .subgroups import is_prime


def _poly_mulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    """Multiply coefficient lists (constant term first) modulo a monic
    ``modulus``."""
    n = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for j in range(n + 1):
                prod[k - n + j] = (prod[k - n + j] - c * modulus[j]) % p
    return (prod + [0] * n)[:n]


def _is_irreducible(poly: list[int], p: int) -> bool:
    """True iff the monic ``poly`` (constant term first) is irreducible over
    GF(p), by trial division with every monic polynomial of degree <= n/2."""
    n = len(poly) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if _poly_rem(poly, divisor, p) == [0] * d:
                return False
    return True


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv_lead % p
        if c:
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return (a + [0] * db)[:db]


def smallest_irreducible(p: int, n: int) -> list[int]:
    """The lexicographically smallest monic irreducible polynomial of degree
    ``n`` over GF(p), as coefficients with the constant term first.

    Candidates are ordered by their coefficient sequence read from degree
    ``n-1`` down to the constant term.
    """
    if n == 1:
        return [0, 1]
    for high_first in itertools.product(range(p), repeat=n):
        poly = list(reversed(high_first)) + [1]
        if poly[0] == 0:
            continue
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """The field with ``q = p**n`` elements."""

    def __init__(self, p: int, n: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be at least 1")
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = smallest_irreducible(p, n)
        q = self.q
        self._add = [[self._from_coeffs([(x + y) % p for x, y in zip(self.coeffs(a), self.coeffs(b))])
                      for b in range(q)] for a in range(q)]
        self._mul = [[self._from_coeffs(_poly_mulmod(self.coeffs(a), self.coeffs(b), self.modulus, p))
                      for b in range(q)] for a in range(q)]
        self._neg = [self._from_coeffs([(-x) % p for x in self.coeffs(a)]) for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def __repr__(self) -> str:
        return f"GF({self.q})"

    @classmethod
    def of_order(cls, q: int) -> "GF":
        for p in range(2, q + 1):
            if q % p == 0:
                n = 0
                m = q
                while m % p == 0:
                    m //= p
                    n += 1
                if m != 1:
                    raise ValueError(f"{q} is not a prime power")
                return cls(p, n)
        raise ValueError(f"{q} is not a prime power")

    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_coeffs(self, cs: list[int]) -> int:
        a = 0
        for c in reversed(cs):
            a = a * self.p + c
        return a

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        for _ in range(k):
            result = self._mul[result][a]
        return result

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` under ``Z -> GF(q)``."""
        return k % self.p

    def cube_roots_of_unity(self) -> list[int]:
        """Nontrivial cube roots of unity, in increasing order."""
        return [a for a in range(2, self.q) if self.pow(a, 3) == 1]

    def zeta(self) -> int:
        """The smallest cube root of unity other than 1."""
        roots = self.cube_roots_of_unity()
        if not roots:
            raise ValueError(f"GF({self.q}) has no primitive cube root of unity")
        return roots[0]

    def is_cube(self, a: int) -> bool:
        return any(self.pow(b, 3) == a for b in range(1, self.q))

    def cube_root(self, a: int) -> int:
        for b in range(1, self.q):
            if self.pow(b, 3) == a:
                return b
        raise ValueError(f"{a} is not a cube in GF({self.q})")

    def format(self, a: int) -> str:
        """Polynomial notation in the adjoined root ``w``, e.g. ``w+1``."""
        if self.n == 1:
            return str(a)
        terms = []
        for k, c in reversed(list(enumerate(self.coeffs(a)))):
            if not c:
                continue
            mono = "" if k == 0 else ("w" if k == 1 else f"w^{k}")
            coef = "" if (c == 1 and k) else str(c)
            terms.append(coef + mono)
        return "+".join(terms) or "0"

    def format_modulus(self) -> str:
        terms = []
        for k, c in reversed(list(enumerate(self.modulus))):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(("" if c == 1 else str(c)) + ("x" if k == 1 else f"x^{k}"))
        return " + ".join(terms)


def build_field(p: int, n: int = 1) -> GF:
    return GF(p, n)
