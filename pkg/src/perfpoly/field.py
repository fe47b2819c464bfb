"""Exact arithmetic in F_p and its quadratic extension F_{p^2} = F_p[alpha].

An extension element i*alpha + j is identified with the pair (i, j) of
integers in {0, ..., p-1}.  The defining relation is alpha^2 = c1*alpha + c0
over F_p; :func:`make_field` picks the canonical irreducible choice
(alpha^2 = alpha + 1 for p = 2, alpha^2 = smallest quadratic non-residue
for odd p), which keeps every derived matrix and JSON artifact reproducible.

Ordering: 0 <= 1 <= ... <= p-1 on F_p, and (i, j) <= (k, l) iff i < k or
(i == k and j <= l) on F_{p^2}.  ExtElement implements this through the
usual comparison operators, so ``sorted(field.elements())`` enumerates the
field in that order.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

P_CAP = 1 << 15  # keeps p*p inside machine words in every intermediate product


def is_prime(n: int) -> bool:
    """Trial-division primality test; adequate for the desk-scale moduli used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """F_{p^2} presented as F_p[alpha] with alpha^2 = c1*alpha + c0."""

    p: int
    c1: int
    c0: int

    @property
    def q(self) -> int:
        return self.p * self.p

    def element(self, i: int, j: int) -> "ExtElement":
        return ExtElement(self, i % self.p, j % self.p)

    def zero(self) -> "ExtElement":
        return ExtElement(self, 0, 0)

    def one(self) -> "ExtElement":
        return ExtElement(self, 0, 1)

    def alpha(self) -> "ExtElement":
        return ExtElement(self, 1, 0)

    def elements(self) -> list["ExtElement"]:
        """All q field elements in lexicographic order."""
        return [ExtElement(self, i, j) for i in range(self.p) for j in range(self.p)]

    def units(self) -> list["ExtElement"]:
        """All q-1 nonzero elements in lexicographic order."""
        return [x for x in self.elements() if x]

    def coerce(self, value) -> "ExtElement":
        """Accept an ExtElement of this field or an integer viewed in F_p."""
        if isinstance(value, ExtElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return ExtElement(self, 0, value % self.p)
        raise TypeError(f"cannot interpret {value!r} as a field element")

    def to_obj(self) -> dict:
        return {"p": self.p, "c1": self.c1, "c0": self.c0}


def make_field(p: int) -> FieldSpec:
    """Canonical F_{p^2}: alpha^2 = alpha + 1 for p = 2, else alpha^2 = smallest non-residue.

    Raises ValueError for non-prime p or p beyond the supported cap.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime, got {p!r}")
    if p > P_CAP:
        raise ValueError(f"p = {p} exceeds the supported cap {P_CAP}")
    if p == 2:
        return FieldSpec(2, 1, 1)
    residues = {x * x % p for x in range(1, p)}
    s = next(s for s in range(2, p) if s not in residues)
    return FieldSpec(p, 0, s)


@functools.total_ordering
class ExtElement:
    """The element i*alpha + j of F_{p^2}, an immutable value.

    Arithmetic mixes freely with Python ints, which are read modulo p as
    constants (0, 1, ..., p-1 double as elements of F_p).
    """

    __slots__ = ("field", "i", "j")

    def __init__(self, field: FieldSpec, i: int, j: int):
        self.field = field
        self.i = i % field.p
        self.j = j % field.p

    @property
    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            if other.field != self.field:
                raise ValueError("elements belong to different fields")
            return other
        if isinstance(other, int):
            return ExtElement(self.field, 0, other)
        return None

    def __bool__(self) -> bool:
        return self.i != 0 or self.j != 0

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.i == o.i and self.j == o.j

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.i, self.j) < (o.i, o.j)

    def __hash__(self) -> int:
        return hash((self.field, self.i, self.j))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElement(self.field, self.i + o.i, self.j + o.j)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.field, -self.i, -self.j)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElement(self.field, self.i - o.i, self.j - o.j)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        ii = self.i * o.i
        i = self.i * o.j + self.j * o.i + f.c1 * ii
        j = self.j * o.j + f.c0 * ii
        return ExtElement(f, i, j)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ExtElement(self.field, 0, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "ExtElement":
        """Multiplicative inverse; raises ZeroDivisionError for 0."""
        if not self:
            raise ZeroDivisionError("inverse of zero in F_{p^2}")
        return self ** (self.field.q - 2)

    def __str__(self) -> str:
        if self.i == 0:
            return str(self.j)
        a = "α" if self.i == 1 else f"{self.i}α"
        return a if self.j == 0 else f"{a}+{self.j}"

    def __repr__(self) -> str:
        return f"ExtElement({self.i}, {self.j}; p={self.field.p})"


def nth_roots_of_unity(field: FieldSpec, n: int) -> list[ExtElement]:
    """All n-th roots of unity in F_{p^2}, lexicographically sorted (1 first).

    Only n dividing q-1 is meaningful here; anything else is rejected.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if (field.q - 1) % n != 0:
        raise ValueError(f"n = {n} does not divide q-1 = {field.q - 1}")
    one = field.one()
    roots = [x for x in field.elements() if x and x ** n == one]
    assert len(roots) == n, "mu_n must have exactly n elements when n | q-1"
    return roots


def divisors(n: int) -> list[int]:
    """Positive divisors of n in increasing order."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]
