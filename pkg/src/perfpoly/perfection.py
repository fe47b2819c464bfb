"""Perfection criteria for splitting polynomials at the exponent level.

A SplitSpec assigns each root gamma a pair (N(gamma), n(gamma)) with
N(gamma) | q-1, encoding the exponent N(gamma)*p^(n(gamma)) - 1 of
(x - gamma).  The pair (1, 0) encodes exponent 0, i.e. an absent root,
and such entries are normalized away on construction.

For uniform N >= 2 the polynomial is perfect exactly when, at every gamma,

    N * p^(n(gamma+1)) = p^(n(gamma)) + sum over delta in Lambda(gamma)
                                         of p^(n(delta)),

where Lambda(gamma) is the set of delta != gamma with
(gamma + 1 - delta)^N = 1.  The check runs on exact big integers.

Roots grouped by the additive cosets gamma + F_p give the coset
decomposition A = A_0 ... A_r; a spec is trivially perfect when every
coset factor is perfect on its own.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import ExtElement, FieldSpec, nth_roots_of_unity
from .polynomial import DEFAULT_DEGREE_BOUND, SplitPoly, is_perfect


class SplitSpec:
    """Exponent pattern gamma -> (N, n); immutable, hashable, lex-ordered."""

    __slots__ = ("field", "_pairs")

    def __init__(self, field: FieldSpec, mapping=None):
        self.field = field
        q1 = field.q - 1
        pairs = {}
        for gamma, (N, n) in (mapping or {}).items():
            g = field.coerce(gamma)
            N, n = int(N), int(n)
            if N < 1 or q1 % N != 0:
                raise ValueError(f"N = {N} must divide q-1 = {q1}")
            if n < 0:
                raise ValueError(f"n = {n} must be nonnegative")
            if (N, n) == (1, 0):
                continue  # exponent 0: absent root
            pairs[g] = (N, n)
        self._pairs = tuple(sorted(pairs.items(), key=lambda kv: kv[0].pair))

    @property
    def mapping(self) -> dict[ExtElement, tuple[int, int]]:
        return dict(self._pairs)

    def items(self) -> tuple[tuple[ExtElement, tuple[int, int]], ...]:
        return self._pairs

    def pair_at(self, gamma: ExtElement) -> tuple[int, int]:
        """(N, n) at gamma, with (1, 0) for absent roots."""
        for g, pair in self._pairs:
            if g == gamma:
                return pair
        return (1, 0)

    def exponent(self, gamma: ExtElement) -> int:
        N, n = self.pair_at(gamma)
        return N * self.field.p ** n - 1

    @property
    def omega(self) -> int:
        """Number of distinct roots actually present."""
        return len(self._pairs)

    def is_total(self) -> bool:
        """Every element of the field occurs as a root."""
        return len(self._pairs) == self.field.q

    def uniform_N(self) -> int | None:
        """The common N(gamma) over all of F_q (absent roots count as N = 1)."""
        ns = {self.pair_at(g)[0] for g in self.field.elements()}
        return ns.pop() if len(ns) == 1 else None

    def uniform_pair(self) -> tuple[int, int] | None:
        """The common (N, n) over all of F_q, or None if it varies."""
        pairs = {self.pair_at(g) for g in self.field.elements()}
        return pairs.pop() if len(pairs) == 1 else None

    def to_split_poly(self) -> SplitPoly:
        p = self.field.p
        return SplitPoly(self.field, {g: N * p**n - 1 for g, (N, n) in self._pairs})

    def shift(self, a: ExtElement) -> "SplitSpec":
        """Spec of A(x - a): every root gamma moves to gamma + a."""
        a = self.field.coerce(a)
        return SplitSpec(self.field, {g + a: pair for g, pair in self._pairs})

    def restrict(self, roots) -> "SplitSpec":
        keep = set(roots)
        return SplitSpec(self.field, {g: pair for g, pair in self._pairs if g in keep})

    def sort_key(self) -> tuple:
        return tuple((g.i, g.j, N, n) for g, (N, n) in self._pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SplitSpec):
            return NotImplemented
        return self.field == other.field and self._pairs == other._pairs

    def __hash__(self):
        return hash((self.field, self.sort_key()))

    def __lt__(self, other: "SplitSpec") -> bool:
        return self.sort_key() < other.sort_key()

    def to_obj(self) -> list[dict]:
        return [{"gamma": list(g.pair), "N": N, "n": n} for g, (N, n) in self._pairs]

    @classmethod
    def from_obj(cls, field: FieldSpec, obj) -> "SplitSpec":
        mapping = {}
        for entry in obj:
            i, j = entry["gamma"]
            g = field.element(int(i), int(j))
            if g in mapping:
                raise ValueError(f"duplicate root {g}")
            mapping[g] = (int(entry["N"]), int(entry["n"]))
        return cls(field, mapping)

    def __repr__(self) -> str:
        inner = ", ".join(f"{g}:(N={N},n={n})" for g, (N, n) in self._pairs)
        return f"SplitSpec(p={self.field.p}, {{{inner}}})"


def lambda_set(gamma: ExtElement, N: int) -> frozenset[ExtElement]:
    """{delta != gamma : (gamma + 1 - delta)^N = 1}; has exactly N-1 elements.

    Computed as {gamma + 1 - zeta : zeta an N-th root of unity, zeta != 1}.
    """
    field = gamma.field
    one = field.one()
    roots = nth_roots_of_unity(field, N)
    return frozenset(gamma + 1 - zeta for zeta in roots if zeta != one)


def check_exponent_criterion(spec: SplitSpec) -> bool:
    """Exponent-level perfection test for uniform N >= 2.

    Evaluates N * p^(n(gamma+1)) = p^(n(gamma)) + sum_{delta in
    Lambda(gamma)} p^(n(delta)) at every gamma, in exact integers.
    Rejects non-uniform specs and N = 1 (the equivalence needs N >= 2).
    """
    N = spec.uniform_N()
    if N is None:
        raise ValueError("exponent criterion needs a uniform N over all of F_q")
    if N < 2:
        raise ValueError("exponent criterion needs N >= 2")
    field = spec.field
    p = field.p
    pw = {g: p ** spec.pair_at(g)[1] for g in field.elements()}
    lam = {g: lambda_set(g, N) for g in field.elements()}
    for g in field.elements():
        if N * pw[g + 1] != pw[g] + sum(pw[d] for d in lam[g]):
            return False
    return True


def criterion_agrees_with_sigma(spec: SplitSpec, bound: int = DEFAULT_DEGREE_BOUND) -> bool:
    """Whether the exponent criterion and the sigma-level check concur."""
    return check_exponent_criterion(spec) == is_perfect(spec.to_split_poly(), bound)


@dataclass(frozen=True)
class CosetFactor:
    """Roots of one coset rep + F_p with their (N, n) pairs along j = 0..p-1.

    Absent roots carry (1, 0).  A partial coset (some but not all of the p
    roots present) is a classification outcome: no perfect polynomial has
    one, so the search can discard such candidates wholesale.
    """

    rep: ExtElement
    pairs: tuple[tuple[int, int], ...]
    present: int

    @property
    def is_partial(self) -> bool:
        return 0 < self.present < len(self.pairs)

    @property
    def is_full(self) -> bool:
        return self.present == len(self.pairs)

    def spec(self) -> SplitSpec:
        """The coset factor as a standalone SplitSpec."""
        field = self.rep.field
        return SplitSpec(
            field, {self.rep + j: pair for j, pair in enumerate(self.pairs)}
        )


def coset_decompose(spec: SplitSpec) -> list[CosetFactor]:
    """Group the present roots by additive cosets of F_p, reps in lex order.

    Only cosets containing at least one root are reported; a complete spec
    over F_q yields p factors.
    """
    field = spec.field
    p = field.p
    by_coset: dict[int, dict[int, tuple[int, int]]] = {}
    for g, pair in spec.items():
        by_coset.setdefault(g.i, {})[g.j] = pair
    factors = []
    for i in sorted(by_coset):
        row = by_coset[i]
        pairs = tuple(row.get(j, (1, 0)) for j in range(p))
        factors.append(
            CosetFactor(rep=field.element(i, 0), pairs=pairs, present=len(row))
        )
    return factors


def is_trivially_perfect(spec: SplitSpec, bound: int = DEFAULT_DEGREE_BOUND) -> bool:
    """True iff every coset factor is perfect as a standalone polynomial.

    The empty spec (A = 1) is trivially perfect.
    """
    return all(
        is_perfect(factor.spec().to_split_poly(), bound)
        for factor in coset_decompose(spec)
    )
