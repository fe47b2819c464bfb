"""Exhaustive search for perfect exponent patterns and their classification.

Candidates assign each gamma in F_q a pair (N, n) with N | q-1 and
0 <= n <= n_max; the stream is ordered lexicographically over the roots
(roots in field order, pairs in (N, n) order), so runs are reproducible
and parallel work can be split by fixing the assignments of the first few
roots.  Every surviving candidate is verified by the sigma-level check
(expand and compare), never by the exponent shortcut, because the known
families include non-uniform N.

Pruning: no perfect splitting polynomial touches a coset gamma + F_p
without containing all p of its roots, so candidates with a partial coset
can be dropped before any polynomial work.  The prune can be switched off
to validate it against the unpruned filter.

Classification buckets, in precedence order: "uniform-power" (all of F_q
with one (N, n)), "trivially-perfect", "family-shift" (a translate of a
registered family; over F_9 these are the two known families), "other".
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .field import ExtElement, FieldSpec, divisors, make_field
from .perfection import SplitSpec, is_trivially_perfect
from .polynomial import (
    DEFAULT_DEGREE_BOUND,
    DegreeBoundError,
    DensePoly,
    sigma_prime_power,
)

DEFAULT_ENUM_BUDGET = 1_000_000


def _value_list(field: FieldSpec, n_max: int, uniform_N: int | None) -> list[tuple[int, int]]:
    """Legal (N, n) pairs in deterministic order."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if uniform_N is not None:
        if uniform_N < 1 or (field.q - 1) % uniform_N != 0:
            raise ValueError(f"uniform N = {uniform_N} must divide q-1 = {field.q - 1}")
        return [(uniform_N, n) for n in range(n_max + 1)]
    return sorted(
        (N, n) for N in divisors(field.q - 1) for n in range(n_max + 1)
    )


def _check_budget(n_values: int, q: int, budget: int) -> int:
    count = n_values**q
    if count > budget:
        raise ValueError(f"{count} candidates exceed the enumeration budget {budget}")
    return count


def enumerate_specs(
    field: FieldSpec,
    n_max: int,
    uniform_N: int | None = None,
    budget: int = DEFAULT_ENUM_BUDGET,
):
    """Stream every candidate SplitSpec in lexicographic encoding order."""
    values = _value_list(field, n_max, uniform_N)
    _check_budget(len(values), field.q, budget)
    elems = field.elements()
    for combo in itertools.product(values, repeat=field.q):
        yield SplitSpec(field, dict(zip(elems, combo)))


class _Evaluator:
    """sigma-level perfection check with per-coset product caches.

    Candidates within one search share almost all of their factor
    polynomials, so A and sigma(A) are assembled from cached per-coset
    products; the verdict is exactly expand(A) == sigma(A).
    """

    def __init__(self, field: FieldSpec, bound: int = DEFAULT_DEGREE_BOUND):
        self.field = field
        self.bound = bound
        self.elems = field.elements()
        self.one = DensePoly.one(field)
        self._coset: dict[tuple[int, tuple[int, ...]], tuple[DensePoly, DensePoly]] = {}

    def _coset_polys(self, i: int, exps: tuple[int, ...]) -> tuple[DensePoly, DensePoly]:
        key = (i, exps)
        cached = self._coset.get(key)
        if cached is None:
            p = self.field.p
            a_poly = self.one
            s_poly = self.one
            for j, e in enumerate(exps):
                if e:
                    gamma = self.elems[i * p + j]
                    a_poly = a_poly * DensePoly.x_minus(gamma) ** e
                    s_poly = s_poly * sigma_prime_power(gamma, e)
            cached = (a_poly, s_poly)
            self._coset[key] = cached
        return cached

    def is_perfect_exponents(self, exps: tuple[int, ...]) -> bool:
        """Perfection of prod (x - gamma_k)^(exps[k]), roots in field order."""
        if sum(exps) > self.bound:
            raise DegreeBoundError(f"degree {sum(exps)} exceeds bound {self.bound}")
        p = self.field.p
        a_poly = self.one
        s_poly = self.one
        for i in range(p):
            coset = exps[i * p : (i + 1) * p]
            if any(coset):
                ca, cs = self._coset_polys(i, coset)
                a_poly = a_poly * ca
                s_poly = s_poly * cs
        return a_poly == s_poly


def _coset_partial(exps: tuple[int, ...], p: int) -> bool:
    for i in range(p):
        present = sum(1 for e in exps[i * p : (i + 1) * p] if e)
        if 0 < present < p:
            return True
    return False


def _run_range(field, values, prefix, prune, bound):
    """Evaluate all candidates extending *prefix*; return surviving combos."""
    p = field.p
    q = field.q
    exps_of = {(N, n): N * p**n - 1 for (N, n) in values}
    evaluator = _Evaluator(field, bound)
    found = []
    for tail in itertools.product(values, repeat=q - len(prefix)):
        combo = prefix + tail
        exps = tuple(exps_of[pair] for pair in combo)
        if prune and _coset_partial(exps, p):
            continue
        if evaluator.is_perfect_exponents(exps):
            found.append(combo)
    return found


def _search_chunk(args):
    p, c1, c0, n_max, uniform_N, prune, bound, prefix = args
    field = FieldSpec(p, c1, c0)
    values = _value_list(field, n_max, uniform_N)
    return _run_range(field, values, prefix, prune, bound)


def search_perfect(
    field: FieldSpec,
    n_max: int,
    uniform_N: int | None = None,
    parallelism: int = 1,
    prune: bool = True,
    budget: int = DEFAULT_ENUM_BUDGET,
    bound: int = DEFAULT_DEGREE_BOUND,
) -> list[SplitSpec]:
    """All perfect candidates, lexicographically sorted.

    The result is identical for every parallelism level; workers own
    disjoint prefix ranges of the candidate stream and the merge is a
    deterministic ordered union.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be positive")
    values = _value_list(field, n_max, uniform_N)
    _check_budget(len(values), field.q, budget)
    q = field.q

    if parallelism == 1:
        combos = _run_range(field, values, (), prune, bound)
    else:
        k = 0
        while len(values) ** k < 4 * parallelism and k < q:
            k += 1
        prefixes = list(itertools.product(values, repeat=k))
        payloads = [
            (field.p, field.c1, field.c0, n_max, uniform_N, prune, bound, prefix)
            for prefix in prefixes
        ]
        combos = []
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            for chunk in pool.map(_search_chunk, payloads):
                combos.extend(chunk)

    elems = field.elements()
    specs = [SplitSpec(field, dict(zip(elems, combo))) for combo in combos]
    return sorted(specs, key=SplitSpec.sort_key)


def shift_spec(spec: SplitSpec, a: ExtElement) -> SplitSpec:
    """Spec of A(x - a): every root moves by +a, pairs unchanged."""
    return spec.shift(a)


def registered_families(field: FieldSpec) -> dict[str, SplitSpec]:
    """Known non-trivial perfect families (the two F_9 patterns)."""
    if (field.p, field.c1, field.c0) != (3, 0, 2):
        return {}
    a1 = {field.element(i, j): (4 if j == 0 else 2, 0) for i in range(3) for j in range(3)}
    a2 = {field.element(i, j): (2 if j == 1 else 4, 0) for i in range(3) for j in range(3)}
    return {"A1": SplitSpec(field, a1), "A2": SplitSpec(field, a2)}


@dataclass(frozen=True)
class Classification:
    kind: str  # uniform-power | trivially-perfect | family-shift | other | not-perfect
    family: str | None = None
    shift: ExtElement | None = None

    def to_obj(self) -> dict:
        return {
            "kind": self.kind,
            "family": self.family,
            "shift": list(self.shift.pair) if self.shift is not None else None,
        }


def classify_spec(
    spec: SplitSpec,
    families: dict[str, SplitSpec] | None = None,
    bound: int = DEFAULT_DEGREE_BOUND,
) -> Classification:
    """Bucket a perfect spec; precedence uniform-power > trivially-perfect
    > family-shift > other."""
    if families is None:
        families = registered_families(spec.field)
    if spec.is_total() and spec.uniform_pair() is not None:
        return Classification("uniform-power")
    if is_trivially_perfect(spec, bound):
        return Classification("trivially-perfect")
    for name in sorted(families):
        base = families[name]
        for a in spec.field.elements():
            if base.shift(a) == spec:
                return Classification("family-shift", family=name, shift=a)
    return Classification("other")


BUCKETS = ("uniform-power", "trivially-perfect", "family-shift", "other")


def classify(
    results: list[SplitSpec],
    field: FieldSpec,
    families: dict[str, SplitSpec] | None = None,
    bound: int = DEFAULT_DEGREE_BOUND,
) -> tuple[dict[str, int], list[tuple[SplitSpec, Classification]]]:
    """Classify search results; returns (bucket counts, per-spec labels)."""
    if families is None:
        families = registered_families(field)
    labelled = [(s, classify_spec(s, families, bound)) for s in results]
    counts = {bucket: 0 for bucket in BUCKETS}
    for _, cls in labelled:
        counts[cls.kind] += 1
    return counts, labelled


def search_report(
    field: FieldSpec,
    n_max: int,
    uniform_N: int | None,
    prune: bool,
    budget: int,
    results: list[SplitSpec],
    counts: dict[str, int],
    labelled: list[tuple[SplitSpec, Classification]],
) -> dict:
    """JSON-ready search report; deliberately free of timing and worker info."""
    values = _value_list(field, n_max, uniform_N)
    return {
        "params": {
            "field": field.to_obj(),
            "n_max": n_max,
            "uniform_N": uniform_N,
            "prune": prune,
            "budget": budget,
        },
        "candidates": len(values) ** field.q,
        "perfect": len(results),
        "counts": counts,
        "specs": [
            {"spec": spec.to_obj(), **cls.to_obj()} for spec, cls in labelled
        ],
    }
