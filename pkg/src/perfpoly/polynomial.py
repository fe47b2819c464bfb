"""Dense and factored polynomials over F_{p^2}, and the divisor-sum sigma.

A DensePoly stores coefficients lowest degree first as two parallel numpy
integer vectors (the alpha and constant coordinates of each coefficient);
products are exact integer convolutions reduced mod p.  A SplitPoly is the
factored form prod (x - gamma)^(e_gamma) with arbitrary-precision exponents,
which is what the perfection machinery actually manipulates.

sigma is the sum of all monic divisors.  It is computed three ways, kept
deliberately independent of each other so they can cross-check:

- :func:`sigma_prime_power` evaluates the geometric sum 1 + y + ... + y^h
  for y = x - gamma (via the identity (y^(h+1) - 1) / (y - 1)),
- :func:`sigma_split` multiplies those prime-power sigmas together
  (sigma is multiplicative),
- :func:`sigma_closed_form` produces the factored shape
  (x-gamma-1)^(p^n - 1) * prod_j (x-gamma-zeta_j)^(p^n) valid for
  exponents of the form N*p^n - 1 with N | q-1,
- :func:`sigma_bruteforce` literally enumerates every monic divisor and
  adds them up; it is the test oracle and never takes shortcuts.
"""

from __future__ import annotations

import numpy as np

from .field import ExtElement, FieldSpec, nth_roots_of_unity

DEFAULT_DEGREE_BOUND = 10_000

BRUTEFORCE_DEGREE_CAP = 24  # the divisor lattice is enumerated in full


class DegreeBoundError(ValueError):
    """Expansion would exceed the configured dense-degree bound."""


class NonSplittingError(ValueError):
    """Input polynomial has an irreducible factor of degree >= 2."""


def _trim(ai: np.ndarray, aj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    nz = np.nonzero(ai | aj)[0]
    if len(nz) == 0:
        return ai[:0], aj[:0]
    end = nz[-1] + 1
    return ai[:end], aj[:end]


class DensePoly:
    """Immutable dense polynomial over F_{p^2}, coefficients lowest degree first.

    The zero polynomial has empty coefficient vectors.  Construct via the
    classmethods; the raw constructor trusts its arrays.
    """

    __slots__ = ("field", "ai", "aj")

    def __init__(self, field: FieldSpec, ai: np.ndarray, aj: np.ndarray):
        self.field = field
        self.ai = ai
        self.aj = aj
        ai.setflags(write=False)
        aj.setflags(write=False)

    @classmethod
    def zero(cls, field: FieldSpec) -> "DensePoly":
        return cls(field, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))

    @classmethod
    def one(cls, field: FieldSpec) -> "DensePoly":
        return cls.from_pairs(field, [(0, 1)])

    @classmethod
    def from_pairs(cls, field: FieldSpec, pairs) -> "DensePoly":
        """Build from [i, j] coefficient pairs, lowest degree first."""
        p = field.p
        ai = np.array([int(i) % p for i, _ in pairs], dtype=np.int64)
        aj = np.array([int(j) % p for _, j in pairs], dtype=np.int64)
        return cls(field, *_trim(ai, aj))

    @classmethod
    def from_coeffs(cls, field: FieldSpec, coeffs) -> "DensePoly":
        """Build from ExtElement (or int) coefficients, lowest degree first."""
        return cls.from_pairs(field, [field.coerce(c).pair for c in coeffs])

    @classmethod
    def x_minus(cls, gamma: ExtElement) -> "DensePoly":
        g = -gamma
        return cls.from_pairs(gamma.field, [g.pair, (0, 1)])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.ai) - 1

    def is_zero(self) -> bool:
        return len(self.ai) == 0

    def is_monic(self) -> bool:
        return len(self.ai) > 0 and self.ai[-1] == 0 and self.aj[-1] == 1

    def coeff(self, k: int) -> ExtElement:
        if 0 <= k < len(self.ai):
            return self.field.element(int(self.ai[k]), int(self.aj[k]))
        return self.field.zero()

    def coeffs(self) -> list[ExtElement]:
        return [self.field.element(int(i), int(j)) for i, j in zip(self.ai, self.aj)]

    def to_pairs(self) -> list[list[int]]:
        return [[int(i), int(j)] for i, j in zip(self.ai, self.aj)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensePoly):
            return NotImplemented
        return (
            self.field == other.field
            and np.array_equal(self.ai, other.ai)
            and np.array_equal(self.aj, other.aj)
        )

    def __hash__(self):
        return hash((self.field, self.ai.tobytes(), self.aj.tobytes()))

    def __add__(self, other: "DensePoly") -> "DensePoly":
        n = max(len(self.ai), len(other.ai))
        ai = np.zeros(n, dtype=np.int64)
        aj = np.zeros(n, dtype=np.int64)
        ai[: len(self.ai)] += self.ai
        aj[: len(self.aj)] += self.aj
        ai[: len(other.ai)] += other.ai
        aj[: len(other.aj)] += other.aj
        p = self.field.p
        return DensePoly(self.field, *_trim(ai % p, aj % p))

    def __sub__(self, other: "DensePoly") -> "DensePoly":
        n = max(len(self.ai), len(other.ai))
        ai = np.zeros(n, dtype=np.int64)
        aj = np.zeros(n, dtype=np.int64)
        ai[: len(self.ai)] += self.ai
        aj[: len(self.aj)] += self.aj
        ai[: len(other.ai)] -= other.ai
        aj[: len(other.aj)] -= other.aj
        p = self.field.p
        return DensePoly(self.field, *_trim(ai % p, aj % p))

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        if self.is_zero() or other.is_zero():
            return DensePoly.zero(self.field)
        f = self.field
        ii = np.convolve(self.ai, other.ai)
        ci = np.convolve(self.ai, other.aj) + np.convolve(self.aj, other.ai) + f.c1 * ii
        cj = np.convolve(self.aj, other.aj) + f.c0 * ii
        return DensePoly(f, *_trim(ci % f.p, cj % f.p))

    def __pow__(self, k: int) -> "DensePoly":
        if k < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = DensePoly.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: ExtElement) -> ExtElement:
        """Evaluate by Horner's rule."""
        acc = self.field.zero()
        for i, j in zip(self.ai[::-1], self.aj[::-1]):
            acc = acc * x + self.field.element(int(i), int(j))
        return acc

    def synth_div(self, root: ExtElement) -> tuple["DensePoly", ExtElement]:
        """Divide by (x - root); returns (quotient, remainder)."""
        f = self.field
        if self.is_zero():
            return DensePoly.zero(f), f.zero()
        d = self.degree
        b = [f.zero()] * d
        acc = self.coeff(d)
        for k in range(d - 1, -1, -1):
            b[k] = acc
            acc = self.coeff(k) + root * acc
        return DensePoly.from_coeffs(f, b), acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if not c:
                continue
            cs = str(c)
            if k == 0:
                terms.append(cs)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                if c == 1:
                    terms.append(xs)
                else:
                    cs = f"({cs})" if c.i and c.j else cs
                    terms.append(f"{cs}{xs}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"DensePoly(p={self.field.p}, {self})"


class SplitPoly:
    """Factored polynomial prod (x - gamma)^(e_gamma), exponents >= 1.

    The empty factor map denotes the constant polynomial 1.  Exponents are
    plain Python ints, so N*p^n - 1 never overflows.
    """

    __slots__ = ("field", "_factors")

    def __init__(self, field: FieldSpec, factors=None):
        self.field = field
        fac = {}
        for gamma, e in (factors or {}).items():
            g = field.coerce(gamma)
            e = int(e)
            if e < 0:
                raise ValueError(f"negative exponent {e} for root {g}")
            if e:
                fac[g] = e
        self._factors = fac

    @property
    def factors(self) -> dict[ExtElement, int]:
        return dict(self._factors)

    def items(self) -> list[tuple[ExtElement, int]]:
        """(root, exponent) pairs in lexicographic root order."""
        return sorted(self._factors.items(), key=lambda kv: kv[0].pair)

    @property
    def total_degree(self) -> int:
        return sum(self._factors.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SplitPoly):
            return NotImplemented
        return self.field == other.field and self._factors == other._factors

    def __hash__(self):
        return hash((self.field, tuple((g.pair, e) for g, e in self.items())))

    def __mul__(self, other: "SplitPoly") -> "SplitPoly":
        merged = dict(self._factors)
        for g, e in other._factors.items():
            merged[g] = merged.get(g, 0) + e
        return SplitPoly(self.field, merged)

    def to_obj(self) -> list[dict]:
        return [{"gamma": list(g.pair), "exp": str(e)} for g, e in self.items()]

    @classmethod
    def from_obj(cls, field: FieldSpec, obj) -> "SplitPoly":
        factors = {}
        for entry in obj:
            i, j = entry["gamma"]
            g = field.element(int(i), int(j))
            e = int(entry["exp"])
            if g in factors:
                raise ValueError(f"duplicate root {g}")
            factors[g] = e
        return cls(field, factors)

    def __str__(self) -> str:
        if not self._factors:
            return "1"
        parts = []
        for g, e in self.items():
            gs = f"({g})" if g.i and g.j else str(g)
            base = "x" if not g else f"(x-{gs})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"SplitPoly(p={self.field.p}, {self})"


def expand(f: SplitPoly, bound: int = DEFAULT_DEGREE_BOUND) -> DensePoly:
    """Multiply out a SplitPoly; refuses products of degree beyond *bound*."""
    total = f.total_degree
    if total > bound:
        raise DegreeBoundError(f"degree {total} exceeds bound {bound}")
    result = DensePoly.one(f.field)
    for gamma, e in f.items():
        result = result * DensePoly.x_minus(gamma) ** e
    return result


def sigma_prime_power(gamma: ExtElement, h: int) -> DensePoly:
    """sigma((x-gamma)^h) = sum_{i=0}^{h} (x-gamma)^i, a dense polynomial of degree h.

    Uses the geometric-sum identity ((x-gamma)^(h+1) - 1) / (x-gamma-1); the
    divisor is linear so the division is a remainder-checked Horner pass.
    """
    if h < 0:
        raise ValueError("exponent must be nonnegative")
    field = gamma.field
    if h == 0:
        return DensePoly.one(field)
    num = DensePoly.x_minus(gamma) ** (h + 1) - DensePoly.one(field)
    quot, rem = num.synth_div(gamma + 1)
    assert not rem, "y - 1 always divides y^(h+1) - 1"
    return quot


def sigma_closed_form(gamma: ExtElement, N: int, n: int) -> SplitPoly:
    """Factored sigma((x-gamma)^(N*p^n - 1)) for N | q-1.

    Returns (x-gamma-1)^(p^n - 1) * prod_{j=2}^{N} (x-gamma-zeta_j)^(p^n)
    with zero-exponent factors omitted.
    """
    field = gamma.field
    if n < 0:
        raise ValueError("n must be nonnegative")
    roots = nth_roots_of_unity(field, N)  # validates N | q-1
    pn = field.p ** n
    factors: dict[ExtElement, int] = {}
    if pn - 1 > 0:
        factors[gamma + 1] = pn - 1
    one = field.one()
    for zeta in roots:
        if zeta == one:
            continue
        factors[gamma + zeta] = pn
    return SplitPoly(field, factors)


def sigma_split(f: SplitPoly, bound: int = DEFAULT_DEGREE_BOUND) -> DensePoly:
    """sigma of a split polynomial via multiplicativity over its prime powers."""
    if f.total_degree > bound:
        raise DegreeBoundError(f"degree {f.total_degree} exceeds bound {bound}")
    result = DensePoly.one(f.field)
    for gamma, e in f.items():
        result = result * sigma_prime_power(gamma, e)
    return result


def _root_factorization(f: DensePoly) -> dict[ExtElement, int]:
    """Factor a monic splitting polynomial by root scanning; reject otherwise."""
    field = f.field
    mult: dict[ExtElement, int] = {}
    rest = f
    for delta in field.elements():
        while rest.degree > 0:
            quot, rem = rest.synth_div(delta)
            if rem:
                break
            rest = quot
            mult[delta] = mult.get(delta, 0) + 1
    if rest.degree > 0:
        raise NonSplittingError(f"{f} does not split over F_{field.q}")
    return mult


def sigma_bruteforce(f: DensePoly) -> DensePoly:
    """sigma as the literal sum over every monic divisor of f.

    Test oracle: enumerates the whole divisor lattice below the root
    factorization, multiplying out each divisor and adding them all up.
    Accepts monic nonconstant splitting inputs of degree <= 24.
    """
    if not f.is_monic():
        raise ValueError("sigma_bruteforce requires a monic polynomial")
    if f.degree < 1:
        raise ValueError("sigma_bruteforce requires a nonconstant polynomial")
    if f.degree > BRUTEFORCE_DEGREE_CAP:
        raise ValueError(f"degree {f.degree} exceeds the brute-force cap")
    field = f.field
    mult = _root_factorization(f)
    roots = sorted(mult, key=lambda g: g.pair)
    powers = {g: [DensePoly.x_minus(g) ** k for k in range(mult[g] + 1)] for g in roots}

    n = f.degree + 1
    acc_i = np.zeros(n, dtype=np.int64)
    acc_j = np.zeros(n, dtype=np.int64)

    def add_divisors(idx: int, partial: DensePoly) -> None:
        if idx == len(roots):
            m = len(partial.ai)
            acc_i[:m] += partial.ai
            acc_j[:m] += partial.aj
            return
        for pw in powers[roots[idx]]:
            add_divisors(idx + 1, partial * pw)

    add_divisors(0, DensePoly.one(field))
    p = field.p
    return DensePoly(field, *_trim(acc_i % p, acc_j % p))


def is_perfect(f: SplitPoly, bound: int = DEFAULT_DEGREE_BOUND) -> bool:
    """True iff sigma(f) = f coefficient-wise (sigma computed via sigma_split)."""
    return sigma_split(f, bound) == expand(f, bound)
