"""The block-circulant exponent system and exact rank/kernel computations.

For a divisor N of q-1 the perfection equations N*x_{gamma+1} = x_gamma +
sum_{delta in Lambda(gamma)} x_delta (one per gamma, unknowns x_gamma =
p^(n(gamma))) form a q x q integer system S.  Ordering rows and columns
lexicographically makes S a block circulant bcirc(S_0, ..., S_{p-1}) with
circulant p x p blocks S_j = circ(a_{j,0}, ..., a_{j,p-1}); the entries
take values in {1, -N, 0} only.

Rank facts are verified exactly over Q and over the cyclotomic field
Q(omega), omega a primitive p-th root of unity.  Q(omega) is represented
as Q[x]/Phi_p with Phi_p = 1 + x + ... + x^(p-1), which is the minimal
polynomial of omega for prime p, so the representation is faithful and
every computation below is exact.

The spectral side: lambda_{j,k} = sum_l a_{j,l} omega^(k*l) are the
eigenvalues of the blocks; regrouping rows and columns of the eigenvalue
matrix Delta = bcirc(diag(lambda_{j,0..p-1})) by residue mod p turns it
into the block diagonal of the circulants
Delta~_k = circ(lambda_{0,k}, ..., lambda_{p-1,k}), which is similar to S
and therefore has the same rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np

from .field import ExtElement, FieldSpec, is_prime

# Exact rationals; Fraction already guarantees lowest terms and a positive
# denominator, which is all the canonical-form work the rank code needs.
Rational = Fraction


# ---------------------------------------------------------------------------
# Q(omega) = Q[x] / Phi_p
# ---------------------------------------------------------------------------


def _pstrip(a: list[Fraction]) -> list[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _pdivmod(a: list[Fraction], b: list[Fraction]):
    """Polynomial division over Q, coefficient lists lowest degree first."""
    a = list(a)
    if len(a) < len(b):
        return [], _pstrip(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv
        if c:
            q[k] = c
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    return q, _pstrip(a)


def _pmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                out[i + j] += ac * bc
    return _pstrip(out)


def _psub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _pstrip(out)


class CyclotomicNumber:
    """Element of Q(omega) in the basis 1, omega, ..., omega^(p-2).

    Coordinates are kept fully reduced modulo Phi_p, so equality is
    coordinate-wise.  Inversion runs the extended Euclidean algorithm
    against Phi_p, which is irreducible for prime p.
    """

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords):
        self.p = p
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != p - 1:
            raise ValueError(f"need {p - 1} coordinates, got {len(coords)}")
        self.coords = coords

    @classmethod
    def zero(cls, p: int) -> "CyclotomicNumber":
        return cls(p, [Fraction(0)] * (p - 1))

    @classmethod
    def one(cls, p: int) -> "CyclotomicNumber":
        return cls.from_rational(p, Fraction(1))

    @classmethod
    def from_rational(cls, p: int, value) -> "CyclotomicNumber":
        coords = [Fraction(0)] * (p - 1)
        coords[0] = Fraction(value)
        return cls(p, coords)

    @classmethod
    def omega_power(cls, p: int, k: int) -> "CyclotomicNumber":
        """omega^k; omega^(p-1) folds to -(1 + omega + ... + omega^(p-2))."""
        k %= p
        if k < p - 1:
            coords = [Fraction(0)] * (p - 1)
            coords[k] = Fraction(1)
            return cls(p, coords)
        return cls(p, [Fraction(-1)] * (p - 1))

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(self.p, other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.p == other.p and self.coords == other.coords

    def __hash__(self):
        return hash((self.p, self.coords))

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(self.p, other)
        if isinstance(other, CyclotomicNumber):
            if other.p != self.p:
                raise ValueError("mixed cyclotomic orders")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.p, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.p, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.p, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        conv = [Fraction(0)] * (2 * p - 3)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        conv[i + j] += a * b
        # fold exponents back below p-1: omega^(p-1) = -(1+...+omega^(p-2)),
        # omega^t = omega^(t-p) for t >= p
        res = list(conv[: p - 1]) + [Fraction(0)] * max(0, (p - 1) - len(conv))
        for t in range(p - 1, len(conv)):
            v = conv[t]
            if not v:
                continue
            if t == p - 1:
                for k in range(p - 1):
                    res[k] -= v
            else:
                res[t - p] += v
        return CyclotomicNumber(p, res)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(omega)")
        p = self.p
        phi = [Fraction(1)] * p
        r0, r1 = _pstrip(list(self.coords)), phi
        u0, u1 = [Fraction(1)], []
        while r1:
            quot, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            u0, u1 = u1, _psub(u0, _pmul(quot, u1))
        # r0 is a nonzero constant: Phi_p is irreducible over Q
        assert len(r0) == 1, "gcd with Phi_p must be a unit"
        scale = 1 / r0[0]
        coords = [c * scale for c in u0] + [Fraction(0)] * (p - 1 - len(u0))
        return CyclotomicNumber(p, coords[: p - 1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coords):
            if not c:
                continue
            base = "1" if k == 0 else ("w" if k == 1 else f"w^{k}")
            terms.append(f"{c}*{base}" if k else str(c))
        return "Cyc(0)" if not terms else f"Cyc({' + '.join(terms)})"


def circulant_eigenvalues(row) -> list[CyclotomicNumber]:
    """Exact eigenvalues of circ(row): lambda_k = sum_l row[l] * omega^(k*l).

    Requires a prime length (so that Q(omega) is Q[x]/Phi_p).  Index 0
    yields the plain coefficient sum.
    """
    p = len(row)
    if not is_prime(p):
        raise ValueError(f"circulant order {p} must be prime")
    values = [Fraction(c) for c in row]
    out = []
    for k in range(p):
        acc = CyclotomicNumber.zero(p)
        for l, c in enumerate(values):
            if c:
                acc = acc + CyclotomicNumber.omega_power(p, k * l) * c
        out.append(acc)
    return out


def cyclotomic_constant_test(u, j: int) -> bool:
    """Whether sum_r u[r] * omega^(j*r) = 0 in Q(omega); p = len(u).

    For prime p and 1 <= j <= p-1 this holds exactly when all entries of u
    are equal, because Phi_p is the minimal polynomial of omega.
    """
    p = len(u)
    if not is_prime(p):
        raise ValueError(f"vector length {p} must be prime")
    if not 1 <= j <= p - 1:
        raise ValueError(f"j must lie in 1..{p - 1}, got {j}")
    acc = CyclotomicNumber.zero(p)
    for r, c in enumerate(u):
        c = Fraction(c)
        if c:
            acc = acc + CyclotomicNumber.omega_power(p, j * r) * c
    return not acc


# ---------------------------------------------------------------------------
# The exponent system S
# ---------------------------------------------------------------------------


class ExponentSystem:
    """The q x q integer system S = bcirc(S_0, ..., S_{p-1}) for a given N.

    Rows are the equations at gamma = i*alpha + m, columns the unknowns
    x_{j*alpha + n}, both in lexicographic order.  ``a[j][i]`` is the first
    row of the circulant block S_j.
    """

    __slots__ = ("field", "N", "S", "a")

    def __init__(self, field: FieldSpec, N: int, S: np.ndarray, a: tuple):
        self.field = field
        self.N = N
        self.S = S
        self.a = a
        S.setflags(write=False)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    def block(self, i: int, j: int) -> np.ndarray:
        p = self.p
        return self.S[i * p : (i + 1) * p, j * p : (j + 1) * p]

    def to_obj(self) -> dict:
        return {
            "field": self.field.to_obj(),
            "N": self.N,
            "a_table": [list(row) for row in self.a],
            "S": self.S.tolist(),
        }


def build_system(field: FieldSpec, N: int) -> ExponentSystem:
    """Build S for N | q-1 by the verbatim entry rule.

    Entry at (row gamma = i*alpha + m, column delta = j*alpha + n) is 1 when
    ((i-j)*alpha + m - n + 1)^N = 1, is -N when i = j and n = m+1 (mod p),
    and 0 otherwise.
    """
    if N < 1 or (field.q - 1) % N != 0:
        raise ValueError(f"N = {N} must divide q-1 = {field.q - 1}")
    p = field.p
    one = field.one()
    mu = {x.pair for x in field.elements() if x and x**N == one}
    S = np.zeros((field.q, field.q), dtype=np.int64)
    for bi in range(p):
        for bj in range(p):
            di = (bi - bj) % p
            for m in range(p):
                for n in range(p):
                    if (di, (m - n + 1) % p) in mu:
                        S[bi * p + m, bj * p + n] = 1
                    elif bi == bj and n == (m + 1) % p:
                        S[bi * p + m, bj * p + n] = -N
    a = tuple(tuple(int(S[0, j * p + i]) for i in range(p)) for j in range(p))
    return ExponentSystem(field, N, S, a)


def coefficient_sum(sys: ExponentSystem) -> int:
    """Sum of the first-row table a[j][i] over all (j, i); always 0."""
    return sum(sum(row) for row in sys.a)


def build_delta_tilde(sys: ExponentSystem) -> list[list[list[CyclotomicNumber]]]:
    """The p circulant blocks Delta~_k = circ(lambda_{0,k}, ..., lambda_{p-1,k}).

    lambda_{j,k} = sum_l a[j][l] * omega^(k*l) are the block eigenvalues;
    regrouping rows and columns of the eigenvalue matrix Delta by residue
    mod p (see :func:`regroup_permutation`) block-diagonalizes it into
    exactly these circulants.
    """
    p = sys.p
    lam = [circulant_eigenvalues(row) for row in sys.a]  # lam[j][k]
    blocks = []
    for k in range(p):
        blocks.append([[lam[(c - r) % p][k] for c in range(p)] for r in range(p)])
    return blocks


def build_delta(sys: ExponentSystem) -> list[list[CyclotomicNumber]]:
    """The full q x q eigenvalue matrix Delta = bcirc(diag(lambda_{j,0..p-1}))."""
    p = sys.p
    lam = [circulant_eigenvalues(row) for row in sys.a]
    zero = CyclotomicNumber.zero(p)
    delta = [[zero] * sys.q for _ in range(sys.q)]
    for bi in range(p):
        for bj in range(p):
            block = lam[(bj - bi) % p]
            for m in range(p):
                delta[bi * p + m][bj * p + m] = block[m]
    return delta


def regroup_permutation(p: int) -> list[int]:
    """Permutation (new -> old index) regrouping rows l, p+l, 2p+l, ...

    Applying it to both rows and columns of Delta yields the block diagonal
    of the Delta~_k blocks.
    """
    return [t * p + l for l in range(p) for t in range(p)]


# ---------------------------------------------------------------------------
# Exact rank / kernel
# ---------------------------------------------------------------------------


def _one_like(x):
    if isinstance(x, CyclotomicNumber):
        return CyclotomicNumber.one(x.p)
    return Fraction(1)


def _zero_like(x):
    if isinstance(x, CyclotomicNumber):
        return CyclotomicNumber.zero(x.p)
    return Fraction(0)


def rank_and_kernel(matrix):
    """Exact rank and right-kernel basis via Gauss-Jordan elimination.

    Accepts integer/Fraction matrices (including numpy arrays) or matrices
    of CyclotomicNumber.  Pivoting is deterministic (first nonzero in
    column order) and the kernel basis is the canonical one read off the
    reduced row echelon form: one vector per free column f, with a 1 in
    position f.  Returns (rank, [kernel vectors]).
    """
    if isinstance(matrix, np.ndarray):
        rows = [[Fraction(int(v)) for v in row] for row in matrix]
    else:
        rows = [
            [v if isinstance(v, (Fraction, CyclotomicNumber)) else Fraction(v) for v in row]
            for row in matrix
        ]
    if not rows:
        return 0, []
    ncols = len(rows[0])
    sample = next(
        (v for row in rows for v in row if isinstance(v, CyclotomicNumber)),
        Fraction(0),
    )
    one, zero = _one_like(sample), _zero_like(sample)

    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = one / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break

    kernel = []
    pivot_set = set(pivots)
    for fcol in range(ncols):
        if fcol in pivot_set:
            continue
        v = [zero] * ncols
        v[fcol] = one
        for ri, pc in enumerate(pivots):
            v[pc] = -rows[ri][fcol]
        kernel.append(v)
    return len(pivots), kernel


# ---------------------------------------------------------------------------
# Rank-claim verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RankCheck:
    tag: str
    ok: bool
    detail: str


@dataclass
class RankReport:
    """Outcome of verifying the rank/kernel claims for one (p, N) pair."""

    p: int
    N: int
    branch: str  # "divides-p-minus-1" or "coprime-part"
    rank_S: int
    block_ranks: list[int]
    checks: list[RankCheck] = dataclass_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_obj(self) -> dict:
        return {
            "p": self.p,
            "N": self.N,
            "branch": self.branch,
            "rank_S": self.rank_S,
            "block_ranks": self.block_ranks,
            "checks": [{"tag": c.tag, "ok": c.ok, "detail": c.detail} for c in self.checks],
            "passed": self.passed,
        }


def verify_rank_claims(field: FieldSpec, N: int) -> RankReport:
    """Verify the exact rank and kernel structure of S for one divisor N.

    N | p-1: S is block diagonal diag(S_0, ..., S_0), rank(S_0) = p-1,
    rank(S) = p(p-1), and the kernel basis is the p coset indicators.
    Otherwise: rank(S) = q-1 with kernel spanned by the all-ones vector,
    and the spectral blocks satisfy rank(Delta~_0) = p-1,
    rank(Delta~_j) = p for j != 0.  In both branches the table sum is 0 and
    rank(S) over Q equals rank of the assembled Delta~ over Q(omega).
    """
    sys = build_system(field, N)
    p, q = sys.p, sys.q
    rank_s, ker_s = rank_and_kernel(sys.S)
    blocks = build_delta_tilde(sys)
    block_ranks = [rank_and_kernel(b)[0] for b in blocks]

    checks: list[RankCheck] = []

    def check(tag: str, ok: bool, detail: str) -> None:
        checks.append(RankCheck(tag, bool(ok), detail))

    csum = coefficient_sum(sys)
    check("coefficient-sum", csum == 0, f"sum a[j][i] = {csum}")
    check(
        "rank-match-delta-tilde",
        rank_s == sum(block_ranks),
        f"rank(S) = {rank_s} over Q, rank(Delta~) = {sum(block_ranks)} over Q(omega)",
    )

    if (p - 1) % N == 0:
        branch = "divides-p-minus-1"
        s0 = sys.block(0, 0)
        diag_ok = all(
            np.array_equal(sys.block(i, j), s0 if i == j else np.zeros((p, p), dtype=np.int64))
            for i in range(p)
            for j in range(p)
        )
        check("block-diagonal", diag_ok, "S = diag(S_0, ..., S_0)")
        rank_s0, _ = rank_and_kernel(s0)
        check("block0-rank", rank_s0 == p - 1, f"rank(S_0) = {rank_s0}, expected {p - 1}")
        check("full-rank", rank_s == p * (p - 1), f"rank(S) = {rank_s}, expected {p * (p - 1)}")
        indicators = [
            [Fraction(1) if idx // p == b else Fraction(0) for idx in range(q)]
            for b in range(p)
        ]
        check(
            "kernel-coset-indicators",
            ker_s == indicators,
            f"kernel dim {len(ker_s)}, expected the {p} coset indicators",
        )
    else:
        branch = "coprime-part"
        check(
            "delta-tilde-0-rank",
            block_ranks[0] == p - 1,
            f"rank(Delta~_0) = {block_ranks[0]}, expected {p - 1}",
        )
        check(
            "delta-tilde-j-rank",
            all(rk == p for rk in block_ranks[1:]),
            f"ranks(Delta~_j, j != 0) = {block_ranks[1:]}, expected all {p}",
        )
        check("full-rank", rank_s == q - 1, f"rank(S) = {rank_s}, expected {q - 1}")
        ones = [[Fraction(1)] * q]
        check(
            "kernel-all-ones",
            ker_s == ones,
            f"kernel dim {len(ker_s)}, expected span of the all-ones vector",
        )

    return RankReport(p=p, N=N, branch=branch, rank_S=rank_s, block_ranks=block_ranks, checks=checks)
