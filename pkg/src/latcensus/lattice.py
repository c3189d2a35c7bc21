"""Exact lattice machinery for full-rank sublattices of Z^n.

A sublattice is always represented by its canonical Hermite normal form:
row basis, upper triangular, positive pivots, entries above each pivot
reduced into [0, pivot).  Uniqueness of that form makes lattice equality
plain matrix equality.

The quotient Z^n/L is classified by its invariant factors (Smith normal
form of the basis), stored as an increasing divisibility chain
d_1 | d_2 | ... with all entries >= 2 and the trivial quotient as the
empty chain.  A lattice is co-cyclic when the chain has at most one entry.

All arithmetic is exact (Python ints); no floating point enters here.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import CapExceededError, NotPrimitiveError, SingularMatrixError
from .rng import SplitMix64

# ---------------------------------------------------------------------------
# integer row reduction
# ---------------------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = ax + by and g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _combine_rows(a: list[list[int]], r: int, i: int, j: int) -> None:
    """Unimodular transform of rows r, i making a[i][j] = 0 and
    a[r][j] = gcd of the two column-j entries.

    When the pivot entry already divides a[i][j] only row i is reduced
    (row r untouched); otherwise a gcd combination strictly shrinks the
    pivot, which is what guarantees termination of the callers' loops.
    """
    arj, aij = a[r][j], a[i][j]
    if arj and aij % arj == 0:
        c = aij // arj
        a[i] = [v - c * u for u, v in zip(a[r], a[i])]
        return
    g, x, y = _xgcd(arj, aij)
    p, q = arj // g, aij // g
    rr, ri = a[r], a[i]
    for col in range(len(rr)):
        u, v = rr[col], ri[col]
        rr[col] = x * u + y * v
        ri[col] = p * v - q * u


def _row_hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Hermite normal form of the row span of an m x n integer matrix.

    Returns the nonzero rows: upper staircase, positive pivots, entries
    above each pivot reduced into [0, pivot).
    """
    a = [[int(x) for x in row] for row in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    r = 0
    pivots: list[tuple[int, int]] = []
    for j in range(n):
        piv = next((i for i in range(r, m) if a[i][j]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            if a[i][j]:
                _combine_rows(a, r, i, j)
        if a[r][j] < 0:
            a[r] = [-x for x in a[r]]
        pivots.append((r, j))
        r += 1
    for ri, j in pivots:
        piv = a[ri][j]
        prow = a[ri]
        for i in range(ri):
            q = a[i][j] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], prow)]
    return a[:r]


# ---------------------------------------------------------------------------
# canonical bases
# ---------------------------------------------------------------------------


class HnfBasis:
    """Canonical (Hermite normal form) row basis of a full-rank sublattice.

    rows is a tuple of n row tuples; two HnfBasis values are equal iff they
    describe the same sublattice.  Treat instances as immutable.
    """

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("rows must form a square matrix")
        for i in range(n):
            if rows[i][i] < 1:
                raise ValueError("pivots must be >= 1")
            for j in range(n):
                if j < i and rows[i][j] != 0:
                    raise ValueError("matrix must be upper triangular")
                if j > i and not 0 <= rows[i][j] < rows[j][j]:
                    raise ValueError("entries above a pivot must lie in [0, pivot)")
        self.n = n
        self.rows = rows

    @classmethod
    def _raw(cls, n: int, rows: tuple[tuple[int, ...], ...]) -> "HnfBasis":
        # internal fast path: caller guarantees canonical form
        obj = object.__new__(cls)
        obj.n = n
        obj.rows = rows
        return obj

    @classmethod
    def identity(cls, n: int) -> "HnfBasis":
        return cls._raw(n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def index(self) -> int:
        """[Z^n : L], the product of the pivots."""
        out = 1
        for i in range(self.n):
            out *= self.rows[i][i]
        return out

    def to_json_dict(self) -> dict:
        return {"n": self.n, "rows": [list(r) for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "HnfBasis":
        doc = json.loads(text)
        basis = cls(doc["rows"])
        if basis.n != doc["n"]:
            raise ValueError("dimension field disagrees with rows")
        return basis

    def __eq__(self, other) -> bool:
        return isinstance(other, HnfBasis) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"HnfBasis({[list(r) for r in self.rows]})"


def hnf_canonicalize(rows: Sequence[Sequence[int]]) -> HnfBasis:
    """Canonical basis of the row span of a nonsingular square matrix."""
    rows = [list(r) for r in rows]
    n = len(rows)
    if n < 1 or any(len(r) != n for r in rows):
        raise ValueError("expected a square matrix")
    red = _row_hnf(rows)
    if len(red) < n:
        raise SingularMatrixError("matrix is singular")
    return HnfBasis._raw(n, tuple(tuple(r) for r in red))


# ---------------------------------------------------------------------------
# Smith invariants of the quotient
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantFactors:
    """Invariant factors of the finite quotient Z^n/L, as the increasing
    divisibility chain (d_1, ..., d_k), d_i >= 2, d_i | d_{i+1}.  The
    trivial quotient is the empty chain."""

    chain: tuple[int, ...]

    def __post_init__(self):
        prev = None
        for d in self.chain:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
            if prev is not None and d % prev:
                raise ValueError("chain must be increasing in divisibility")
            prev = d

    @property
    def order(self) -> int:
        out = 1
        for d in self.chain:
            out *= d
        return out

    @property
    def rank(self) -> int:
        return len(self.chain)


def _smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form (nonnegative, d_i | d_{i+1})."""
    a = [[int(x) for x in row] for row in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    size = min(m, n)
    t = 0
    while t < size:
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        a[t], a[i0] = a[i0], a[t]
        if j0 != t:
            for row in a:
                row[t], row[j0] = row[j0], row[t]
        while True:
            for i in range(t + 1, m):
                if a[i][t]:
                    _combine_rows(a, t, i, t)
            for j in range(t + 1, n):
                if a[t][j]:
                    _combine_cols(a, t, j)
            if any(a[i][t] for i in range(t + 1, m)):
                continue
            d = a[t][t]
            bad = None
            for i in range(t + 1, m):
                if any(x % d for x in a[i][t:]):
                    bad = i
                    break
            if bad is None:
                break
            arow = a[bad]
            a[t] = [x + y for x, y in zip(a[t], arow)]
        t += 1
    return [abs(a[i][i]) for i in range(size)]


def _combine_cols(a: list[list[int]], t: int, j: int) -> None:
    att, atj = a[t][t], a[t][j]
    if att and atj % att == 0:
        c = atj // att
        for row in a:
            row[j] -= c * row[t]
        return
    g, x, y = _xgcd(att, atj)
    p, q = att // g, atj // g
    for row in a:
        u, v = row[t], row[j]
        row[t] = x * u + y * v
        row[j] = p * v - q * u


def smith_invariants(basis) -> InvariantFactors:
    """Invariant factors of Z^n/L for a basis (HnfBasis or row matrix)."""
    rows = basis.rows if isinstance(basis, HnfBasis) else basis
    diag = _smith_diagonal(rows)
    if any(d == 0 for d in diag):
        raise SingularMatrixError("basis does not have full rank")
    return InvariantFactors(tuple(d for d in diag if d != 1))


def quotient_rank(basis: HnfBasis) -> int:
    """Minimal number of generators of Z^n/L (0 for the trivial quotient)."""
    return smith_invariants(basis).rank


def is_cocyclic(basis: HnfBasis) -> bool:
    """True iff Z^n/L is cyclic (the trivial group counts as cyclic)."""
    return smith_invariants(basis).rank <= 1


# ---------------------------------------------------------------------------
# counting and enumerating sublattices of a given index
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _count_prime_power(n: int, p: int, e: int) -> int:
    if e == 0 or n == 1:
        return 1
    return sum(p ** (i * (n - 1)) * _count_prime_power(n - 1, p, e - i) for i in range(e + 1))


def count_sublattices(n: int, q) -> int:
    """Number of sublattices of Z^n of index exactly q: multiplicative in q,
    with c_n(q) = sum_{d|q} d^(n-1) c_{n-1}(q/d) and c_1 = 1."""
    from .arith import ensure_factored

    if n < 1:
        raise ValueError("dimension must be >= 1")
    f = ensure_factored(q)
    out = 1
    for p, e in f.factors:
        out *= _count_prime_power(n, p, e)
    return out


def count_sublattices_upto(n: int, V: int) -> list[int]:
    """[c_n(0), c_n(1), ..., c_n(V)] with c_n(0) = 0, by divisor convolution."""
    if n < 1 or V < 1:
        raise ValueError("need n >= 1 and V >= 1")
    import numpy as np

    # int64 is safe while max intermediate d^(n-1) * c_(n-1) stays below 2^62
    if (n - 1) * math.log2(max(V, 2)) + math.log2(V) + 4 < 62:
        arr = np.zeros(V + 1, dtype=np.int64)
        arr[1:] = 1
        for level in range(2, n + 1):
            new = np.zeros(V + 1, dtype=np.int64)
            for d in range(1, V + 1):
                new[d::d] += d ** (level - 1) * arr[1 : V // d + 1]
            arr = new
        return [int(x) for x in arr]
    out = [0] + [1] * V
    for level in range(2, n + 1):
        new = [0] * (V + 1)
        for d in range(1, V + 1):
            w = d ** (level - 1)
            for q in range(d, V + 1, d):
                new[q] += w * out[q // d]
        out = new
    return out


def _divisors_ascending(q: int) -> list[int]:
    from .arith import factorize

    return factorize(q).divisors()


def _ordered_factorizations(q: int, n: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (q,)
        return
    for d in _divisors_ascending(q):
        for rest in _ordered_factorizations(q // d, n - 1):
            yield (d,) + rest


def enumerate_sublattices(n: int, q: int, cap: int = 10**8) -> Iterator[HnfBasis]:
    """Yield every sublattice of Z^n of index exactly q, exactly once.

    Order: lexicographic in (diagonal, above-diagonal entries), the entries
    flattened row-major.  The outer loop runs over ordered diagonal
    factorizations of q; an odometer fills the entries above each pivot.
    """
    if n < 1 or q < 1:
        raise ValueError("need n >= 1 and q >= 1")
    total = count_sublattices(n, q)
    if total > cap:
        raise CapExceededError(
            f"enumeration of {total} sublattices exceeds cap {cap}"
        )
    return _enumerate_sublattices(n, q)


def _enumerate_sublattices(n: int, q: int) -> Iterator[HnfBasis]:
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for diag in _ordered_factorizations(q, n):
        template = [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)]
        if not positions:
            yield HnfBasis._raw(n, tuple(tuple(r) for r in template))
            continue
        ranges = [range(diag[j]) for _, j in positions]
        for combo in itertools.product(*ranges):
            rows = [row[:] for row in template]
            for (i, j), v in zip(positions, combo):
                rows[i][j] = v
            yield HnfBasis._raw(n, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# congruence vectors and the cyclic-quotient construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceVector:
    """Residue vector a modulo q; primitive when gcd(a_1,...,a_n, q) = 1."""

    q: int
    a: tuple[int, ...]

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("modulus must be >= 1")
        if len(self.a) < 1:
            raise ValueError("vector must have at least one coordinate")
        object.__setattr__(self, "a", tuple(int(x) % self.q for x in self.a))

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def is_primitive(self) -> bool:
        return math.gcd(*self.a, self.q) == 1

    def scaled(self, lam: int) -> tuple[int, ...]:
        return tuple((lam * x) % self.q for x in self.a)


def are_equivalent(u: CongruenceVector, v: CongruenceVector) -> bool:
    """True iff u = lam * v mod q for some unit lam mod q."""
    if u.q != v.q:
        raise ValueError("moduli differ")
    if len(u.a) != len(v.a):
        raise ValueError("dimensions differ")
    q = u.q
    for lam in range(1, q + 1):
        if math.gcd(lam, q) == 1 and v.scaled(lam) == u.a:
            return True
    return False


def canonical_vector(v: CongruenceVector) -> CongruenceVector:
    """Lexicographically smallest vector in the unit-scaling orbit of v."""
    best = v.a
    for lam in range(2, v.q):
        if math.gcd(lam, v.q) == 1:
            cand = v.scaled(lam)
            if cand < best:
                best = cand
    return CongruenceVector(v.q, best)


def lattice_from_congruence(v: CongruenceVector) -> HnfBasis:
    """The index-q sublattice {x : a.x = 0 mod q} of a primitive vector.

    The quotient is cyclic of order q; equivalent vectors give the same
    basis and inequivalent primitive vectors give distinct bases.
    """
    if not v.is_primitive:
        raise NotPrimitiveError(f"gcd of {v.a} with modulus {v.q} exceeds 1")
    n, q, a = v.n, v.q, v.a
    if q == 1:
        return HnfBasis.identity(n)
    gens = [[q if k == i else 0 for k in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            row = [0] * n
            row[i] = a[j]
            row[j] = -a[i]
            gens.append(row)
    red = _row_hnf(gens)
    basis = HnfBasis._raw(n, tuple(tuple(r) for r in red))
    assert basis.index == q
    return basis


def sample_cocyclic(n: int, q: int, seed) -> HnfBasis:
    """One uniform draw from the co-cyclic sublattices of Z^n of index q.

    Draws n residues uniformly in [0, q) and retries until the vector is
    primitive; every unit-scaling class of primitive vectors has exactly
    phi(q) members, so the induced lattice is exactly uniform.  seed may be
    an int or a SplitMix64 stream; fixed seeds reproduce bit-identically.
    """
    if n < 1 or q < 1:
        raise ValueError("need n >= 1 and q >= 1")
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(int(seed))
    while True:
        a = tuple(rng.randbelow(q) for _ in range(n))
        if math.gcd(*a, q) == 1:
            return lattice_from_congruence(CongruenceVector(q, a))


def sample_cocyclic_stream(n: int, q: int, count: int, seed: int) -> Iterator[HnfBasis]:
    """Deterministic stream of `count` uniform co-cyclic draws."""
    rng = SplitMix64(int(seed))
    for _ in range(count):
        yield sample_cocyclic(n, q, rng)
