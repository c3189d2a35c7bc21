"""Exact integer arithmetic and multiplicative functions.

Everything here is exact: counts are Python ints of arbitrary precision and
ratios are `fractions.Fraction` in lowest terms.  Floating point appears only
in the explicitly error-bounded large-argument paths of `landau_sum` /
`ward_sum` and in asymptotic predictions, which return ErrBoundedReal.

The factorization workhorse is a smallest-prime-factor sieve (32-bit
entries, O(limit) memory, O(log k) factorization per query).  The sieve is
immutable once built and safe for unsynchronized concurrent reads.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .errbound import ErrBoundedReal

DEFAULT_SIEVE_LIMIT = 10**7

# Euler-Mascheroni constant to 20 digits (standard references); the stored
# truncation error is below 1e-19.
EULER_MASCHERONI = ErrBoundedReal("0.57721566490153286061", "1e-19")

# landau_sum/ward_sum return exact rationals up to this bound and switch to
# error-bounded floating accumulation above it (exact denominators blow up).
EXACT_SUM_LIMIT = 10**4

_FLOAT_EPS = 2.0**-52


def default_sieve_limit() -> int:
    """Default sieve size; LATCENSUS_SIEVE_LIMIT overrides."""
    return int(os.environ.get("LATCENSUS_SIEVE_LIMIT", DEFAULT_SIEVE_LIMIT))


class SieveTable:
    """Smallest-prime-factor table for 2 <= k <= limit.

    spf[k] is the smallest prime factor of k; spf[p] == p exactly when p is
    prime.  Immutable after construction.
    """

    __slots__ = ("limit", "spf", "_primes")

    def __init__(self, limit: int):
        if limit < 2:
            raise ValueError("sieve limit must be >= 2")
        if limit >= 2**31:
            raise ValueError("sieve entries are 32-bit; limit must be < 2^31")
        self.limit = limit
        spf = np.zeros(limit + 1, dtype=np.int32)
        for i in range(2, math.isqrt(limit) + 1):
            if spf[i] == 0:
                sl = spf[i * i :: i]
                sl[sl == 0] = i
        rest = np.nonzero(spf[2:] == 0)[0] + 2
        spf[rest] = rest
        spf[0] = spf[1] = 0
        self.spf = spf
        self.spf.setflags(write=False)
        self._primes = None

    def primes(self) -> np.ndarray:
        """All primes <= limit, ascending (int64 array, cached)."""
        if self._primes is None:
            idx = np.arange(self.limit + 1)
            prm = idx[self.spf == idx]
            self._primes = prm[prm >= 2].astype(np.int64)
            self._primes.setflags(write=False)
        return self._primes

    def factor_pairs(self, k: int) -> list[tuple[int, int]]:
        """(prime, exponent) pairs of k <= limit, primes ascending."""
        if not 1 <= k <= self.limit:
            raise ValueError(f"{k} outside sieve range [1, {self.limit}]")
        spf = self.spf
        out = []
        while k > 1:
            p = int(spf[k])
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            out.append((p, e))
        return out

    def factorize(self, k: int) -> "FactoredInt":
        return FactoredInt(k, tuple(self.factor_pairs(k)))


_shared: Optional[SieveTable] = None


def shared_sieve(limit: int) -> SieveTable:
    """Process-wide sieve cache, grown geometrically on demand."""
    global _shared
    if _shared is None or _shared.limit < limit:
        grown = 2 if _shared is None else min(2 * _shared.limit, 2**31 - 1)
        _shared = SieveTable(max(limit, grown))
    return _shared


def build_sieve(limit: Optional[int] = None) -> SieveTable:
    """New sieve table; limit defaults to default_sieve_limit()."""
    return SieveTable(default_sieve_limit() if limit is None else limit)


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer with its full prime factorization.

    factors is ((p1, e1), (p2, e2), ...) with p1 < p2 < ... and ei >= 1;
    value == prod(p**e).  value == 1 iff factors is empty.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise ValueError("FactoredInt must be a positive integer")
        prod = 1
        last_p = 1
        for p, e in self.factors:
            if p <= last_p:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            prod *= p**e
            last_p = p
        if prod != self.value:
            raise ValueError("factors do not multiply back to value")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def divisors(self) -> list[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def __int__(self) -> int:
        return self.value


def factorize(n: int, sieve: Optional[SieveTable] = None) -> FactoredInt:
    """Factor n >= 1 by sieve lookup when available, else trial division."""
    if n < 1:
        raise ValueError("factorize requires a positive integer")
    if sieve is not None and n <= sieve.limit:
        return sieve.factorize(n)
    factors = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return FactoredInt(n, tuple(factors))


def ensure_factored(n, sieve: Optional[SieveTable] = None) -> FactoredInt:
    if isinstance(n, FactoredInt):
        return n
    return factorize(int(n), sieve)


# ---------------------------------------------------------------------------
# multiplicative functions
# ---------------------------------------------------------------------------


def mobius(n) -> int:
    """Moebius function: 0 on non-squarefree, else (-1)^(#prime factors)."""
    f = ensure_factored(n)
    if any(e >= 2 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def euler_phi(n) -> int:
    """Euler totient via phi(q) = q * prod_{p|q} (1 - 1/p), exactly."""
    f = ensure_factored(n)
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def omega(n) -> int:
    """Number of distinct prime divisors."""
    return len(ensure_factored(n).factors)


def is_squarefree(n) -> bool:
    return all(e == 1 for _, e in ensure_factored(n).factors)


def fn_weight(n: int, d) -> Fraction:
    """Multiplicative weight on squarefree integers with local value
    (p^(n-1) - 1) / (p^n - p^(n-1)); zero on non-squarefree arguments.

    Its divisor sums give the co-cyclic class counts: summing over d | q and
    scaling by q^(n-1) yields count_primitive_classes(n, q), and the series
    sum_{d>=1} fn_weight(n, d)/d converges to the dimension-n density
    constant (constants.theta_n).
    """
    if n < 2:
        raise ValueError("fn_weight requires n >= 2")
    f = ensure_factored(d)
    if not is_squarefree(f):
        return Fraction(0)
    out = Fraction(1)
    for p, _ in f.factors:
        out *= Fraction(p ** (n - 1) - 1, p**n - p ** (n - 1))
    return out


# ---------------------------------------------------------------------------
# partitions and the abelian-group counting function
# ---------------------------------------------------------------------------

_partition_memo = [1]


def partition_count(k: int) -> int:
    """Number of integer partitions of k, by the pentagonal-number
    recurrence with exact integers (memoized, O(k^1.5) time)."""
    if k < 0:
        raise ValueError("partition_count requires k >= 0")
    memo = _partition_memo
    while len(memo) <= k:
        m = len(memo)
        total = 0
        j = 1
        while True:
            g1 = m - j * (3 * j - 1) // 2
            g2 = m - j * (3 * j + 1) // 2
            if g1 < 0 and g2 < 0:
                break
            term = (memo[g1] if g1 >= 0 else 0) + (memo[g2] if g2 >= 0 else 0)
            total += term if j % 2 else -term
            j += 1
        memo.append(total)
    return memo[k]


def abelian_group_count(n) -> int:
    """Number of isomorphism classes of abelian groups of order n:
    the product of partition_count(e) over the prime exponents e of n."""
    f = ensure_factored(n)
    out = 1
    for _, e in f.factors:
        out *= partition_count(e)
    return out


# ---------------------------------------------------------------------------
# numpy tables (exact integer sieves)
# ---------------------------------------------------------------------------


def totient_table(limit: int) -> np.ndarray:
    """phi(0..limit) as int64 (phi(0) set to 0)."""
    sieve = shared_sieve(max(limit, 2))
    phi = np.arange(limit + 1, dtype=np.int64)
    phi[0] = 0
    for p in sieve.primes():
        p = int(p)
        if p > limit:
            break
        phi[p::p] = phi[p::p] // p * (p - 1)
    return phi


def mobius_table(limit: int) -> np.ndarray:
    """mu(0..limit) as int8 (mu(0) set to 0)."""
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    sieve = shared_sieve(max(limit, 2))
    for p in sieve.primes():
        p = int(p)
        if p > limit:
            break
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    return mu


def squarefree_mask(limit: int) -> np.ndarray:
    """Boolean mask: mask[k] iff k is squarefree (mask[0] False)."""
    mask = np.ones(limit + 1, dtype=bool)
    mask[0] = False
    for p in shared_sieve(max(2, math.isqrt(limit))).primes():
        p = int(p)
        if p * p > limit:
            break
        mask[p * p :: p * p] = False
    return mask


# ---------------------------------------------------------------------------
# scalar sums
# ---------------------------------------------------------------------------


def landau_sum(t: int):
    """sum_{d<=t} 1/phi(d): exact Fraction for t <= EXACT_SUM_LIMIT, else an
    ErrBoundedReal from correctly-rounded float accumulation."""
    if t < 1:
        raise ValueError("landau_sum requires t >= 1")
    phi = totient_table(t)
    if t <= EXACT_SUM_LIMIT:
        return sum(Fraction(1, int(v)) for v in phi[1:])
    total = math.fsum(1.0 / phi[1:])
    # each 1/phi rounds within 1/2 ulp and fsum rounds once
    return ErrBoundedReal(total, 2 * _FLOAT_EPS * total)


def ward_sum(v: int):
    """sum over squarefree n <= v of 1/phi(n); exact below EXACT_SUM_LIMIT.

    The shifted values ward_sum(v) - log(v) stabilize as v grows; the
    limiting constant is only ever reported empirically, never asserted.
    """
    if v < 1:
        raise ValueError("ward_sum requires v >= 1")
    phi = totient_table(v)
    mask = squarefree_mask(v)
    if v <= EXACT_SUM_LIMIT:
        return sum(Fraction(1, int(p)) for p, m in zip(phi[1:], mask[1:]) if m)
    total = math.fsum(1.0 / phi[1:][mask[1:]])
    return ErrBoundedReal(total, 2 * _FLOAT_EPS * total)


def landau_prediction(t: int, tol: float = 1e-4) -> ErrBoundedReal:
    """Leading term of the classical asymptotic for sum_{d<=t} 1/phi(d):
    theta * (log t + gamma - sum_p log p / (p^2 - p + 1)).

    The O(log t / t) remainder is not included; the returned error bound
    covers only the constant evaluation.
    """
    from .constants import theta, prime_log_weight_sum  # deferred: avoids cycle

    if t < 1:
        raise ValueError("landau_prediction requires t >= 1")
    lt = math.log(t)
    log_t = ErrBoundedReal(lt, 4 * _FLOAT_EPS * max(1.0, lt))
    return theta() * (log_t + EULER_MASCHERONI - prime_log_weight_sum(tol=tol / 4))


def ward_constant_ladder(bounds: Iterable[int]) -> list[tuple[int, float]]:
    """(V, ward_sum(V) - log V) pairs: the shifted values stabilize toward
    the limiting constant, which is reported empirically and never
    asserted to any particular value."""
    out = []
    for v in bounds:
        w = ward_sum(v)
        w_float = float(w) if isinstance(w, Fraction) else float(w.value)
        out.append((v, w_float - math.log(v)))
    return out


def squarefree_coprime_count(x: int, d) -> int:
    """Exact number of squarefree k <= x with gcd(k, d) = 1, by sieve."""
    if x < 1:
        raise ValueError("squarefree_coprime_count requires x >= 1")
    f = ensure_factored(d)
    mask = squarefree_mask(x)
    for p in f.primes:
        if p <= x:
            mask[p::p] = False
    return int(np.count_nonzero(mask))


def squarefree_coprime_prediction(x: int, d) -> ErrBoundedReal:
    """Companion first-order prediction (6x/pi^2) prod_{p|d} (1 + 1/p)^-1."""
    from .constants import inv_zeta2  # deferred: avoids import cycle

    f = ensure_factored(d)
    scale = Fraction(x)
    for p in f.primes:
        scale *= Fraction(p, p + 1)
    return inv_zeta2() * ErrBoundedReal.exact(scale)


def divisor_mobius_sum(q, n: int) -> Fraction:
    """sum_{d|q} mu(d)/d^n, exactly (equals prod_{p|q} (1 - p^-n))."""
    f = ensure_factored(q)
    total = Fraction(0)
    for dv in f.divisors():
        m = mobius(factorize(dv))
        if m:
            total += Fraction(m, dv**n)
    return total
