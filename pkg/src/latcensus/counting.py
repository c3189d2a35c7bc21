"""Counting formulas and their brute-force oracles.

Two independent routes are kept for every headline count:

* closed-form/multiplicative evaluation (`count_primitive_classes`,
  `count_cocyclic`, `total_count`), used at scale;
* literal enumeration oracles (`count_primitive_classes_bruteforce`,
  `census_cocyclic_bruteforce`, `count_by_rank_bruteforce`), used to verify
  the formulas exactly on the desk-scale grids.

All counts are arbitrary-precision integers end to end.  Range sums expose
the partitioned-accumulation contract: split [1, V], sum ranges
independently, combine exactly; results are independent of worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from . import lattice
from .arith import ensure_factored, euler_phi, shared_sieve
from .errbound import ErrBoundedReal
from .errors import CapExceededError
from .parallel import partitioned_sum

DEFAULT_VECTOR_CAP = 10**9
DEFAULT_MATERIALIZE_CAP = 300_000
DEFAULT_ENUM_CAP = 10**8


# ---------------------------------------------------------------------------
# classes of primitive vectors mod q  (= co-cyclic lattices of index q)
# ---------------------------------------------------------------------------


def _prime_power_class_count(n: int, p: int, e: int) -> int:
    # p^(e(n-1)) * (1 + (p^(n-1)-1)/(p^n - p^(n-1))), cleared to an integer
    pn1 = p ** (n - 1)
    geom = (pn1 - 1) // (p - 1)  # 1 + p + ... + p^(n-2)
    return pn1**e + pn1 ** (e - 1) * geom


def count_primitive_classes(n: int, q) -> int:
    """Closed-form number of unit-scaling classes of primitive vectors
    mod q, equivalently of co-cyclic sublattices of Z^n of index q:
    q^(n-1) * prod_{p|q} (1 + (p^(n-1)-1)/(p^n - p^(n-1))), exactly."""
    if n < 2:
        raise ValueError("count_primitive_classes requires n >= 2")
    f = ensure_factored(q)
    out = 1
    for p, e in f.factors:
        out *= _prime_power_class_count(n, p, e)
    return out


def _canonical_class_vectors(n: int, q: int) -> np.ndarray:
    """Packed canonical representatives of every primitive class mod q.

    Vectors are packed in base q (lexicographic order == numeric order);
    the canonical representative of a class is the lexicographically
    smallest vector among its unit scalings.
    """
    size = q**n
    idx = np.arange(size, dtype=np.int64)
    comps = [(idx // q ** (n - 1 - i)) % q for i in range(n)]
    g = np.full(size, q, dtype=np.int64)
    for c in comps:
        g = np.gcd(g, c)
    primitive = g == 1
    weights = [q ** (n - 1 - i) for i in range(n)]
    best = idx.copy()
    for lam in range(2, q):
        if math.gcd(lam, q) != 1:
            continue
        packed = np.zeros(size, dtype=np.int64)
        for c, w in zip(comps, weights):
            packed += ((lam * c) % q) * w
        np.minimum(best, packed, out=best)
    return idx[primitive & (best == idx)]


def _primitive_vector_count(n: int, q: int) -> int:
    """Exact count of primitive vectors mod q from the per-residue gcd
    distribution (one q-element scan, then an n-fold fold over the divisor
    lattice; no Moebius inversion and no multiplicativity in q)."""
    g = np.gcd(np.arange(q, dtype=np.int64), q)
    divs, counts = np.unique(g, return_counts=True)
    base = [(int(d), int(c)) for d, c in zip(divs, counts)]
    dist = {q: 1}
    for _ in range(n):
        new: dict[int, int] = {}
        for gcur, cnt in dist.items():
            for d, c in base:
                key = math.gcd(gcur, d)
                new[key] = new.get(key, 0) + cnt * c
        dist = new
    return dist.get(1, 0)


def count_primitive_classes_bruteforce(
    n: int,
    q: int,
    cap: int = DEFAULT_VECTOR_CAP,
    materialize_cap: int = DEFAULT_MATERIALIZE_CAP,
) -> int:
    """Oracle count of primitive classes mod q, independent of the formula.

    Small moduli (q^n <= materialize_cap) materialize the canonical
    lex-least representative of every primitive vector and count the
    distinct ones.  Above that, primitive vectors are counted exactly via
    the gcd-distribution scan and divided by the class size phi(q) (the
    unit action on primitive vectors is free; the division is asserted to
    be exact).  q^n above `cap` raises CapExceededError.
    """
    if n < 2:
        raise ValueError("count_primitive_classes_bruteforce requires n >= 2")
    if q < 1:
        raise ValueError("q must be >= 1")
    if q == 1:
        return 1
    if q**n > cap:
        raise CapExceededError(f"{q}^{n} candidate vectors exceed cap {cap}")
    if q**n <= materialize_cap:
        return int(_canonical_class_vectors(n, q).shape[0])
    npv = _primitive_vector_count(n, q)
    phi = euler_phi(q)
    if npv % phi:
        raise RuntimeError("unit action on primitive vectors is not free")
    return npv // phi


def primitive_class_representatives(n: int, q: int) -> list[tuple[int, ...]]:
    """One canonical (lex-least) vector per primitive class mod q."""
    if q == 1:
        return [(0,) * n]
    packed = _canonical_class_vectors(n, q)
    out = []
    for val in packed:
        val = int(val)
        vec = []
        for i in range(n):
            w = q ** (n - 1 - i)
            vec.append(val // w % q)
        out.append(tuple(vec))
    return out


# ---------------------------------------------------------------------------
# cumulative censuses up to index V
# ---------------------------------------------------------------------------


def count_cocyclic(n: int, V: int, workers: Optional[int] = None) -> int:
    """Number of co-cyclic sublattices of Z^n of index <= V: the sum of
    count_primitive_classes(n, q) over q <= V, via one sieve pass."""
    if n < 2:
        raise ValueError("count_cocyclic requires n >= 2")
    if V < 1:
        raise ValueError("V must be >= 1")
    spf = shared_sieve(max(V, 2)).spf

    def range_sum(lo: int, hi: int) -> int:
        total = 0
        for q in range(lo, hi + 1):
            k = q
            a = 1
            while k > 1:
                p = int(spf[k])
                e = 0
                while k % p == 0:
                    k //= p
                    e += 1
                a *= _prime_power_class_count(n, p, e)
            total += a
        return total

    return partitioned_sum(range_sum, 1, V, workers)


def count_squarefree(n: int, V: int, workers: Optional[int] = None) -> int:
    """Co-cyclic census restricted to squarefree index q <= V."""
    if n < 2:
        raise ValueError("count_squarefree requires n >= 2")
    if V < 1:
        raise ValueError("V must be >= 1")
    spf = shared_sieve(max(V, 2)).spf

    def range_sum(lo: int, hi: int) -> int:
        total = 0
        for q in range(lo, hi + 1):
            k = q
            a = 1
            while k > 1:
                p = int(spf[k])
                k //= p
                if k % p == 0:
                    a = 0
                    break
                a *= _prime_power_class_count(n, p, 1)
            total += a
        return total

    return partitioned_sum(range_sum, 1, V, workers)


def total_count(n: int, V: int, workers: Optional[int] = None) -> int:
    """All full-rank sublattices of Z^n of index <= V, exactly."""
    if n < 1:
        raise ValueError("total_count requires n >= 1")
    if V < 1:
        raise ValueError("V must be >= 1")
    if n == 1:
        return V
    spf = shared_sieve(max(V, 2)).spf

    def range_sum(lo: int, hi: int) -> int:
        total = 0
        for q in range(lo, hi + 1):
            k = q
            c = 1
            while k > 1:
                p = int(spf[k])
                e = 0
                while k % p == 0:
                    k //= p
                    e += 1
                c *= lattice._count_prime_power(n, p, e)
            total += c
        return total

    return partitioned_sum(range_sum, 1, V, workers)


# ---------------------------------------------------------------------------
# leading-order predictions (no lower-order/error terms included)
# ---------------------------------------------------------------------------


def cocyclic_leading_term(n: int, V: int, tol: float = 1e-10) -> ErrBoundedReal:
    """theta_n * V^n / n; leading order only."""
    from .constants import theta_n

    return theta_n(n, tol) * ErrBoundedReal.exact(V**n) / n


def squarefree_leading_term(n: int, V: int, tol: float = 1e-10) -> ErrBoundedReal:
    """rho_n * V^n / n; leading order only."""
    from .constants import rho_n

    return rho_n(n, tol) * ErrBoundedReal.exact(V**n) / n


def total_leading_term(n: int, V: int, tol: float = 1e-10) -> ErrBoundedReal:
    """Xi_{2,n} * V^n / n; leading order only."""
    from .constants import xi

    return xi(2, n, tol) * ErrBoundedReal.exact(V**n) / n


# ---------------------------------------------------------------------------
# enumeration oracles
# ---------------------------------------------------------------------------


def census_cocyclic_bruteforce(n: int, V: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Count co-cyclic lattices of index <= V by full enumeration plus
    Smith-form rank, independent of every closed form."""
    _guard_enumeration(n, V, cap)
    total = 0
    for q in range(1, V + 1):
        for basis in lattice._enumerate_sublattices(n, q):
            if lattice.is_cocyclic(basis):
                total += 1
    return total


def census_squarefree_bruteforce(n: int, V: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Count lattices of squarefree index <= V by enumeration, verifying the
    quotient of each is cyclic along the way."""
    from .arith import is_squarefree, factorize

    _guard_enumeration(n, V, cap)
    total = 0
    for q in range(1, V + 1):
        if not is_squarefree(factorize(q)):
            continue
        for basis in lattice._enumerate_sublattices(n, q):
            if not lattice.is_cocyclic(basis):
                raise RuntimeError(f"squarefree index {q} gave a non-cyclic quotient")
            total += 1
    return total


def census_total_bruteforce(n: int, V: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Count all lattices of index <= V by literal enumeration."""
    _guard_enumeration(n, V, cap)
    total = 0
    for q in range(1, V + 1):
        for _ in lattice._enumerate_sublattices(n, q):
            total += 1
    return total


def count_by_rank_bruteforce(n: int, m: int, V: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Lattices of index <= V whose quotient needs exactly m generators,
    by enumeration + Smith form."""
    if m < 0:
        raise ValueError("rank must be >= 0")
    _guard_enumeration(n, V, cap)
    total = 0
    for q in range(1, V + 1):
        for basis in lattice._enumerate_sublattices(n, q):
            if lattice.quotient_rank(basis) == m:
                total += 1
    return total


def counts_by_rank_bruteforce(n: int, V: int, cap: int = DEFAULT_ENUM_CAP) -> dict[int, int]:
    """Full rank stratification {m: count} of the index <= V census."""
    _guard_enumeration(n, V, cap)
    out: dict[int, int] = {}
    for q in range(1, V + 1):
        for basis in lattice._enumerate_sublattices(n, q):
            r = lattice.quotient_rank(basis)
            out[r] = out.get(r, 0) + 1
    return out


def _guard_enumeration(n: int, V: int, cap: int) -> None:
    if n < 1 or V < 1:
        raise ValueError("need n >= 1 and V >= 1")
    total = sum(lattice.count_sublattices_upto(n, V))
    if total > cap:
        raise CapExceededError(f"enumerating {total} lattices exceeds cap {cap}")


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class DensityReport:
    """Exact counts at (n, V) with leading-order predictions attached."""

    n: int
    V: int
    count_cocyclic: int
    count_squarefree: int
    count_total: int
    counts_by_rank: Optional[dict[int, int]] = None
    predicted_cocyclic: Optional[ErrBoundedReal] = None
    predicted_squarefree: Optional[ErrBoundedReal] = None
    predicted_total: Optional[ErrBoundedReal] = None
    oracle_cocyclic: Optional[int] = None

    def __post_init__(self):
        if not self.count_squarefree <= self.count_cocyclic <= self.count_total:
            raise ValueError("count ordering violated")
        if self.counts_by_rank is not None:
            if sum(self.counts_by_rank.values()) != self.count_total:
                raise ValueError("rank stratification does not sum to the total")

    def ratio(self, which: str) -> ErrBoundedReal:
        """count/prediction ratio with the prediction's error propagated."""
        count = {
            "cocyclic": self.count_cocyclic,
            "squarefree": self.count_squarefree,
            "total": self.count_total,
        }[which]
        pred = {
            "cocyclic": self.predicted_cocyclic,
            "squarefree": self.predicted_squarefree,
            "total": self.predicted_total,
        }[which]
        if pred is None:
            raise ValueError(f"no prediction recorded for {which}")
        return ErrBoundedReal.exact(count) / pred

    def to_json_dict(self) -> dict:
        from .errbound import format_errbounded

        doc: dict = {
            "n": self.n,
            "V": self.V,
            "counts": {
                "cocyclic": str(self.count_cocyclic),
                "squarefree": str(self.count_squarefree),
                "total": str(self.count_total),
            },
        }
        if self.counts_by_rank is not None:
            doc["counts"]["by_rank"] = {
                str(m): str(c) for m, c in sorted(self.counts_by_rank.items())
            }
        if self.oracle_cocyclic is not None:
            doc["counts"]["oracle_cocyclic"] = str(self.oracle_cocyclic)
        preds = {}
        for name, val in (
            ("cocyclic", self.predicted_cocyclic),
            ("squarefree", self.predicted_squarefree),
            ("total", self.predicted_total),
        ):
            if val is not None:
                preds[name] = format_errbounded(val)
        if preds:
            doc["predictions"] = preds
            doc["predictions_kind"] = "leading-order"  # no lower-order terms
            doc["ratios"] = {
                name: format_errbounded(self.ratio(name)) for name in preds
            }
        doc["exact_ratios"] = {
            "cocyclic_over_total": _ratio_str(self.count_cocyclic, self.count_total),
            "squarefree_over_total": _ratio_str(self.count_squarefree, self.count_total),
        }
        return doc


def _ratio_str(a: int, b: int) -> str:
    return f"{Fraction(a, b).numerator / Fraction(a, b).denominator:.12g}" if b else "nan"


def density_report(
    n: int,
    V: int,
    *,
    with_rank: bool = False,
    with_oracle: bool = False,
    with_predictions: bool = True,
    tol: float = 1e-10,
    workers: Optional[int] = None,
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> DensityReport:
    """Assemble exact counts (formula route) with optional enumeration
    oracle, rank stratification, and leading-order predictions."""
    if n < 2:
        raise ValueError("density_report requires n >= 2")
    report = DensityReport(
        n=n,
        V=V,
        count_cocyclic=count_cocyclic(n, V, workers),
        count_squarefree=count_squarefree(n, V, workers),
        count_total=total_count(n, V, workers),
    )
    if with_predictions:
        report.predicted_cocyclic = cocyclic_leading_term(n, V, tol)
        report.predicted_squarefree = squarefree_leading_term(n, V, tol)
        report.predicted_total = total_leading_term(n, V, tol)
    if with_rank:
        report.counts_by_rank = counts_by_rank_bruteforce(n, V, enum_cap)
        if sum(report.counts_by_rank.values()) != report.count_total:
            raise RuntimeError("rank stratification disagrees with total count")
    if with_oracle:
        report.oracle_cocyclic = census_cocyclic_bruteforce(n, V, enum_cap)
    return report


def density_ladder_rows(
    n: int, V: int, steps: int, tol: float = 1e-10, workers: Optional[int] = None
) -> Iterable[tuple[int, int, float, float]]:
    """(V_i, count_cocyclic, prediction, ratio) rows for a ladder of bounds."""
    from .constants import theta_n

    const = theta_n(n, tol)
    for i in range(1, steps + 1):
        Vi = V * i // steps
        if Vi < 1:
            continue
        count = count_cocyclic(n, Vi, workers)
        pred = const * ErrBoundedReal.exact(Vi**n) / n
        yield Vi, count, float(pred.value), count / float(pred.value)
