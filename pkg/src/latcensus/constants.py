"""Error-bounded evaluation of the real constants used by the census.

Every routine returns an :class:`ErrBoundedReal` whose interval rigorously
contains the exact constant: partial sums and truncated Euler products are
paired with explicit tail bounds, never heuristics.

Two evaluation devices are used throughout:

* zeta values come from a partial sum plus a midpoint-corrected integral
  bracket of the tail, so modest term counts reach 1e-13 error even at k=2;
* Euler products are truncated at an adaptively chosen prime cutoff after
  one level of zeta acceleration (multiply each local factor by 1 - p^-2
  and compensate with an explicit zeta value), which turns O(p^-2) local
  factors into O(p^-3) ones and makes the prime tail O(cutoff^-2).

The cutoff ladder is capped at 1e8; a tolerance unreachable below the cap
raises PrecisionError.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np
from mpmath import mpf, pi as _mp_pi

from .errbound import ErrBoundedReal, _EPS
from .errors import PrecisionError

DEFAULT_TOL = 1e-10

_CUTOFF_LADDER = (
    1_000, 2_000, 5_000, 10_000, 20_000, 50_000,
    100_000, 200_000, 500_000, 1_000_000, 2_000_000, 5_000_000,
    10_000_000, 100_000_000,
)


def _primes_upto(limit: int) -> list[int]:
    from .arith import shared_sieve

    prm = shared_sieve(limit).primes()
    return [int(p) for p in prm[prm <= limit]]


# ---------------------------------------------------------------------------
# zeta and finite/infinite products of zeta values
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def zeta(k: int, tol: float = 1e-12) -> ErrBoundedReal:
    """zeta(k) for integer k >= 2 with err <= tol.

    Partial sum over j <= J plus the tail bracketed by integrals: the tail
    T = sum_{j>J} j^-k satisfies M - d <= T <= M with
    M = (J+1/2)^(1-k)/(k-1) and d = (k/24)(J-1/2)^(-k-1), so returning
    partial + M - d/2 with error d/2 keeps the interval rigorous.
    """
    if k < 2:
        raise ValueError("zeta requires k >= 2")
    if tol <= 0:
        raise ValueError("tol must be positive")
    J = max(2, math.ceil((k / (21.6 * tol)) ** (1.0 / (k + 1)) + 0.5))
    partial = mpf(0)
    for j in range(1, J + 1):
        partial += mpf(1) / mpf(j) ** k
    mid = mpf(2 * J + 1) / 2
    tail_main = mid ** (1 - k) / (k - 1)
    delta = mpf(k) / 24 * (mpf(2 * J - 1) / 2) ** (-(k + 1))
    value = partial + tail_main - delta / 2
    err = delta / 2 + (J + 8) * _EPS * value
    if err > tol:
        raise PrecisionError(f"zeta({k}) did not reach tol={tol}")
    return ErrBoundedReal(value, err)


def xi(m: int, n: int, tol: float = DEFAULT_TOL) -> ErrBoundedReal:
    """Finite product zeta(m) zeta(m+1) ... zeta(n)."""
    if m < 2:
        raise ValueError("xi requires m >= 2")
    if n < m:
        raise ValueError("xi requires n >= m")
    each = tol / (4 * (n - m + 1))
    out = ErrBoundedReal(1, 0)
    for k in range(m, n + 1):
        out = out * zeta(k, each)
    return out


@lru_cache(maxsize=None)
def xi_inf(m: int, tol: float = DEFAULT_TOL) -> ErrBoundedReal:
    """Infinite product prod_{k>=m} zeta(k), truncated at K with the log-tail
    bound sum_{k>K} log zeta(k) <= sum_{k>K} 2*2^-k = 2^(1-K) folded in."""
    if m < 2:
        raise ValueError("xi_inf requires m >= 2")
    K = max(m + 1, math.ceil(math.log2(16.0 / tol)))
    finite = xi(m, K, tol / 4)
    bound = mpf(2) ** (1 - K)
    tail = ErrBoundedReal.from_interval(mpf(1), 1 + 2 * bound)  # e^x <= 1+2x, x<=1
    return finite * tail


# ---------------------------------------------------------------------------
# generic accelerated Euler products
# ---------------------------------------------------------------------------


def euler_cutoff(tail_coeff: float, tail_exp: int, tol: float) -> int:
    """Smallest ladder cutoff P with tail_coeff * P^(1-s)/(s-1) <= tol/4."""
    if tail_exp < 2:
        raise ValueError("tail exponent must be >= 2")
    for P in _CUTOFF_LADDER:
        s_bound = tail_coeff * P ** (1 - tail_exp) / (tail_exp - 1)
        if s_bound <= tol / 4 and tail_coeff * P ** (-tail_exp) <= 0.5:
            return P
    raise PrecisionError(
        f"Euler-product tolerance {tol} unreachable below cutoff {_CUTOFF_LADDER[-1]}"
    )


def euler_product(
    local: Callable[[int], Fraction],
    tol: float,
    tail_coeff: float,
    tail_exp: int,
) -> tuple[ErrBoundedReal, int]:
    """prod_p local(p) with a rigorous tail interval, as (value, cutoff).

    Analytic premise (checked by the caller's derivation, not at runtime):
    |local(p) - 1| <= tail_coeff * p^(-tail_exp) for every prime p beyond
    the cutoff.  The tail of the product then lies in
    [exp(-S - S^2), exp(S)] for S = sum_{m>P} tail_coeff * m^(-tail_exp).
    """
    P = euler_cutoff(tail_coeff, tail_exp, tol)
    acc = mpf(1)
    count = 0
    for p in _primes_upto(P):
        f = local(p)
        acc = acc * mpf(f.numerator) / mpf(f.denominator)
        count += 1
    partial = ErrBoundedReal(acc, 3 * count * _EPS * abs(acc))
    S = mpf(tail_coeff) * mpf(P) ** (1 - tail_exp) / (tail_exp - 1)
    S = S * (1 + mpf("1e-30"))
    lo = 1 - (S + S * S)  # exp(-x) >= 1-x
    hi = 1 + 2 * S  # exp(x) <= 1+2x for x <= 1
    return partial * ErrBoundedReal.from_interval(lo, hi), P


# ---------------------------------------------------------------------------
# the density constants
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def theta() -> ErrBoundedReal:
    """zeta(2) zeta(3) / zeta(6) = 1.9435964..., the limit of theta_n.

    Computed from the closed form, not the Euler product; err <= 1e-12.
    """
    t = 2e-13
    return zeta(2, t) * zeta(3, t) / zeta(6, t)


def theta_product(tol: float = DEFAULT_TOL) -> ErrBoundedReal:
    """theta evaluated as its Euler product prod_p (1 + 1/(p^2 - p)),
    zeta(2)-accelerated; cross-checks the closed form."""
    value, _ = _theta_product(tol)
    return value


def _theta_product(tol: float) -> tuple[ErrBoundedReal, int]:
    def local(p: int) -> Fraction:
        return (1 + Fraction(1, p * p - p)) * (1 - Fraction(1, p * p))

    prod, P = euler_product(local, tol / 2, tail_coeff=1.0, tail_exp=3)
    return zeta(2, tol / 8) * prod, P


def theta_n(n: int, tol: float = DEFAULT_TOL) -> ErrBoundedReal:
    """Dimension-n co-cyclic density constant
    prod_p (1 + (p^(n-1) - 1)/(p^(n+1) - p^n)), with err <= tol."""
    value, _ = _theta_n(n, tol)
    return value


@lru_cache(maxsize=None)
def _theta_n(n: int, tol: float) -> tuple[ErrBoundedReal, int]:
    if n < 2:
        raise ValueError("theta_n requires n >= 2")

    def local(p: int) -> Fraction:
        pn1 = p ** (n - 1)
        return (1 + Fraction(pn1 - 1, p * pn1 * (p - 1))) * (1 - Fraction(1, p * p))

    prod, P = euler_product(local, tol / 2, tail_coeff=2.0, tail_exp=3)
    return zeta(2, tol / 8) * prod, P


def theta_sandwich(n: int) -> tuple[ErrBoundedReal, ErrBoundedReal]:
    """Exact bracket for theta_n extracted from the closed-form bound chain:

        theta * (1 - 1/(3*2^(n-1))) * prod_{p>=3} (1 - p^-n)
          <= theta_n <=
        theta * (1 - 1/(3*2^(n-1))) * prod_{p>=3} (1 - p^-(n+1)),

    with prod_{p>=3} (1 - p^-k) rewritten as 1/(zeta(k) (1 - 2^-k)).
    Contract: lower.lower <= theta_n <= upper.upper.
    """
    if n < 2:
        raise ValueError("theta_sandwich requires n >= 2")
    t = 1e-13
    front = theta() * ErrBoundedReal.exact(1 - Fraction(1, 3 * 2 ** (n - 1)))
    lower = front / (zeta(n, t) * ErrBoundedReal.exact(1 - Fraction(1, 2**n)))
    upper = front / (zeta(n + 1, t) * ErrBoundedReal.exact(1 - Fraction(1, 2 ** (n + 1))))
    return lower, upper


@lru_cache(maxsize=None)
def rho() -> ErrBoundedReal:
    """prod_p (1 + 1/(p^2 - 1)) = zeta(2), by the closed form."""
    return zeta(2, 2e-13)


@lru_cache(maxsize=None)
def inv_zeta2() -> ErrBoundedReal:
    """6/pi^2, the density of squarefree integers."""
    v = 6 / (_mp_pi * _mp_pi)
    return ErrBoundedReal(v, 6 * _EPS * v)


def rho_n_product(n: int, tol: float = DEFAULT_TOL) -> ErrBoundedReal:
    """The bare Euler product prod_p (1 + (p^(n-1)-1)/(p^(n+1)-p^(n-1))),
    i.e. the squarefree-index constant without its 6/pi^2 prefactor.

    This is the quantity whose ratio to rho() is exactly 1/zeta(n+1)
    (each local factor equals (1 - p^-(n+1))/(1 - p^-2)).
    """
    value, _ = _rho_n_product(n, tol)
    return value


@lru_cache(maxsize=None)
def _rho_n_product(n: int, tol: float) -> tuple[ErrBoundedReal, int]:
    if n < 2:
        raise ValueError("rho_n_product requires n >= 2")

    def local(p: int) -> Fraction:
        pn1 = p ** (n - 1)
        return (1 + Fraction(pn1 - 1, pn1 * p * p - pn1)) * (1 - Fraction(1, p * p))

    prod, P = euler_product(local, tol / 2, tail_coeff=1.0, tail_exp=3)
    return zeta(2, tol / 8) * prod, P


def rho_n(n: int, tol: float = DEFAULT_TOL) -> ErrBoundedReal:
    """Dimension-n squarefree-index density constant
    (6/pi^2) * prod_p (1 + (p^(n-1)-1)/(p^(n+1)-p^(n-1)))."""
    return inv_zeta2() * rho_n_product(n, tol / 2)


@lru_cache(maxsize=None)
def density_cocyclic_limit() -> ErrBoundedReal:
    """Large-n limit of the co-cyclic density: 1/(zeta(6) Xi_4) ~ 0.8469."""
    return 1 / (zeta(6, 1e-12) * xi_inf(4, 1e-11))


@lru_cache(maxsize=None)
def density_squarefree_limit() -> ErrBoundedReal:
    """The squarefree-index limit constant 1/Xi_3 ~ 0.7168."""
    return 1 / xi_inf(3, 1e-11)


# ---------------------------------------------------------------------------
# elliptic-curve comparison constants
# ---------------------------------------------------------------------------


def gekeler_cyclic(tol: float = DEFAULT_TOL) -> ErrBoundedReal:
    """prod_p (1 - 1/((p^2-1) p (p-1))) ~ 0.8137 (cyclic curve groups)."""
    return _gekeler_cyclic(tol)[0]


@lru_cache(maxsize=None)
def _gekeler_cyclic(tol: float) -> tuple[ErrBoundedReal, int]:
    def local(p: int) -> Fraction:
        return 1 - Fraction(1, (p * p - 1) * p * (p - 1))

    return euler_product(local, tol, tail_coeff=3.0, tail_exp=4)


def gekeler_squarefree(tol: float = DEFAULT_TOL) -> ErrBoundedReal:
    """prod_p (1 - (p^3-p-1)/((p^2-1) p^2 (p-1))) ~ 0.4401 (squarefree curve
    group orders); local factors are 1 - O(p^-2), so the product is
    accelerated by (1-p^-2)(1-p^-3) and compensated with zeta(2) zeta(3)."""
    return _gekeler_squarefree(tol)[0]


@lru_cache(maxsize=None)
def _gekeler_squarefree(tol: float) -> tuple[ErrBoundedReal, int]:
    def local(p: int) -> Fraction:
        p2, p3 = p * p, p * p * p
        raw = 1 - Fraction(p3 - p - 1, (p2 - 1) * p2 * (p - 1))
        return raw / ((1 - Fraction(1, p2)) * (1 - Fraction(1, p3)))

    prod, P = euler_product(local, tol / 2, tail_coeff=5.0, tail_exp=4)
    return prod / (zeta(2, tol / 16) * zeta(3, tol / 16)), P


# ---------------------------------------------------------------------------
# the prime sum in the totient-reciprocal asymptotic
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def prime_log_weight_sum(tol: float = 2e-5) -> ErrBoundedReal:
    """sum_p log p / (p^2 - p + 1), with the tail over p > P bounded by
    sum_{m>P} 1.25 log m / m^2 <= 1.25 (log P + 1)/P."""
    P = None
    for cand in (10**6, 2 * 10**6, 4 * 10**6, 8 * 10**6, 16 * 10**6):
        if 1.25 * (math.log(cand) + 1) / cand <= tol / 2:
            P = cand
            break
    if P is None:
        raise PrecisionError(f"prime_log_weight_sum tolerance {tol} unreachable")
    primes = np.asarray(_primes_upto(P), dtype=np.float64)
    terms = np.log(primes) / (primes * primes - primes + 1)
    value = math.fsum(terms)
    tail = 1.25 * (math.log(P) + 1) / P
    float_slack = 4 * 2.0**-52 * value
    return ErrBoundedReal.from_interval(value - float_slack, value + tail + float_slack)


# ---------------------------------------------------------------------------
# named-constant registry (CLI surface)
# ---------------------------------------------------------------------------


def evaluate_constant(name: str, *, k=None, n=None, m=None, r=None, p=None,
                      tol: float = DEFAULT_TOL):
    """Evaluate a named constant; returns (ErrBoundedReal, prime_cutoff|None).

    Names accept '-' or '_' interchangeably.  Unknown names raise KeyError.
    """
    from . import groups  # deferred: groups imports this module

    key = name.replace("_", "-")
    if key == "zeta":
        _req(k is not None, "zeta needs --k")
        return zeta(k, min(tol, 1e-12)), None
    if key == "xi":
        _req(m is not None and n is not None, "xi needs --m and --n")
        return xi(m, n, tol), None
    if key == "xi-inf":
        _req(m is not None, "xi-inf needs --m")
        return xi_inf(m, tol), None
    if key == "theta":
        return theta(), None
    if key == "theta-product":
        return _theta_product(tol)
    if key == "theta-n":
        _req(n is not None, "theta-n needs --n")
        return _theta_n(n, tol)
    if key == "rho":
        return rho(), None
    if key == "rho-n":
        _req(n is not None, "rho-n needs --n")
        val, P = _rho_n_product(n, tol / 2)
        return inv_zeta2() * val, P
    if key == "rho-n-product":
        _req(n is not None, "rho-n-product needs --n")
        return _rho_n_product(n, tol)
    if key == "density-cocyclic":
        return density_cocyclic_limit(), None
    if key == "density-squarefree":
        return density_squarefree_limit(), None
    if key == "gekeler-cyclic":
        return _gekeler_cyclic(tol)
    if key == "gekeler-squarefree":
        return _gekeler_squarefree(tol)
    if key == "gamma":
        from .arith import EULER_MASCHERONI

        return EULER_MASCHERONI, None
    if key == "landau-prime-sum":
        return prime_log_weight_sum(), None
    if key == "uniform-cyclic":
        return groups.uniform_density_cyclic(), None
    if key == "uniform-squarefree":
        return groups.uniform_density_squarefree(), None
    if key == "rank-prob":
        _req(p is not None and r is not None, "rank-prob needs --p and --r")
        return groups.rank_prob(p, r, tol), None
    if key == "delta-rank-le":
        _req(r is not None, "delta-rank-le needs --r")
        return groups._delta_rank_at_most(r, tol)
    if key == "delta-rank-ge-bound":
        _req(r is not None, "delta-rank-ge-bound needs --r")
        return groups.delta_rank_at_least_bound(r), None
    raise KeyError(name)


CONSTANT_NAMES = (
    "zeta", "xi", "xi-inf", "theta", "theta-product", "theta-n",
    "rho", "rho-n", "rho-n-product", "density-cocyclic", "density-squarefree",
    "gekeler-cyclic", "gekeler-squarefree", "gamma", "landau-prime-sum",
    "uniform-cyclic", "uniform-squarefree", "rank-prob",
    "delta-rank-le", "delta-rank-ge-bound",
)


def _req(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)
