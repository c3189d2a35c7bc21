"""Reals carried together with a rigorous absolute error bound.

Every constant this package evaluates numerically (zeta values, Euler
products, density limits) is returned as an :class:`ErrBoundedReal`: a
working-precision value ``v`` and a bound ``e >= 0`` such that the exact
mathematical quantity is guaranteed to lie in ``[v - e, v + e]``.

Arithmetic propagates bounds conservatively and folds in a small slack per
floating operation.  The backing float is an mpmath ``mpf`` at 120 bits of
significand, so the per-operation rounding slack (~1e-36 relative) is far
below every tolerance used in practice, but it is tracked anyway to keep
the interval contract honest.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp, mpf, exp as _mp_exp, log as _mp_log

# Working precision for all error-bounded evaluation in the package.
PRECISION_BITS = 120
mp.prec = PRECISION_BITS

# Conservative relative rounding slack per basic operation (2 ulp).
_EPS = mpf(2) ** (1 - PRECISION_BITS)
# Extra slack for transcendental functions (exp/log), per call.
_TRANS_EPS = mpf(2) ** (3 - PRECISION_BITS)


def _to_mpf(x) -> tuple[mpf, mpf]:
    """Convert x to (mpf value, conversion error bound)."""
    if isinstance(x, mpf_type):
        return x, mpf(0)
    if isinstance(x, int):
        v = mpf(x)
        if x.bit_length() <= PRECISION_BITS:
            return v, mpf(0)
        return v, abs(v) * _EPS
    if isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
        v = mpf(num) / mpf(den)
        exact = (
            num.bit_length() <= PRECISION_BITS
            and den.bit_length() <= PRECISION_BITS
            and (den & (den - 1)) == 0  # power of two denominators divide exactly
        )
        return v, mpf(0) if exact else abs(v) * _EPS
    if isinstance(x, float):
        return mpf(x), mpf(0)  # binary64 embeds exactly in 120 bits
    if isinstance(x, str):
        v = mpf(x)
        return v, abs(v) * _EPS
    raise TypeError(f"cannot convert {type(x).__name__} to ErrBoundedReal")


mpf_type = type(mpf(0))


class ErrBoundedReal:
    """A real value plus a rigorous absolute error bound.

    Invariant: the exact quantity lies in [value - err, value + err].
    Instances are immutable; arithmetic returns new instances with
    conservatively propagated bounds.
    """

    __slots__ = ("value", "err")

    def __init__(self, value, err=0):
        v, ce = _to_mpf(value)
        e, ce2 = _to_mpf(err)
        if e < 0:
            raise ValueError("error bound must be nonnegative")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "err", e + ce + ce2)

    def __setattr__(self, name, value):
        raise AttributeError("ErrBoundedReal is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def exact(cls, x) -> "ErrBoundedReal":
        """Wrap an int/Fraction/float, folding in conversion error only."""
        return cls(x, 0)

    @classmethod
    def from_interval(cls, lo, hi) -> "ErrBoundedReal":
        lo_v, lo_e = _to_mpf(lo)
        hi_v, hi_e = _to_mpf(hi)
        if hi_v < lo_v:
            raise ValueError("empty interval")
        mid = (lo_v + hi_v) / 2
        half = (hi_v - lo_v) / 2
        return cls(mid, half + lo_e + hi_e + abs(mid) * _EPS)

    # -- interval views -----------------------------------------------

    @property
    def lower(self) -> mpf_type:
        return self.value - self.err

    @property
    def upper(self) -> mpf_type:
        return self.value + self.err

    def contains(self, x) -> bool:
        v, e = _to_mpf(x)
        return self.lower - e <= v <= self.upper + e

    def overlaps(self, other: "ErrBoundedReal") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def __float__(self) -> float:
        return float(self.value)

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "ErrBoundedReal":
        if isinstance(x, ErrBoundedReal):
            return x
        return ErrBoundedReal(x, 0)

    def __add__(self, other):
        o = self._coerce(other)
        v = self.value + o.value
        return ErrBoundedReal(v, self.err + o.err + abs(v) * _EPS)

    __radd__ = __add__

    def __neg__(self):
        return ErrBoundedReal(-self.value, self.err)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        v = self.value * o.value
        e = (
            abs(self.value) * o.err
            + abs(o.value) * self.err
            + self.err * o.err
            + abs(v) * _EPS
        )
        return ErrBoundedReal(v, e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if abs(o.value) <= o.err:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / o.value
        # |x/y - a/b| <= (ea + |a/b| eb) / (|b| - eb) on the interval
        e = (self.err + abs(v) * o.err) / (abs(o.value) - o.err) + abs(v) * _EPS
        return ErrBoundedReal(v, e)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = ErrBoundedReal(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exp(self) -> "ErrBoundedReal":
        v = _mp_exp(self.value)
        # exp is increasing and convex: worst deviation is at the upper end
        e = _mp_exp(self.value + self.err) - v + abs(v) * _TRANS_EPS
        return ErrBoundedReal(v, e)

    def log(self) -> "ErrBoundedReal":
        if self.lower <= 0:
            raise ValueError("log of an interval touching zero")
        v = _mp_log(self.value)
        # |log'| <= 1/(value - err) on the interval
        e = self.err / (self.value - self.err) + (abs(v) + 1) * _TRANS_EPS
        return ErrBoundedReal(v, e)

    # -- comparisons (certain only) -------------------------------------

    def certainly_less(self, other) -> bool:
        o = self._coerce(other)
        return self.upper < o.lower

    def certainly_greater(self, other) -> bool:
        o = self._coerce(other)
        return self.lower > o.upper

    def __repr__(self) -> str:
        return f"ErrBoundedReal({mp.nstr(self.value, 20)} +/- {mp.nstr(self.err, 3)})"


def format_errbounded(v: ErrBoundedReal, digits: int = 21) -> dict:
    """Stable JSON-ready rendering {value, err} as decimal strings."""
    return {"value": mp.nstr(v.value, digits), "err": mp.nstr(v.err, 4)}
