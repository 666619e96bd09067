"""Outward-rounded interval arithmetic on MPFR endpoints.

Every operation returns an enclosure of the exact image of its inputs: the
lower endpoint is computed with round-toward-minus-infinity and the upper
with round-toward-plus-infinity.  Rounding is selected through explicit
gmpy2 context objects, never through the global context, so intervals are
safe to use from several threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import gmpy2
from gmpy2 import mpfr, mpq, mpz

DEFAULT_PRECISION = 256
MPFR = type(mpfr(0))


@lru_cache(maxsize=None)
def _ctx(prec: int, up: bool):
    return gmpy2.context(
        precision=prec,
        round=gmpy2.RoundUp if up else gmpy2.RoundDown,
        emax=gmpy2.get_emax_max(),
        emin=gmpy2.get_emin_min(),
        subnormalize=False,
    )


def down(prec: int):
    return _ctx(prec, False)


def up(prec: int):
    return _ctx(prec, True)


def _to_mpfr(x, prec: int, upward: bool):
    ctx = _ctx(prec, upward)
    if isinstance(x, Fraction):
        x = mpq(x.numerator, x.denominator)
    elif isinstance(x, int):
        x = mpz(x)
    return mpfr(x, prec, context=ctx)


def to_fraction(x) -> Fraction:
    """Exact rational value of a finite mpfr."""
    n, d = x.as_integer_ratio()
    return Fraction(int(n), int(d))


class Interval:
    """A closed interval ``[lo, hi]`` with endpoints at ``prec`` bits."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi=None, prec: int = DEFAULT_PRECISION):
        if hi is None:
            hi = lo
        if not isinstance(lo, MPFR):
            lo = _to_mpfr(lo, prec, False)
        if not isinstance(hi, MPFR):
            hi = _to_mpfr(hi, prec, True)
        if gmpy2.is_nan(lo) or gmpy2.is_nan(hi):
            raise ValueError("NaN endpoint")
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- construction -------------------------------------------------
    @classmethod
    def coerce(cls, x, prec: int = DEFAULT_PRECISION) -> "Interval":
        if isinstance(x, Interval):
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, (int, Rational)) and not isinstance(x, bool):
            x = Fraction(x)
            return cls(_to_mpfr(x, prec, False), _to_mpfr(x, prec, True), prec)
        if isinstance(x, float):
            return cls(mpfr(x), mpfr(x), prec)
        if isinstance(x, MPFR):
            return cls(x, x, prec)
        raise TypeError(f"cannot make an interval from {type(x).__name__}")

    @classmethod
    def from_bounds(cls, lo, hi, prec: int = DEFAULT_PRECISION) -> "Interval":
        lo = Fraction(lo) if not isinstance(lo, MPFR) else lo
        hi = Fraction(hi) if not isinstance(hi, MPFR) else hi
        return cls(_to_mpfr(lo, prec, False), _to_mpfr(hi, prec, True), prec)

    @staticmethod
    def hull(*ivs: "Interval") -> "Interval":
        prec = max(iv.prec for iv in ivs)
        return Interval(min(iv.lo for iv in ivs), max(iv.hi for iv in ivs), prec)

    # -- predicates ---------------------------------------------------
    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, Fraction):
            x = mpq(x.numerator, x.denominator)
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def straddles_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def width(self):
        return up(self.prec).sub(self.hi, self.lo)

    def mid(self):
        return down(self.prec + 2).div(down(self.prec + 2).add(self.lo, self.hi), 2)

    def mag(self):
        """Upper bound on ``|x|`` over the interval."""
        u = up(self.prec)
        return max(u.abs(self.lo), u.abs(self.hi))

    def mig(self):
        """Lower bound on ``|x|`` over the interval."""
        if self.straddles_zero():
            return mpfr(0)
        d = down(self.prec)
        return min(d.abs(self.lo), d.abs(self.hi))

    def certainly_lt(self, other) -> bool:
        other = Interval.coerce(other, self.prec)
        return self.hi < other.lo

    def certainly_gt(self, other) -> bool:
        other = Interval.coerce(other, self.prec)
        return self.lo > other.hi

    def bounds(self) -> tuple[Fraction, Fraction]:
        return to_fraction(self.lo), to_fraction(self.hi)

    # -- arithmetic ---------------------------------------------------
    def _other(self, other) -> "Interval":
        return Interval.coerce(other, self.prec)

    def __neg__(self):
        # negation is exact at the endpoints' own precision; the global context would round
        d, u = down(self.prec), up(self.prec)
        return Interval(d.minus(self.hi), u.minus(self.lo), self.prec)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(mpfr(0), max(up(self.prec).minus(self.lo), self.hi), self.prec)

    def __add__(self, other):
        o = self._other(other)
        p = max(self.prec, o.prec)
        return Interval(down(p).add(self.lo, o.lo), up(p).add(self.hi, o.hi), p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        p = max(self.prec, o.prec)
        return Interval(down(p).sub(self.lo, o.hi), up(p).sub(self.hi, o.lo), p)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        p = max(self.prec, o.prec)
        d, u = down(p), up(p)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo = min(d.mul(a, b) for a, b in pairs)
        hi = max(u.mul(a, b) for a, b in pairs)
        return Interval(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o.straddles_zero():
            raise ZeroDivisionError("divisor interval contains zero")
        p = max(self.prec, o.prec)
        d, u = down(p), up(p)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo = min(d.div(a, b) for a, b in pairs)
        hi = max(u.div(a, b) for a, b in pairs)
        return Interval(lo, hi, p)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __pow__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ipow(other)
        return power(self, other)

    def __rpow__(self, other):
        return power(self._other(other), self)

    def ipow(self, n: int) -> "Interval":
        if n < 0:
            return 1 / self.ipow(-n)
        if n == 0:
            return Interval(mpfr(1), mpfr(1), self.prec)
        d, u = down(self.prec), up(self.prec)
        if n % 2 == 1 or self.lo >= 0:
            return Interval(d.pow(self.lo, n), u.pow(self.hi, n), self.prec)
        if self.hi <= 0:
            return Interval(d.pow(self.hi, n), u.pow(self.lo, n), self.prec)
        return Interval(mpfr(0), max(u.pow(self.lo, n), u.pow(self.hi, n)), self.prec)

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Interval({self.lo.__format__('.20g')}, {self.hi.__format__('.20g')}, prec={self.prec})"

    def with_precision(self, prec: int) -> "Interval":
        return Interval(_to_mpfr(self.lo, prec, False), _to_mpfr(self.hi, prec, True), prec)


# -- elementary functions ---------------------------------------------


def _monotone(x: Interval, name: str) -> Interval:
    d, u = down(x.prec), up(x.prec)
    return Interval(getattr(d, name)(x.lo), getattr(u, name)(x.hi), x.prec)


def exp(x: Interval) -> Interval:
    return _monotone(x, "exp")


def exp10(x: Interval) -> Interval:
    return _monotone(x, "exp10")


def log(x: Interval) -> Interval:
    if x.lo <= 0:
        raise ValueError("log of an interval not certified positive")
    return _monotone(x, "log")


def log10(x: Interval) -> Interval:
    if x.lo <= 0:
        raise ValueError("log10 of an interval not certified positive")
    return _monotone(x, "log10")


def log1p(x: Interval) -> Interval:
    if x.lo <= -1:
        raise ValueError("log1p of an interval not certified above -1")
    return _monotone(x, "log1p")


def sqrt(x: Interval) -> Interval:
    if x.lo < 0:
        raise ValueError("sqrt of an interval with negative part")
    return _monotone(x, "sqrt")


def power(x: Interval, y) -> Interval:
    """``x ** y`` for ``x > 0``; extremes sit at the corners of the box."""
    y = Interval.coerce(y, x.prec)
    if x.lo <= 0:
        raise ValueError("real power needs a base certified positive")
    p = max(x.prec, y.prec)
    d, u = down(p), up(p)
    corners = [(a, b) for a in (x.lo, x.hi) for b in (y.lo, y.hi)]
    return Interval(min(d.pow(a, b) for a, b in corners), max(u.pow(a, b) for a, b in corners), p)


def rootn(x: Interval, n: int) -> Interval:
    """Real ``n``-th root; odd ``n`` accepts negative arguments."""
    if n % 2 == 0 and x.lo < 0:
        raise ValueError("even root of an interval with negative part")
    return Interval(down(x.prec).rootn(x.lo, n), up(x.prec).rootn(x.hi, n), x.prec)


def const_e(prec: int = DEFAULT_PRECISION) -> Interval:
    return Interval(down(prec).exp(1), up(prec).exp(1), prec)


def const_pi(prec: int = DEFAULT_PRECISION) -> Interval:
    return Interval(down(prec).const_pi(), up(prec).const_pi(), prec)


def const_ln10(prec: int = DEFAULT_PRECISION) -> Interval:
    return Interval(down(prec).log(10), up(prec).log(10), prec)


def int_log10(n: int, prec: int = DEFAULT_PRECISION) -> Interval:
    """Enclosure of ``log10(n)`` for a positive integer, exact for powers of ten."""
    if n <= 0:
        raise ValueError("log10 of a non-positive integer")
    k = exact_log10(n)
    if k is not None:
        return Interval(mpfr(k, max(prec, 64)), mpfr(k, max(prec, 64)), prec)
    lo = down(prec).log10(_to_mpfr(n, prec, False))
    hi = up(prec).log10(_to_mpfr(n, prec, True))
    return Interval(lo, hi, prec)


def exact_log10(n: int) -> int | None:
    """``k`` if ``n == 10**k``, else ``None``."""
    if n < 1:
        return None
    if n == 1:
        return 0
    k = gmpy2.bit_scan1(mpz(n))
    if k == 0:
        return None
    odd = mpz(n) >> k
    five = mpz(5) ** k if odd.bit_length() <= 3 * k else None
    return int(k) if five is not None and odd == five else None
