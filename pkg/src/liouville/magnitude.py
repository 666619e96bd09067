"""Leveled magnitudes for quantities too large to write down.

A :class:`Magnitude` stores a positive real ``v`` at one of three levels:

* level 0 -- ``v`` itself, an exact integer ``>= 1``;
* level 1 -- an enclosure ``[lo, hi]`` of ``log10(v)``;
* level 2 -- an enclosure ``[lo, hi]`` of ``log10(log10(v))`` (so ``v > 1``).

Enclosure endpoints are exact rationals.  Arithmetic keeps them exact where
it can (sums of logs, integer multiples) and falls back to outward-rounded
MPFR evaluation otherwise, so every result encloses the true value.  The
``rounding`` tag only selects which endpoint is reported as the payload:
lower-bound uses round ``"down"``, upper-bound uses round ``"up"``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpz

from .interval import (
    DEFAULT_PRECISION,
    Interval,
    exact_log10,
    exp10,
    int_log10,
    log10,
    log1p,
    to_fraction,
    const_ln10,
)

DEFAULT_DIGIT_CAP = 10**6
# exp10 of a level-2 payload overflows MPFR beyond roughly 3e8
_EXP10_LIMIT = 10**8
_LOG2_10 = 3.3219280948873626


class Ordering(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"
    INCONCLUSIVE = "INCONCLUSIVE"


ROUNDINGS = ("down", "up", "exact")


@dataclass(frozen=True)
class Magnitude:
    level: int
    lo: Fraction
    hi: Fraction
    rounding: str = "exact"

    def __post_init__(self):
        if self.level not in (0, 1, 2):
            raise ValueError("level must be 0, 1 or 2")
        if self.lo > self.hi:
            raise ValueError("empty magnitude enclosure")
        if self.level == 0 and (self.lo != self.hi or self.lo.denominator != 1 or self.lo < 1):
            raise ValueError("level-0 magnitude must be an exact integer >= 1")
        if self.rounding not in ROUNDINGS:
            raise ValueError(f"unknown rounding {self.rounding!r}")
        if self.lo == self.hi:
            object.__setattr__(self, "rounding", "exact")
        elif self.rounding == "exact":
            object.__setattr__(self, "rounding", "down")

    # -- accessors -----------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def payload(self) -> Fraction:
        return self.hi if self.rounding == "up" else self.lo

    @property
    def value(self) -> int:
        if self.level != 0:
            raise ValueError("only level-0 magnitudes carry their integer value")
        return self.lo.numerator

    def rounded(self, rounding: str) -> "Magnitude":
        if self.exact:
            return self
        return Magnitude(self.level, self.lo, self.hi, rounding)

    def log10(self, prec: int = DEFAULT_PRECISION) -> Interval | None:
        """Enclosure of ``log10(v)``, or ``None`` if it overflows MPFR."""
        return _L(self, prec)

    def loglog10(self, prec: int = DEFAULT_PRECISION) -> Interval:
        """Enclosure of ``log10(log10(v))``; requires ``v > 1``."""
        iv = _LL(self, prec)
        if iv is None:
            raise ValueError("log10(log10(v)) undefined for v <= 1")
        return iv

    def to_interval(self, prec: int = DEFAULT_PRECISION) -> Interval:
        if self.level == 0:
            return Interval.coerce(self.value, prec)
        L = _L(self, prec)
        if L is None or L.hi > _EXP10_LIMIT:
            raise OverflowError("magnitude too large for an interval")
        return exp10(L)

    def __repr__(self):
        if self.level == 0:
            n = self.value
            digits = gmpy2.num_digits(n, 10)
            shown = str(n) if digits <= 40 else f"<{digits}-digit integer>"
            return f"Magnitude(level=0, {shown})"
        tag = "log10" if self.level == 1 else "log10log10"
        return f"Magnitude(level={self.level}, {tag}~{_short(self.payload)}, {self.rounding})"

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        out = {"level": self.level, "payload": format_rational(self.payload), "rounding": self.rounding}
        if not self.exact:
            out["slack"] = format_rational(self.hi - self.lo)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Magnitude":
        payload = parse_rational(obj["payload"])
        slack = parse_rational(obj.get("slack", "0"))
        rounding = obj.get("rounding", "exact")
        if rounding == "up":
            return cls(obj["level"], payload - slack, payload, "up")
        return cls(obj["level"], payload, payload + slack, rounding if slack else "exact")


def _short(x: Fraction) -> str:
    return format(mpfr(gmpy2.mpq(x.numerator, x.denominator), 64), ".8g")


@dataclass(frozen=True)
class SignedMagnitude:
    """A real number ``sign * |x|`` with ``|x|`` held as a :class:`Magnitude`.

    Used for base-10 logarithms of bounds, which are usually hugely negative.
    """

    sign: int
    abs: Magnitude | None = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        if (self.sign == 0) != (self.abs is None):
            raise ValueError("zero carries no magnitude")

    def to_json(self) -> dict:
        out = {"sign": self.sign, "abs": None if self.abs is None else self.abs.to_json()}
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_fraction_interval(cls, lo: Fraction, hi: Fraction, rounding: str = "down") -> "SignedMagnitude":
        """From a rational enclosure that does not straddle zero."""
        if lo > 0:
            return cls(1, from_value_bounds(lo, hi, rounding))
        if hi < 0:
            flip = {"down": "up", "up": "down", "exact": "exact"}[rounding]
            return cls(-1, from_value_bounds(-hi, -lo, flip))
        if lo == hi == 0:
            return cls(0)
        raise ValueError("enclosure straddles zero")


def format_rational(x: Fraction) -> str:
    """Exact decimal string when the expansion terminates, else ``p/q``."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    d = den
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{_int_str(num)}/{_int_str(den)}"
    k = max(twos, fives)
    scaled = abs(num) * (10**k // den)
    sign = "-" if num < 0 else ""
    if k == 0:
        return sign + _int_str(scaled)
    digits = _int_str(scaled).rjust(k + 1, "0")
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        a, b = s.split("/")
        return Fraction(int(mpz(a)), int(mpz(b)))
    neg = s.startswith("-")
    s = s.lstrip("+-")
    whole, _, frac = s.partition(".")
    value = Fraction(int(mpz(whole or "0")))
    if frac:
        value += Fraction(int(mpz(frac)), 10 ** len(frac))
    return -value if neg else value


def _int_str(n: int) -> str:
    # sidesteps the interpreter's int->str digit limit
    return mpz(n).digits(10)


# -- constructors ------------------------------------------------------


def mag_from_int(n: int, cap: int = DEFAULT_DIGIT_CAP, prec: int = DEFAULT_PRECISION) -> Magnitude:
    """Level 0 below ``cap`` decimal digits, level 1 above."""
    n = int(n)
    if n < 1:
        raise ValueError("magnitudes represent integers >= 1")
    return _normalize(Magnitude(0, Fraction(n), Fraction(n)), cap, prec)


def mag_from_log10(lo, hi=None, rounding: str = "down", cap: int = DEFAULT_DIGIT_CAP,
                   prec: int = DEFAULT_PRECISION) -> Magnitude:
    lo = Fraction(lo)
    hi = lo if hi is None else Fraction(hi)
    return _normalize(Magnitude(1, lo, hi, rounding), cap, prec)


def mag_from_loglog10(lo, hi=None, rounding: str = "down") -> Magnitude:
    lo = Fraction(lo)
    hi = lo if hi is None else Fraction(hi)
    return Magnitude(2, lo, hi, rounding)


def mag_from_interval(iv: Interval, rounding: str = "down", cap: int = DEFAULT_DIGIT_CAP) -> Magnitude:
    """Level-1 magnitude enclosing a positive interval (level 0 for exact integers)."""
    if not iv.is_positive():
        raise ValueError("magnitude of an interval not certified positive")
    if iv.is_point() and gmpy2.is_integer(iv.lo) and iv.lo >= 1:
        return mag_from_int(int(iv.lo), cap, iv.prec)
    lo, hi = log10(iv).bounds()
    return _normalize(Magnitude(1, lo, hi, rounding), cap, iv.prec)


def from_value_bounds(lo: Fraction, hi: Fraction, rounding: str = "down",
                      prec: int = DEFAULT_PRECISION) -> Magnitude:
    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi and lo.denominator == 1 and lo >= 1:
        return mag_from_int(int(lo), prec=prec)
    return mag_from_interval(Interval.from_bounds(lo, hi, prec), rounding)


def pow10(exponent, rounding: str = "down", cap: int = DEFAULT_DIGIT_CAP,
          prec: int = DEFAULT_PRECISION) -> Magnitude:
    """``10**x`` for a rational or magnitude exponent ``x >= 0``."""
    if isinstance(exponent, Magnitude):
        if exponent.level == 0:
            return pow10(exponent.value, rounding, cap, prec)
        if exponent.level == 1:
            return _normalize(Magnitude(2, exponent.lo, exponent.hi, rounding), cap, prec)
        raise OverflowError("10**x for a level-2 exponent needs level 3")
    x = Fraction(exponent)
    if x.denominator == 1 and 0 <= x <= cap:
        return Magnitude(0, Fraction(10) ** int(x), Fraction(10) ** int(x))
    return _normalize(Magnitude(1, x, x), cap, prec)


def floor_pow10(exponent, cap: int = DEFAULT_DIGIT_CAP, prec: int = DEFAULT_PRECISION) -> Magnitude:
    """``floor(10**x)`` for ``x >= 0`` rational or a magnitude.

    Exact when the result fits under ``cap`` digits.  Otherwise the floor is
    absorbed by ``log10(floor(10**x)) >= x + log10(1 - 10**-x)``.
    """
    if isinstance(exponent, Magnitude):
        if exponent.level == 0:
            return floor_pow10(exponent.value, cap, prec)
        if exponent.level == 2:
            raise OverflowError("floor(10**x) for a level-2 exponent needs level 3")
        Lx = _fr_interval(exponent.lo, exponent.hi, prec)
        if Lx.hi < _EXP10_LIMIT:
            X = exp10(Lx)
            if X.lo < 1:
                raise ValueError("floor_pow10 of a level-1 exponent expects x >= 1")
            corr = log1p(-exp10(-X)) / const_ln10(prec)
            lo = log10(X + corr).lo
        else:
            # the correction is below 10**-x / x: one ulp covers it
            lo = gmpy2.next_below(Lx.lo)
        return _result(2, to_fraction(lo), exponent.hi, "down", cap, prec)
    x = Fraction(exponent)
    if x < 0:
        raise ValueError("floor_pow10 needs a non-negative exponent")
    if x.denominator == 1:
        return pow10(x, "exact", cap, prec)
    if x <= cap:
        # floor(10**(a/b)) is the integer b-th root of 10**a
        a, b = x.numerator, x.denominator
        root, _ = gmpy2.iroot(mpz(10) ** a, b)
        return mag_from_int(int(root), cap, prec)
    if x >= prec:
        # 0 <= x - log10(floor(10**x)) <= 10**-x / ((1 - 10**-x) ln 10) < 2**-prec
        return _normalize(Magnitude(1, x - Fraction(1, 2**prec), x, "down"), cap, prec)
    X = Interval.from_bounds(x, x, prec)
    corr = log1p(-exp10(-X)) / const_ln10(prec)
    lo, _ = (X + corr).bounds()
    return _normalize(Magnitude(1, lo, x, "down"), cap, prec)


# -- internals ---------------------------------------------------------


def _fr_interval(lo: Fraction, hi: Fraction, prec: int) -> Interval:
    return Interval.from_bounds(lo, hi, prec)


def _L(m: Magnitude, prec: int) -> Interval | None:
    if m.level == 0:
        return int_log10(m.value, prec)
    if m.level == 1:
        return _fr_interval(m.lo, m.hi, prec)
    if m.hi > _EXP10_LIMIT:
        return None
    return exp10(_fr_interval(m.lo, m.hi, prec))


def _L_bounds(m: Magnitude, prec: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of log10(v); exact when the representation allows."""
    if m.level == 0:
        k = exact_log10(m.value)
        if k is not None:
            return Fraction(k), Fraction(k)
        return int_log10(m.value, prec).bounds()
    if m.level == 1:
        return m.lo, m.hi
    L = _L(m, prec)
    if L is None:
        raise OverflowError("log10 of a level-2 magnitude overflows")
    return L.bounds()


def _LL(m: Magnitude, prec: int) -> Interval | None:
    if m.level == 2:
        return _fr_interval(m.lo, m.hi, prec)
    lo, hi = _L_bounds(m, prec)
    if hi <= 0:
        return None
    L = _fr_interval(lo, hi, prec)
    hi_ll = log10(Interval(L.hi, L.hi, prec)).hi
    if L.lo <= 0:
        return Interval(mpfr("-inf"), hi_ll, prec)
    return Interval(log10(Interval(L.lo, L.lo, prec)).lo, hi_ll, prec)


def _LOG10_2(prec: int) -> Interval:
    return log10(Interval.coerce(2, prec))


def _normalize(m: Magnitude, cap: int, prec: int) -> Magnitude:
    if m.level == 0:
        n = m.value
        if gmpy2.num_digits(n, 10) - 1 >= cap + 1:
            # more than cap digits for sure
            lo, hi = _L_bounds(m, prec)
            return _normalize(Magnitude(1, lo, hi, m.rounding if lo != hi else "exact"), cap, prec)
        return m
    if m.level == 1:
        hi = m.hi
        # promote once log10(v) itself has more than cap digits
        if hi > 0 and (hi.numerator.bit_length() - hi.denominator.bit_length()) > cap * _LOG2_10 + 2:
            L = _fr_interval(m.lo, m.hi, prec)
            if L.lo <= 0:
                return m
            ll_lo, ll_hi = log10(L).bounds()
            return Magnitude(2, ll_lo, ll_hi, m.rounding if ll_lo != ll_hi else "exact")
        return m
    return m


def _result(level: int, lo: Fraction, hi: Fraction, rounding: str, cap: int, prec: int) -> Magnitude:
    if level == 0:
        return _normalize(Magnitude(0, lo, hi), cap, prec)
    r = "exact" if lo == hi else (rounding if rounding != "exact" else "down")
    return _normalize(Magnitude(level, lo, hi, r), cap, prec)


def _log10_of_sum(X: Interval, Y: Interval) -> Interval:
    """Enclosure of ``log10(10**X + 10**Y)`` without forming either power."""
    if Y.hi > X.hi:
        X, Y = Y, X
    return X + log1p(exp10(Y - X)) / const_ln10(X.prec)


# -- operations --------------------------------------------------------


def mag_mul(a: Magnitude, b: Magnitude, cap: int = DEFAULT_DIGIT_CAP,
            prec: int = DEFAULT_PRECISION, rounding: str = "down") -> Magnitude:
    """Product; the result level is the larger input level (promoted past caps)."""
    if a.level == 0 and b.level == 0:
        n = a.value * b.value
        return mag_from_int(n, cap, prec)
    level = max(a.level, b.level)
    if level == 1:
        alo, ahi = _L_bounds(a, prec)
        blo, bhi = _L_bounds(b, prec)
        return _result(1, alo + blo, ahi + bhi, rounding, cap, prec)
    # level 2: log10(La + Lb) = LLa + log10(1 + Lb / La)
    big, small = (a, b) if a.level == 2 else (b, a)
    if small.level == 2:
        LL = _log10_of_sum(_fr_interval(a.lo, a.hi, prec), _fr_interval(b.lo, b.hi, prec))
    else:
        LLbig = _fr_interval(big.lo, big.hi, prec)
        Ls = _fr_interval(*_L_bounds(small, prec), prec)
        ratio = Ls * exp10(-LLbig)
        LL = LLbig + log1p(ratio) / const_ln10(prec)
    lo, hi = LL.bounds()
    return _result(2, lo, hi, rounding, cap, prec)


def mag_add(a: Magnitude, b: Magnitude, cap: int = DEFAULT_DIGIT_CAP,
            prec: int = DEFAULT_PRECISION, rounding: str = "down") -> Magnitude:
    """Sum of two magnitudes."""
    if a.level == 0 and b.level == 0:
        return mag_from_int(a.value + b.value, cap, prec)
    level = max(a.level, b.level)
    La, Lb = _L(a, prec), _L(b, prec)
    if La is not None and Lb is not None:
        L = _log10_of_sum(La, Lb)
        if level == 1:
            lo, hi = L.bounds()
            return _result(1, lo, hi, rounding, cap, prec)
        lo, hi = log10(L).bounds()
        return _result(2, lo, hi, rounding, cap, prec)
    # at least one log10 overflows: the sum is at most twice the larger term
    LLa, LLb = _LL(a, prec), _LL(b, prec)
    if LLa is None or LLb is None:
        big = LLa if LLb is None else LLb
        lo_ll, hi_ll = big.lo, big.hi
    else:
        lo_ll, hi_ll = max(LLa.lo, LLb.lo), max(LLa.hi, LLb.hi)
    LO = Interval(lo_ll, lo_ll, prec)
    bump = log1p(_LOG10_2(prec) * exp10(-LO)) / const_ln10(prec)
    hi = (Interval(hi_ll, hi_ll, prec) + bump).hi
    return _result(2, to_fraction(lo_ll), to_fraction(hi), rounding, cap, prec)


def mag_sub(a: Magnitude, b: Magnitude, cap: int = DEFAULT_DIGIT_CAP,
            prec: int = DEFAULT_PRECISION, rounding: str = "down") -> Magnitude:
    """``a - b`` for ``a > b`` (certified); raises if the order is not certified."""
    if a.level == 0 and b.level == 0:
        d = a.value - b.value
        if d < 1:
            raise ValueError("difference below 1")
        return mag_from_int(d, cap, prec)
    if mag_cmp(a, b, prec) is not Ordering.GT:
        raise ValueError("mag_sub needs a certified a > b")
    level = max(a.level, 1)
    La, Lb = _L(a, prec), _L(b, prec)
    if La is not None and Lb is not None:
        L = La + log1p(-exp10(Lb - La)) / const_ln10(prec)
        if level == 1:
            return _result(1, *L.bounds(), rounding, cap, prec)
        return _result(2, *log10(L).bounds(), rounding, cap, prec)
    # a is level 2 and too large for its log10 to fit: require b <= a/2
    LLa = _fr_interval(a.lo, a.hi, prec)
    LLb = _LL(b, prec)
    if LLb is not None and not (LLb.hi + _LOG10_2(prec)).certainly_lt(LLa):
        raise ValueError("mag_sub cannot separate the operands at this precision")
    drop = log1p(-(_LOG10_2(prec) * exp10(-LLa))) / const_ln10(prec)
    return _result(2, to_fraction((LLa + drop).lo), a.hi, rounding, cap, prec)


def mag_pow(a: Magnitude, e: Magnitude | int, cap: int = DEFAULT_DIGIT_CAP,
            prec: int = DEFAULT_PRECISION, rounding: str = "down") -> Magnitude:
    """``a ** e`` for ``a >= 1``.

    The result level is the larger input level, except that a level-1 (or
    higher) exponent of a level-1 (or higher) base lands at level 2.
    """
    if isinstance(e, int):
        e = mag_from_int(e, cap, prec) if e >= 1 else None
        if e is None:
            return mag_from_int(1, cap, prec)
    if a.level == 0 and a.value == 1:
        return a
    if a.level == 0 and e.level == 0:
        base, ex = a.value, e.value
        k = exact_log10(base)
        if k is not None:
            return pow10(k * ex, rounding, cap, prec)
        est = ex * (base.bit_length() - 1) / _LOG2_10
        if est <= cap:
            return mag_from_int(int(mpz(base) ** ex), cap, prec)
        lo, hi = _L_bounds(a, prec)
        return _result(1, ex * lo, ex * hi, rounding, cap, prec)
    level = max(a.level, e.level)
    if a.level >= 1 and e.level >= 1:
        level = 2
    if level == 1:
        lo, hi = _L_bounds(a, prec)
        if lo < 0:
            raise ValueError("mag_pow needs a base >= 1")
        if e.level == 0:
            return _result(1, e.value * lo, e.value * hi, rounding, cap, prec)
        E = e.to_interval(prec)
        L = E * _fr_interval(lo, hi, prec)
        return _result(1, *L.bounds(), rounding, cap, prec)
    LLa = _LL(a, prec)
    if LLa is None or gmpy2.is_infinite(LLa.lo):
        raise ValueError("mag_pow at level 2 needs a base certified > 1")
    Le = _L(e, prec)
    if Le is None:
        raise OverflowError("exponent at level 2 would need a level-3 result")
    LL = LLa + Le
    return _result(2, *LL.bounds(), rounding, cap, prec)


def mag_ln(m: Magnitude, prec: int = DEFAULT_PRECISION, rounding: str = "down",
           cap: int = DEFAULT_DIGIT_CAP) -> Magnitude:
    """Natural logarithm of a magnitude ``> 1``."""
    LL = _LL(m, prec)
    if LL is None or gmpy2.is_infinite(LL.lo):
        raise ValueError("ln of a magnitude not certified > 1")
    out = LL + log10(const_ln10(prec))
    return _result(1, *out.bounds(), rounding, cap, prec)


def mag_log10(m: Magnitude, prec: int = DEFAULT_PRECISION, rounding: str = "down",
              cap: int = DEFAULT_DIGIT_CAP) -> Magnitude:
    """``log10`` of a magnitude ``> 1``; exact integers stay at level 0."""
    if m.level == 2:
        return _result(1, m.lo, m.hi, rounding, cap, prec)
    lo, hi = _L_bounds(m, prec)
    if lo == hi and lo.denominator == 1 and lo >= 1:
        return mag_from_int(int(lo), cap, prec)
    if lo <= 0:
        raise ValueError("log10 of a magnitude not certified > 1")
    return _result(1, *log10(_fr_interval(lo, hi, prec)).bounds(), rounding, cap, prec)


def mag_scale(m: Magnitude, c, prec: int = DEFAULT_PRECISION, rounding: str = "down",
              cap: int = DEFAULT_DIGIT_CAP) -> Magnitude:
    """Multiply by a positive constant given as a rational or an interval."""
    if isinstance(c, (int, Fraction)) and Fraction(c).denominator == 1 and c >= 1:
        return mag_mul(m, mag_from_int(int(c), cap, prec), cap, prec, rounding)
    iv = Interval.coerce(c, prec)
    return mag_mul(m, mag_from_interval(iv, rounding, cap), cap, prec, rounding)


def mag_cmp(a: Magnitude, b: Magnitude, prec: int = DEFAULT_PRECISION) -> Ordering:
    """Compare two magnitudes; ``INCONCLUSIVE`` when enclosures overlap."""
    if a.level == 0 and b.level == 0:
        x, y = a.value, b.value
        return Ordering.LT if x < y else Ordering.GT if x > y else Ordering.EQ
    if max(a.level, b.level) <= 1 or (a.level == b.level == 2):
        if a.level == b.level == 2:
            alo, ahi, blo, bhi = a.lo, a.hi, b.lo, b.hi
        else:
            alo, ahi = _L_bounds(a, prec)
            blo, bhi = _L_bounds(b, prec)
        return _cmp_bounds(alo, ahi, blo, bhi)
    La, Lb = _L(a, prec), _L(b, prec)
    if La is not None and Lb is not None:
        return _cmp_bounds(*La.bounds(), *Lb.bounds())
    LLa, LLb = _LL(a, prec), _LL(b, prec)
    if LLa is None:
        return Ordering.LT
    if LLb is None:
        return Ordering.GT
    if LLa.hi < LLb.lo:
        return Ordering.LT
    if LLa.lo > LLb.hi:
        return Ordering.GT
    return Ordering.INCONCLUSIVE


def _cmp_bounds(alo, ahi, blo, bhi) -> Ordering:
    if ahi < blo:
        return Ordering.LT
    if alo > bhi:
        return Ordering.GT
    if alo == ahi == blo == bhi:
        return Ordering.EQ
    return Ordering.INCONCLUSIVE


def signed_cmp(a: SignedMagnitude, b: SignedMagnitude, prec: int = DEFAULT_PRECISION) -> Ordering:
    if a.sign != b.sign:
        return Ordering.LT if a.sign < b.sign else Ordering.GT
    if a.sign == 0:
        return Ordering.EQ
    o = mag_cmp(a.abs, b.abs, prec)
    if a.sign < 0 and o in (Ordering.LT, Ordering.GT):
        return Ordering.GT if o is Ordering.LT else Ordering.LT
    return o
