"""Polynomials with exact coefficients, admissible triples and the domain Omega.

Coefficients are :class:`~fractions.Fraction` values.  Polynomials over a
number field are supported only symbolically: a coefficient may be an
:class:`Alg`, a polynomial in named algebraic constants and square roots of
rationals (``sqrt(r)**2`` reduces to ``r``; named constants are treated as
independent).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

from . import errata
from .expr import BinOp, Const, Expr, Func, Neg, Num, Pow, Var, parse
from .interval import DEFAULT_PRECISION, Interval, const_pi, log, power, sqrt
from .magnitude import format_rational


class Ring(str, enum.Enum):
    INT = "INT"
    RAT = "RAT"
    ALG_SYMBOLIC = "ALG_SYMBOLIC"


class Field(str, enum.Enum):
    Z = "Z"
    QBAR = "QBAR"


# -- symbolic algebraic coefficients -----------------------------------


def _sqrt_parts(r: Fraction) -> tuple[Fraction, str | None]:
    n, d = r.numerator, r.denominator
    m = n * d
    # largest square divisor by trial division keeps the symbol canonical
    outside, inside = 1, m
    f = 2
    while f * f <= inside:
        while inside % (f * f) == 0:
            inside //= f * f
            outside *= f
        f += 1
    if inside == 1:
        return Fraction(outside, d), None
    return Fraction(outside, d), f"sqrt({inside})"


_SQRT_VALUE = {}


@dataclass(frozen=True)
class Alg:
    """Finite sum ``sum c_mono * prod(symbols in mono)`` with rational ``c``."""
    terms: tuple[tuple[tuple[str, ...], Fraction], ...]

    @staticmethod
    def make(d: dict) -> "Alg | Fraction":
        items = tuple(sorted((k, v) for k, v in d.items() if v != 0))
        if not items:
            return Fraction(0)
        if len(items) == 1 and items[0][0] == ():
            return items[0][1]
        return Alg(items)

    @staticmethod
    def symbol(name: str) -> "Alg":
        return Alg((((name,), Fraction(1)),))

    @staticmethod
    def sqrt(r: Fraction) -> "Alg | Fraction":
        c, sym = _sqrt_parts(Fraction(r))
        if sym is None:
            return c
        _SQRT_VALUE[sym] = Fraction(int(sym[5:-1]))
        return Alg((((sym,), c),))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other):
        d = self.as_dict()
        for k, v in _alg_dict(other).items():
            d[k] = d.get(k, 0) + v
        return Alg.make(d)

    __radd__ = __add__

    def __neg__(self):
        return Alg.make({k: -v for k, v in self.terms})

    def __sub__(self, other):
        return self + (-_as_coef(other))

    def __rsub__(self, other):
        return _as_coef(other) + (-self)

    def __mul__(self, other):
        out: dict = {}
        for k1, v1 in self.terms:
            for k2, v2 in _alg_dict(other).items():
                mono, c = _mono_mul(k1, k2)
                out[mono] = out.get(mono, 0) + v1 * v2 * c
        return Alg.make(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Alg):
            raise ValueError("division by a symbolic coefficient is not supported")
        return self * (1 / Fraction(other))

    def __bool__(self):
        return True

    def symbols(self) -> set[str]:
        return {s for mono, _ in self.terms for s in mono}

    def interval(self, prec: int = DEFAULT_PRECISION, values: dict | None = None) -> Interval:
        values = values or {}
        total = Interval.coerce(0, prec)
        for mono, c in self.terms:
            t = Interval.coerce(c, prec)
            for s in mono:
                if s in _SQRT_VALUE:
                    t = t * sqrt(Interval.coerce(_SQRT_VALUE[s], prec))
                elif s in values:
                    t = t * Interval.coerce(values[s], prec)
                else:
                    raise ValueError(f"no numeric value for the tagged constant {s!r}")
            total = total + t
        return total

    def __str__(self):
        parts = []
        for mono, c in self.terms:
            syms = "*".join(mono)
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(syms)
            elif c == -1:
                parts.append(f"-{syms}")
            else:
                parts.append(f"{format_rational(c)}*{syms}")
        return "(" + " + ".join(parts) + ")"


def _mono_mul(a: tuple, b: tuple) -> tuple[tuple, Fraction]:
    syms = sorted(a + b)
    out, c = [], Fraction(1)
    i = 0
    while i < len(syms):
        s = syms[i]
        if s in _SQRT_VALUE and i + 1 < len(syms) and syms[i + 1] == s:
            c *= _SQRT_VALUE[s]
            i += 2
            continue
        out.append(s)
        i += 1
    return tuple(out), c


def _alg_dict(x) -> dict:
    if isinstance(x, Alg):
        return x.as_dict()
    return {(): Fraction(x)}


def _as_coef(x):
    return x if isinstance(x, Alg) else Fraction(x)


def _is_zero(c) -> bool:
    return not isinstance(c, Alg) and c == 0


# -- polynomials -------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial, constant term first, no trailing zeros."""
    coeffs: tuple

    def __post_init__(self):
        cs = [_as_coef(c) for c in self.coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def parse(cls, text: str, names=()) -> "Poly":
        e = parse(text, names)
        p = to_poly(e, set(names))
        if p is None:
            raise ValueError(f"{text!r} is not a polynomial in X")
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def ring(self) -> Ring:
        if any(isinstance(c, Alg) for c in self.coeffs):
            return Ring.ALG_SYMBOLIC
        if all(c.denominator == 1 for c in self.coeffs):
            return Ring.INT
        return Ring.RAT

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (Fraction(1),)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_rational(self) -> bool:
        return self.ring is not Ring.ALG_SYMBOLIC

    def height(self) -> int:
        """Max absolute coefficient after clearing denominators."""
        if not self.is_rational():
            raise ValueError("height of a symbolic polynomial is not defined here")
        if not self.coeffs:
            return 0
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        return max(abs(c.numerator * (den // c.denominator)) for c in self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x) -> Fraction:
        """Exact Horner evaluation at a rational."""
        if not self.is_rational():
            raise ValueError("exact evaluation needs rational coefficients")
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, x: Interval, values: dict | None = None) -> Interval:
        acc = Interval.coerce(0, x.prec)
        for c in reversed(self.coeffs):
            ci = c.interval(x.prec, values) if isinstance(c, Alg) else Interval.coerce(c, x.prec)
            acc = acc * x + ci
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(tuple(u + v for u, v in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly((1,))
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        return poly_text(self)

    def to_json(self) -> dict:
        return {"text": poly_text(self), "degree": self.degree, "ring": self.ring.value,
                "coefficients": [str(c) if isinstance(c, Alg) else format_rational(c) for c in self.coeffs]}


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly((x,))


def poly_text(p: Poly, var: str = "X") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if _is_zero(c):
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if isinstance(c, Alg):
            coef, neg = str(c), False
        else:
            neg = c < 0
            a = abs(c)
            coef = f"{a.numerator}" if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            if a.denominator != 1 and mono:
                coef = f"({coef})"
        if mono:
            body = mono if coef == "1" else f"{coef}*{mono}"
        else:
            body = coef
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def to_poly(e: Expr, algebraic: set[str] = frozenset()) -> Poly | None:
    """Polynomial in the variable, or ``None`` if ``e`` is not one.

    Names in ``algebraic`` and square roots of rationals become symbolic
    coefficients; ``e`` and ``pi`` are not polynomial coefficients.
    """
    if isinstance(e, Num):
        return Poly((e.value,))
    if isinstance(e, Var):
        return Poly.x()
    if isinstance(e, Const):
        return Poly((Alg.symbol(e.name),)) if e.name in algebraic else None
    if isinstance(e, Neg):
        p = to_poly(e.arg, algebraic)
        return None if p is None else -p
    if isinstance(e, BinOp):
        a, b = to_poly(e.left, algebraic), to_poly(e.right, algebraic)
        if a is None or b is None:
            return None
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b.is_constant() and b.is_rational() and not b.is_zero():
            return a * Poly((1 / b.coeffs[0],))
        return None
    if isinstance(e, Pow):
        a, n = to_poly(e.base, algebraic), to_poly(e.exp, algebraic)
        if a is None or n is None or not n.is_constant() or not n.is_rational():
            return None
        k = n.coeffs[0] if n.coeffs else Fraction(0)
        if k.denominator != 1 or k < 0 or k > 64:
            return None
        return a ** int(k)
    if isinstance(e, Func) and e.name == "sqrt":
        a = to_poly(e.arg, algebraic)
        if a is None or not a.is_constant() or not a.is_rational():
            return None
        r = a.coeffs[0] if a.coeffs else Fraction(0)
        if r < 0:
            return None
        return Poly((Alg.sqrt(r),))
    return None


# -- triples -----------------------------------------------------------


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    violated: tuple[str, ...]
    field: Field
    notes: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        if self.admissible:
            return "ADMISSIBLE"
        return "VIOLATES{" + ",".join(self.violated) + "}"

    def to_json(self) -> dict:
        return {"verdict": "ADMISSIBLE" if self.admissible else "VIOLATES", "violated": list(self.violated),
                "field": self.field.value, "label": self.label, "notes": list(self.notes)}


@dataclass(frozen=True)
class Triple:
    P: Poly
    Q: Poly
    R: Poly

    @classmethod
    def parse(cls, P: str, Q: str, R: str, names=()) -> "Triple":
        return cls(Poly.parse(P, names), Poly.parse(Q, names), Poly.parse(R, names))

    def admissibility(self, field: Field = Field.Z, r_rational: bool = False) -> Admissibility:
        return is_admissible(self, field, r_rational)

    def __str__(self):
        return f"({self.P}, {self.Q}, {self.R})"

    def to_json(self) -> dict:
        return {"P": self.P.to_json(), "Q": self.Q.to_json(), "R": self.R.to_json()}


@lru_cache(maxsize=4096)
def is_admissible(t: Triple, field: Field = Field.Z, r_rational: bool = False) -> Admissibility:
    """Conditions (i)-(v) exactly as stated; ``r_rational`` allows ``R`` in Q[X]."""
    field = Field(field)
    P, Q, R = t.P, t.Q, t.R
    dP, dQ, dR = P.derivative(), Q.derivative(), R.derivative()
    bad = []
    if field is Field.Z:
        ring_ok = P.ring is Ring.INT and Q.ring is Ring.INT
    else:
        ring_ok = True
    r_ok = R.ring in ((Ring.INT, Ring.RAT) if r_rational else (Ring.INT,))
    if not (ring_ok and r_ok):
        bad.append("(i)")
    if P.is_zero() or Q.is_zero() or P.is_one():
        bad.append("(ii)")
    if dP.is_zero() and not (not dQ.is_zero() and not R.is_zero()):
        bad.append("(iii)")
    if dQ.is_zero() and dP.is_zero():
        bad.append("(iv)")
    if dP.is_zero() and dQ.is_zero() and dR.is_zero():
        bad.append("(v)")
    notes = ()
    if "(iii)" in bad:
        notes = (errata.CLAUSE_III,)
    if not P.is_rational() or not Q.is_rational():
        notes += ("symbolic coefficients: zero tests treat named constants as independent",)
    return Admissibility(not bad, tuple(bad), field, notes)


def in_omega(t: Triple, x) -> bool:
    """``P(x) Q(x) R(x) != 0`` and ``P(x) != 1``."""
    p, q, r = t.P.eval(x), t.Q.eval(x), t.R.eval(x)
    return p * q * r != 0 and p != 1


class OmegaError(ValueError):
    pass


def certify_omega(t: Triple, x: Interval) -> tuple[Interval, Interval, Interval]:
    """Enclosures of ``P, Q, R`` over ``x`` after checking ``x`` lies in Omega."""
    p, q, r = t.P.eval_interval(x), t.Q.eval_interval(x), t.R.eval_interval(x)
    for name, v in (("P", p), ("Q", q), ("R", r)):
        if not v.excludes_zero():
            raise OmegaError(f"{name} is not certified nonzero over {x}")
    if not (p - 1).excludes_zero():
        raise OmegaError(f"P is not certified different from 1 over {x}")
    return p, q, r


def deriv_sup(kind: str, t: Triple, x: Interval) -> Interval:
    """Enclosure of ``|phi'|`` over ``x``; its upper end bounds the supremum.

    ``LOG_P``: ``phi = log P``.  ``Q_POW_R``: ``phi = Q**R``, principal branch
    when ``Q < 0``, whose modulus is ``|Q|**R * |R' log|Q| + R Q'/Q + i pi R'|``.
    """
    if kind == "Q_POW_R" and t.R.is_zero():
        # Q**0 is constant
        return Interval.coerce(0, x.prec)
    p, q, r = certify_omega(t, x)
    if kind == "LOG_P":
        return abs(t.P.derivative().eval_interval(x) / p)
    if kind != "Q_POW_R":
        raise ValueError(f"unknown derivative kind {kind!r}")
    dq, dr = t.Q.derivative().eval_interval(x), t.R.derivative().eval_interval(x)
    aq = abs(q)
    lnq = log(aq)
    real = dr * lnq + r * dq / q
    mod = power(aq, r)
    if q.is_positive():
        return mod * abs(real)
    imag = dr * const_pi(x.prec)
    return mod * sqrt(real.ipow(2) + imag.ipow(2))
