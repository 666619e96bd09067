"""Naive heights, the Icen height bound, power annihilators and the proof constants.

Heights are maxima of absolute coefficients of minimal polynomials over Z.
The constants ``c0 .. c6`` are returned as upward-rounded :class:`Magnitude`
values so that every downstream comparison stays one-sided safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from gmpy2 import mpz

from .interval import DEFAULT_PRECISION, Interval, const_pi, int_log10, log, power, rootn, sqrt
from .magnitude import (
    DEFAULT_DIGIT_CAP,
    Magnitude,
    format_rational,
    mag_from_int,
    mag_from_interval,
    mag_from_log10,
    mag_ln,
    mag_mul,
    mag_pow,
)
from .polytriple import Poly, Triple, deriv_sup


def height_rat(x) -> int:
    """``max(|p|, q)`` for ``x = p/q`` in lowest terms."""
    x = Fraction(x)
    return max(abs(x.numerator), x.denominator)


def poly_height_at(P: Poly, x) -> int:
    """Exact ``H(P(x))`` for rational ``P`` and ``x``."""
    return height_rat(P.eval(x))


def icen_bound(d: int, g: int, H_F: int, factors=(), cap: int = DEFAULT_DIGIT_CAP,
               prec: int = DEFAULT_PRECISION) -> Magnitude:
    """``3**(2dg + g*sum(l_i)) * H_F**g * prod(H_i**(l_i g))``.

    ``factors`` is a list of ``(H(alpha_i), l_i)``; the exponent sum runs over
    all of them.
    """
    if d < 1 or g < 1:
        raise ValueError("icen_bound needs d >= 1 and g >= 1")
    if H_F < 1 or any(h < 1 for h, _ in factors):
        raise ValueError("heights must be >= 1")
    e3 = 2 * d * g + g * sum(l for _, l in factors)
    out = mag_pow(mag_from_int(3), e3, cap, prec)
    out = mag_mul(out, mag_pow(mag_from_int(H_F), g, cap, prec), cap, prec, "up")
    for h, l in factors:
        out = mag_mul(out, mag_pow(mag_from_int(h), l * g, cap, prec), cap, prec, "up")
    return out.rounded("up")


def icen_bound_for_poly(P: Poly, x, cap: int = DEFAULT_DIGIT_CAP) -> Magnitude:
    """Bound on ``H(P(x))`` from ``F(y, t) = y - P(t)``: ``d = g = 1``, ``l = deg P``."""
    H_F = max(1, P.height())
    return icen_bound(1, 1, H_F, [(height_rat(x), max(P.degree, 0))], cap)


# -- annihilators of rational powers ----------------------------------


def _is_perfect_power(x: Fraction, p: int) -> bool:
    """Whether ``x`` is the ``p``-th power of a rational."""
    n, d = x.numerator, x.denominator
    if n < 0:
        if p % 2 == 0:
            return False
        n = -n
    return gmpy2.iroot(mpz(n), p)[1] and gmpy2.iroot(mpz(d), p)[1]


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def binomial_irreducible(N: int, c: Fraction) -> bool:
    """Capelli's criterion for ``X**N - c`` over Q."""
    if N == 1:
        return True
    for p in _prime_factors(N):
        if _is_perfect_power(c, p):
            return False
    if N % 4 == 0 and _is_perfect_power(-c / 4, 4):
        return False
    return True


@dataclass(frozen=True)
class AlgebraicPower:
    """``gamma = base ** (theta / N)``, real branch, with ``N = q**r``."""
    base: Fraction
    exponent_num: int
    exponent_den: int
    annihilator: Poly
    degree_bound: int
    height_bound: Magnitude
    exact_height: int | None = None
    irreducible: bool = False
    c1_bound: Magnitude | None = None

    def value(self, prec: int = DEFAULT_PRECISION) -> Interval:
        t, N = self.exponent_num, self.exponent_den
        if t == 0:
            return Interval.coerce(1, prec)
        c = self.base ** t
        return rootn(Interval.coerce(c, prec), N)

    def check(self, prec: int = DEFAULT_PRECISION) -> Interval:
        """Interval value of the annihilator at the enclosed root (must straddle 0).

        The root's rounding error is amplified by about ``N * lead``, so the
        evaluation carries that many guard bits before rounding back to ``prec``.
        """
        coef = max(abs(int(c)) for c in self.annihilator.coeffs)
        guard = self.exponent_den.bit_length() + coef.bit_length() + 32
        v = self.value(prec + guard)
        return self.annihilator.eval_interval(v).with_precision(prec)

    def to_json(self) -> dict:
        return {
            "base": format_rational(self.base), "theta": self.exponent_num, "N": self.exponent_den,
            "annihilator": str(self.annihilator), "degree_bound": self.degree_bound,
            "height_bound": self.height_bound.to_json(), "exact_height": self.exact_height,
            "irreducible": self.irreducible,
            "c1_bound": None if self.c1_bound is None else self.c1_bound.to_json(),
        }


def annihilating_poly(Qval, Rval, q: int, r: int, n: int | None = None, c1=None,
                      cap: int = DEFAULT_DIGIT_CAP) -> AlgebraicPower:
    """Integer polynomial vanishing at ``Qval ** Rval`` where ``Rval = theta / q**r``.

    The primitive annihilator is ``b**t X**N - a**t`` for ``Qval = a/b`` and
    ``t = theta > 0``, with the roles of ``a`` and ``b`` swapped when
    ``theta < 0``.  With ``n = deg Q`` the height bound is the coefficient
    maximum of the unreduced form ``q**(n t) X**N - (q**n Qval)**t``; with
    ``c1`` the coarser ``q**(c1 q**r)`` is reported as well.
    """
    Qval, Rval = Fraction(Qval), Fraction(Rval)
    if Qval == 0:
        raise ValueError("Q(p/q) = 0 lies outside Omega")
    if q < 1 or r < 0:
        raise ValueError("need q >= 1 and r >= 0")
    N = q**r
    theta = Rval * N
    if theta.denominator != 1:
        raise ValueError(f"R(p/q) * q^r = {theta} is not an integer")
    theta = int(theta)
    if Qval < 0 and N % 2 == 0 and theta != 0:
        raise ValueError("negative base with an even root has no real value")
    if theta == 0:
        ann = Poly((-1, 1))
        return AlgebraicPower(Qval, 0, N, ann, 1, mag_from_int(1), 1, True)
    a, b = Qval.numerator, Qval.denominator
    t = abs(theta)
    lead, const = (b**t, a**t) if theta > 0 else (a**t, b**t)
    if lead < 0:
        lead, const = -lead, -const
    ann = Poly((-const,) + (0,) * (N - 1) + (lead,))
    irreducible = binomial_irreducible(N, Fraction(const, lead))
    coef_max = max(abs(lead), abs(const))
    if n is not None:
        big = Fraction(q) ** (n * t)
        small = (Fraction(q) ** n * Qval) ** t
        den = math.lcm(big.denominator, small.denominator)
        hb = max(abs(big.numerator) * (den // big.denominator), abs(small.numerator) * (den // small.denominator))
    else:
        hb = coef_max
    coarse = None
    if c1 is not None:
        c1 = c1 if isinstance(c1, Interval) else Interval.coerce(c1)
        L = c1 * N * int_log10(q)
        coarse = mag_from_log10(*L.bounds(), rounding="up", cap=cap)
    return AlgebraicPower(Qval, theta, N, ann, N, mag_from_int(hb, cap), coef_max if irreducible else None,
                          irreducible, coarse)


# -- proof constants ---------------------------------------------------


@dataclass(frozen=True)
class Constants:
    c0: Magnitude
    c1: Magnitude
    c2: Magnitude
    c3: Magnitude
    c4: Magnitude
    c5: Magnitude
    c6: Magnitude
    m: int
    n: int
    r: int
    H_gamma: int
    clamps: tuple[str, ...] = ()
    provenance: dict = field(default_factory=dict)
    intervals: dict = field(default_factory=dict, repr=False, compare=False)

    def to_json(self) -> dict:
        out = {f"c{i}": getattr(self, f"c{i}").to_json() for i in range(7)}
        out.update({"m": self.m, "n": self.n, "r": self.r, "H_gamma": self.H_gamma,
                    "clamps": list(self.clamps), "formulas": dict(self.provenance)})
        return out


FORMULAS = {
    "c0": "3^(m+2) * (1+|xi|)^m * H(P)",
    "c1": "3n * (1+|xi|)^(mnr) * max(H(P), H(Q), H(R))",
    "c2": "c1 + log c0 + m + log H(gamma) + r",
    "c3": "5e10 * m * c2^2 * log c0 * log H(gamma)",
    "c4": "sup |P'/P| over the hull of xi and the witness points",
    "c5": "sup |d/dz Q^R| over the same hull",
    "c6": "|log P(xi)| + |Q(xi)^R(xi)| + c4 + c5 + 1",
}


ZERO_STANDIN = mag_from_log10(-10**6, rounding="up")


def _up(iv: Interval) -> Magnitude:
    return mag_from_interval(iv, "up")


def constants(t: Triple, xi: Interval, H_gamma: int, points=(), prec: int = DEFAULT_PRECISION) -> Constants:
    """``c0 .. c6`` for the triple, an enclosure of xi and ``H(gamma)``.

    ``points`` are the witness approximants (rationals or intervals); the
    derivative suprema are taken over the hull of ``xi`` and all of them.
    Logarithmic factors are clamped below at 1, as are ``m`` in ``c3`` and
    ``n`` in ``c1``; each clamp is listed.
    """
    if H_gamma < 1:
        raise ValueError("H(gamma) >= 1")
    m, n, r = max(t.P.degree, 0), max(t.Q.degree, 0), max(t.R.degree, 0)
    clamps = []
    one = Interval.coerce(1, prec)
    xabs = Interval.coerce(abs(xi).hi, prec)
    base = one + xabs
    HP, HQ, HR = t.P.height(), t.Q.height(), max(t.R.height(), 1)
    c0 = Interval.coerce(3, prec).ipow(m + 2) * base.ipow(m) * HP
    n_eff = n
    if n == 0:
        n_eff = 1
        clamps.append("n=0 in c1 -> 1")
    c1 = 3 * n_eff * base.ipow(m * n_eff * r) * max(HP, HQ, HR)
    logc0 = log(c0)
    logH = log(Interval.coerce(H_gamma, prec))
    if logc0.lo < 1:
        logc0 = Interval(max(logc0.lo, one.lo), max(logc0.hi, one.hi), prec)
        clamps.append("log c0 -> 1")
    if logH.hi < 1 or logH.lo < 1:
        logH = Interval(max(logH.lo, one.lo), max(logH.hi, one.hi), prec)
        clamps.append("log H(gamma) -> 1 (CLAMPED)")
    c2 = c1 + logc0 + m + logH + r
    m_eff = m
    if m == 0:
        m_eff = 1
        clamps.append("m=0 in c3 -> 1")
    c3 = 5 * 10**10 * m_eff * c2.ipow(2) * logc0 * logH
    hull = xi
    for p in points:
        hull = Interval.hull(hull, Interval.coerce(p, prec))
    c4 = deriv_sup("LOG_P", t, hull)
    c5 = deriv_sup("Q_POW_R", t, hull)
    Px, Qx, Rx = t.P.eval_interval(xi), t.Q.eval_interval(xi), t.R.eval_interval(xi)
    if Px.is_positive():
        logP = abs(log(Px))
    else:
        lp = log(abs(Px))
        logP = sqrt(lp.ipow(2) + const_pi(prec).ipow(2))
    QR = power(abs(Qx), Rx) if not t.R.is_zero() else one
    c6 = logP + QR + c4 + c5 + 1
    ivs = {"c0": c0, "c1": c1, "c2": c2, "c3": c3, "c4": c4, "c5": c5, "c6": c6}
    mags = {}
    for k, v in ivs.items():
        # only the upper endpoint matters; c4 = c5 = 0 (R = 0) maps to a negligible stand-in
        mags[k] = _up(Interval(v.hi, v.hi, prec)) if v.hi > 0 else ZERO_STANDIN
    return Constants(mags["c0"], mags["c1"], mags["c2"], mags["c3"], mags["c4"], mags["c5"], mags["c6"],
                     m, n, r, H_gamma, tuple(clamps), dict(FORMULAS), ivs)


def proof_quantities(consts: Constants, q: Magnitude, prec: int = DEFAULT_PRECISION) -> dict:
    """``A_k = c0 q^m``, ``D_k = q^r``, ``B_k = q^(c1 q^r)``, ``T_k = c2 q^r log q``."""
    m, r = consts.m, consts.r
    qm = mag_pow(q, m, prec=prec, rounding="up") if m > 0 else mag_from_int(1)
    Ak = mag_mul(consts.c0, qm, prec=prec, rounding="up")
    Dk = mag_pow(q, r, prec=prec, rounding="up") if r > 0 else mag_from_int(1)
    expo = mag_mul(consts.c1, Dk, prec=prec, rounding="up")
    Bk = mag_pow(q, expo, prec=prec, rounding="up")
    Tk = mag_mul(mag_mul(consts.c2, Dk, prec=prec, rounding="up"), mag_ln(q, prec, "up"), prec=prec, rounding="up")
    notes = ["B_k >= e^(D_k) holds since c1 * ln q >= 3 ln 2 > 1"]
    return {"Ak": Ak, "Dk": Dk, "Bk": Bk, "Tk": Tk, "notes": notes}


@dataclass(frozen=True)
class HeightRelation:
    name: str
    lhs: int
    bound_lo: Fraction | None
    bound_hi: Fraction
    holds: bool


def height_relations(ys, n: int = 2) -> list[HeightRelation]:
    """The power, product and sum height inequalities on rational inputs.

    For degree-one numbers the implied constants can be taken explicitly:
    ``H(y^n) = H(y)^n``, ``H(y1 y2) <= H(y1) H(y2)`` and
    ``H(y1 + ... + yl) <= 2**(l-1) * prod H(yi)``.
    """
    ys = [Fraction(y) for y in ys]
    if not ys or n < 1:
        raise ValueError("need at least one rational and n >= 1")
    out = []
    y1 = ys[0]
    h = height_rat(y1)
    hp = height_rat(y1**n)
    # h^n / (2^n sqrt 2) <= hp, squared to stay rational; 99/70 > sqrt 2 for the reported bound
    ok_lo = 2 * (hp * 2**n) ** 2 >= h ** (2 * n)
    lo = Fraction(h**n, 2**n) / Fraction(99, 70)
    out.append(HeightRelation("power", hp, lo, Fraction(h**n), ok_lo and hp <= h**n))
    if len(ys) >= 2:
        hprod = height_rat(ys[0] * ys[1])
        bound = Fraction(height_rat(ys[0]) * height_rat(ys[1]))
        out.append(HeightRelation("product", hprod, None, bound, hprod <= bound))
    hs = height_rat(sum(ys))
    bound = Fraction(2 ** (len(ys) - 1) * math.prod(height_rat(y) for y in ys))
    out.append(HeightRelation("sum", hs, None, bound, hs <= bound))
    return out
