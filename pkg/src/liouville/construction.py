"""Sparse decimal series: nu-Liouville numbers, ultra-Liouville examples and Liouville's constant.

A sparse number is ``sum(digit_n * 10**-e_n)`` with strictly increasing
exponents ``e_n``.  Exponents are :class:`Magnitude` values, so the series can
be described far beyond the point where its digits could be written out.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from gmpy2 import mpz

from . import errata
from .contfrac import CertificationGap, best_approx_bounds, expand_enclosure, legendre_locate
from .interval import DEFAULT_PRECISION, Interval, const_ln10, exp, exp10, log10
from .magnitude import (
    DEFAULT_DIGIT_CAP,
    Magnitude,
    Ordering,
    floor_pow10,
    format_rational,
    mag_add,
    mag_cmp,
    mag_from_int,
    mag_from_interval,
    mag_from_loglog10,
    mag_mul,
    mag_sub,
    parse_rational,
    pow10,
    _L_bounds,
)

INFINITY = "inf"


class Kind(str, enum.Enum):
    NU_LIOUVILLE = "NU_LIOUVILLE"
    ULTRA = "ULTRA"
    LIOUVILLE_CONSTANT = "LIOUVILLE_CONSTANT"
    CUSTOM = "CUSTOM"


class ConstructionError(ValueError):
    pass


def parse_nu(nu) -> Fraction | str:
    if isinstance(nu, str):
        s = nu.strip().lower()
        if s in ("inf", "infinity", "oo", "∞"):
            return INFINITY
        nu = parse_rational(s)
    return Fraction(nu)


def format_nu(nu) -> str:
    return INFINITY if nu == INFINITY else format_rational(Fraction(nu))


@dataclass(frozen=True)
class NuParams:
    nu: Fraction | str
    depth: int
    digits: Sequence[int] | Callable[[int], int] | None = None
    base: int = 10

    def __post_init__(self):
        object.__setattr__(self, "nu", parse_nu(self.nu))
        if self.nu != INFINITY and self.nu < 0:
            raise ConstructionError("nu must be >= 0")
        if self.depth < 1:
            raise ConstructionError("depth must be >= 1")
        if self.base != 10:
            raise ConstructionError("only base 10 is supported")
        if isinstance(self.digits, (list, tuple)):
            object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
            if len(self.digits) < self.depth:
                raise ConstructionError(f"{len(self.digits)} digit choices for depth {self.depth}")
            if any(d not in (1, 2) for d in self.digits):
                raise ConstructionError("digit choices must be 1 or 2")

    def digit(self, k: int) -> int:
        """``a_k`` for 1-based ``k``."""
        if self.digits is None:
            return 1
        d = self.digits(k) if callable(self.digits) else self.digits[k - 1]
        if d not in (1, 2):
            raise ConstructionError(f"digit choice a_{k} = {d} is not 1 or 2")
        return d


@dataclass(frozen=True)
class SparseNumber:
    terms: tuple[tuple[Magnitude, int], ...]
    kind: Kind
    nu: Fraction | str | None = None
    infinite: bool = True
    base: int = 10

    def __post_init__(self):
        for e, d in self.terms:
            if not 1 <= d <= 9:
                raise ConstructionError(f"digit {d} outside 1..9")
        for (e1, _), (e2, _) in zip(self.terms, self.terms[1:]):
            if mag_cmp(e1, e2) is not Ordering.LT:
                raise ConstructionError("exponents must be strictly increasing")
        if self.terms and self.terms[0][0].level == 0 and self.terms[0][0].value < 1:
            raise ConstructionError("first exponent must be >= 1")

    @property
    def depth(self) -> int:
        return len(self.terms)

    @property
    def exponents(self) -> list[Magnitude]:
        return [e for e, _ in self.terms]

    def exponent_int(self, k: int, cap: int = DEFAULT_DIGIT_CAP) -> int | None:
        """``e_k`` as an integer when it is level 0 and at most ``cap``."""
        e = self.terms[k - 1][0]
        if e.level == 0 and e.value <= cap:
            return e.value
        return None

    def partial_sum(self, k: int, cap: int = DEFAULT_DIGIT_CAP) -> Fraction:
        """Exact ``sum_{n<=k} digit_n 10**-e_n``."""
        ek = self.exponent_int(k, cap)
        if ek is None:
            raise ConstructionError(f"exponent e_{k} exceeds the exact cap of {cap} digits")
        num = 0
        for n in range(1, k + 1):
            num += self.terms[n - 1][1] * mpz(10) ** (ek - self.terms[n - 1][0].value)
        return Fraction(int(num), int(mpz(10) ** ek))

    def rational_enclosure(self, cap: int = DEFAULT_DIGIT_CAP) -> tuple[Fraction, Fraction]:
        """Exact rational bounds on the value using every materializable term."""
        k = 0
        while k < self.depth and self.exponent_int(k + 1, cap) is not None:
            k += 1
        if k == 0:
            raise ConstructionError("no term is materializable")
        s = self.partial_sum(k, cap)
        if k == self.depth and not self.infinite:
            return s, s
        if k < self.depth:
            nxt = self.terms[k][0]
            t = nxt.value - 1 if nxt.level == 0 and nxt.value - 1 <= cap else cap
        else:
            t = self.terms[k - 1][0].value
        t = max(t, self.terms[k - 1][0].value)
        return s, s + Fraction(1, 10**t)

    def enclosure(self, prec: int = DEFAULT_PRECISION) -> Interval:
        total = Interval.coerce(0, prec)
        horizon = None
        last = None
        for e, d in self.terms:
            if e.level != 0 or (horizon is not None and e.value > horizon):
                # this term and all later ones sum below 10**(1 - e) <= 10**-horizon
                cut = horizon if horizon is not None else 10**8
                return total + Interval(0, exp10(Interval.coerce(-cut, prec)).hi, prec)
            if horizon is None:
                horizon = min(e.value + int(prec * 0.30103) + 10, 10**8)
            total = total + d * exp10(Interval.coerce(-e.value, prec))
            last = e.value
        if self.infinite:
            total = total + Interval(0, exp10(Interval.coerce(-last, prec)).hi, prec)
        return total

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "nu": None if self.nu is None else format_nu(self.nu),
            "terms": [{"exponent": e.to_json(), "digit": d} for e, d in self.terms],
            "depth": self.depth,
            "base": self.base,
            "infinite": self.infinite,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SparseNumber":
        if obj.get("base", 10) != 10:
            raise ConstructionError("only base 10 is supported")
        terms = tuple((Magnitude.from_json(t["exponent"]), int(t["digit"])) for t in obj["terms"])
        if "depth" in obj and obj["depth"] != len(terms):
            raise ConstructionError("depth does not match the number of terms")
        nu = obj.get("nu")
        return cls(terms, Kind(obj["kind"]), None if nu is None else parse_nu(nu),
                   obj.get("infinite", True))


@dataclass(frozen=True)
class Witness:
    """A rational ``p/q`` with ``|x - p/q| < q**-omega``.

    When ``exact`` is false ``p`` is ``None`` and ``q`` holds only a
    magnitude; the approximant is still available as an interval.
    """
    k: int
    p: int | None
    q: Magnitude
    omega: Magnitude
    exact: bool
    number: SparseNumber = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.exact:
            if self.p is None or self.q.level != 0:
                raise ValueError("exact witness needs materialized p and q")
            if math.gcd(self.p, self.q.value) != 1:
                raise ValueError("witness p/q must be reduced")
            if self.q.value <= 1:
                raise ValueError("witness needs q > 1")

    def __repr__(self):
        p = "log-only" if self.p is None else f"{self.p.bit_length()}-bit"
        return f"Witness(k={self.k}, p={p}, q={self.q!r}, omega={self.omega!r})"

    @property
    def q_int(self) -> int:
        return self.q.value

    def fraction(self) -> Fraction:
        if not self.exact:
            raise ConstructionError(f"witness {self.k} is log-only")
        return Fraction(self.p, self.q.value)

    def point(self, prec: int = DEFAULT_PRECISION) -> Interval:
        """Enclosure of ``p/q`` (exact rational when materialized)."""
        if self.exact:
            return Interval.coerce(self.fraction(), prec)
        trunc = SparseNumber(self.number.terms[: self.k], self.number.kind, self.number.nu, False)
        return trunc.enclosure(prec)

    def to_json(self) -> dict:
        out = {"k": self.k, "exact": self.exact, "q": self.q.to_json(), "omega": self.omega.to_json()}
        if self.exact:
            out["p"] = mpz(self.p).digits(10)
        return out


# -- generators --------------------------------------------------------


def gen_exponents(params: NuParams, cap: int = DEFAULT_DIGIT_CAP,
                  prec: int = DEFAULT_PRECISION) -> list[Magnitude]:
    """``s_1 = 4``, ``s_{k+1} = floor(10**(nu s_k)) s_k + 1``."""
    nu = params.nu
    if nu == INFINITY:
        raise ConstructionError("nu = infinity has no exponent recurrence; use gen_ultra")
    if nu == 0:
        raise ConstructionError("nu = 0 degenerates: floor(10**0)*s_k + 1 = s_k + 1 grows linearly, "
                                "which gives no Liouville-type approximation")
    s = [mag_from_int(4)]
    for _ in range(params.depth - 1):
        s.append(mag_add(mag_mul(_omega_nu(nu, s[-1], cap, prec), s[-1], cap, prec),
                         mag_from_int(1), cap, prec))
    return s


def _omega_nu(nu: Fraction, s: Magnitude, cap: int, prec: int) -> Magnitude:
    """``floor(10**(nu s))``."""
    if s.level == 0:
        return floor_pow10(nu * s.value, cap, prec)
    if s.level == 2:
        raise ConstructionError("exponent needs more than two logarithm levels")
    x = mag_mul(s, mag_from_interval(Interval.coerce(nu, prec), cap=cap), cap, prec) \
        if nu != 1 else s
    return floor_pow10(x, cap, prec)


def nu_liouville(params: NuParams, cap: int = DEFAULT_DIGIT_CAP,
                 prec: int = DEFAULT_PRECISION) -> SparseNumber:
    s = gen_exponents(params, cap, prec)
    terms = tuple((e, params.digit(k)) for k, e in enumerate(s, 1))
    return SparseNumber(terms, Kind.NU_LIOUVILLE, params.nu)


def liouville_constant(depth: int) -> SparseNumber:
    """``sum 10**-(n!)``."""
    terms = tuple((mag_from_int(math.factorial(n)), 1) for n in range(1, depth + 1))
    return SparseNumber(terms, Kind.LIOUVILLE_CONSTANT, INFINITY)


def gen_ultra(depth: int, prec: int = DEFAULT_PRECISION) -> tuple[SparseNumber, list[Witness]]:
    """Series with exponents ``t_1 = 1``, ``t_{k+1} = ceil(exp(q_k)/ln 10) + 1``, ``q_k = 10**t_k``.

    ``t_4`` would need a third logarithm level, so ``depth`` is at most 3.
    """
    if depth < 1:
        raise ConstructionError("depth must be >= 1")
    if depth > 3:
        raise ConstructionError(f"ultra depth {depth} is too large: t_4 = ceil(exp(10**t_3)/ln 10) + 1 "
                                "needs three logarithm levels even in log space")
    t = [mag_from_int(1), mag_from_int(9567)]
    ln10 = const_ln10(prec)
    # t_2 = ceil(e^10 / ln 10) + 1 = 9567
    v = exp(Interval.coerce(10, prec)) / ln10
    assert math.ceil(v.lo) == math.ceil(v.hi) and math.ceil(v.lo) + 1 == 9567
    # log10 log10 t_3 = log10(10**9567 log10 e - log10 ln 10 + tiny)
    q2 = exp10(Interval.coerce(9567, prec))
    L3 = q2 / ln10 - log10(ln10)
    LL3 = log10(L3)
    # ceil(.) + 1 adds at most 2 to a number above 10**(10**9566); far below the slack
    t.append(mag_from_loglog10(*LL3.bounds(), rounding="down"))
    terms = tuple((e, 1) for e in t[:depth])
    x = SparseNumber(terms, Kind.ULTRA, INFINITY)
    return x, [truncation(x, k, prec=prec)[1] for k in range(1, min(depth, 2) + 1)]


def ultra_omega(k: int, prec: int = DEFAULT_PRECISION) -> Magnitude:
    """``exp(q_k)/ln(q_k)`` for ``q_k = 10**t_k``."""
    ln10 = const_ln10(prec)
    if k == 1:
        return mag_from_interval(exp(Interval.coerce(10, prec)) / ln10)
    if k == 2:
        q2 = exp10(Interval.coerce(9567, prec))
        # log10(e^q / ln q) = q log10 e - log10(9567 ln 10)
        L = q2 / ln10 - log10(9567 * ln10)
        return mag_from_loglog10(*log10(L).bounds())
    raise ConstructionError("ultra witnesses exist only for k <= 2")


# -- truncations and witnesses ----------------------------------------


def omega_for(x: SparseNumber, k: int, cap: int = DEFAULT_DIGIT_CAP,
              prec: int = DEFAULT_PRECISION) -> Magnitude:
    if x.kind is Kind.NU_LIOUVILLE:
        return _omega_nu(x.nu, x.terms[k - 1][0], cap, prec)
    if x.kind is Kind.LIOUVILLE_CONSTANT:
        return mag_from_int(k)
    if x.kind is Kind.ULTRA:
        return ultra_omega(k, prec)
    raise ConstructionError("custom numbers carry no witness exponent; pass omega explicitly")


def truncation(x: SparseNumber, k: int, cap: int = DEFAULT_DIGIT_CAP, omega: Magnitude | None = None,
               prec: int = DEFAULT_PRECISION) -> tuple[Fraction | None, Witness]:
    """``A_k/B_k`` and its witness; log-only beyond the exact cap."""
    if not 1 <= k <= x.depth:
        raise ConstructionError(f"k = {k} outside 1..{x.depth}")
    om = omega if omega is not None else omega_for(x, k, cap, prec)
    ek = x.terms[k - 1][0]
    if x.exponent_int(k, cap) is not None:
        # an even last digit reduces A_k/B_k; the reduced q is smaller, so the bound still holds
        r = x.partial_sum(k, cap)
        return r, Witness(k, r.numerator, mag_from_int(r.denominator, cap, prec), om, True, x)
    return None, Witness(k, None, pow10(ek, "exact", cap, prec), om, False, x)


@dataclass(frozen=True)
class ApproxCheck:
    holds: bool
    margin: Fraction | None
    status: str  # CERTIFIED, FAILED or INCONCLUSIVE
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"holds": self.holds, "status": self.status,
                "margin": None if self.margin is None else format_rational(self.margin),
                "notes": list(self.notes)}


def verify_approx(x: SparseNumber, k: int, omega: Magnitude | None = None, cap: int = DEFAULT_DIGIT_CAP,
                  prec: int = DEFAULT_PRECISION) -> ApproxCheck:
    """Certify ``|x - A_k/B_k| < B_k**-omega`` from the exponents alone.

    The tail after term ``k`` is below ``10**(1 - e_{k+1})`` (digits <= 9,
    strictly increasing exponents), so it suffices that
    ``e_{k+1} - 1 >= e_k * omega``.  The margin is the difference in
    log10 units.
    """
    if not 1 <= k < x.depth:
        raise ConstructionError(f"verify_approx needs 1 <= k < depth = {x.depth}")
    om = omega if omega is not None else omega_for(x, k, cap, prec)
    ek, enext = x.terms[k - 1][0], x.terms[k][0]
    notes = (errata.FLOOR_PLACEMENT,) if x.kind is Kind.NU_LIOUVILLE else ()
    if ek.level == 0 and enext.level == 0 and om.level == 0:
        margin = Fraction(enext.value - 1 - ek.value * om.value)
        return ApproxCheck(margin >= 0, margin, "CERTIFIED" if margin >= 0 else "FAILED", notes)
    if x.kind is Kind.ULTRA and omega is None:
        # t_k * exp(q_k)/ln(q_k) = exp(q_k)/ln 10 <= ceil(exp(q_k)/ln 10) = t_{k+1} - 1
        return ApproxCheck(True, None, "CERTIFIED",
                           ("certified by construction: e_k * omega_k = exp(q_k)/ln 10 <= e_{k+1} - 1",))
    lhs = mag_sub(enext, mag_from_int(1), cap, prec)
    rhs = mag_mul(ek, om, cap, prec)
    order = mag_cmp(lhs, rhs, prec)
    margin = None
    try:
        d = lhs.to_interval(prec) - rhs.to_interval(prec)
        margin = d.bounds()[0]
    except OverflowError:
        pass
    if order in (Ordering.GT, Ordering.EQ):
        return ApproxCheck(True, margin, "CERTIFIED", notes)
    if order is Ordering.LT:
        return ApproxCheck(False, margin, "FAILED", notes)
    return ApproxCheck(False, margin, "INCONCLUSIVE",
                       notes + ("log-space enclosures of both exponents overlap",))


def empirical_exponent(ws: Sequence[Witness], prec: int = DEFAULT_PRECISION) -> list[Fraction]:
    """``lambda_k = log omega_k / log q_k`` for each witness, rounded down."""
    out = []
    for w in ws:
        Lw, Lq = w.omega.log10(prec), w.q.log10(prec)
        if w.omega.level <= 1 and w.q.level <= 1:
            # rational log bounds: dividing them exactly keeps the error far below 1/log q
            a, b = _L_bounds(w.omega, prec), _L_bounds(w.q, prec)
            if a[0] >= 0 and b[0] > 0:
                out.append(a[0] / b[1])
                continue
        if Lw is not None and Lq is not None:
            out.append((Lw / Lq).bounds()[0])
            continue
        diff = w.omega.loglog10(prec) - w.q.loglog10(prec)
        out.append(exp10(diff).bounds()[0])
    return out


def empirical_exponent_report(ws: Sequence[Witness], prec: int = DEFAULT_PRECISION) -> dict:
    lam = empirical_exponent(ws, prec)
    return {
        "lambda": [format_rational(v) if v.denominator < 10**30 else f"{float(v):.12g}" for v in lam],
        "threshold_reading": "sup of nu* with omega_k/q_k^nu* -> infinity, estimated by lambda_k",
        "infimum_reading": "0 (the admissible set is downward closed)",
        "notes": [errata.INFIMUM_SUPREMUM],
    }


# -- audit -------------------------------------------------------------


@dataclass(frozen=True)
class AuditEntry:
    c: int
    d: int
    theta: Fraction
    status: str  # CONSISTENT, VIOLATION, NOT_APPLICABLE
    index: int | None = None
    k: int | None = None
    bound: Fraction | None = None
    lower: Fraction | None = None

    def to_json(self) -> dict:
        return {"c": self.c, "d": self.d, "theta": format_rational(self.theta), "status": self.status,
                "convergent_index": self.index, "k": self.k,
                "theta_bound": None if self.bound is None else format_rational(self.bound),
                "err_lower": None if self.lower is None else format_rational(self.lower)}


def audit_witnesses(x: SparseNumber, candidates, cap: int = DEFAULT_DIGIT_CAP) -> list[AuditEntry]:
    """Check candidate approximations ``(c, d, theta)`` against the convergent structure.

    A candidate within ``1/(2d^2)`` of ``x`` must be a convergent ``p_m/q_m``.
    With ``B_k <= d < B_{k+1}`` the best-approximation lower bound forces
    ``theta < 2 e_{k+1}/e_k``; larger claims are flagged as violations.
    """
    lo, hi = x.rational_enclosure(cap)
    cf = expand_enclosure((lo, hi))
    out = []
    for c, d, theta in candidates:
        c, d, theta = int(c), int(d), Fraction(theta)
        g = math.gcd(c, d)
        c, d = c // g, d // g
        r = Fraction(c, d)
        err = max(abs(lo - r), abs(hi - r))
        if not err < Fraction(1, 2 * d * d) or d < 2:
            out.append(AuditEntry(c, d, theta, "NOT_APPLICABLE"))
            continue
        try:
            m = legendre_locate(cf, c, d, err)
        except CertificationGap:
            out.append(AuditEntry(c, d, theta, "NOT_APPLICABLE"))
            continue
        k = 0
        for n in range(1, x.depth + 1):
            e = x.exponent_int(n, cap)
            if e is not None and 10**e <= d:
                k = n
        if k == 0 or k >= x.depth or x.exponent_int(k + 1, cap) is None:
            out.append(AuditEntry(c, d, theta, "NOT_APPLICABLE", m))
            continue
        bound = Fraction(2 * x.terms[k][0].value, x.terms[k - 1][0].value)
        lower = None
        if m + 1 < cf.certified_prefix_length:
            lower = best_approx_bounds(cf, m)[0]
        status = "CONSISTENT" if theta < bound else "VIOLATION"
        out.append(AuditEntry(c, d, theta, status, m, k, bound, lower))
    return out
