"""Linear forms in two logarithms: certified evaluation, lower bounds, and the replay.

All bounds are returned as base-10 logarithms held in :class:`SignedMagnitude`
values, since the bounds themselves are far beyond floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import errata
from .construction import (
    INFINITY,
    ConstructionError,
    NuParams,
    SparseNumber,
    Witness,
    format_nu,
    nu_liouville,
    omega_for,
    truncation,
)
from .heights import Constants, constants, height_rat
from .interval import DEFAULT_PRECISION, Interval, const_ln10, log, log10, power
from .magnitude import (
    DEFAULT_DIGIT_CAP,
    Magnitude,
    Ordering,
    SignedMagnitude,
    format_rational,
    mag_add,
    mag_cmp,
    mag_from_int,
    mag_from_interval,
    mag_ln,
    mag_log10,
    mag_mul,
    mag_pow,
    mag_scale,
    mag_sub,
    pow10,
    signed_cmp,
)
from .polytriple import Triple

MAX_PRECISION = 4096
MW_CONSTANT = 5 * 10**10


class BranchError(ValueError):
    """The real logarithm is undefined at the point (``P <= 0`` or ``Q <= 0``)."""


class PreconditionError(ValueError):
    pass


# -- the linear form ---------------------------------------------------


@dataclass(frozen=True)
class LambdaInstance:
    witness: Witness | None
    triple: Triple
    gamma: Fraction
    value: Interval
    nonzero_certified: bool
    precision: int

    def to_json(self) -> dict:
        lo, hi = self.value.bounds()
        return {"k": None if self.witness is None else self.witness.k, "gamma": format_rational(self.gamma),
                "value": [_dec(lo), _dec(hi)], "nonzero_certified": self.nonzero_certified,
                "precision": self.precision}


def _dec(x: Fraction) -> str:
    return format(Interval.coerce(x, 128).mid(), ".30g")


def _lambda_at(t: Triple, x: Interval, gamma: Fraction) -> Interval:
    P, Q, R = t.P.eval_interval(x), t.Q.eval_interval(x), t.R.eval_interval(x)
    if not P.is_positive():
        raise BranchError("P(p/q) is not certified positive; the real logarithm is undefined")
    if t.R.is_zero():
        qr = Interval.coerce(1, x.prec)
    else:
        if not Q.is_positive():
            raise BranchError("Q(p/q) is not certified positive; Q^R has no real principal value")
        qr = power(Q, R)
    return qr * log(P) - log(Interval.coerce(gamma, x.prec))


def lambda_eval(t: Triple, w: Witness | Interval, gamma, precision: int = DEFAULT_PRECISION,
                max_precision: int = MAX_PRECISION) -> LambdaInstance:
    """Enclosure of ``Q(x)**R(x) * log P(x) - log gamma`` at the witness point.

    The precision is doubled until the enclosure excludes zero or
    ``max_precision`` is reached.  ``w`` may also be a bare interval.
    """
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    prec = precision
    while True:
        x = w.point(prec) if isinstance(w, Witness) else w.with_precision(prec)
        v = _lambda_at(t, x, gamma)
        if v.excludes_zero() or prec >= max_precision:
            return LambdaInstance(w if isinstance(w, Witness) else None, t, gamma, v, v.excludes_zero(), prec)
        prec *= 2


# -- lower bounds ------------------------------------------------------


def _as_mag(x) -> Magnitude:
    if isinstance(x, Magnitude):
        return x
    if isinstance(x, Interval):
        return mag_from_interval(x, "down")
    x = Fraction(x)
    if x.denominator == 1 and x >= 1:
        return mag_from_int(int(x))
    return mag_from_interval(Interval.coerce(x), "down")


def _ln_mag(m: Magnitude, prec: int) -> Magnitude:
    """``ln m`` rounded up, for ``m > 1``."""
    return mag_ln(m, prec, "up")


def mw_lower_log(D, A1, A2, B, prec: int = DEFAULT_PRECISION) -> SignedMagnitude:
    """``log10`` of ``exp(-5e10 D^4 log A1 log A2 T^2)``, ``T = log B + log log A1 + log log A2 + log D``.

    ``A1``, ``A2`` below 4 are raised to 4 and ``log B`` below ``D`` is raised
    to ``D``; both raise the absolute value, so the bound only weakens.  The
    absolute value of the result is rounded up.
    """
    notes = []
    D, A1, A2, B = _as_mag(D), _as_mag(A1), _as_mag(A2), _as_mag(B)
    four = mag_from_int(4)
    if mag_cmp(A1, four, prec) is not Ordering.GT and A1 != four:
        A1 = four
        notes.append("A1 clamped to 4")
    if mag_cmp(A2, four, prec) is not Ordering.GT and A2 != four:
        A2 = four
        notes.append("A2 clamped to 4")
    lnA1, lnA2 = _ln_mag(A1, prec), _ln_mag(A2, prec)
    lnB = _ln_mag(B, prec) if mag_cmp(B, mag_from_int(1), prec) is Ordering.GT else None
    if lnB is None or mag_cmp(lnB, D, prec) is Ordering.LT:
        lnB = D
        notes.append("B clamped to e^D")
    T = lnB
    for term in (lnA1, lnA2):
        if mag_cmp(term, mag_from_int(1), prec) is Ordering.GT:
            T = mag_add(T, _ln_mag(term, prec), prec=prec, rounding="up")
        # log log A <= 0 only when log A <= 1, i.e. A <= e; dropping it rounds |bound| up
    if not (D.level == 0 and D.value == 1):
        T = mag_add(T, _ln_mag(D, prec), prec=prec, rounding="up")
    out = mag_mul(mag_pow(D, 4, prec=prec, rounding="up"), mag_mul(lnA1, lnA2, prec=prec, rounding="up"),
                  prec=prec, rounding="up")
    out = mag_mul(out, mag_pow(T, 2, prec=prec, rounding="up"), prec=prec, rounding="up")
    out = mag_scale(out, Interval.coerce(MW_CONSTANT, prec) / const_ln10(prec), prec, "up")
    return SignedMagnitude(-1, out.rounded("up"), tuple(notes))


def baker_lower_log(n: int, alpha_heights, beta_heights, D: int,
                    prec: int = DEFAULT_PRECISION) -> SignedMagnitude:
    """``log10`` of ``(AB)**(-(16nD)**(200n) A log A)``.

    ``A = prod log max(H(alpha_i), 4)`` and ``B = max(H(beta_j), 4)``.
    """
    if n < 2:
        raise ValueError("the bound needs n >= 2 logarithms")
    if len(alpha_heights) != n:
        raise ValueError(f"expected {n} alpha heights, got {len(alpha_heights)}")
    if D < 1 or any(h < 1 for h in list(alpha_heights) + list(beta_heights)):
        raise ValueError("heights and degree must be >= 1")
    A = Interval.coerce(1, prec)
    for h in alpha_heights:
        A = A * log(Interval.coerce(max(h, 4), prec))
    Bh = max([4] + [int(h) for h in beta_heights])
    factor = A * log(A) * log10(A * Bh)
    big = mag_pow(mag_from_int(16 * n * D), 200 * n, prec=prec, rounding="up")
    out = mag_mul(big, mag_from_interval(factor, "up"), prec=prec, rounding="up")
    return SignedMagnitude(-1, out.rounded("up"))


def _signed_difference(a: Magnitude | None, b: Magnitude, prec: int) -> SignedMagnitude:
    """``a - b`` rounded up, for magnitudes ``a`` (None means 0) and ``b``."""
    if a is None:
        return SignedMagnitude(-1, b.rounded("down"))
    order = mag_cmp(b, a, prec)
    if order is Ordering.GT:
        return SignedMagnitude(-1, mag_sub(b, a, prec=prec, rounding="down"))
    if order is Ordering.LT:
        return SignedMagnitude(1, mag_sub(a, b, prec=prec, rounding="up"))
    try:
        lo, hi = (a.to_interval(prec) - b.to_interval(prec)).bounds()
    except OverflowError:
        raise ArithmeticError("cannot order the two logarithmic terms") from None
    return SignedMagnitude.from_fraction_interval(hi, hi, "up") if hi != 0 else SignedMagnitude(0)


def upper_bound_log(consts: Constants | Magnitude, w: Witness, omega: Magnitude | int | None = None,
                    prec: int = DEFAULT_PRECISION) -> SignedMagnitude:
    """``log10(c6) - omega * log10(q)``, rounded up.

    ``omega`` defaults to the witness exponent; ``omega = 0`` leaves
    ``log10 c6``.
    """
    c6 = consts.c6 if isinstance(consts, Constants) else _as_mag(consts)
    om = w.omega if omega is None else omega
    lc6 = c6.log10(prec)
    L6 = None if lc6.hi <= 0 else mag_from_interval(Interval(lc6.hi, lc6.hi, prec), "up")
    if isinstance(om, int) and om == 0:
        return SignedMagnitude(0) if L6 is None else SignedMagnitude(1, L6)
    om = _as_mag(om)
    decay = mag_mul(om, mag_log10(w.q, prec, "down"), prec=prec, rounding="down")
    return _signed_difference(L6, decay, prec)


# -- the replay --------------------------------------------------------


@dataclass
class ReplayRow:
    k: int
    omega: Magnitude | None
    log10_omega: Magnitude
    rhs_cap: Magnitude | None
    log10_rhs_cap: Magnitude
    verdict: str
    comparison: str
    lower_log: SignedMagnitude | None = None
    log10_abs_lower_log: Magnitude | None = None
    upper_log: SignedMagnitude | None = None
    lam: LambdaInstance | None = None
    precision: int = DEFAULT_PRECISION
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        def j(x):
            return None if x is None else x.to_json()
        return {
            "k": self.k, "omega": j(self.omega), "log10_omega": j(self.log10_omega),
            "rhs_cap": j(self.rhs_cap), "log10_rhs_cap": j(self.log10_rhs_cap),
            "comparison": self.comparison, "verdict": self.verdict,
            "lower_log": j(self.lower_log), "log10_abs_lower_log": j(self.log10_abs_lower_log),
            "upper_log": j(self.upper_log), "lambda": j(self.lam), "precision": self.precision,
            "notes": list(self.notes),
        }


@dataclass
class ReplayReport:
    nu: str
    triple: Triple
    gamma: Fraction
    rows: list[ReplayRow]
    crossing_index: int | None
    constants: Constants
    non_theorem: bool
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "CONTRADICTION" if self.crossing_index is not None else "NO_CONTRADICTION_FOUND"

    def to_json(self) -> dict:
        return {
            "nu": self.nu, "triple": self.triple.to_json(), "gamma": format_rational(self.gamma),
            "non_theorem": self.non_theorem, "verdict": self.verdict, "crossing_index": self.crossing_index,
            "constants": self.constants.to_json(), "rows": [r.to_json() for r in self.rows],
            "notes": list(self.notes),
        }


def _truncation_point(x: SparseNumber, k: int, prec: int) -> Interval:
    return SparseNumber(x.terms[:k], x.kind, x.nu, False).enclosure(prec)


def _row_logs(consts: Constants, s: Magnitude, r: int, prec: int) -> tuple[Magnitude, Magnitude]:
    """``log10`` of ``2 c3 q^(6r) (ln q)^2`` and of ``c3 q^(6r) (ln q)^3 / ln 10`` for ``q = 10^s``, rounded up."""
    ln10 = const_ln10(prec)
    l_ln10 = log10(ln10)
    Ls = mag_log10(s, prec, "up") if not (s.level == 0 and s.value == 1) else None
    lc3 = consts.c3.log10(prec)
    # log10 ln q = log10 s + log10 ln 10
    if Ls is None:
        llnq = l_ln10
    else:
        try:
            llnq = Ls.to_interval(prec) + l_ln10
        except OverflowError:
            llnq = None
    main = mag_scale(s, 6 * r, prec, "up") if r > 0 else None
    outs = []
    for power_, const in ((2, lc3 + log10(Interval.coerce(2, prec))), (3, lc3 - l_ln10)):
        if llnq is not None:
            small = const + power_ * llnq
            small_m = mag_from_interval(Interval(small.hi, small.hi, prec), "up")
        else:
            # log10 of the (ln q)^p factor is itself a magnitude; its sum with const stays below 2x
            small_m = mag_scale(mag_add(Ls, mag_from_interval(Interval(l_ln10.hi, l_ln10.hi, prec), "up"),
                                        prec=prec, rounding="up"), power_ + 1, prec, "up")
        outs.append(small_m if main is None else mag_add(main, small_m, prec=prec, rounding="up"))
    return outs[0], outs[1]


def _mag_pow10(L: Magnitude, rounding: str, prec: int) -> Magnitude | None:
    """``10**L`` as a magnitude, or None beyond level 2."""
    if L.level == 2:
        return None
    try:
        return pow10(L, rounding, prec=prec).rounded(rounding)
    except OverflowError:
        return None


def replay(params: NuParams | Fraction | int, t: Triple, gamma, k_max: int, non_theorem: bool = False,
           precision: int = DEFAULT_PRECISION, max_precision: int = MAX_PRECISION,
           cap: int = DEFAULT_DIGIT_CAP) -> ReplayReport:
    """Evaluate the final inequality chain for ``k = 1 .. k_max``.

    A row's verdict is ``CONTRADICTION`` when ``omega_k`` is certified larger
    than ``2 c3 q_k^(6r) (ln q_k)^2`` and the linear form is certified nonzero
    at the witness.  Rows whose ``omega_k`` or ``q_k`` lie beyond level 2 are
    compared through their base-10 logarithms.
    """
    if not isinstance(params, NuParams):
        params = NuParams(params, max(k_max, 1))
    if params.nu == INFINITY:
        raise PreconditionError("replay needs a finite nu; the infinite case has no exponent recurrence")
    if k_max < 1:
        raise PreconditionError("k_max must be >= 1")
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise PreconditionError("gamma must be positive")
    r = max(t.R.degree, 0)
    nu = params.nu
    notes = []
    if not nu > 6 * r:
        if not non_theorem:
            raise PreconditionError(f"nu = {format_nu(nu)} does not exceed 6 deg R = {6 * r}; "
                                    "pass the non-theorem flag to explore this regime")
        notes.append(f"NON_THEOREM: nu = {format_nu(nu)} <= 6 deg R = {6 * r}")
    adm = t.admissibility()
    if not adm.admissible:
        notes.append(f"triple is {adm.label}")
    notes.extend(adm.notes)
    notes.append(errata.FLOOR_PLACEMENT)
    depth = max(params.depth, k_max)
    x = nu_liouville(NuParams(nu, depth, params.digits), cap, precision)
    prec = precision
    xi = x.enclosure(prec)
    points = [_truncation_point(x, k, prec) for k in range(1, k_max + 1)]
    consts = constants(t, xi, height_rat(gamma), points, prec)
    if consts.clamps:
        notes.append("constant clamps: " + ", ".join(consts.clamps))
    rows = []
    crossing = None
    for k in range(1, k_max + 1):
        row = _replay_row(x, k, t, gamma, consts, r, prec, max_precision, cap)
        rows.append(row)
        if crossing is None and row.verdict == "CONTRADICTION":
            crossing = k
    return ReplayReport(format_nu(nu), t, gamma, rows, crossing, consts, non_theorem, notes)


def _replay_row(x: SparseNumber, k: int, t: Triple, gamma: Fraction, consts: Constants, r: int,
                prec: int, max_precision: int, cap: int) -> ReplayRow:
    s = x.terms[k - 1][0]
    notes = []
    while True:
        try:
            omega = omega_for(x, k, cap, prec)
            L_omega = mag_log10(omega, prec, "down")
        except (ConstructionError, OverflowError, ValueError):
            # omega = floor(10^(nu s)) >= 10^(nu s - 1)
            omega = None
            L_omega = mag_sub(mag_scale(s, x.nu, prec, "down"), mag_from_int(1), prec=prec, rounding="down")
            notes.append("log-only: omega_k beyond level 2, compared through log10")
        L_cap, L_lower = _row_logs(consts, s, r, prec)
        rhs = _mag_pow10(L_cap, "up", prec)
        if omega is not None and rhs is not None:
            order = mag_cmp(omega, rhs, prec)
        else:
            order = mag_cmp(L_omega, L_cap, prec)
        if order is not Ordering.INCONCLUSIVE or prec >= max_precision:
            break
        prec *= 2
        notes.append(f"escalated to {prec} bits")
    lower_abs = _mag_pow10(L_lower, "up", prec)
    lower = None if lower_abs is None else SignedMagnitude(-1, lower_abs)
    upper = None
    lam = None
    verdict = None
    try:
        _, w = truncation(x, k, cap, prec=prec)
        try:
            upper = upper_bound_log(consts, w, prec=prec)
        except (OverflowError, ArithmeticError, ValueError):
            notes.append("upper bound beyond level 2")
        lam = lambda_eval(t, w, gamma, prec)
    except OverflowError:
        notes.append("log-only: q_k beyond level 2; linear form evaluated on the truncation enclosure")
        try:
            lam = lambda_eval(t, _truncation_point(x, k, prec), gamma, prec)
        except BranchError as exc:
            verdict = "SKIPPED_BRANCH"
            notes.append(str(exc))
    except BranchError as exc:
        verdict = "SKIPPED_BRANCH"
        notes.append(str(exc))
    if verdict is None:
        if order is Ordering.INCONCLUSIVE:
            verdict = "INCONCLUSIVE"
        elif order is Ordering.GT:
            if lam is not None and lam.nonzero_certified:
                verdict = "CONTRADICTION"
            else:
                verdict = "UNCERTIFIED_LAMBDA"
                notes.append("omega exceeds the cap but the linear form is not certified nonzero")
        else:
            verdict = "NO_CONTRADICTION"
    if lower is not None and upper is not None and signed_cmp(upper, lower, prec) is Ordering.LT:
        # |Lambda| >= lower and |Lambda| < upper cannot both hold
        notes.append("premises inconsistent: upper log-bound falls below the lower log-bound")
    return ReplayRow(k, omega, L_omega, rhs, L_cap, verdict, order.value, lower, L_lower, upper, lam, prec, notes)
