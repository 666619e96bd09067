"""Finite and infinite power towers over interval arguments."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .interval import DEFAULT_PRECISION, Interval, const_e, exp, log, power, to_fraction
from .linforms import BranchError
from .polytriple import Triple, certify_omega

MAX_ITER = 10_000
DIVERGENCE_THRESHOLD = Fraction(10) ** 100


class Status(str, enum.Enum):
    CONVERGED = "CONVERGED"
    DIVERGED = "DIVERGED"
    DOMAIN_ERROR = "DOMAIN_ERROR"
    MAX_ITER = "MAX_ITER"


@dataclass(frozen=True)
class TowerResult:
    value: Interval | None
    iterations: int
    residual: Interval | None
    status: Status
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        def pair(iv):
            return None if iv is None else [format(iv.lo, ".40g"), format(iv.hi, ".40g")]
        return {"value": pair(self.value), "iterations": self.iterations, "residual": pair(self.residual),
                "status": self.status.value, "notes": list(self.notes)}


def _positive(x, prec: int) -> Interval:
    x = x if isinstance(x, Interval) else Interval.coerce(x, prec)
    if not x.is_positive():
        raise ValueError("power towers need a base certified positive")
    return x


def h_k(x, k: int, prec: int = DEFAULT_PRECISION) -> Interval:
    """``x^x^...^x`` with ``k`` copies of ``x``."""
    if k < 1:
        raise ValueError("tower order must be >= 1")
    x = _positive(x, prec)
    h = x
    for _ in range(k - 1):
        h = power(x, h)
    return h


def domain(prec: int = DEFAULT_PRECISION) -> tuple[Interval, Interval]:
    """Enclosures of ``e^-e`` and ``e^(1/e)``."""
    e = const_e(prec)
    return exp(-e), exp(1 / e)


def _g(y: Fraction, prec: int) -> Interval:
    Y = Interval.coerce(y, prec)
    return log(Y) / Y


def _bisect(pred, a: Fraction, b: Fraction, width: Fraction) -> tuple[Fraction, Fraction, int]:
    """Shrink ``[a, b]`` keeping ``pred(a)`` true and ``pred(b)`` false."""
    steps = 0
    while b - a >= width:
        m = (a + b) / 2
        if pred(m):
            a = m
        else:
            b = m
        steps += 1
    return a, b, steps


def h_inf(x, tol=Fraction(1, 10**30), prec: int = DEFAULT_PRECISION) -> TowerResult:
    """The infinite tower on ``[e^-e, e^(1/e)]``.

    The limit is the root of ``log(y)/y = log(x)`` in ``(0, e]``.  Both
    endpoints of the enclosure are found by deterministic bisection, so a
    smaller ``tol`` always refines the previous enclosure.  ``CONVERGED``
    means the residual ``h - x^h`` is enclosed below ``tol`` in magnitude.
    """
    x = _positive(x, prec)
    tol = Fraction(tol)
    lo_dom, hi_dom = domain(prec)
    if x.lo == x.hi == 1:
        one = Interval.coerce(1, prec)
        return TowerResult(one, 1, one - power(x, one), Status.CONVERGED)
    if x.lo > hi_dom.hi:
        return _diverge(x, prec)
    if x.lo < lo_dom.lo or x.hi > hi_dom.hi:
        note = "x below e^-e" if x.hi < lo_dom.lo else "x straddles the boundary of [e^-e, e^(1/e)]"
        return TowerResult(None, 0, None, Status.DOMAIN_ERROR, (note,))
    lnlo, lnhi = log(Interval(x.lo, x.lo, prec)), log(Interval(x.hi, x.hi, prec))
    e_hi = to_fraction(const_e(prec).hi)
    start = min(to_fraction(x.lo), Fraction(1))
    width = tol / 8
    # g is increasing on (0, e]; root(x.lo) <= root(x) <= root(x.hi)
    lo, _, n1 = _bisect(lambda y: _g(y, prec).hi <= lnlo.lo, start, e_hi, width)
    notes = ()
    if _g(e_hi, prec).lo >= lnhi.hi:
        _, hi, n2 = _bisect(lambda y: not _g(y, prec).lo >= lnhi.hi, start, e_hi, width)
    else:
        # x.hi touches e^(1/e) from above within the enclosure; the limit never exceeds e
        hi, n2 = e_hi, 0
        notes = ("upper endpoint capped at e",)
    V = Interval.from_bounds(lo, hi, prec)
    res = V - power(x, V)
    status = Status.CONVERGED if res.mag() < tol else Status.MAX_ITER
    return TowerResult(V, n1 + n2, res, status, notes)


def _diverge(x: Interval, prec: int) -> TowerResult:
    h = x
    for i in range(1, MAX_ITER + 1):
        if h.lo > DIVERGENCE_THRESHOLD:
            return TowerResult(h, i, None, Status.DIVERGED, ("iterates exceeded 10^100",))
        h = power(x, h)
    return TowerResult(h, MAX_ITER, None, Status.MAX_ITER, ("no divergence within the iteration cap",))


def functional_check(x, k: int, prec: int = DEFAULT_PRECISION) -> tuple[Interval, Interval]:
    """Enclosures of ``h_{k+1} - x^h_k`` and ``h_{k+2} - x^(x^h_k)``."""
    x = _positive(x, prec)
    hk = h_k(x, k, prec)
    r1 = h_k(x, k + 1, prec) - power(x, hk)
    r2 = h_k(x, k + 2, prec) - power(x, power(x, hk))
    return r1, r2


def triple_tower(t: Triple, x, prec: int = DEFAULT_PRECISION) -> Interval:
    """``P(x)^(Q(x)^R(x))`` as ``exp(Q^R log P)``."""
    x = x if isinstance(x, Interval) else Interval.coerce(x, prec)
    if t.R.is_zero():
        return t.P.eval_interval(x)
    p, q, r = certify_omega(t, x)
    if not p.is_positive():
        raise BranchError("P(x) is not certified positive")
    if not q.is_positive():
        raise BranchError("Q(x) is not certified positive")
    return exp(power(q, r) * log(p))


def sweep(xs, tol=Fraction(1, 10**30), prec: int = DEFAULT_PRECISION) -> list[dict]:
    """Rows ``(x, h_inf, residual, iterations)`` for plotting."""
    out = []
    for x in xs:
        X = x if isinstance(x, Interval) else Interval.coerce(x, prec)
        r = h_inf(X, tol, prec)
        out.append({"x": format(X.mid(), ".20g"),
                    "h_inf": "" if r.value is None or r.status is Status.DIVERGED else format(r.value.mid(), ".30g"),
                    "residual": "" if r.residual is None else f"{float(r.residual.mag()):.3e}",
                    "iterations": r.iterations, "status": r.status.value})
    return out
