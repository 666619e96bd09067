"""Continued fractions of rationals and of certified real enclosures."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .interval import Interval


class CertificationGap(ArithmeticError):
    """A quantity was certified but the expansion is too short to exhibit it."""


class Source(enum.Enum):
    RATIONAL_EXACT = "RATIONAL_EXACT"
    REAL_ENCLOSURE = "REAL_ENCLOSURE"


@dataclass(frozen=True)
class CFExpansion:
    quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    source: Source
    lo: Fraction
    hi: Fraction
    certified_prefix_length: int = field(default=0)

    def __post_init__(self):
        if self.source is Source.RATIONAL_EXACT:
            object.__setattr__(self, "certified_prefix_length", len(self.quotients))

    def __len__(self):
        return len(self.quotients)

    @property
    def exact(self) -> bool:
        return self.source is Source.RATIONAL_EXACT

    def value(self) -> Fraction:
        return fold(self.quotients)

    def index_of(self, p: int, q: int) -> int | None:
        for m, pq in enumerate(self.convergents):
            if pq == (p, q):
                return m
        return None


def euclid(x: Fraction) -> list[int]:
    """Quotients of ``x`` in canonical form (last quotient >= 2 unless the expansion has length 1)."""
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    out = []
    while b:
        t, r = divmod(a, b)
        out.append(t)
        a, b = b, r
    # past the first step the last quotient divides a larger remainder, so it is >= 2
    return out


def convergents(quotients) -> list[tuple[int, int]]:
    out = []
    p0, q0, p1, q1 = 1, 0, 0, 1
    for b in quotients:
        p0, p1 = b * p0 + p1, p0
        q0, q1 = b * q0 + q1, q0
        out.append((p0, q0))
    return out


def fold(quotients) -> Fraction:
    if not quotients:
        raise ValueError("empty continued fraction")
    p, q = convergents(quotients)[-1]
    return Fraction(p, q)


def expand(x) -> CFExpansion:
    x = Fraction(x)
    qs = euclid(x)
    return CFExpansion(tuple(qs), tuple(convergents(qs)), Source.RATIONAL_EXACT, x, x)


def expand_enclosure(x) -> CFExpansion:
    """Quotients shared by every real in the enclosure.

    ``x`` is an :class:`Interval` or a ``(lo, hi)`` pair of rationals.  A
    rational endpoint's final quotient is never certified: points just beside
    it may expand as ``[..., b - 1, 1, ...]`` or continue past ``b``.
    """
    if isinstance(x, Interval):
        lo, hi = x.bounds()
    else:
        lo, hi = Fraction(x[0]), Fraction(x[1])
    if lo > hi:
        raise ValueError("empty enclosure")
    if lo == hi:
        return expand(lo)
    a, b = euclid(lo)[:-1], euclid(hi)[:-1]
    prefix = []
    for u, v in zip(a, b):
        if u != v:
            break
        prefix.append(u)
    return CFExpansion(tuple(prefix), tuple(convergents(prefix)), Source.REAL_ENCLOSURE, lo, hi,
                       len(prefix))


def _err_upper(cf: CFExpansion, p: int, q: int) -> Fraction:
    r = Fraction(p, q)
    return max(abs(cf.lo - r), abs(cf.hi - r))


def legendre_locate(cf: CFExpansion, p: int, q: int, err_bound=None) -> int | None:
    """Index ``m`` with ``(p_m, q_m) == (p, q)`` when Legendre's criterion applies.

    ``err_bound`` is a certified upper bound on ``|x - p/q|``; when omitted it
    is computed from the enclosure stored in ``cf``.  Returns ``None`` when the
    bound does not beat ``1/(2q^2)``.  Raises :class:`CertificationGap` when it
    does but ``p/q`` is missing from the certified prefix.
    """
    if q < 1 or math.gcd(p, q) != 1:
        raise ValueError("legendre_locate needs p/q in lowest terms with q >= 1")
    err = _err_upper(cf, p, q) if err_bound is None else Fraction(err_bound)
    if not err < Fraction(1, 2 * q * q):
        return None
    m = cf.index_of(p, q)
    if m is None:
        raise CertificationGap(f"{p}/{q} satisfies Legendre's criterion but is not among "
                               f"{len(cf)} certified convergents; raise the precision")
    return m


def best_approx_bounds(cf: CFExpansion, m: int) -> tuple[Fraction, Fraction]:
    """``(1/(3 b_{m+1} q_m^2), 1/(q_m q_{m+1}))`` around ``|x - p_m/q_m|``."""
    if m < 0 or m + 1 >= cf.certified_prefix_length:
        raise IndexError(f"m+1 = {m + 1} lies outside the certified prefix "
                         f"of length {cf.certified_prefix_length}")
    qm = cf.convergents[m][1]
    q_next = cf.convergents[m + 1][1]
    b_next = cf.quotients[m + 1]
    return Fraction(1, 3 * b_next * qm * qm), Fraction(1, qm * q_next)


def rows(cf: CFExpansion) -> list[dict]:
    """One record per certified convergent, with bounds where defined."""
    out = []
    for m in range(cf.certified_prefix_length):
        p, q = cf.convergents[m]
        row = {"m": m, "b_m": cf.quotients[m], "p_m": p, "q_m": q, "err_lower": None, "err_upper": None}
        if m + 1 < cf.certified_prefix_length:
            row["err_lower"], row["err_upper"] = best_approx_bounds(cf, m)
        elif cf.exact:
            row["err_lower"] = row["err_upper"] = Fraction(0)
        out.append(row)
    return out
