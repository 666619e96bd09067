"""Acceptance criteria 1-10, one recorded PASS/FAIL line each."""

import json
import math
import random
import time
from fractions import Fraction
from pathlib import Path

from liouville.construction import NuParams, empirical_exponent, gen_exponents, nu_liouville, truncation, verify_approx
from liouville.contfrac import best_approx_bounds, expand, legendre_locate
from liouville.deduce import classify
from liouville import errata
from liouville.expr import BinOp, Num, Pow, evaluate
from liouville.heights import annihilating_poly, height_rat, icen_bound_for_poly
from liouville.interval import Interval, const_e, exp, sqrt, to_fraction
from liouville.linforms import replay
from liouville.magnitude import Ordering, mag_add, mag_cmp, mag_from_int, mag_mul, mag_sub
from liouville.polytriple import Poly, Triple
from liouville.powertower import Status, domain, functional_check, h_inf


def test_criterion_01_construction_fidelity(record):
    s_half = gen_exponents(NuParams(Fraction(1, 2), 3))
    s_one = gen_exponents(NuParams(1, 3))
    exact = [e.value for e in s_half[:2]] == [4, 401] and [e.value for e in s_one[:2]] == [4, 40001]
    exact = exact and s_one[2].value == 10**40001 * 40001 + 1
    margins = []
    for nu in (Fraction(1, 2), Fraction(1)):
        x = nu_liouville(NuParams(nu, 3))
        for k in (1, 2):
            c = verify_approx(x, k)
            margins.append(c.holds and c.margin is not None and c.margin >= 0)
    ok = exact and all(margins)
    record(1, ok, f"s prefixes exact={exact}, verify_approx margins >= 0: {sum(margins)}/{len(margins)}")
    assert ok


def test_criterion_02_exponent_convergence(record):
    t0 = time.perf_counter()
    ok = True
    details = []
    for nu in (Fraction(1, 2), Fraction(1)):
        x = nu_liouville(NuParams(nu, 3))
        ws = [truncation(x, k)[1] for k in (1, 2, 3)]
        lam = empirical_exponent(ws)
        s = [e.value for e in x.exponents]
        # omega_k <= 10^(nu s_k) so lambda_k <= nu; the rounded-down value bounds it from below
        ok &= all(nu - l <= Fraction(1, sk) and l <= nu for l, sk in zip(lam, s))
        if nu == Fraction(1, 2):
            ok &= lam[0] == Fraction(1, 2) and Fraction(200, 401) <= lam[1] <= Fraction(201, 401)
        details.append(f"nu={nu}: lambda_2={float(lam[1]):.6f}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 10
    record(2, ok, f"{'; '.join(details)}; {elapsed:.2f}s")
    assert ok


def _convergents(x: Fraction) -> list[tuple[int, int]]:
    # independent Euclid for the oracle
    out, (p0, q0, p1, q1) = [], (1, 0, 0, 1)
    while True:
        a = math.floor(x)
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        out.append((p0, q0))
        if x == a:
            return out
        x = 1 / (x - a)


def test_criterion_03_legendre_oracle(record):
    rng = random.Random(3)
    mismatches = checked = 0
    for _ in range(500):
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        cf = expand(x)
        convs = _convergents(x)
        for q in range(1, 61):
            centre = math.floor(x * q)
            for p in range(centre - 2, centre + 4):
                if math.gcd(p, q) != 1:
                    continue
                checked += 1
                holds = abs(x - Fraction(p, q)) < Fraction(1, 2 * q * q)
                brute = convs.index((p, q)) if holds and (p, q) in convs else None
                if holds and brute is None:
                    mismatches += 1  # would falsify Legendre's theorem itself
                    continue
                if legendre_locate(cf, p, q) != brute:
                    mismatches += 1
    ok = mismatches == 0
    record(3, ok, f"{checked} candidate fractions over 500 targets, {mismatches} mismatches")
    assert ok


def test_criterion_04_best_approximation_bounds(record):
    rng = random.Random(4)
    violations = checked = 0
    for _ in range(1000):
        x = Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**9))
        cf = expand(x)
        for m in range(len(cf) - 1):
            lo, hi = best_approx_bounds(cf, m)
            p, q = cf.convergents[m]
            err = abs(x - Fraction(p, q))
            checked += 1
            if not lo < err <= hi:
                violations += 1
    ok = violations == 0
    record(4, ok, f"{checked} convergents checked, {violations} violations")
    assert ok


def test_criterion_05_icen_bound(record):
    rng = random.Random(5)
    violations = 0
    for _ in range(1000):
        deg = rng.randint(0, 4)
        coeffs = [rng.randint(-50, 50) for _ in range(deg + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = rng.choice([-1, 1]) * rng.randint(1, 50)
        P = Poly(tuple(Fraction(c) for c in coeffs))
        q = rng.randint(1, 10**4)
        x = Fraction(rng.randint(-10**4, 10**4), q)
        bound = icen_bound_for_poly(P, x)
        h = height_rat(P.eval(x))
        if bound.level == 0 and h > bound.value:
            violations += 1
    P = Poly.parse("X^2+1")
    worked = height_rat(P.eval(Fraction(1, 2))) == 5 and icen_bound_for_poly(P, Fraction(1, 2)).value == 324
    ok = violations == 0 and worked
    record(5, ok, f"1000 instances, {violations} violations; X^2+1 at 1/2 gives 5 <= 324: {worked}")
    assert ok


def test_criterion_06_annihilator(record):
    rng = random.Random(6)
    bad_check = bad_height = n = 0
    while n < 200:
        q, r = rng.randint(2, 7), rng.randint(0, 2)
        theta = rng.choice([t for t in range(-5, 6) if t != 0])
        # Qval = Q(p/q) for a random linear integer Q and |p/q| <= 1
        Q = Poly((Fraction(rng.randint(-5, 5)), Fraction(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]))))
        qval = Q.eval(Fraction(rng.randint(-q, q), q))
        N = q**r
        if qval == 0 or (qval < 0 and N % 2 == 0):
            continue
        n += 1
        ap = annihilating_poly(qval, Fraction(theta, N), q, r, n=1)
        c = ap.check(256)
        if not (c.contains(0) and to_fraction(c.width()) <= Fraction(1, 2**240)):
            bad_check += 1
        coef = max(abs(int(k)) for k in ap.annihilator.coeffs)
        if not (ap.height_bound.level > 0 or ap.height_bound.value >= coef):
            bad_height += 1
    ok = bad_check == 0 and bad_height == 0
    record(6, ok, f"200 instances, check failures {bad_check}, height-bound failures {bad_height}")
    assert ok


def test_criterion_07_replay(record):
    rep = replay(7, Triple.parse("X", "X", "X"), 2, 3)
    verdicts = [row.verdict for row in rep.rows]
    k2 = rep.rows[1]
    via_mag = mag_cmp(k2.log10_omega, k2.log10_rhs_cap) is Ordering.GT
    log_only = rep.rows[2].log10_omega.level >= 1 and verdicts[2] == "CONTRADICTION"
    low = replay(1, Triple.parse("X", "X", "X"), 2, 3, non_theorem=True)
    ok = (rep.crossing_index == 2 and verdicts[:2] == ["NO_CONTRADICTION", "CONTRADICTION"]
          and via_mag and log_only and low.crossing_index is None)
    record(7, ok, f"nu=7 rows {verdicts}, crossing={rep.crossing_index}; nu=1 crossing={low.crossing_index}")
    assert ok


def test_criterion_08_power_towers(record):
    e = const_e()
    r2 = h_inf(sqrt(Interval.coerce(2)))
    err2 = max(abs(b - 2) for b in r2.value.bounds())
    re = h_inf(exp(1 / e))
    e_lo, e_hi = e.bounds()
    v_lo, v_hi = re.value.bounds()
    erre = max(abs(v_hi - e_lo), abs(e_hi - v_lo))
    lo, hi = domain()
    a, b = to_fraction(lo.hi), to_fraction(hi.lo)
    grid_bad = 0
    for i in range(50):
        x = a + (b - a) * i / 49
        for k in (1, 3):
            r1, rr = functional_check(x, k)
            for res in (r1, rr):
                if not (res.contains(0) and to_fraction(res.width()) <= Fraction(1, 2**200)):
                    grid_bad += 1
    diverged = h_inf(Fraction(3, 2)).status is Status.DIVERGED
    ok = err2 < Fraction(1, 10**30) and erre < Fraction(1, 10**20) and grid_bad == 0 and diverged
    record(8, ok, f"|h(sqrt2)-2|<{float(err2):.1e}, |h(e^(1/e))-e|<{float(erre):.1e}, "
                  f"grid failures {grid_bad}, x=1.5 diverged={diverged}")
    assert ok


def test_criterion_09_deduction_corpus(record):
    corpus = json.loads((Path(__file__).parent / "data" / "deduce_corpus.json").read_text())
    agree = 0
    notes_ok = True
    for case in corpus:
        v = classify(case["expr"], case["facts"])
        agree += (v.status.value, v.rule) == (case["status"], case["rule"])
        if v.rule == "main4":
            notes_ok &= errata.CLAUSE_III in v.notes
    ok = agree == len(corpus) == 30 and notes_ok
    record(9, ok, f"{agree}/{len(corpus)} agree; main4 verdicts carry the clause note: {notes_ok}")
    assert ok


def _random_expr(rng, depth=0):
    if depth > 3 or rng.random() < 0.3:
        return Num(Fraction(rng.randint(-20, 20), rng.randint(1, 20)))
    kind = rng.random()
    if kind < 0.8:
        return BinOp(rng.choice("+-*/"), _random_expr(rng, depth + 1), _random_expr(rng, depth + 1))
    return Pow(_random_expr(rng, depth + 1), Num(Fraction(rng.randint(0, 4))))


def _exact(e):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Pow):
        return _exact(e.base) ** int(e.exp.value)
    a, b = _exact(e.left), _exact(e.right)
    return {"+": a + b, "-": a - b, "*": a * b, "/": a / b if b else None}[e.op] if b or e.op != "/" else None


def test_criterion_10_numeric_kernel(record):
    rng = random.Random(10)
    contain_bad = tried = 0
    mono_bad = 0
    while tried < 1000:
        e = _random_expr(rng)
        try:
            x = _exact(e)
        except (ZeroDivisionError, TypeError):
            continue
        if x is None:
            continue
        try:
            lo_p = evaluate(e, 128)
            hi_p = evaluate(e, 256)
        except ZeroDivisionError:
            # an interval divisor may straddle zero even when the exact one does not vanish
            continue
        tried += 1
        lo, hi = lo_p.bounds()
        if not lo <= x <= hi:
            contain_bad += 1
        if not (lo_p.lo <= hi_p.lo and hi_p.hi <= lo_p.hi):
            mono_bad += 1
    for v in (Fraction(1, 3), Fraction(7, 5), Fraction(22, 7)):
        for p in (64, 128, 256, 512):
            a = exp(Interval.coerce(v, p)) * sqrt(Interval.coerce(v, p))
            b = exp(Interval.coerce(v, 2 * p)) * sqrt(Interval.coerce(v, 2 * p))
            mono_bad += not (a.lo <= b.lo and b.hi <= a.hi)
    mag_bad = 0
    for _ in range(1000):
        a, b = rng.randint(1, 10**60), rng.randint(1, 10**60)
        A, B = mag_from_int(a), mag_from_int(b)
        mag_bad += mag_mul(A, B).value != a * b
        mag_bad += mag_add(A, B).value != a + b
        if a > b:
            mag_bad += mag_sub(A, B).value != a - b
        want = Ordering.EQ if a == b else (Ordering.LT if a < b else Ordering.GT)
        mag_bad += mag_cmp(A, B) is not want
    ok = contain_bad == 0 and mono_bad == 0 and mag_bad == 0
    record(10, ok, f"containment failures {contain_bad}/{tried}, magnitude mismatches {mag_bad}/1000 pairs, "
                   f"precision-doubling violations {mono_bad}")
    assert ok
