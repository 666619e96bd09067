from fractions import Fraction

from liouville.interval import Interval, const_e, exp, sqrt
from liouville.polytriple import Triple
from liouville.powertower import Status, domain, functional_check, h_inf, h_k, sweep, triple_tower


def test_finite_towers():
    assert h_k(2, 3).contains(16)
    assert all(h_k(1, k).contains(1) for k in range(1, 6))
    v = h_k(Fraction(3, 2), 2)
    assert Fraction(18371, 10000) <= v.lo and v.hi <= Fraction(18372, 10000)


def test_infinite_tower_sqrt2():
    r = h_inf(sqrt(Interval.coerce(2)))
    assert r.status is Status.CONVERGED
    assert r.value.contains(2)
    assert r.residual.contains(0) and r.residual.mag() < Fraction(1, 10**30)


def test_infinite_tower_at_one_and_domain_ends():
    r = h_inf(1)
    assert r.status is Status.CONVERGED and r.iterations == 1
    e = const_e()
    top = h_inf(exp(1 / e))
    assert top.status is Status.CONVERGED and top.value.contains(e.lo)
    bottom = h_inf(exp(-e))
    assert bottom.value.lo <= (1 / e).hi and (1 / e).lo <= bottom.value.hi


def test_outside_domain():
    assert h_inf(Fraction(3, 2)).status is Status.DIVERGED
    assert h_inf(Fraction(1, 20)).status is Status.DOMAIN_ERROR


def test_refinement_nests():
    a = h_inf(Fraction(6, 5), Fraction(1, 10**10))
    b = h_inf(Fraction(6, 5), Fraction(1, 10**20))
    assert a.value.lo <= b.value.lo and b.value.hi <= a.value.hi


def test_bounded_by_e_and_monotone_above_one():
    e = const_e()
    x = Fraction(7, 5)
    prev = h_k(x, 1)
    for k in range(2, 30):
        cur = h_k(x, k)
        assert cur.lo > prev.lo and cur.hi < e.hi
        prev = cur
    assert h_inf(x).value.hi <= e.hi


def test_even_odd_iterates_bracket_limit_below_one():
    x = Fraction(1, 5)
    lim = h_inf(x).value
    for k in range(1, 20, 2):
        assert h_k(x, k).hi <= lim.hi and h_k(x, k + 1).lo >= lim.lo


def test_functional_equation():
    r1, _ = functional_check(2, 1)
    assert r1.contains(0)
    r1, r2 = functional_check(Fraction(1, 2), 2)
    assert r1.contains(0) and r2.contains(0)
    assert r1.width() <= Fraction(1, 2**200) and r2.width() <= Fraction(1, 2**200)


def test_triple_tower():
    t = Triple.parse("X", "X", "X")
    assert triple_tower(t, 2).contains(16)
    x = Interval.coerce(Fraction(110001, 1000000))
    v = triple_tower(t, x)
    assert v.width() <= Fraction(1, 2**200)
    h3 = h_k(x, 3)
    assert v.lo <= h3.hi and h3.lo <= v.hi
    assert triple_tower(Triple.parse("X+3", "X", "0"), 2).contains(5)


def test_domain_and_sweep():
    lo, hi = domain()
    assert lo.hi < Fraction(66, 1000) < hi.lo
    rows = sweep([Fraction(1, 10), Fraction(13, 10), Fraction(3, 2)])
    assert [r["status"] for r in rows] == ["CONVERGED", "CONVERGED", "DIVERGED"]
