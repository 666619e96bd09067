import json
from fractions import Fraction

import gmpy2
import pytest

from liouville.construction import (
    ConstructionError,
    Kind,
    NuParams,
    SparseNumber,
    audit_witnesses,
    empirical_exponent,
    gen_exponents,
    gen_ultra,
    liouville_constant,
    nu_liouville,
    truncation,
    verify_approx,
)
from liouville.magnitude import mag_from_int


def test_exponents_small_depth():
    assert [e.value for e in gen_exponents(NuParams(1, 2))] == [4, 40001]
    assert [e.value for e in gen_exponents(NuParams(Fraction(1, 2), 2))] == [4, 401]


def test_third_exponent_nu_one_is_exact():
    s = gen_exponents(NuParams(1, 3))
    assert s[2].level == 0
    assert s[2].value == 10**40001 * 40001 + 1
    assert gmpy2.num_digits(s[2].value, 10) == 40006


def test_recurrence_congruence():
    s = gen_exponents(NuParams(Fraction(1, 2), 4))
    for a, b in zip(s[:2], s[1:3]):
        assert b.value % a.value == 1


def test_nu_zero_rejected():
    with pytest.raises(ConstructionError):
        gen_exponents(NuParams(0, 3))
    with pytest.raises(ConstructionError):
        NuParams(-1, 3)


def test_truncations():
    r, _ = truncation(liouville_constant(4), 3)
    assert r == Fraction(110001, 1000000)
    r, w = truncation(nu_liouville(NuParams(1, 3)), 1)
    assert r == Fraction(1, 10**4) and w.omega.value == 10000
    r, w = truncation(nu_liouville(NuParams(Fraction(1, 2), 3)), 1)
    assert r == Fraction(1, 10**4) and w.omega.value == 100


def test_verify_approx():
    x = nu_liouville(NuParams(Fraction(1, 2), 3))
    c = verify_approx(x, 1)
    assert c.holds and c.margin >= 0
    assert verify_approx(nu_liouville(NuParams(1, 3)), 2).holds
    assert verify_approx(liouville_constant(3), 2, omega=mag_from_int(2)).holds


def test_empirical_exponent():
    x = nu_liouville(NuParams(Fraction(1, 2), 3))
    ws = [truncation(x, k)[1] for k in (1, 2)]
    lam = empirical_exponent(ws)
    assert lam[0] == Fraction(1, 2)
    assert Fraction(200, 401) <= lam[1] <= Fraction(201, 401)


def test_liouville_constant_exponent_tends_to_zero():
    x = liouville_constant(5)
    lam = empirical_exponent([truncation(x, k)[1] for k in range(1, 6)])
    assert lam[0] == 0
    assert all(a > b for a, b in zip(lam[1:], lam[2:]))
    assert lam[-1] < Fraction(1, 100)


def test_ultra():
    u, ws = gen_ultra(3)
    assert u.kind is Kind.ULTRA
    assert u.exponents[1].value == 9567
    assert u.exponents[2].level == 2
    om = ws[0].omega.to_interval()
    assert Fraction(95659, 10) < om.lo and om.hi < Fraction(9566)
    lam = empirical_exponent(ws)
    assert lam[1] > lam[0]
    assert verify_approx(u, 1).holds and verify_approx(u, 2).holds
    with pytest.raises(ConstructionError):
        gen_ultra(4)


def test_audit():
    x = nu_liouville(NuParams(Fraction(1, 2), 3))
    ok, bad = audit_witnesses(x, [(1, 10**4, 100), (1, 10**4, 300)])
    assert ok.status == "CONSISTENT" and ok.bound == Fraction(401, 2)
    assert bad.status == "VIOLATION"
    (na,) = audit_witnesses(liouville_constant(4), [(1, 3, 5)])
    assert na.status == "NOT_APPLICABLE"


def test_enclosure_and_json_roundtrip():
    x = nu_liouville(NuParams(1, 3))
    assert x.enclosure().contains(Fraction(1, 10**4))
    again = SparseNumber.from_json(json.loads(json.dumps(x.to_json())))
    assert again == x


def test_digit_choices():
    x = nu_liouville(NuParams(1, 2, [2, 1]))
    r, w = truncation(x, 1)
    assert r == Fraction(2, 10**4)
    assert (w.p, w.q.value) == (1, 5000)
    assert verify_approx(x, 1).holds
    with pytest.raises(ConstructionError):
        NuParams(1, 2, [3, 1])
