import json
from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liouville.magnitude import (
    Magnitude,
    Ordering,
    SignedMagnitude,
    floor_pow10,
    format_rational,
    mag_add,
    mag_cmp,
    mag_from_int,
    mag_from_log10,
    mag_mul,
    mag_pow,
    mag_sub,
    parse_rational,
    pow10,
)


def test_small_integers_stay_exact():
    m = mag_from_int(1)
    assert m.level == 0 and m.value == 1


def test_40002_digit_integer_is_level_zero():
    m = mag_from_int(10**40001)
    assert m.level == 0
    assert gmpy2.num_digits(m.value, 10) == 40002


def test_ten_million_digits_promote_to_level_one():
    big = int(gmpy2.mpz(10) ** (10**7) + 7)
    m = mag_from_int(big)
    assert m.level == 1
    assert m.lo <= 10**7 <= m.hi + Fraction(1, 10**20)


def test_mul_examples():
    assert mag_mul(mag_from_int(4), mag_from_int(25)) == mag_from_int(100)
    r = mag_mul(mag_from_log10(200), mag_from_log10(300))
    assert r.level == 1 and r.lo == r.hi == 500
    r = mag_mul(mag_from_int(40001), mag_from_log10(40001))
    assert r.level == 1
    assert Fraction(40005602, 1000) < r.lo <= r.hi < Fraction(40005603, 1000)


def test_pow_examples():
    r = mag_pow(mag_from_log10(4), 100)
    assert r.level == 1 and r.lo == 400
    assert mag_pow(mag_from_int(2), 1) == mag_from_int(2)
    # exact integer exponent: log10 has ~204 digits, under the cap, so it stays level 1
    r = mag_pow(mag_from_log10(401), floor_pow10(Fraction(401, 2)))
    ll = r.loglog10()
    assert Fraction(2031, 10) < ll.lo and ll.hi < Fraction(2032, 10)
    r = mag_pow(mag_from_log10(401), mag_from_log10(Fraction(401, 2)))
    assert r.level == 2
    assert Fraction(2031, 10) < r.lo and r.hi < Fraction(2032, 10)


def test_cmp_examples():
    assert mag_cmp(mag_from_int(7), mag_from_int(7)) is Ordering.EQ
    a = mag_from_log10(28 * 10**28)
    b = mag_from_log10(24 * 10**28)
    assert mag_cmp(a, b) is Ordering.GT
    assert mag_cmp(b, a) is Ordering.LT
    assert mag_cmp(mag_from_log10(1, 3), mag_from_log10(2, 4)) is Ordering.INCONCLUSIVE


def test_cmp_across_levels():
    assert mag_cmp(mag_from_int(10**50), mag_from_log10(51)) is Ordering.LT
    assert mag_cmp(pow10(mag_from_log10(3)), mag_from_int(10**999)) is Ordering.GT


def test_floor_pow10_matches_isqrt():
    assert floor_pow10(Fraction(401, 2)).value == int(gmpy2.isqrt(10**401))


def test_json_roundtrip():
    for m in (mag_from_int(10**50 + 3), mag_from_log10(Fraction(1, 3)), mag_from_log10(1, 2, "up")):
        again = Magnitude.from_json(json.loads(json.dumps(m.to_json())))
        assert again.level == m.level
        assert again.payload == m.payload


def test_invalid_magnitudes():
    with pytest.raises(ValueError):
        mag_from_int(0)
    with pytest.raises(ValueError):
        Magnitude(3, Fraction(1), Fraction(1))
    with pytest.raises(ValueError):
        SignedMagnitude(0, mag_from_int(2))


def test_rational_text_roundtrip():
    for x in (Fraction(1, 3), Fraction(5, 4), Fraction(-7, 8), Fraction(10**30 + 1, 7)):
        assert parse_rational(format_rational(x)) == x
    assert format_rational(Fraction(5, 4)) == "1.25"


@given(st.integers(1, 10**40), st.integers(1, 10**40))
@settings(max_examples=200, deadline=None)
def test_level_zero_agrees_with_bigint(a, b):
    A, B = mag_from_int(a), mag_from_int(b)
    assert mag_mul(A, B).value == a * b
    assert mag_add(A, B).value == a + b
    if a > b:
        assert mag_sub(A, B).value == a - b
    expected = Ordering.EQ if a == b else (Ordering.LT if a < b else Ordering.GT)
    assert mag_cmp(A, B) is expected
