import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liouville.construction import NuParams, liouville_constant, nu_liouville
from liouville.contfrac import (
    CertificationGap,
    best_approx_bounds,
    expand,
    expand_enclosure,
    fold,
    legendre_locate,
    rows,
)


def test_expand_examples():
    assert expand(Fraction(7, 3)).quotients == (2, 3)
    assert expand(Fraction(1, 10000)).quotients == (0, 10000)
    cf = expand(Fraction(110001, 1000000))
    assert cf.value() == Fraction(110001, 1000000)


def test_enclosure_prefix():
    # 0.33 = [0; 3, 33] and 0.34 = [0; 2, 1, 16] share only [0]
    assert expand_enclosure((Fraction(33, 100), Fraction(34, 100))).quotients == (0,)
    x = Fraction(5, 17)
    assert expand_enclosure((x, x)).quotients == expand(x).quotients


def test_liouville_enclosure_matches_deep_truncation():
    lo, hi = liouville_constant(5).rational_enclosure()
    shallow = expand_enclosure(liouville_constant(4).rational_enclosure())
    deep = expand_enclosure((lo, hi))
    n = len(shallow.quotients)
    assert n > 3 and deep.quotients[:n] == shallow.quotients


def test_legendre_examples():
    cf = expand(Fraction(110001, 1000000))
    assert legendre_locate(cf, 11, 100) is not None
    assert legendre_locate(cf, 1, 10) is None
    assert legendre_locate(cf, 1, 3) is None
    assert legendre_locate(cf, 110001, 1000000) == len(cf) - 1


def test_certification_gap():
    cf = expand_enclosure((Fraction(1, 3) - Fraction(1, 10**9), Fraction(1, 3) + Fraction(1, 10**9)))
    with pytest.raises(CertificationGap):
        legendre_locate(cf, 1, 3, err_bound=0)


def test_best_approx_examples():
    lo, hi = best_approx_bounds(expand(Fraction(7, 3)), 0)
    assert (lo, hi) == (Fraction(1, 9), Fraction(1, 3))
    x = fold([1, 1, 1, 1, 1])
    cf = expand(x)
    lo, hi = best_approx_bounds(cf, 2)
    p, q = cf.convergents[2]
    assert lo < abs(x - Fraction(p, q)) <= hi


def test_nu_truncation_convergent_bounds():
    x = nu_liouville(NuParams(Fraction(1, 2), 3))
    cf = expand_enclosure(x.rational_enclosure())
    m = legendre_locate(cf, 1, 10**4)
    lo, hi = best_approx_bounds(cf, m)
    # lower bound of the form q^-(1 + s_2/s_1) with q = 10^4
    assert lo >= Fraction(1, 10 ** (4 + 401))
    err = max(abs(b - Fraction(1, 10**4)) for b in x.rational_enclosure())
    assert lo < err <= hi


def test_rows_columns():
    r = rows(expand(Fraction(936, 343)))
    assert [row["b_m"] for row in r] == [2, 1, 2, 1, 2, 4, 1, 5]
    assert r[-1]["err_upper"] == 0


@given(st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6))
@settings(max_examples=500, deadline=None)
def test_fold_reconstructs(x):
    assert fold(expand(x).quotients) == x


def test_fold_reconstructs_ten_thousand():
    rng = random.Random(7)
    for _ in range(10**4):
        x = Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**9))
        assert expand(x).value() == x
