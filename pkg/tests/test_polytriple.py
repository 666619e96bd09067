from fractions import Fraction

import pytest

from liouville import errata
from liouville.interval import Interval
from liouville.polytriple import (
    Field,
    OmegaError,
    Poly,
    Triple,
    certify_omega,
    deriv_sup,
    in_omega,
    is_admissible,
)


def T(p, q, r):
    return Triple.parse(p, q, r)


def test_admissibility_examples():
    assert is_admissible(T("X", "X", "X")).admissible
    assert is_admissible(T("X", "2", "X")).admissible
    adm = is_admissible(T("2", "3", "0"))
    assert "(iii)" in adm.violated
    assert errata.CLAUSE_III in adm.notes


def test_permutation_is_not_invariant():
    # both constants: the clauses cannot tell (2,3,0) from (3,2,0)
    assert is_admissible(T("2", "3", "0")) == is_admissible(T("3", "2", "0"))
    assert is_admissible(T("X", "2", "0")).admissible
    assert is_admissible(T("2", "X", "0")).violated == ("(iii)",)


def test_n_n_x_violates_iii():
    adm = is_admissible(T("2", "2", "X"))
    assert "(iii)" in adm.violated and "(iv)" in adm.violated


def test_ring_clause():
    t = T("X", "X", "X/2")
    assert "(i)" in is_admissible(t).violated
    assert is_admissible(t, Field.Z, r_rational=True).admissible
    assert "(i)" not in is_admissible(T("X/2", "X", "X"), Field.QBAR).violated


def test_eval():
    assert Poly.parse("X^2+1").eval(Fraction(1, 2)) == Fraction(5, 4)
    assert Poly.parse("0").eval(Fraction(9, 7)) == 0
    assert Poly.parse("2X^3-X+3").eval(Fraction(3, 7)) == Fraction(936, 343)


def test_in_omega():
    assert in_omega(T("X", "X", "X"), Fraction(1, 2))
    assert not in_omega(T("X", "X", "X"), 0)
    assert not in_omega(T("X+1", "X", "X"), 0)


def test_certify_omega():
    with pytest.raises(OmegaError):
        certify_omega(T("X", "X", "X"), Interval(-1, 1))


def test_deriv_sup():
    x = Interval.from_bounds(Fraction(1, 2), Fraction(3, 4))
    assert deriv_sup("LOG_P", T("X", "X", "X"), x).contains(2)
    g = deriv_sup("Q_POW_R", T("X", "3", "X"), x)
    # 3^x log 3 peaks at 3^(3/4) log 3 ~ 2.5036
    assert g.hi >= Fraction(25036, 10000)
    z = deriv_sup("Q_POW_R", T("X", "X", "0"), x)
    assert z.lo == 0 and z.hi == 0


def test_derivative_and_height():
    p = Poly.parse("2X^3-X+3")
    assert str(p.derivative()) == str(Poly.parse("6X^2-1"))
    assert p.height() == 3
