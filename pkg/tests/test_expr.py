from fractions import Fraction

import pytest

from liouville.expr import BinOp, Const, Num, ParseError, Pow, Tower, Var, evaluate, parse, to_text
from liouville.interval import Interval, const_e


def test_power_is_right_associative():
    e = parse("xi^xi^xi")
    assert e == parse("xi^(xi^xi)")
    assert isinstance(e, Pow) and isinstance(e.exp, Pow)


def test_constants_and_towers():
    e = parse("2^(2^xi)")
    assert e.base == Num(Fraction(2))
    t = parse("h_4(xi)")
    assert isinstance(t, Tower) and t.k == 4
    assert parse("a*xi", ["a"]) == BinOp("*", Const("a"), Var())


def test_syntax_error_column():
    with pytest.raises(ParseError) as err:
        parse("xi^^3")
    assert err.value.column == 4


def test_unknown_identifier():
    with pytest.raises(ParseError):
        parse("zeta^xi")


def test_implicit_multiplication():
    assert parse("2xi") == parse("2*xi")


@pytest.mark.parametrize("text", [
    "xi^(xi^xi)", "(xi^2+1)^((2*xi)^(xi-3))", "2^(2^xi)", "h_4(xi)", "xi + xi^xi",
    "-xi^2", "(xi+1)/(xi-1)", "sqrt(2)^xi", "e^(xi^xi)", "h(xi)",
])
def test_print_parse_roundtrip(text):
    e = parse(text)
    assert parse(to_text(e)) == e


def test_evaluate():
    a, b = evaluate(parse("exp(1/e)")), evaluate(parse("e^(1/e)"))
    assert a.lo <= b.hi and b.lo <= a.hi
    x = Interval.coerce(Fraction(1, 2))
    assert evaluate(parse("xi^2 + 1"), x=x).contains(Fraction(5, 4))
    assert evaluate(parse("h_3(2)")).contains(16)
    assert evaluate(parse("e")).lo == const_e().lo
    with pytest.raises(ValueError):
        evaluate(parse("xi"))
