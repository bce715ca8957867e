from fractions import Fraction

import pytest
from hypothesis import given, settings

from abeljac.laurent import LaurentPoly
from abeljac.params import ParamPoly
from abeljac.textio import ParseError, format_poly, parse_poly
from strategies import laurent_polys


def test_parse_examples():
    p = parse_poly("x^4*y + 2*x^3")
    assert p == LaurentPoly({(4, 1): 1, (3, 0): 2})
    assert parse_poly("0").is_zero()
    q0 = parse_poly("y^5/5 + mu3*y^2/2")
    assert q0.coeff(0, 5) == Fraction(1, 5)
    assert q0.coeff(0, 2) == ParamPoly.var("mu3").scale(Fraction(1, 2))


def test_whitespace_insensitive():
    assert parse_poly(" x ^ 2 *  y - 3 ") == parse_poly("x^2*y-3")


def test_print_canonical_order():
    assert format_poly(parse_poly("y + x")) == "x + y"
    p = parse_poly("x^4*y + mu0 + mu1*x + mu2*x^2 + mu3*x^3")
    assert format_poly(p) == "x^4*y + mu3*x^3 + mu2*x^2 + mu1*x + mu0"


def test_negative_exponents_only_on_x_and_y():
    assert parse_poly("x^-2*y^-1").coeff(-2, -1) == ParamPoly.const(1)
    with pytest.raises(ParseError):
        parse_poly("mu3^-1")


@pytest.mark.parametrize("text", ["x +", "x**2", "2x", "(x + y", "x ^ y", "nu*x", "x/0"])
def test_syntax_errors_carry_position(text):
    with pytest.raises(ParseError) as err:
        parse_poly(text)
    assert err.value.pos >= 0
    assert "position" in str(err.value)


@given(laurent_polys(params=True))
@settings(max_examples=500)
def test_round_trip(p):
    text = format_poly(p)
    assert parse_poly(text) == p
    assert format_poly(parse_poly(text)) == text
