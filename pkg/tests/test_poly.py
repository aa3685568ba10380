from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricres.poly import ParseError, SupportPoly, format_poly, is_squarefree, parse_poly, upoly_gcd


@pytest.mark.parametrize(
    "text,terms",
    [
        ("z^5 + x^3 + y^3", {(0, 0, 5): 1, (3, 0, 0): 1, (0, 3, 0): 1}),
        ("x^2 + z*y^2 + z^3", {(2, 0, 0): 1, (0, 2, 1): 1, (0, 0, 3): 1}),
        ("x^2 - y^2", {(2, 0, 0): 1, (0, 2, 0): -1}),
        ("-3x y^2 + 1/2 z", {(1, 2, 0): -3, (0, 0, 1): Fraction(1, 2)}),
        ("x*x", {(2, 0, 0): 1}),
        ("x - x", {}),
        ("7", {(0, 0, 0): 7}),
    ],
)
def test_parse(text, terms):
    assert dict(parse_poly(text).terms) == terms


@pytest.mark.parametrize(
    "text,pos",
    [("x + w", 4), ("x +", 3), ("x^0", 2), ("", 0), ("x ^ y", 4), ("2/0 x", 2), ("x y)", 3)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_poly(text)
    assert e.value.position == pos
    assert f"position {pos}" in str(e.value)


def test_unknown_variable_named():
    with pytest.raises(ParseError, match="unknown variable 'w'"):
        parse_poly("x + w")


def test_format_is_canonical():
    assert format_poly(parse_poly("z^2 + x^2 - 2*x*z")) == "x^2 - 2*x*z + z^2"
    assert format_poly(parse_poly("-1/2 y")) == "-1/2*y"
    assert format_poly(SupportPoly({})) == "0"


exps = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=5)
polys = st.dictionaries(exps, coeffs, max_size=6).map(SupportPoly)


@given(polys)
def test_print_parse_round_trip(g):
    assert parse_poly(format_poly(g)) == g


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    assert a * b == b * a


def test_power_and_restrict():
    x, z = SupportPoly.monomial((1, 0, 0)), SupportPoly.monomial((0, 0, 1))
    sq = (x - z) ** 2
    assert sq == parse_poly("x^2 - 2xz + z^2")
    assert sq.restrict([(2, 0, 0)]) == x * x


def test_rejects_negative_exponent():
    with pytest.raises(ValueError):
        SupportPoly({(-1, 0, 0): 1})


class TestUnivariate:
    def test_gcd(self):
        # (y - 1)(y - 2) and (y - 1)(y + 3)
        assert upoly_gcd([2, -3, 1], [-3, 2, 1]) == [-1, 1]

    def test_squarefree(self):
        assert is_squarefree([1, 0, 0, 1])  # 1 + y^3
        assert not is_squarefree([1, -2, 1])  # (1 - y)^2
        assert not is_squarefree([])
