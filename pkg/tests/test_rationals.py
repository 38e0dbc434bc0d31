import math
from fractions import Fraction

import pytest

from scg.rationals import (INF, ParseError, at_least_sqrt2_times,
                           format_rational, parse_rational, supermodular_alpha)


def test_parse_plain_and_fraction():
    assert parse_rational("7/3") == Fraction(7, 3)
    assert parse_rational("5") == Fraction(5)
    assert parse_rational(4) == Fraction(4)


@pytest.mark.parametrize("bad", ["", "1/0", "x", "1.5", None, [1]])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ParseError):
        parse_rational(bad, "w")


def test_parse_error_names_field():
    with pytest.raises(ParseError, match="edges\\[0\\]\\.w"):
        parse_rational("nope", "edges[0].w")


def test_format_round_trip():
    for x in (Fraction(7, 3), Fraction(5), Fraction(0), Fraction(-2, 9)):
        assert parse_rational(format_rational(x)) == x
    assert format_rational(INF) == "inf"


def test_sqrt2_comparison_is_exact():
    # 14142136/10^7 is just above sqrt(2); 14142135/10^7 just below
    assert at_least_sqrt2_times(Fraction(14142136, 10**7), 1)
    assert not at_least_sqrt2_times(Fraction(14142135, 10**7), 1)
    assert at_least_sqrt2_times(Fraction(0), Fraction(0))
    with pytest.raises(ValueError):
        at_least_sqrt2_times(Fraction(-1), Fraction(1))


def test_gate_for_degree_one_is_golden_ratio_ceiling():
    a = supermodular_alpha(1)
    assert a == Fraction(1618034, 10**6)
    # exact: a is an upper bound, a - 1/10^6 is not
    assert (2 * a - 1) ** 2 >= 5
    assert (2 * (a - Fraction(1, 10**6)) - 1) ** 2 < 5


def test_gate_for_degree_two():
    a = supermodular_alpha(2)
    # threshold is 1 + sqrt(3)
    assert (a - 1) ** 2 >= 3
    assert (a - Fraction(1, 10**6) - 1) ** 2 < 3
    assert a < 3


def test_gate_exact_when_threshold_rational():
    # degree 4/... pick r where r(r+4) is a perfect square of a rational:
    # r = 9/2: disc = 9/2 * 17/2 -- not square; use r such that threshold rational:
    # threshold t satisfies t^2 = r(t+1); choose t = 3 -> r = 9/4
    a = supermodular_alpha(Fraction(9, 4))
    assert a == 3
