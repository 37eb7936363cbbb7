from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadexp.enclosure import Interval, as_rational, compare_with_log, decimal_str, ln_enclosure

from oracles import mp


def ln(x):
    with mpmath.workdps(80):
        return mpmath.log(mp(x))


def encloses(interval, value):
    return mp(interval.lo) <= value <= mp(interval.hi)


positive_rationals = st.fractions(min_value=Fraction(1, 10**12), max_value=10**12).filter(lambda q: q > 0)


@given(positive_rationals)
@settings(max_examples=200)
def test_ln_enclosure_contains_mpmath_log(x):
    enc = ln_enclosure(x, bits=80)
    assert encloses(enc, ln(x))
    assert enc.width < Fraction(1, 2**70)


@pytest.mark.parametrize("x", [Fraction(2), Fraction(1, 2), Fraction(4), Fraction(1, 10**435), Fraction(40959)])
def test_ln_enclosure_known_points(x):
    enc = ln_enclosure(x)
    assert encloses(enc, ln(x))
    assert enc.width < Fraction(1, 10**25)


def test_ln_of_one_is_exact_zero():
    assert ln_enclosure(1) == Interval(Fraction(0), Fraction(0))


def test_more_bits_tighter():
    widths = [ln_enclosure(Fraction(7, 3), b).width for b in (32, 64, 128, 256)]
    assert widths == sorted(widths, reverse=True)
    assert widths[-1] < Fraction(1, 2**250)


@pytest.mark.parametrize("x", [0, -1, Fraction(-1, 3)])
def test_ln_rejects_nonpositive(x):
    with pytest.raises(ValueError):
        ln_enclosure(x)


def test_compare_with_log():
    # ln(1/100) = -4.605...
    assert compare_with_log(-5, Fraction(1, 100)) == -1
    assert compare_with_log(-4, Fraction(1, 100)) == 1
    assert compare_with_log(0, 1) == 0
    assert compare_with_log(Fraction(-1, 10**6), 1) == -1


@given(st.fractions(min_value=-50, max_value=50), positive_rationals)
@settings(max_examples=200)
def test_compare_with_log_matches_mpmath(q, x):
    with mpmath.workdps(80):
        expected = mpmath.sign(mp(q) - ln(x))
    assert compare_with_log(q, x) == expected


def test_decimal_str_rounding_modes():
    third = Fraction(1, 3)
    assert decimal_str(third, 5, "floor") == "0.33333"
    assert decimal_str(third, 5, "ceil") == "0.33334"
    assert decimal_str(-third, 5, "floor") == "-0.33334"
    assert decimal_str(Fraction(2, 3), 3) == "0.667"
    assert decimal_str(Fraction(7), 0) == "7"


def test_interval_serialisation_is_outward():
    enc = ln_enclosure(2)
    d = enc.to_dict(20)
    assert Fraction(d["lo"]) <= enc.lo and Fraction(d["hi"]) >= enc.hi


def test_as_rational():
    assert as_rational("2.5") == Fraction(5, 2)
    assert as_rational("-9/2") == Fraction(-9, 2)
    with pytest.raises(TypeError):
        as_rational(0.1)
    with pytest.raises(TypeError):
        as_rational(True)
