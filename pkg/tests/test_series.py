from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rectbeta.series import Series

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def test_exp_of_x_is_exponential():
    e = Series([0, 1], 8).exp()
    assert e.coeffs == [Fraction(1, factorial(n)) for n in range(9)]


def test_log_of_one_plus_x():
    assert Series([1, 1], 6).log().coeffs == [0] + [Fraction((-1) ** (n + 1), n) for n in range(1, 7)]


def test_power_matches_binomial_series():
    # (1 - x)^(-1/2) has coefficients binom(2n, n)/4^n
    s = Series([1, -1], 6).power(Fraction(-1, 2))
    assert s.coeffs == [Fraction(factorial(2 * n), factorial(n) ** 2 * 4**n) for n in range(7)]


@given(st.lists(rationals, min_size=1, max_size=7))
def test_log_inverts_exp(tail):
    s = Series([0] + tail, len(tail))
    assert s.exp().log() == s


@given(st.lists(rationals, min_size=2, max_size=6), st.lists(rationals, min_size=2, max_size=6))
def test_exp_turns_sums_into_products(a, b):
    n = min(len(a), len(b))
    sa, sb = Series([0] + a, n), Series([0] + b, n)
    assert (sa + sb).exp() == sa.exp() * sb.exp()


def test_exp_and_log_reject_bad_constants():
    with pytest.raises(ValueError):
        Series([1, 1], 3).exp()
    with pytest.raises(ValueError):
        Series([2, 1], 3).log()


def test_derivative():
    assert Series([1, 2, 3], 2).derivative().coeffs == [2, 6]
