from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_partitions, m1_complex_moment, m1_real_moment
from rectbeta.jack import power_sum
from rectbeta.rectconv import (
    BetaParams,
    ConvMoments,
    binom_identity_check,
    binom_identity_sum,
    charpoly_from_moments,
    conv_jack_moment,
    elementary_values,
    format_charpoly,
    lowtemp_concentration_gap,
    m1_centered_moment,
    m1_closed_form,
    m1_fluct_moment,
    rect_charpoly,
)

PANEL = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3, 7)]
nonneg = st.fractions(min_value=0, max_value=5, max_denominator=7)


def test_params_validation():
    with pytest.raises(ValueError):
        BetaParams(3, 2, 1)
    with pytest.raises(ValueError):
        BetaParams(1, 2, 0)


def test_elementary_values():
    assert elementary_values([1, 2, 3]) == [1, 6, 11, 6]


@pytest.mark.parametrize("theta", PANEL)
def test_first_moment_is_trace_additive(theta):
    for M, N in ((1, 1), (2, 3), (3, 3)):
        rA = [Fraction(k + 2, 3) for k in range(M)]
        rB = [Fraction(1, k + 1) for k in range(M)]
        assert conv_jack_moment((1,), rA, rB, BetaParams(M, N, theta)) == sum(rA) + sum(rB)
        assert conv_jack_moment((), rA, rB, BetaParams(M, N, theta)) == 1


def test_two_ones_give_two():
    assert conv_jack_moment((1,), [1], [1], BetaParams(1, 1, 1)) == 2


@pytest.mark.parametrize("l", range(1, 6))
def test_real_one_by_one_matches_sign_average(l):
    a, b = Fraction(3, 2), Fraction(2, 3)
    got = conv_jack_moment((l,), [a * a], [b * b], BetaParams(1, 1, Fraction(1, 2)))
    assert got == m1_real_moment(l, a, b)


@pytest.mark.parametrize("l", range(1, 6))
def test_complex_one_by_one_matches_phase_average(l):
    a, b = Fraction(3, 2), Fraction(2, 3)
    got = conv_jack_moment((l,), [a * a], [b * b], BetaParams(1, 1, 1))
    assert got == m1_complex_moment(l, a, b)


def test_complex_fourth_moment_example():
    a2, b2 = Fraction(2), Fraction(5)
    assert conv_jack_moment((2,), [a2], [b2], BetaParams(1, 1, 1)) == (a2 + b2) ** 2 + 2 * a2 * b2


@pytest.mark.parametrize("theta", PANEL + [Fraction(10**4)])
@pytest.mark.parametrize("N", [1, 3])
def test_one_row_closed_form(theta, N):
    conv = ConvMoments(BetaParams(1, N, theta))
    rA, rB = Fraction(7, 5), Fraction(1, 3)
    for l in range(7):
        assert conv.moment((l,), [rA], [rB]) == m1_closed_form(l, rA, rB, theta, N)


@settings(max_examples=10, deadline=None)
@given(st.lists(nonneg, min_size=2, max_size=2), st.lists(nonneg, min_size=2, max_size=2), st.sampled_from(PANEL))
def test_symmetric_in_the_two_summands(rA, rB, theta):
    conv = ConvMoments(BetaParams(2, 3, theta))
    for n in range(1, 4):
        for lam in brute_partitions(n, 2):
            assert conv.moment(lam, rA, rB) == conv.moment(lam, rB, rA)


def test_zero_summand_is_deterministic():
    theta = Fraction(3, 7)
    conv = ConvMoments(BetaParams(2, 3, theta))
    rA = [Fraction(2), Fraction(1, 2)]
    for lam in [(2,), (2, 1), (3,), (1, 1)]:
        assert conv.moment(lam, rA, [0, 0]) == conv.table.jack(lam).evaluate(rA)


def test_moment_rejects_long_partition():
    with pytest.raises(ValueError):
        conv_jack_moment((1, 1, 1), [1, 1], [1, 1], BetaParams(2, 2, 1))
    with pytest.raises(ValueError):
        conv_jack_moment((1,), [1], [1, 1], BetaParams(2, 2, 1))


def test_power_sum_moment():
    p = BetaParams(2, 3, Fraction(1, 2))
    conv = ConvMoments(p)
    rA, rB = [Fraction(2), Fraction(1)], [Fraction(1, 2), Fraction(1, 3)]
    assert conv.power_sum_moment(1, rA, rB) == (sum(rA) + sum(rB)) / 2
    # p_2 = m_(2) = P_(2) - b P_(1,1) with b the (1,1) coefficient of P_(2)
    b = conv.table.jack((2,)).coeffs[(1, 1)]
    expected = conv.moment((2,), rA, rB) - b * conv.moment((1, 1), rA, rB)
    assert conv.power_sum_moment(2, rA, rB) == expected / 2
    assert conv.symmetric(power_sum(2, 2), rA, rB) == expected


# ---------------------------------------------------------------- characteristic polynomial


def test_charpoly_examples():
    assert rect_charpoly([1], [1], 1, 1) == [1, -2]
    assert format_charpoly(rect_charpoly([1], [1], 1, 1)) == "z^1 - 2"
    assert rect_charpoly([3, 1], [0, 0], 2, 4) == [1, -4, 3]
    assert format_charpoly([1, 0, Fraction(-1, 2)]) == "z^2 - 1/2"
    assert format_charpoly([1, Fraction(3), 2]) == "z^2 + 3 z^1 + 2"
    with pytest.raises(ValueError):
        rect_charpoly([1, 1], [1, 1], 2, 1)


@pytest.mark.parametrize("theta", PANEL)
def test_charpoly_is_theta_independent(theta):
    rA, rB = [Fraction(3), Fraction(1, 2)], [Fraction(2), Fraction(2, 5)]
    assert charpoly_from_moments(rA, rB, BetaParams(2, 3, theta)) == rect_charpoly(rA, rB, 2, 3)


# ---------------------------------------------------------------- low temperature


def test_lowtemp_gap_vanishes_on_elementary_statistics():
    rA, rB = [Fraction(2), Fraction(1)], [Fraction(1), Fraction(1, 2)]
    for theta in (Fraction(1), Fraction(10**2)):
        assert lowtemp_concentration_gap((1,), rA, rB, 2, 3, theta) == 0
        assert lowtemp_concentration_gap((1, 1), rA, rB, 2, 3, theta) == 0


@pytest.mark.parametrize("lam", [(2,), (2, 1)])
def test_lowtemp_gap_decays(lam):
    rA, rB = [Fraction(2), Fraction(1)], [Fraction(1), Fraction(1, 2)]
    gaps = [lowtemp_concentration_gap(lam, rA, rB, 2, 3, 10**e) for e in (2, 4)]
    assert 0 < gaps[1] < gaps[0] / 10


def test_lowtemp_gap_deterministic_column():
    rA = [Fraction(2), Fraction(1)]
    assert lowtemp_concentration_gap((1, 1), rA, [0, 0], 2, 2, 5) == 0


# ---------------------------------------------------------------- M = 1 fluctuations


@pytest.mark.parametrize("theta", [Fraction(1, 2), Fraction(1), Fraction(10**4)])
def test_fluctuation_variance(theta):
    a, b, N = Fraction(3), Fraction(5, 2), 4
    assert m1_fluct_moment(2, a, b, theta, N) == 2 * a * b / N
    assert theta * m1_centered_moment(2, a, b, theta, N) == 2 * a * b / N


@pytest.mark.parametrize("theta", [Fraction(1, 2), Fraction(3, 7), Fraction(10**4)])
def test_fluctuation_moments_match_exact_centering(theta):
    a, b, N = Fraction(3), Fraction(5, 2), 4
    for k in range(0, 9):
        # odd centered moments are exactly 0, so sqrt(theta) never appears
        exact = theta ** (k // 2) * m1_centered_moment(k, a, b, theta, N)
        assert exact == m1_fluct_moment(k, a, b, theta, N)


def test_fluctuation_fourth_moment_closed_form():
    theta, a, b, N = Fraction(1, 2), Fraction(2), Fraction(3), 5
    assert m1_fluct_moment(4, a, b, theta, N) == theta**2 * 12 * (a * b) ** 2 / (theta * N * (theta * N + 1))
    assert m1_fluct_moment(3, a, b, theta, N) == 0
    with pytest.raises(ValueError):
        m1_fluct_moment(-1, a, b, theta, N)


def test_fluctuation_gaussian_limit():
    a, b, N = Fraction(1), Fraction(2), 3
    var = Fraction(2, N) * a * b
    for j in range(1, 5):
        double_fact = factorial(2 * j) // (2**j * factorial(j))
        got = m1_fluct_moment(2 * j, a, b, Fraction(10**9), N)
        assert abs(got / (double_fact * var**j) - 1) < Fraction(1, 10**7)


# ---------------------------------------------------------------- lemma


@pytest.mark.parametrize("l", range(0, 11))
def test_binomial_identity(l):
    for q in range(l + 1):
        assert binom_identity_check(l, q)


def test_binomial_identity_examples():
    assert binom_identity_sum(1, 0) == [0]
    assert binom_identity_sum(2, 2) == [1, 0, 0]
    assert binom_identity_sum(3, 1) == [0, 0]
    with pytest.raises(ValueError):
        binom_identity_check(2, 3)
