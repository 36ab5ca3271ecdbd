"""Truncated series arithmetic and the combinatorial tables."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kring import (
    StirlingTable,
    TruncatedSeries,
    harmonic_firstkind,
    series_exp,
    series_log,
    stirling1_unsigned,
    stirling2,
    substitute_gamma,
    theta_model,
)
from kring.errors import DomainError, SeriesOrderError

F = Fraction


def test_exp_of_t():
    s = TruncatedSeries.rational([0, 1], order=3)
    assert series_exp(s).coeffs == (F(1), F(1), F(1, 2), F(1, 6))


def test_exp_log_inverse_on_rationals():
    s = TruncatedSeries.rational([0, 2, -1, F(1, 3)], order=5)
    assert series_log(series_exp(s)) == TruncatedSeries.rational([0, 2, -1, F(1, 3)], order=5)


def test_exp_log_inverse_with_nilpotent_coefficients():
    m = theta_model(2)
    e1 = m.basis_element(1)
    zero, one = m.zero(), m.one()
    s = TruncatedSeries([zero, e1, zero, zero], zero=zero, one=one)
    assert series_log(series_exp(s)) == s


def test_exp_coefficient_hand_expansion():
    # exp(x(t - t^2)) has t^2 coefficient -x + x^2/2
    m = theta_model(2)
    x = m.basis_element(1)
    zero, one = m.zero(), m.one()
    s = TruncatedSeries([zero, x, -1 * x, zero], zero=zero, one=one)
    expanded = series_exp(s)
    assert expanded.coefficient(2) == -1 * x + F(1, 2) * (x * x)


def test_exp_requires_zero_constant_term():
    with pytest.raises(DomainError):
        series_exp(TruncatedSeries.rational([1, 1], order=2))


def test_log_requires_unit_constant_term():
    with pytest.raises(DomainError):
        series_log(TruncatedSeries.rational([0, 1], order=2))


def test_substitute_gamma_geometric_tail():
    s = TruncatedSeries.rational([0, 1], order=5)
    assert substitute_gamma(s).coeffs == (F(0),) + (F(1),) * 5


def test_substitute_gamma_square():
    s = TruncatedSeries.rational([0, 0, 1], order=5)
    assert substitute_gamma(s).coeffs == (F(0), F(0), F(1), F(2), F(3), F(4))


def test_substitute_gamma_fixes_constants():
    s = TruncatedSeries.rational([1], order=4)
    assert substitute_gamma(s) == s


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def rational_series(draw, order=5):
    coeffs = draw(st.lists(rationals, min_size=order + 1, max_size=order + 1))
    return TruncatedSeries.rational(coeffs, order=order)


@settings(max_examples=50, deadline=None)
@given(rational_series(), rational_series())
def test_substitution_respects_products(a, b):
    assert substitute_gamma(a * b) == substitute_gamma(a) * substitute_gamma(b)


@settings(max_examples=50, deadline=None)
@given(rational_series())
def test_exp_after_substitution_commutes(s):
    nil = s.like([F(0)] + list(s.coeffs[1:]))
    assert substitute_gamma(series_exp(nil)) == series_exp(substitute_gamma(nil))


def test_coefficient_beyond_order_raises():
    s = TruncatedSeries.rational([1, 2], order=1)
    with pytest.raises(SeriesOrderError):
        s.coefficient(2)


def _partitions_into_blocks(n: int, k: int) -> int:
    """Brute-force count of set partitions of {1..n} into k nonempty blocks."""
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    total = 0

    def place(i, blocks):
        nonlocal total
        if i == n:
            if len(blocks) == k:
                total += 1
            return
        for b in blocks:
            b.append(i)
            place(i + 1, blocks)
            b.pop()
        if len(blocks) < k:
            blocks.append([i])
            place(i + 1, blocks)
            blocks.pop()

    place(0, [])
    return total


@pytest.mark.parametrize("n", range(0, 9))
def test_stirling2_matches_partition_count(n):
    for k in range(0, n + 1):
        assert stirling2(n, k) == _partitions_into_blocks(n, k)


def test_stirling2_examples():
    assert stirling2(3, 2) == 3
    assert stirling2(2, 4) == 0
    with pytest.raises(DomainError):
        stirling2(-1, 0)


def test_stirling_recurrences():
    for n in range(1, 10):
        for k in range(1, n + 1):
            assert stirling2(n, k) == k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
            assert stirling1_unsigned(n, k) == (n - 1) * stirling1_unsigned(
                n - 1, k
            ) + stirling1_unsigned(n - 1, k - 1)


def test_harmonic_firstkind_values():
    assert [harmonic_firstkind(n) for n in range(1, 6)] == [1, 3, 11, 50, 274]


@pytest.mark.parametrize("n", range(1, 8))
def test_harmonic_firstkind_is_scaled_harmonic_number(n):
    harmonic = sum(F(1, k) for k in range(1, n + 1))
    assert harmonic_firstkind(n) == factorial(n) * harmonic


def test_stirling_table():
    table = StirlingTable.build(6)
    assert table.second(5, 2) == stirling2(5, 2)
    assert table.first_unsigned(5, 2) == stirling1_unsigned(5, 2)
