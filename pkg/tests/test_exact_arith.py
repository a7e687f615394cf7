from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given, strategies as st

from adaptive_ramsey.errors import DomainError
from adaptive_ramsey.exact_arith import (
    check_euler_recursion,
    factorial,
    floor_factorial_e,
    floor_scaled,
)


def floor_factorial_e_mp(n):
    # independent route: high-precision e, no series identity
    with mpmath.workdps(60 + 3 * n):
        return int(mpmath.floor(mpmath.factorial(n) * mpmath.e))


@pytest.mark.parametrize("n, expected", [(0, 1), (4, 24), (5, 120)])
def test_factorial(n, expected):
    assert factorial(n) == expected


@pytest.mark.parametrize("n, expected", [(1, 2), (3, 16), (4, 65), (5, 326)])
def test_floor_factorial_e_values(n, expected):
    assert floor_factorial_e(n) == expected


def test_floor_factorial_e_matches_high_precision_e():
    for n in range(1, 61):
        assert floor_factorial_e(n) == floor_factorial_e_mp(n), n


def test_floor_factorial_e_rejects_zero():
    with pytest.raises(DomainError, match="n >= 1"):
        floor_factorial_e(0)


def test_floor_factorial_e_handles_large_n():
    value = floor_factorial_e(500)
    assert len(str(value)) == len(str(factorial(500)))


@pytest.mark.parametrize("n", [1, 4, 100])
def test_check_euler_recursion_examples(n):
    assert check_euler_recursion(n)


def test_euler_recursion_through_500():
    assert all(check_euler_recursion(n) for n in range(1, 501))


def test_floor_factorial_e_between_2_and_3_factorial():
    for n in range(1, 51):
        f = factorial(n)
        assert 2 * f <= floor_factorial_e(n) < 3 * f


@pytest.mark.parametrize(
    "n, q, expected",
    [
        (4, Fraction(1, 6), 61),
        (4, Fraction(5, 8), 50),
        (5, Fraction(1, 6), 306),
        (7, Fraction(0), 13700),
    ],
)
def test_floor_scaled(n, q, expected):
    assert floor_scaled(n, q) == expected


def test_floor_scaled_matches_high_precision():
    for n in range(4, 20):
        for a in (0, 4, 12, 15):
            q = Fraction(a, 24)
            with mpmath.workdps(80):
                oracle = int(mpmath.floor(mpmath.factorial(n) * (mpmath.e - mpmath.mpf(a) / 24)))
            assert floor_scaled(n, q) == oracle


def test_floor_scaled_rejects_non_integral_shift():
    with pytest.raises(DomainError, match="n!q"):
        floor_scaled(3, Fraction(1, 24))


def test_floor_scaled_rejects_negative():
    with pytest.raises(DomainError, match="negative"):
        floor_scaled(2, Fraction(3))


@given(st.integers(1, 12), st.data())
def test_floor_scaled_strictly_decreasing_in_q(n, data):
    f = factorial(n)
    top = floor_factorial_e(n)
    a, b = sorted(data.draw(st.lists(st.integers(0, top), min_size=2, max_size=2, unique=True)))
    assert floor_scaled(n, Fraction(a, f)) > floor_scaled(n, Fraction(b, f))


fractions = st.fractions(max_denominator=10**6)


@given(fractions, fractions, fractions)
def test_rational_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x + y - y == x
    assert (x < y) == (x - y < 0)
    if y:
        assert (x / y) * y == x
    for r in (x + y, x * y, x - y):
        assert r.denominator > 0
        assert gcd(r.numerator, r.denominator) == 1


def test_zero_has_unique_form():
    zero = Fraction(0, 7) + Fraction(0, 3)
    assert (zero.numerator, zero.denominator) == (0, 1)
