import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicml.padic import (
    INF,
    PrimeContext,
    RationalParseError,
    abs_p,
    digits,
    format_rational,
    from_digits,
    is_padic_integer,
    is_prime,
    parse_rational,
    prime_factors,
    product_formula_check,
    residue,
    valuation,
)

from conftest import nonzero_rationals, padic_friendly, primes, rationals


def oracle_valuation(x: F, p: int):
    """Count factors of p by repeated division, independently of the library."""
    if x == 0:
        return math.inf
    n, d, v = abs(x.numerator), x.denominator, 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


# -- examples -------------------------------------------------------------

@pytest.mark.parametrize("x,p,expected", [(12, 2, 2), (0, 7, INF), (F(5, 4), 2, -2), (F(-3, 8), 3, 1)])
def test_valuation_examples(x, p, expected):
    assert valuation(x, p) == expected


@pytest.mark.parametrize("x,p,expected", [(12, 2, F(1, 4)), (F(1, 2), 5, 1), (-8, 2, F(1, 8)), (0, 3, 0)])
def test_abs_examples(x, p, expected):
    assert abs_p(x, p) == expected


@pytest.mark.parametrize(
    "x,p,count,start,ds",
    [
        (F(1, 3), 2, 8, 0, (1, 1, 0, 1, 0, 1, 0, 1)),
        (-1, 2, 4, 0, (1, 1, 1, 1)),
        (F(1, 2), 5, 4, 0, (3, 2, 2, 2)),
        (F(5, 4), 2, 3, -2, (1, 0, 1)),
        (12, 2, 2, 2, (1, 1)),
    ],
)
def test_digit_examples(x, p, count, start, ds):
    exp = digits(x, p, count)
    assert exp.start == start
    assert exp.digits == ds


def test_digit_display():
    assert digits(F(1, 3), 2, 8).display() == "…10101011"
    assert digits(-1, 2, 3).display() == "…111"
    assert digits(F(5, 4), 2, 3).display() == "…1.01"
    assert digits(F(1, 2), 2, 1).display() == "…0.1"
    assert digits(12, 2, 2).display() == "…1100"


@pytest.mark.parametrize("seq,p,start,expected", [([1, 1], 2, 0, 3), ([3, 2, 2, 2], 5, 0, 313), ([1], 2, -1, F(1, 2))])
def test_from_digits_examples(seq, p, start, expected):
    assert from_digits(seq, p, start=start) == expected


def test_from_digits_rejects_bad_digit():
    with pytest.raises(ValueError):
        from_digits([2], 2)


@pytest.mark.parametrize("x", [12, 1, F(-3, 8), F(-1000, 729)])
def test_product_formula_examples(x):
    assert product_formula_check(x)


def test_product_formula_rejects_zero():
    with pytest.raises(ValueError):
        product_formula_check(0)


def test_prime_context_validation():
    assert PrimeContext(7).p == 7
    for bad in (0, 1, 4, 9, -3):
        with pytest.raises(ValueError):
            PrimeContext(bad)
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_factors(360) == [2, 3, 5]


def test_residue_inverts_denominator():
    # 1/3 mod 2^4 is 11, since 3 * 11 = 33 = 1 mod 16
    assert residue(F(1, 3), 2, 4) == 11
    with pytest.raises(ValueError):
        residue(F(1, 2), 2, 3)


# -- rational parsing -----------------------------------------------------

@pytest.mark.parametrize("text,value", [("3", 3), ("-7/4", F(-7, 4)), ("6/8", F(3, 4)), ("0", 0)])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1/0", "1.5", "abc", "1/-2", "--1", "1/2/3"])
def test_parse_rational_rejects(text):
    with pytest.raises(RationalParseError) as info:
        parse_rational(text)
    assert info.value.token == text.strip()


@given(rationals)
def test_format_parse_round_trip(x):
    assert parse_rational(format_rational(x)) == x


# -- properties -----------------------------------------------------------

@given(rationals, primes)
def test_valuation_matches_oracle(x, p):
    assert valuation(x, p) == oracle_valuation(x, p)
    assert is_padic_integer(x, p) == (abs_p(x, p) <= 1)


@given(rationals, rationals, primes)
def test_multiplicative(x, y, p):
    assert abs_p(x * y, p) == abs_p(x, p) * abs_p(y, p)


@given(rationals, rationals, primes)
def test_strong_triangle(x, y, p):
    s = abs_p(x + y, p)
    assert s <= max(abs_p(x, p), abs_p(y, p))
    if abs_p(x, p) != abs_p(y, p):
        assert s == max(abs_p(x, p), abs_p(y, p))


@given(rationals, rationals, rationals, primes)
def test_isosceles(x, y, z, p):
    a, b = abs_p(x - y, p), abs_p(y - z, p)
    if a != b:
        assert abs_p(x - z, p) == max(a, b)


@given(nonzero_rationals)
def test_product_formula(x):
    assert product_formula_check(x)


@settings(max_examples=200)
@given(st.data(), primes, st.integers(min_value=1, max_value=12))
def test_digits_round_trip(data, p, k):
    x = data.draw(padic_friendly(p))
    if x == 0:
        return
    exp = digits(x, p, k)
    assert all(0 <= d < p for d in exp.digits)
    back = from_digits(exp, p)
    # the truncation agrees with x modulo p^(valuation + k)
    assert valuation(x - back, p) >= valuation(x, p) + k
