import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padicml.balls import (
    SINGLETON,
    Ball,
    PrefixString,
    PrimeMismatch,
    Relation,
    ball_to_prefix,
    contains,
    decompose,
    kraft_check,
    kraft_construct,
    kraft_sum,
    minimal_enclosing_ball,
    minkowski_sum,
    prefix_to_ball,
    relate,
    scale,
)
from padicml.padic import abs_p

from conftest import padic_friendly, primes


@st.composite
def balls(draw, p=None):
    p = p if p is not None else draw(primes)
    center = draw(padic_friendly(p))
    n = draw(st.integers(min_value=-5, max_value=3))
    return Ball(center, n, p)


# -- examples -------------------------------------------------------------

def test_contains_examples():
    assert contains(Ball(0, 0, 2), F(1, 3))
    assert contains(Ball(7, SINGLETON, 3), 7)
    assert not contains(Ball(7, SINGLETON, 3), 8)
    assert not contains(Ball(4, -2, 2), 5)
    assert 12 in Ball(4, -2, 2)


def test_relate_examples():
    assert relate(Ball(0, 0, 2), Ball(4, -2, 2)) is Relation.A_CONTAINS_B
    assert relate(Ball(4, -2, 2), Ball(0, 0, 2)) is Relation.B_CONTAINS_A
    assert relate(Ball(0, -1, 2), Ball(1, -1, 2)) is Relation.DISJOINT
    assert relate(Ball(0, 0, 2), Ball(5, 0, 2)) is Relation.EQUAL
    with pytest.raises(PrimeMismatch):
        relate(Ball(0, 0, 2), Ball(0, 0, 3))


def test_minkowski_and_scale_examples():
    assert minkowski_sum(Ball(1, -1, 2), Ball(2, -2, 2)) == Ball(3, -1, 2)
    b = Ball(F(3, 4), -1, 5)
    assert minkowski_sum(Ball(0, SINGLETON, 5), b) == b
    assert minkowski_sum(Ball(0, 0, 3), Ball(0, 0, 3)) == Ball(0, 0, 3)
    assert scale(F(1, 2), Ball(0, 0, 2)) == Ball(0, 1, 2)
    assert scale(1, b) == b
    assert scale(2, Ball(3, 0, 2)) == Ball(6, -1, 2)
    assert scale(0, b) == Ball(0, SINGLETON, 5)


def test_decompose_examples():
    assert decompose(Ball(0, 0, 2)) == [Ball(0, -1, 2), Ball(1, -1, 2)]
    assert decompose(Ball(0, 0, 3)) == [Ball(0, -1, 3), Ball(1, -1, 3), Ball(2, -1, 3)]
    assert decompose(Ball(1, -1, 2)) == [Ball(1, -2, 2), Ball(3, -2, 2)]
    with pytest.raises(ValueError):
        decompose(Ball(1, SINGLETON, 2))


def test_meb_examples():
    assert minimal_enclosing_ball([6, -2], 2) == Ball(6, -3, 2)
    assert minimal_enclosing_ball([F(2, 7)], 5) == Ball(F(2, 7), SINGLETON, 5)
    assert minimal_enclosing_ball([0, 1, 2, 3], 2) == Ball(0, 0, 2)


def test_prefix_examples():
    assert str(ball_to_prefix(Ball(6, -3, 2))) == "110"
    assert str(ball_to_prefix(Ball(0, 0, 2))) == ""
    assert prefix_to_ball(PrefixString.parse("10", 2)) == Ball(2, -2, 2)
    assert prefix_to_ball(PrefixString.parse("*110", 2), 2) == Ball(6, -3, 2)
    with pytest.raises(ValueError):
        ball_to_prefix(Ball(F(1, 2), -1, 2))
    with pytest.raises(PrimeMismatch):
        prefix_to_ball(PrefixString((1,), 2), 3)


def test_kraft_examples():
    assert kraft_check([1, 2, 3, 3], 2)
    assert [c.code for c in kraft_construct([1, 2, 3, 3], 2)] == ["0", "10", "110", "111"]
    assert not kraft_check([1, 1, 2], 2)
    assert kraft_sum([1, 1, 2], 2) == F(5, 4)
    assert kraft_construct([1, 1, 2], 2) is None
    assert [c.code for c in kraft_construct([1, 1, 1], 3)] == ["0", "1", "2"]
    # output follows the input order, not the sorted order
    assert [len(c) for c in kraft_construct([3, 1, 2], 2)] == [3, 1, 2]


def test_radius_normalization():
    assert Ball.from_radius(0, F(1, 3), 2) == Ball(0, -2, 2)
    assert Ball.from_radius(0, 1, 2).radius == 1
    assert Ball.from_radius(5, 0, 2).is_singleton
    with pytest.raises(ValueError):
        Ball.from_radius(0, -1, 2)


def test_json_round_trip():
    for b in (Ball(F(-3, 4), -2, 3), Ball(7, SINGLETON, 2)):
        assert Ball.from_json(b.to_json()) == b
    assert Ball(1, SINGLETON, 2).to_json()["radius_exp"] == "-inf"


# -- properties -----------------------------------------------------------

def _membership_relation(a: Ball, b: Ball, samples) -> set:
    """Which of (a-only, b-only, both) occur among sampled points."""
    seen = set()
    for x in samples:
        seen.add((contains(a, x), contains(b, x)))
    return seen


@given(st.data(), primes)
def test_relate_consistent_with_membership(data, p):
    a = data.draw(balls(p))
    b = data.draw(balls(p))
    rel = relate(a, b)
    # sample around both centers, including the centers themselves
    rng = random.Random(0)
    pts = [a.center, b.center]
    for c in (a.center, b.center):
        for _ in range(40):
            pts.append(c + F(rng.randint(-50, 50)) * F(p) ** rng.randint(-4, 5))
    seen = _membership_relation(a, b, pts)
    if rel is Relation.DISJOINT:
        assert (True, True) not in seen
    elif rel is Relation.A_CONTAINS_B:
        assert (False, True) not in seen
    elif rel is Relation.B_CONTAINS_A:
        assert (True, False) not in seen
    else:
        assert seen <= {(True, True), (False, False)}


@given(st.data(), primes)
def test_decompose_partitions(data, p):
    b = data.draw(balls(p))
    parts = decompose(b)
    assert len(parts) == p
    for x, y in combinations(parts, 2):
        assert relate(x, y) is Relation.DISJOINT
    rng = random.Random(1)
    for _ in range(30):
        x = b.center + F(rng.randint(-100, 100)) / b.radius
        assert contains(b, x)
        assert sum(contains(c, x) for c in parts) == 1


@given(st.lists(padic_friendly(3), min_size=1, max_size=8))
def test_meb_is_minimal(points):
    b = minimal_enclosing_ball(points, 3)
    assert all(contains(b, x) for x in points)
    if not b.is_singleton:
        smaller = Ball(b.center, b.radius_exp - 1, 3)
        assert not all(contains(smaller, x) for x in points)
    # the radius is the largest pairwise distance
    assert b.radius == max(abs_p(x - y, 3) for x in points for y in points)


@given(st.data(), primes)
def test_recentering_keeps_ball(data, p):
    b = data.draw(balls(p))
    k = data.draw(st.integers(min_value=-30, max_value=30))
    x = b.center + k / b.radius
    assert Ball(x, b.radius_exp, p) == b
    assert hash(Ball(x, b.radius_exp, p)) == hash(b)


@given(st.data(), primes)
def test_minkowski_sum_formula(data, p):
    a = data.draw(balls(p))
    b = data.draw(balls(p))
    s = minkowski_sum(a, b)
    assert s.radius == max(a.radius, b.radius)
    assert contains(s, a.center + b.center)


@given(st.data(), primes)
def test_prefix_round_trip(data, p):
    n = data.draw(st.integers(min_value=0, max_value=8))
    syms = tuple(data.draw(st.integers(min_value=0, max_value=p - 1)) for _ in range(n))
    s = PrefixString(syms, p)
    b = prefix_to_ball(s)
    assert b.radius == F(1, p**n)
    assert ball_to_prefix(b) == s


def test_prefix_order_matches_nesting():
    long = PrefixString.parse("0110", 2)
    short = PrefixString.parse("110", 2)
    assert short.is_prefix_of(long)
    assert relate(prefix_to_ball(short), prefix_to_ball(long)) is Relation.A_CONTAINS_B


def test_kraft_small_exhaustive():
    def multisets(total, smallest=1):
        if total == 0:
            yield ()
        for n in range(smallest, total + 1):
            for rest in multisets(total - n, n):
                yield (n,) + rest

    for p in (2, 3):
        for total in range(1, 8):
            for lengths in multisets(total):
                codes = kraft_construct(list(lengths), p)
                assert (codes is not None) == kraft_check(lengths, p)
                if codes:
                    assert [len(c) for c in codes] == list(lengths)
                    for x, y in combinations(codes, 2):
                        assert not x.is_prefix_of(y) and not y.is_prefix_of(x)
