import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicml.classify import (
    EdgeTrace,
    Xor,
    append_constant,
    beam_search_train,
    reduce_to_integers,
    split_bias,
    target_function,
    training_errors,
)


def xor_data():
    xs = list(product((0, 1), repeat=2))
    f = target_function(Xor(), 2)
    return append_constant(xs), [f(x) for x in xs]


def test_xor_found():
    pts, ys = xor_data()
    res = beam_search_train(pts, ys, 2, beam=4, eps_max=0)
    assert res.converged and res.errors == 0
    clf = res.classifier
    assert training_errors(clf, pts, ys) == 0
    # the (w, b) form agrees on raw inputs
    wb = split_bias(clf)
    assert all(wb.predict(x[:-1]) == y for x, y in zip(pts, ys))


def test_fig2_left_embedded():
    xs = [6, -2, 0, 4, -4, 1, 3, -1]
    ys = [1, 1, -1, -1, -1, -1, -1, -1]
    pts = append_constant([(x,) for x in xs])
    res = beam_search_train(pts, ys, 2, beam=8)
    assert res.converged
    assert training_errors(res.classifier, pts, ys) == 0


def test_all_mistakes_allowed_returns_at_first_level():
    pts, ys = xor_data()
    res = beam_search_train(pts, ys, 2, beam=2, eps_max=len(ys))
    # the first check happens after one level, returning that level's best node
    assert res.converged and res.depth == 1
    assert res.digits == (1, 1, 1) and res.errors == 0


def test_reports_failure():
    # identical inputs with opposite labels can never be separated
    pts = [(1, 1), (1, 1)]
    res = beam_search_train(pts, [1, -1], 3, beam=2, depth_max=4)
    assert not res.converged
    assert res.errors == 1 and res.depth == 4


def test_input_validation():
    with pytest.raises(ValueError):
        beam_search_train([(F(1, 2),)], [1], 2)
    with pytest.raises(ValueError):
        beam_search_train([(1,)], [0], 2)
    with pytest.raises(ValueError):
        beam_search_train([(1,)], [1], 2, beam=0)
    with pytest.raises(ValueError):
        beam_search_train([], [], 2)


def test_rationals_after_reduction():
    xs = [(F(1, 2),), (F(3, 2),), (F(1, 4),)]
    ys = [1, 1, -1]
    scaled, m = reduce_to_integers(xs, 2)
    res = beam_search_train(append_constant(scaled), ys, 2)
    assert res.converged
    assert all(res.classifier.predict(x + (1,)) == y for x, y in zip(scaled, ys))


def test_deterministic():
    rng = random.Random(11)
    pts = [tuple(rng.randint(0, 40) for _ in range(3)) for _ in range(12)]
    ys = [rng.choice((1, -1)) for _ in pts]
    a = beam_search_train(pts, ys, 3, beam=5, depth_max=6)
    b = beam_search_train(pts, ys, 3, beam=5, depth_max=6)
    assert a == b


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([2, 3]),
    st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30), st.sampled_from([1, -1])), min_size=2, max_size=10),
    st.integers(1, 4),
    st.integers(0, 2),
)
def test_edges_are_monotone(p, rows, k, eps):
    pts = [(a, b, 1) for a, b, _ in rows]
    ys = [y for _, _, y in rows]
    trace = EdgeTrace()
    beam_search_train(pts, ys, p, beam=k, eps_max=eps, depth_max=5, trace=trace)
    for pp, pn, cp, cn in trace.edges():
        assert cp >= pp and cn <= pn


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 15), st.sampled_from([1, -1])), min_size=2, max_size=6))
def test_result_errors_are_real(rows):
    pts = [(x, 1) for x, _ in rows]
    ys = [y for _, y in rows]
    res = beam_search_train(pts, ys, 2, beam=3, depth_max=6)
    if res.digits is not None:
        assert training_errors(res.classifier, pts, ys) == res.errors
