"""Sup-norm linear regression over Q_p.

Optimal fits interpolate training points exactly: two of them in one
dimension, d + 1 of them in d dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .linalg import SingularMatrixError, dot, solve, vector
from .padic import PrimeContext, abs_p, as_context, to_rational


@dataclass(frozen=True)
class RegressionModel:
    w: tuple
    b: Fraction
    p: int
    achieved_norm: Fraction
    support: tuple
    hypotheses_unverified: bool = False

    def predict(self, x: Sequence) -> Fraction:
        return dot(self.w, vector(x)) + self.b


def _inputs(xs: Sequence) -> list[tuple]:
    return [vector(x) if isinstance(x, (tuple, list)) else (to_rational(x),) for x in xs]


def residual_norm(w: Sequence, b, xs: Sequence, ys: Sequence, ctx: PrimeContext | int) -> Fraction:
    """max_i |w.x_i + b - y_i|_p."""
    xs = _inputs(xs)
    if len(xs) != len(ys):
        raise ValueError("inputs and targets differ in length")
    w = vector(w)
    b = to_rational(b)
    return max(abs_p(dot(w, x) + b - to_rational(y), ctx) for x, y in zip(xs, ys))


def model_residual_norm(model: RegressionModel, xs: Sequence, ys: Sequence) -> Fraction:
    return residual_norm(model.w, model.b, xs, ys, model.p)


def fit_0d(targets: Sequence) -> Fraction:
    """An optimal constant: any target value is a sup-norm centroid."""
    if not targets:
        raise ValueError("no targets")
    return to_rational(targets[0])


def fit_1d(xs: Sequence, ys: Sequence, ctx: PrimeContext | int) -> RegressionModel:
    """Optimal line through the anchor point 0 and the best partner j, in O(n^2)."""
    ctx = as_context(ctx)
    x = [e[0] for e in _inputs(xs)]
    y = [to_rational(v) for v in ys]
    n = len(x)
    if n != len(y):
        raise ValueError("inputs and targets differ in length")
    if n < 2:
        raise ValueError("need at least two points")
    if len(set(x)) != n:
        raise ValueError("inputs must be pairwise distinct")
    k = 0
    slope = [None if i == k else (y[i] - y[k]) / (x[i] - x[k]) for i in range(n)]

    def cost(j: int) -> Fraction:
        return max(
            abs_p(x[i] - x[k], ctx) * abs_p(slope[j] - slope[i], ctx) for i in range(n) if i != k
        )

    j = min((i for i in range(n) if i != k), key=lambda i: (cost(i), i))
    w = slope[j]
    b = y[k] - w * x[k]
    norm = residual_norm((w,), b, xs, ys, ctx)
    return RegressionModel((w,), b, ctx.p, norm, (k, j))


class AllSubsetsSingular(ArithmeticError):
    pass


def fit_multi(xs: Sequence, ys: Sequence, ctx: PrimeContext | int) -> RegressionModel:
    """Exemplar search: interpolate every (d+1)-subset, keep the best sup-norm.

    Singular subsets are skipped; ``hypotheses_unverified`` is set when any
    was met, since the optimality guarantee assumes none are.
    """
    ctx = as_context(ctx)
    X = _inputs(xs)
    y = [to_rational(v) for v in ys]
    n = len(X)
    if n != len(y):
        raise ValueError("inputs and targets differ in length")
    d = len(X[0])
    if any(len(r) != d for r in X):
        raise ValueError("inconsistent input dimensions")
    if n < d + 1:
        raise ValueError(f"need at least d+1 = {d + 1} points, got {n}")
    A = [r + (Fraction(1),) for r in X]
    best = None
    skipped = False
    for subset in combinations(range(n), d + 1):
        try:
            sol = solve([A[i] for i in subset], [y[i] for i in subset], ctx)
        except SingularMatrixError:
            skipped = True
            continue
        norm = max(abs_p(dot(sol, a) - t, ctx) for a, t in zip(A, y))
        if best is None or norm < best[0]:
            best = (norm, sol, subset)
    if best is None:
        raise AllSubsetsSingular("every (d+1)-point interpolation system is singular")
    norm, sol, subset = best
    return RegressionModel(sol[:-1], sol[-1], ctx.p, norm, subset, skipped)
