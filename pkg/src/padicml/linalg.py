"""Exact vectors and matrices over Q, with p-adic norms.

Vectors are tuples of Fractions and matrices are tuples of row tuples;
there is no wrapper class.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .padic import INF, PrimeContext, abs_p, to_rational, valuation

Vector = tuple
Matrix = tuple


class SingularMatrixError(ArithmeticError):
    pass


class DimensionMismatch(ValueError):
    pass


def vector(entries) -> Vector:
    v = tuple(to_rational(e) for e in entries)
    if not v:
        raise ValueError("vectors must have dimension >= 1")
    return v


def matrix(rows) -> Matrix:
    m = tuple(vector(r) for r in rows)
    if not m:
        raise ValueError("matrix needs at least one row")
    if len({len(r) for r in m}) != 1:
        raise DimensionMismatch("ragged matrix")
    return m


def sup_norm(v: Sequence, ctx: PrimeContext | int) -> Fraction:
    return max(abs_p(x, ctx) for x in v)


def dot(w: Sequence, x: Sequence) -> Fraction:
    if len(w) != len(x):
        raise DimensionMismatch(f"dimensions {len(w)} and {len(x)}")
    return sum((Fraction(a) * b for a, b in zip(w, x)), Fraction(0))


def matvec(A: Sequence[Sequence], w: Sequence) -> Vector:
    return tuple(dot(row, w) for row in A)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def determinant(A: Sequence[Sequence]) -> Fraction:
    """Bareiss fraction-free elimination on the integer matrix D*A."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionMismatch("determinant of a non-square matrix")
    rows = [[to_rational(x) for x in r] for r in A]
    scales = [lcm(*(x.denominator for x in r)) for r in rows]
    M = [[int(x * s) for x in r] for r, s in zip(rows, scales)]
    denom = 1
    for s in scales:
        denom *= s
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], denom)


def is_invertible(A: Sequence[Sequence]) -> bool:
    return determinant(A) != 0


def solve(A: Sequence[Sequence], y: Sequence, ctx: PrimeContext | int | None = None) -> Vector:
    """Unique solution of A w = y; raises SingularMatrixError.

    Full pivoting over nonzero entries. With ``ctx`` the pivot of smallest
    p-adic valuation is preferred; otherwise the first nonzero one.
    """
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionMismatch("solve needs a square matrix")
    if len(y) != n:
        raise DimensionMismatch(f"right-hand side has length {len(y)}, expected {n}")
    M = [[to_rational(x) for x in r] + [to_rational(b)] for r, b in zip(A, y)]
    cols = list(range(n))
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                if M[i][j] == 0:
                    continue
                key = valuation(M[i][j], ctx) if ctx is not None else 0
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            raise SingularMatrixError("matrix is singular")
        _, i, j = best
        M[k], M[i] = M[i], M[k]
        if j != k:
            for r in M:
                r[k], r[j] = r[j], r[k]
            cols[k], cols[j] = cols[j], cols[k]
        piv = M[k][k]
        row_k = [x / piv for x in M[k]]
        M[k] = row_k
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k]
                M[i] = [a - f * b for a, b in zip(M[i], row_k)]
    w = [Fraction(0)] * n
    for k in range(n):
        w[cols[k]] = M[k][n]
    return tuple(w)


def min_valuation(v: Sequence, ctx: PrimeContext | int) -> int | float:
    return min((valuation(x, ctx) for x in v), default=INF)
