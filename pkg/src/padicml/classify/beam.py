"""Digit-by-digit beam search for linear p-adic classifiers.

Weights are grown one base-p digit per feature per level. A node at depth
delta holds an integer vector w < p^(delta+1) and classifies x as +1 iff
w.x == 0 (mod p^(delta+1)), i.e. |w.x / p^(delta+1)|_p <= 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from ..padic import PrimeContext, as_context, is_padic_integer, residue, to_rational
from .linear import NEGATIVE, POSITIVE, LinearClassifier


@dataclass
class BeamResult:
    """Outcome of a beam search.

    ``digits`` is the integer weight vector and ``depth`` the number of digits
    grown, so the learned weights are digits / p^depth. When ``converged``
    is False these describe the best node of the final beam (or are None if
    every node was pruned).
    """

    p: int
    digits: tuple | None
    depth: int
    pos_errors: int | None
    neg_errors: int | None
    converged: bool

    @property
    def weights(self) -> tuple | None:
        if self.digits is None:
            return None
        scale = Fraction(self.p) ** self.depth
        return tuple(Fraction(int(d)) / scale for d in self.digits)

    @property
    def classifier(self) -> LinearClassifier | None:
        """Classifier over the full input (any constant feature included), zero bias."""
        w = self.weights
        return None if w is None else LinearClassifier(w, 0, self.p)

    @property
    def errors(self) -> int | None:
        if self.pos_errors is None:
            return None
        return self.pos_errors + self.neg_errors


@dataclass
class EdgeTrace:
    """Per-level error counts of expanded parent/child pairs, for auditing."""

    parent_pos: list = field(default_factory=list)
    parent_neg: list = field(default_factory=list)
    child_pos: list = field(default_factory=list)
    child_neg: list = field(default_factory=list)

    def edges(self):
        for arrays in zip(self.parent_pos, self.parent_neg, self.child_pos, self.child_neg):
            yield from zip(*(a.tolist() for a in arrays))


def append_constant(points: Sequence[Sequence]) -> list[tuple]:
    return [tuple(to_rational(e) for e in x) + (Fraction(1),) for x in points]


def split_bias(clf: LinearClassifier) -> LinearClassifier:
    """Turn a classifier over inputs with a trailing constant 1 into (w, b) form."""
    return LinearClassifier(clf.w[:-1], clf.w[-1], clf.p, clf.negated)


def _residue_matrix(points, p: int, depth_max: int):
    rows = []
    for x in points:
        row = []
        for e in x:
            if not is_padic_integer(e, p):
                raise ValueError(f"input {e} is not a {p}-adic integer; rescale with reduce_to_integers")
            row.append(residue(e, p, depth_max))
        rows.append(row)
    dim = len(rows[0])
    if any(len(r) != dim for r in rows):
        raise ValueError("inconsistent input dimensions")
    # dot products stay below dim * p^(2 depth_max)
    bound = dim * p ** (2 * depth_max)
    dtype = np.int64 if bound < 2**62 else object
    return np.array(rows, dtype=dtype), dtype


def beam_search_train(
    points: Sequence[Sequence],
    labels: Sequence[int],
    ctx: PrimeContext | int,
    beam: int | None = 8,
    eps_max: int = 0,
    depth_max: int = 12,
    trace: EdgeTrace | None = None,
) -> BeamResult:
    """Grow weight digits level by level keeping the ``beam`` best nodes.

    Children whose positive errors exceed ``eps_max`` are pruned for good
    (positive errors never decrease along a branch). Survivors are ranked by
    total errors; ties go to the smaller new digit vector ``a`` and then to
    the better-ranked parent.
    Returns at the first level where the best node makes at most ``eps_max``
    mistakes. ``beam=None`` keeps every admissible node, which makes the
    search exhaustive over digit prefixes.
    """
    p = as_context(ctx).p
    if beam is not None and beam < 1:
        raise ValueError("beam size must be at least 1")
    if depth_max < 1:
        raise ValueError("depth_max must be at least 1")
    if not points:
        raise ValueError("empty dataset")
    y = np.array([int(v) for v in labels])
    if len(y) != len(points) or not np.isin(y, (POSITIVE, NEGATIVE)).all():
        raise ValueError("labels must be +1/-1, one per point")
    X, dtype = _residue_matrix(points, p, depth_max)
    dim = X.shape[1]
    pos = y == POSITIVE
    neg = ~pos

    steps = np.array(list(product(range(p), repeat=dim)), dtype=dtype).reshape(-1, dim)
    nodes = np.zeros((1, dim), dtype=dtype)
    node_pos = np.zeros(1, dtype=np.int64)
    node_neg = np.array([int(neg.sum())], dtype=np.int64)
    best = None

    for delta in range(depth_max):
        mod = p ** (delta + 1)
        W = (nodes[:, None, :] + steps[None, :, :] * p**delta).reshape(-1, dim)
        inside = (W.dot(X.T) % mod) == 0
        child_pos = (~inside[:, pos]).sum(axis=1).astype(np.int64)
        child_neg = inside[:, neg].sum(axis=1).astype(np.int64)
        if trace is not None:
            parent = np.repeat(np.arange(len(nodes)), len(steps))
            trace.parent_pos.append(node_pos[parent])
            trace.parent_neg.append(node_neg[parent])
            trace.child_pos.append(child_pos)
            trace.child_neg.append(child_neg)

        keep = np.flatnonzero(child_pos <= eps_max)
        if keep.size == 0:
            return BeamResult(p, None, delta + 1, None, None, False)
        total = child_pos[keep] + child_neg[keep]
        # children are generated parent-major in beam order, digits ``a`` minor;
        # a stable sort on (errors, a) therefore breaks remaining ties by parent rank
        a_rank = keep % len(steps)
        order = np.lexsort((keep, a_rank, total))
        chosen = keep[np.asarray(order, dtype=np.int64)]
        if beam is not None:
            chosen = chosen[:beam]
        nodes, node_pos, node_neg = W[chosen], child_pos[chosen], child_neg[chosen]
        best = BeamResult(
            p,
            tuple(int(v) for v in nodes[0]),
            delta + 1,
            int(node_pos[0]),
            int(node_neg[0]),
            False,
        )
        if best.errors <= eps_max:
            best.converged = True
            return best
    return best


def training_errors(clf: LinearClassifier, points, labels) -> int:
    return sum(1 for x, y in zip(points, labels) if clf.predict(x) != y)
