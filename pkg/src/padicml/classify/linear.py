"""Linear p-adic classifiers: the Z_p-membership rule and its ball geometry."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import NamedTuple, Sequence

from ..balls import Ball, contains, minimal_enclosing_ball
from ..linalg import DimensionMismatch, dot, vector
from ..padic import INF, PrimeContext, RationalLike, abs_p, as_context, to_rational, valuation

POSITIVE = 1
NEGATIVE = -1


class NotSeparable(ValueError):
    pass


@dataclass(frozen=True)
class LinearClassifier:
    """Predicts +1 iff |w.x + b|_p <= 1 (flipped when ``negated``)."""

    w: tuple
    b: Fraction
    p: int
    negated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "w", vector(self.w))
        object.__setattr__(self, "b", to_rational(self.b))
        as_context(self.p)

    @property
    def dim(self) -> int:
        return len(self.w)

    def score(self, x: Sequence) -> Fraction:
        if len(x) != len(self.w):
            raise DimensionMismatch(f"classifier has dimension {len(self.w)}, input {len(x)}")
        return dot(self.w, x) + self.b

    def predict(self, x: Sequence) -> int:
        inside = abs_p(self.score(x), self.p) <= 1
        if self.negated:
            inside = not inside
        return POSITIVE if inside else NEGATIVE

    def negate(self) -> LinearClassifier:
        return replace(self, negated=not self.negated)

    def scaled(self, lam: RationalLike) -> LinearClassifier:
        lam = to_rational(lam)
        return replace(self, w=tuple(lam * x for x in self.w), b=lam * self.b)


def predict(clf: LinearClassifier, x: Sequence) -> int:
    return clf.predict(x)


def as_ball(clf: LinearClassifier) -> Ball:
    """The ball B(-b/w, 1/|w|_p) of a one-dimensional classifier."""
    if clf.dim != 1:
        raise ValueError("only one-dimensional classifiers are balls")
    (w,) = clf.w
    if w == 0:
        raise ValueError("w = 0 gives a constant classifier, not a ball")
    return Ball(-clf.b / w, valuation(w, clf.p), clf.p)


def ball_classifier(ball: Ball) -> LinearClassifier:
    """The classifier w = p^n, b = -a w whose positive region is B(a, p^n)."""
    if ball.is_singleton:
        raise ValueError("a singleton is not the positive region of a linear classifier")
    w = Fraction(ball.p) ** ball.radius_exp
    return LinearClassifier((w,), -ball.center * w, ball.p)


def _split(points: Sequence, labels: Sequence[int]) -> tuple[list[Fraction], list[Fraction]]:
    if len(points) != len(labels):
        raise ValueError("points and labels differ in length")
    pos, neg = [], []
    for x, y in zip(points, labels):
        if isinstance(x, (tuple, list)):
            (x,) = x
        x = to_rational(x)
        if y == POSITIVE:
            pos.append(x)
        elif y == NEGATIVE:
            neg.append(x)
        else:
            raise ValueError(f"labels must be +1 or -1, got {y!r}")
    return pos, neg


class SeparableFit(NamedTuple):
    minimal: LinearClassifier
    maximal: LinearClassifier | None


def fit_separable_1d(points: Sequence, labels: Sequence[int], ctx: PrimeContext | int) -> SeparableFit:
    """Minimal and maximal separating enclosing balls of 1-D data.

    The minimal classifier is w = 1/(x_j - x_i), b = -x_i/(x_j - x_i) with x_i
    the first positive and x_j the first positive farthest from it. The
    maximal one shrinks the distance to the nearest negative by a factor p;
    it is None when there are no negatives.
    """
    ctx = as_context(ctx)
    pos, neg = _split(points, labels)
    if len(pos) < 2:
        raise ValueError("need at least two positive examples")
    xi = pos[0]
    xj = max(pos, key=lambda x: abs_p(x - xi, ctx))
    if xj == xi:
        raise ValueError("all positive examples coincide")
    r = abs_p(xj - xi, ctx)
    minimal = LinearClassifier((1 / (xj - xi),), -xi / (xj - xi), ctx.p)
    if not neg:
        return SeparableFit(minimal, None)
    xk = min(neg, key=lambda x: abs_p(x - xi, ctx))
    if abs_p(xk - xi, ctx) <= r:
        raise NotSeparable(f"negative example {xk} lies in the minimal enclosing ball")
    wk = 1 / (ctx.p * (xk - xi))
    maximal = LinearClassifier((wk,), -xi * wk, ctx.p)
    return SeparableFit(minimal, maximal)


class _AlwaysNegative:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALWAYS_NEGATIVE"


ALWAYS_NEGATIVE = _AlwaysNegative()


@dataclass
class TrieNode:
    """A node of the compressed digit trie: a ball and the points inside it."""

    ball: Ball
    points: list[Fraction]
    children: list[TrieNode] = field(default_factory=list)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


def build_digit_trie(points: Sequence[RationalLike], ctx: PrimeContext | int) -> TrieNode:
    """Compressed trie over base-p digits; internal nodes are minimal enclosing balls.

    Only branching nodes are materialized. Leaves hold one distinct value
    and carry its singleton ball.
    """
    ctx = as_context(ctx)
    pts = [to_rational(x) for x in points]
    if not pts:
        raise ValueError("cannot build a trie over no points")

    def grow(group: list[Fraction]) -> TrieNode:
        ball = minimal_enclosing_ball(group, ctx)
        node = TrieNode(ball, group)
        if ball.is_singleton:
            return node
        # children at the next digit: same residue modulo p^(1 - n)
        depth = 1 - ball.radius_exp
        buckets: dict[Fraction, list[Fraction]] = {}
        for x in group:
            key = Ball(x, -depth, ctx.p).canonical_center()
            buckets.setdefault(key, []).append(x)
        for key in sorted(buckets):
            node.children.append(grow(buckets[key]))
        return node

    return grow(pts)


def _leaf_ball(x: Fraction, others: list[Fraction], ctx: PrimeContext) -> Ball:
    """Largest ball around x excluding every other distinct data point."""
    v = max((valuation(o - x, ctx) for o in others if o != x), default=None)
    if v is None:
        return Ball(x, 0, ctx.p)
    return Ball(x, -int(v) - 1, ctx.p)


def count_errors(ball, pos: Sequence[Fraction], neg: Sequence[Fraction]) -> int:
    if ball is ALWAYS_NEGATIVE:
        return len(pos)
    missed = sum(1 for x in pos if not contains(ball, x))
    false_alarms = sum(1 for x in neg if contains(ball, x))
    return missed + false_alarms


class BestBall(NamedTuple):
    ball: Ball | _AlwaysNegative
    errors: int


def fit_best_ball_1d(points: Sequence, labels: Sequence[int], ctx: PrimeContext | int) -> BestBall:
    """Ball minimizing training misclassifications, searched over the positives' trie.

    Ties prefer the smaller radius, then the smaller canonical center; the
    always-negative classifier wins only when strictly better.
    """
    ctx = as_context(ctx)
    pos, neg = _split(points, labels)
    if not pos:
        return BestBall(ALWAYS_NEGATIVE, 0)
    everything = pos + neg
    candidates = set()
    for node in build_digit_trie(pos, ctx).walk():
        if node.ball.is_singleton:
            candidates.add(_leaf_ball(node.ball.center, everything, ctx))
        else:
            candidates.add(node.ball)
    scored = sorted(
        ((count_errors(b, pos, neg), b.radius_exp, b.canonical_center(), b) for b in candidates),
        key=lambda t: t[:3],
    )
    errors, _, _, ball = scored[0]
    if len(pos) < errors:
        return BestBall(ALWAYS_NEGATIVE, len(pos))
    return BestBall(ball, errors)


class Canonical(NamedTuple):
    classifier: LinearClassifier
    anchor: int
    tight_index: int | None
    degenerate: bool


def canonicalize(clf: LinearClassifier, positives: Sequence[Sequence]) -> Canonical:
    """Rebase b on the first positive, then rescale so some positive scores exactly 1.

    The rescaling factor has |lambda|_p >= 1, so the positive region can only
    shrink, and it is unchanged when the input classifier is already tight.
    When every positive scores 0 no rescaling exists and the rebased
    classifier is returned with ``degenerate`` set.
    """
    if clf.negated:
        raise ValueError("canonicalize expects a non-negated classifier")
    pts = [vector(x) for x in positives]
    if not pts:
        raise ValueError("need at least one positive example")
    for x in pts:
        if clf.predict(x) != POSITIVE:
            raise ValueError(f"positive example {x} is classified -1")
    rebased = replace(clf, b=-dot(clf.w, pts[0]))
    scores = [rebased.score(x) for x in pts]
    if all(s == 0 for s in scores):
        return Canonical(rebased, 0, None, True)
    # the largest |score| is attained first by the smallest valuation
    j = min(range(len(pts)), key=lambda i: (valuation(scores[i], clf.p), i))
    return Canonical(rebased.scaled(1 / scores[j]), 0, j, False)


def reduce_to_integers(points: Sequence[Sequence], ctx: PrimeContext | int) -> tuple[list[tuple], int]:
    """Scale inputs by p^m so every entry is a p-adic integer.

    p^m is the largest sup-norm among the inputs (m >= 0). A classifier
    (w, b) on the original data becomes (p^-m w, b) on the scaled data.
    """
    ctx = as_context(ctx)
    vecs = [vector(x) for x in points]
    m = 0
    for x in vecs:
        v = min(valuation(e, ctx) for e in x)
        if v != INF:
            m = max(m, -int(v))
    factor = ctx.power(m)
    return [tuple(factor * e for e in x) for x in vecs], m

