"""Polynomial classifiers f(x) = c (x - a_1)...(x - a_s) under the Z_p rule."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..balls import Ball, contains, relate, Relation
from ..padic import INF, RationalLike, abs_p, as_context, to_rational, valuation
from .linear import NEGATIVE, POSITIVE


@dataclass(frozen=True)
class PolyClassifier:
    c: Fraction
    roots: tuple
    p: int

    def __post_init__(self):
        object.__setattr__(self, "c", to_rational(self.c))
        object.__setattr__(self, "roots", tuple(to_rational(a) for a in self.roots))
        as_context(self.p)
        if self.c == 0:
            raise ValueError("leading coefficient must be nonzero")

    def value(self, x: RationalLike) -> Fraction:
        x = to_rational(x)
        out = self.c
        for a in self.roots:
            out *= x - a
        return out

    def predict(self, x: RationalLike) -> int:
        return POSITIVE if abs_p(self.value(x), self.p) <= 1 else NEGATIVE


def poly_predict(clf: PolyClassifier, x: RationalLike) -> int:
    return clf.predict(x)


@dataclass(frozen=True)
class PositiveRegion1D:
    """A union of pairwise disjoint balls."""

    balls: tuple

    def __post_init__(self):
        bs = tuple(self.balls)
        object.__setattr__(self, "balls", bs)
        for i in range(len(bs)):
            for j in range(i + 1, len(bs)):
                if relate(bs[i], bs[j]) is not Relation.DISJOINT:
                    raise ValueError("region balls must be pairwise disjoint")

    def contains(self, x: RationalLike) -> bool:
        return any(contains(b, x) for b in self.balls)

    def __contains__(self, x) -> bool:
        return self.contains(x)


def _ceil_half(k: int) -> int:
    return -((-k) // 2)


def second_order_region(clf: PolyClassifier) -> PositiveRegion1D:
    """Positive region of a quadratic classifier as one or two balls.

    With |c|_p = p^k and |a1 - a2|_p = p^-k12: two balls of radius
    p^(k12 - k) around each root when k > 2 k12, otherwise the single ball
    of radius p^-ceil(k/2) around a1.
    """
    if len(clf.roots) != 2:
        raise ValueError("region decomposition is implemented for two roots only")
    a1, a2 = clf.roots
    k = -valuation(clf.c, clf.p)
    k12 = valuation(a1 - a2, clf.p)
    if k12 != INF and k > 2 * k12:
        n = int(k12) - k
        return PositiveRegion1D((Ball(a1, n, clf.p), Ball(a2, n, clf.p)))
    return PositiveRegion1D((Ball(a1, -_ceil_half(k), clf.p),))
