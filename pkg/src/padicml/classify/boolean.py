"""Closed-form classifiers for Boolean, congruence and counting targets on {0,1}^d."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence, Union

from ..padic import PrimeContext, as_context
from .linear import NEGATIVE, POSITIVE, LinearClassifier


@dataclass(frozen=True)
class Xor:
    """Odd parity; for p != 2 only d = 2 is representable."""


@dataclass(frozen=True)
class Nxor:
    """Even parity; for p != 2 only d = 2 is representable."""


@dataclass(frozen=True)
class And:
    pass


@dataclass(frozen=True)
class Nand:
    pass


@dataclass(frozen=True)
class CongruenceModPowP:
    """sum(x) == a (mod p^n)."""

    a: int
    n: int


@dataclass(frozen=True)
class ExactCount:
    """sum(x) == c."""

    c: int


@dataclass(frozen=True)
class AtMostCount:
    """sum(x) <= c; only its complement is a single-layer classifier (via negation)."""

    c: int


Target = Union[Xor, Nxor, And, Nand, CongruenceModPowP, ExactCount, AtMostCount]


class UnsupportedTarget(ValueError):
    pass


def ceil_log(m: int, p: int) -> int:
    """Smallest n >= 0 with p^n >= m."""
    n = 0
    while p**n < m:
        n += 1
    return n


def target_function(target: Target, p: int) -> Callable[[Sequence[int]], int]:
    def lab(ok: bool) -> int:
        return POSITIVE if ok else NEGATIVE

    if isinstance(target, Xor):
        return lambda x: lab(sum(x) % 2 == 1)
    if isinstance(target, Nxor):
        return lambda x: lab(sum(x) % 2 == 0)
    if isinstance(target, And):
        return lambda x: lab(all(x))
    if isinstance(target, Nand):
        return lambda x: lab(not all(x))
    if isinstance(target, CongruenceModPowP):
        return lambda x: lab((sum(x) - target.a) % p**target.n == 0)
    if isinstance(target, ExactCount):
        return lambda x: lab(sum(x) == target.c)
    if isinstance(target, AtMostCount):
        return lambda x: lab(sum(x) <= target.c)
    raise UnsupportedTarget(repr(target))


def _count_classifier(c: int, n: int, d: int, p: int) -> LinearClassifier:
    step = Fraction(1, p**n)
    return LinearClassifier((step,) * d, -c * step, p)


def build_boolean(target: Target, d: int, ctx: PrimeContext | int) -> LinearClassifier:
    """A classifier (possibly negated) computing ``target`` exactly on {0,1}^d."""
    p = as_context(ctx).p
    if d < 1:
        raise ValueError("d must be at least 1")
    if isinstance(target, CongruenceModPowP):
        if target.n < 0 or not 0 <= target.a < p**target.n:
            raise ValueError("need 0 <= a < p^n")
        return _count_classifier(target.a, target.n, d, p)
    if isinstance(target, ExactCount):
        if not 0 <= target.c <= d:
            raise ValueError("need 0 <= c <= d")
        n = ceil_log(1 + max(target.c, d - target.c), p)
        return _count_classifier(target.c, n, d, p)
    if isinstance(target, (Xor, Nxor)):
        odd = isinstance(target, Xor)
        if p == 2:
            return _count_classifier(1 if odd else 0, 1, d, p)
        if d != 2:
            raise UnsupportedTarget(f"parity over d={d} inputs has no {p}-adic linear classifier")
        if odd:
            return _count_classifier(1, 1, 2, p)
        return LinearClassifier((Fraction(1, p), Fraction(-1, p)), 0, p)
    if isinstance(target, And):
        return build_boolean(ExactCount(d), d, p)
    if isinstance(target, Nand):
        return build_boolean(ExactCount(d), d, p).negate()
    if isinstance(target, AtMostCount):
        # sum <= c is the negation of "at least c+1", which is a count
        # threshold and not single-layer solvable unless c+1 == d
        if target.c == d - 1:
            return build_boolean(ExactCount(d), d, p).negate()
        if target.c >= d:
            return LinearClassifier((0,) * d, 0, p)
        if target.c == 0:
            return build_boolean(ExactCount(0), d, p)
        raise UnsupportedTarget("count thresholds need a two-layer network")
    raise UnsupportedTarget(repr(target))


def truth_table_matches(clf, target: Target, d: int, p: int) -> bool:
    f = target_function(target, p)
    return all(clf.predict(x) == f(x) for x in product((0, 1), repeat=d))
