"""Two-layer count-threshold network: exact-count hidden units, exact-one top unit."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..padic import PrimeContext, as_context
from .boolean import ExactCount, build_boolean, ceil_log
from .linear import POSITIVE, LinearClassifier

PM1 = "pm1"
ZERO_ONE = "01"


@dataclass(frozen=True)
class TwoLayerNetwork:
    hidden: tuple
    top: LinearClassifier
    hidden_encoding: str = PM1

    def __post_init__(self):
        object.__setattr__(self, "hidden", tuple(self.hidden))
        if not self.hidden:
            raise ValueError("need at least one hidden unit")
        if self.hidden_encoding not in (PM1, ZERO_ONE):
            raise ValueError(f"unknown hidden encoding {self.hidden_encoding!r}")

    def hidden_outputs(self, x: Sequence) -> tuple[int, ...]:
        out = tuple(h.predict(x) for h in self.hidden)
        if self.hidden_encoding == ZERO_ONE:
            out = tuple(int(v == POSITIVE) for v in out)
        return out

    def predict(self, x: Sequence) -> int:
        return self.top.predict(self.hidden_outputs(x))


def exact_one_pm1(units: int, ctx: PrimeContext | int) -> LinearClassifier:
    """+1 iff exactly one of ``units`` inputs in {-1,+1} equals +1.

    With j positives, w.h + b = 2(j - 1) p^-n, so n must make p^n miss every
    2(j - 1) for j != 1: p^n > units - 1 and n >= 1, plus one extra level at
    p = 2 for the factor 2.
    """
    p = as_context(ctx).p
    n = max(1, ceil_log(units, p))
    if p == 2:
        n += 1
    step = Fraction(1, p**n)
    return LinearClassifier((step,) * units, (units - 2) * step, p)


def count_threshold_network(d: int, k: int, ctx: PrimeContext | int, hidden_encoding: str = PM1) -> TwoLayerNetwork:
    """Network computing "at least k of the d binary inputs are 1"."""
    p = as_context(ctx).p
    if not 1 <= k <= d:
        raise ValueError("need 1 <= k <= d")
    hidden = tuple(build_boolean(ExactCount(i), d, p) for i in range(k, d + 1))
    units = len(hidden)
    if hidden_encoding == PM1:
        top = exact_one_pm1(units, p)
    else:
        top = build_boolean(ExactCount(1), units, p)
    return TwoLayerNetwork(hidden, top, hidden_encoding)
