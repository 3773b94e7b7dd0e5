"""Closed p-adic balls, their algebra, and the ball/string correspondence."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .padic import (
    INF,
    PrimeContext,
    RationalLike,
    as_context,
    format_rational,
    residue,
    to_rational,
    valuation,
)

#: Radius exponent of a singleton ball (radius 0).
SINGLETON = -INF


class PrimeMismatch(ValueError):
    pass


def _radius_floor_exponent(r: Fraction, p: int) -> int:
    """Largest n with p^n <= r, for r > 0."""
    n = 0
    while Fraction(p) ** n > r:
        n -= 1
    while Fraction(p) ** (n + 1) <= r:
        n += 1
    return n


def _truncate(a: Fraction, ctx: PrimeContext, m: int) -> Fraction:
    """Canonical representative of a modulo p^m Z_p (digits below p^m only)."""
    v = valuation(a, ctx)
    if v >= m:
        return Fraction(0)
    unit = a / ctx.power(v)
    return residue(unit, ctx, m - v) * ctx.power(v)


@dataclass(frozen=True, eq=False)
class Ball:
    """The closed ball {x : |x - center|_p <= p^radius_exp}.

    ``radius_exp`` is an integer, or ``SINGLETON`` (minus infinity) for {center}.
    Equality and hashing go through the canonical center, so any member may
    serve as the center.
    """

    center: Fraction
    radius_exp: int | float
    p: int

    def __post_init__(self):
        object.__setattr__(self, "center", to_rational(self.center))
        as_context(self.p)
        if self.radius_exp != SINGLETON and not isinstance(self.radius_exp, int):
            raise TypeError("radius_exp must be an int or SINGLETON")

    @classmethod
    def from_radius(cls, center: RationalLike, radius: RationalLike, ctx: PrimeContext | int) -> Ball:
        """Ball with an arbitrary rational radius, rounded down to a power of p."""
        ctx = as_context(ctx)
        radius = to_rational(radius)
        if radius < 0:
            raise ValueError("radius must be non-negative")
        if radius == 0:
            return cls(to_rational(center), SINGLETON, ctx.p)
        return cls(to_rational(center), _radius_floor_exponent(radius, ctx.p), ctx.p)

    @property
    def ctx(self) -> PrimeContext:
        return PrimeContext(self.p)

    @property
    def is_singleton(self) -> bool:
        return self.radius_exp == SINGLETON

    @property
    def radius(self) -> Fraction:
        if self.is_singleton:
            return Fraction(0)
        return Fraction(self.p) ** self.radius_exp

    def canonical_center(self) -> Fraction:
        if self.is_singleton:
            return self.center
        return _truncate(self.center, self.ctx, -self.radius_exp)

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return (
            self.p == other.p
            and self.radius_exp == other.radius_exp
            and self.canonical_center() == other.canonical_center()
        )

    def __hash__(self):
        return hash((self.p, self.radius_exp, self.canonical_center()))

    def __contains__(self, x) -> bool:
        return contains(self, x)

    def __str__(self):
        return f"B({format_rational(self.center)}, {format_rational(self.radius)})"

    def to_json(self) -> dict:
        return {
            "center": format_rational(self.center),
            "radius_exp": "-inf" if self.is_singleton else self.radius_exp,
            "p": self.p,
        }

    @classmethod
    def from_json(cls, obj: dict) -> Ball:
        n = obj["radius_exp"]
        return cls(to_rational(obj["center"]), SINGLETON if n == "-inf" else int(n), int(obj["p"]))


class Relation(enum.Enum):
    DISJOINT = "disjoint"
    A_CONTAINS_B = "a_contains_b"
    B_CONTAINS_A = "b_contains_a"
    EQUAL = "equal"


def _check_same_prime(a: Ball, b: Ball):
    if a.p != b.p:
        raise PrimeMismatch(f"balls over different primes: {a.p} and {b.p}")


def contains(b: Ball, x: RationalLike) -> bool:
    x = to_rational(x)
    if b.is_singleton:
        return x == b.center
    return valuation(x - b.center, b.p) >= -b.radius_exp


def relate(a: Ball, b: Ball) -> Relation:
    _check_same_prime(a, b)
    if a.radius_exp == b.radius_exp:
        return Relation.EQUAL if contains(a, b.center) else Relation.DISJOINT
    if a.radius_exp > b.radius_exp:
        return Relation.A_CONTAINS_B if contains(a, b.center) else Relation.DISJOINT
    return Relation.B_CONTAINS_A if contains(b, a.center) else Relation.DISJOINT


def minkowski_sum(a: Ball, b: Ball) -> Ball:
    _check_same_prime(a, b)
    return Ball(a.center + b.center, max(a.radius_exp, b.radius_exp), a.p)


def scale(c: RationalLike, b: Ball) -> Ball:
    c = to_rational(c)
    if c == 0:
        return Ball(Fraction(0), SINGLETON, b.p)
    if b.is_singleton:
        return Ball(c * b.center, SINGLETON, b.p)
    return Ball(c * b.center, b.radius_exp - valuation(c, b.p), b.p)


def decompose(b: Ball) -> list[Ball]:
    """The p disjoint children of radius p^(n-1), centers a + i p^(-n)."""
    if b.is_singleton:
        raise ValueError("a singleton ball cannot be decomposed")
    n = b.radius_exp
    step = Fraction(b.p) ** (-n)
    return [Ball(b.center + i * step, n - 1, b.p) for i in range(b.p)]


def minimal_enclosing_ball(points: Sequence[RationalLike], ctx: PrimeContext | int) -> Ball:
    ctx = as_context(ctx)
    pts = [to_rational(x) for x in points]
    if not pts:
        raise ValueError("minimal enclosing ball of an empty set")
    anchor = pts[0]
    v = min(valuation(x - anchor, ctx) for x in pts)
    if v == INF:
        return Ball(anchor, SINGLETON, ctx.p)
    return Ball(anchor, -int(v), ctx.p)


@dataclass(frozen=True)
class PrefixString:
    """A finite digit string naming a ball inside Z_p.

    ``symbols`` are stored in reading order from the root of the digit trie
    (least significant digit first); ``str()`` renders them the conventional
    way with the least significant digit rightmost.
    """

    symbols: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if any(not 0 <= s < self.p for s in self.symbols):
            raise ValueError(f"symbol out of range for p={self.p}")

    @classmethod
    def parse(cls, text: str, ctx: PrimeContext | int) -> PrefixString:
        """Parse the conventional rendering, e.g. ``"110"`` or ``"*110"``."""
        text = text.lstrip("*…").strip()
        return cls(tuple(int(ch) for ch in reversed(text)), as_context(ctx).p)

    @property
    def code(self) -> str:
        """Reading-order rendering, as used for prefix-code codewords."""
        return "".join(str(s) for s in self.symbols)

    def is_prefix_of(self, other: PrefixString) -> bool:
        return other.symbols[: len(self.symbols)] == self.symbols

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return "".join(str(s) for s in reversed(self.symbols))


def ball_to_prefix(b: Ball) -> PrefixString:
    if b.is_singleton or b.radius_exp > 0 or valuation(b.center, b.p) < 0:
        raise ValueError(f"{b} is not a ball of positive radius inside Z_p")
    n = -b.radius_exp
    r = residue(b.center, b.p, n)
    out = []
    for _ in range(n):
        r, d = divmod(r, b.p)
        out.append(d)
    return PrefixString(tuple(out), b.p)


def prefix_to_ball(s: PrefixString, ctx: PrimeContext | int | None = None) -> Ball:
    p = as_context(ctx).p if ctx is not None else s.p
    if p != s.p:
        raise PrimeMismatch("prefix string and context disagree on p")
    center = sum(d * p**i for i, d in enumerate(s.symbols))
    return Ball(Fraction(center), -len(s.symbols), p)


def kraft_sum(lengths: Sequence[int], ctx: PrimeContext | int) -> Fraction:
    p = as_context(ctx).p
    return sum((Fraction(1, p**n) for n in lengths), Fraction(0))


def kraft_check(lengths: Sequence[int], ctx: PrimeContext | int) -> bool:
    return kraft_sum(lengths, ctx) <= 1


def kraft_construct(lengths: Sequence[int], ctx: PrimeContext | int) -> list[PrefixString] | None:
    """Prefix-free codewords with the requested lengths, or None if impossible.

    Shortest lengths are served first, each taking the lexicographically
    smallest ball of radius p^-length disjoint from those already taken.
    The result is returned in the order of ``lengths``.
    """
    p = as_context(ctx).p
    if any(n < 1 for n in lengths):
        raise ValueError("codeword lengths must be positive")
    order = sorted(range(len(lengths)), key=lambda i: (lengths[i], i))
    out: list[PrefixString | None] = [None] * len(lengths)
    # ``nxt`` indexes, in reading order, the first free ball at the current length
    nxt = 0
    current = 0
    for i in order:
        n = lengths[i]
        nxt *= p ** (n - current)
        current = n
        if nxt >= p**n:
            return None
        word = []
        r = nxt
        for _ in range(n):
            r, d = divmod(r, p)
            word.append(d)
        out[i] = PrefixString(tuple(reversed(word)), p)
        nxt += 1
    return out  # type: ignore[return-value]
