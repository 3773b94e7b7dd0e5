"""Rationals viewed as elements of Q_p: valuations, absolute values, digits.

Every number handled by this package is an exact ``fractions.Fraction``;
p-adic digit expansions are produced on demand and never used as the
primary representation.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]

#: Valuation of zero.
INF = math.inf

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class RationalParseError(ValueError):
    """Raised when a token is not of the form ``num`` or ``num/den``."""

    def __init__(self, token: str):
        super().__init__(f"malformed rational: {token!r}")
        self.token = token


def parse_rational(token: str) -> Fraction:
    token = token.strip()
    if not _RATIONAL_RE.match(token):
        raise RationalParseError(token)
    num, _, den = token.partition("/")
    if den and int(den) == 0:
        raise RationalParseError(token)
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def is_prime(n: int) -> bool:
    """Deterministic trial division; primes used here are small."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _int_valuation(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PrimeContext:
    """The prime ``p`` fixing which absolute value |.|_p is in use."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p must be a prime integer, got {self.p!r}")

    def valuation(self, x: RationalLike) -> int | float:
        return valuation(x, self)

    def abs(self, x: RationalLike) -> Fraction:
        return abs_p(x, self)

    def power(self, n: int) -> Fraction:
        return Fraction(self.p) ** n


def as_context(ctx: PrimeContext | int) -> PrimeContext:
    return ctx if isinstance(ctx, PrimeContext) else PrimeContext(ctx)


def valuation(x: RationalLike, ctx: PrimeContext | int) -> int | float:
    """Exponent n with x = p^n a/b, p dividing neither a nor b; INF for 0."""
    p = as_context(ctx).p
    x = to_rational(x)
    if x == 0:
        return INF
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def abs_p(x: RationalLike, ctx: PrimeContext | int) -> Fraction:
    ctx = as_context(ctx)
    v = valuation(x, ctx)
    if v == INF:
        return Fraction(0)
    return ctx.power(-v)


def is_padic_integer(x: RationalLike, ctx: PrimeContext | int) -> bool:
    return to_rational(x).denominator % as_context(ctx).p != 0


def residue(x: RationalLike, ctx: PrimeContext | int, k: int) -> int:
    """The integer in [0, p^k) congruent to a p-adic integer x modulo p^k."""
    p = as_context(ctx).p
    x = to_rational(x)
    if x.denominator % p == 0:
        raise ValueError(f"{format_rational(x)} is not a {p}-adic integer")
    mod = p**k
    if mod == 1:
        return 0
    return x.numerator * pow(x.denominator, -1, mod) % mod


@dataclass(frozen=True)
class DigitExpansion:
    """Truncated expansion sum(digits[i] * p^(start + i)), least significant first."""

    start: int
    digits: tuple[int, ...]
    p: int

    def value(self) -> Fraction:
        return from_digits(self, self.p)

    def display(self) -> str:
        """Paper-style rendering: most significant digit left, leading ellipsis."""
        if not self.digits:
            return "…0"
        # place digits on their exponents, padding with zeros down to p^0
        top = self.start + len(self.digits)
        by_exp = {self.start + i: d for i, d in enumerate(self.digits)}
        lo = min(self.start, 0)
        sym = _digit_symbol(self.p)
        int_part = "".join(sym(by_exp.get(e, 0)) for e in range(top - 1, max(lo, 0) - 1, -1))
        frac_part = "".join(sym(by_exp.get(e, 0)) for e in range(-1, lo - 1, -1))
        if not int_part:
            int_part = "0"
        text = "…" + int_part
        if frac_part:
            text += "." + frac_part
        return text


def _digit_symbol(p: int):
    if p <= 10:
        return str
    return lambda d: f"[{d}]"


def digits(x: RationalLike, ctx: PrimeContext | int, count: int) -> DigitExpansion:
    """First ``count`` digits of the p-adic expansion of x, from its valuation up."""
    ctx = as_context(ctx)
    if count < 1:
        raise ValueError("count must be positive")
    x = to_rational(x)
    p = ctx.p
    if x == 0:
        return DigitExpansion(0, (0,) * count, p)
    v = valuation(x, ctx)
    unit = x / ctx.power(v)
    r = residue(unit, ctx, count)
    out = []
    for _ in range(count):
        r, d = divmod(r, p)
        out.append(d)
    return DigitExpansion(int(v), tuple(out), p)


def from_digits(exp: DigitExpansion | Sequence[int], ctx: PrimeContext | int, start: int | None = None) -> Fraction:
    """Exact value of a finite digit sequence; accepts a DigitExpansion or raw digits."""
    ctx = as_context(ctx)
    if isinstance(exp, DigitExpansion):
        seq, start = exp.digits, exp.start
    else:
        seq, start = tuple(exp), (start or 0)
    total = 0
    for i, d in enumerate(seq):
        if not 0 <= d < ctx.p:
            raise ValueError(f"digit {d} out of range for p={ctx.p}")
        total += d * ctx.p**i
    return total * ctx.power(start)


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def product_formula_check(x: RationalLike) -> bool:
    """Whether |x|_inf times the product of |x|_p over all primes equals 1."""
    x = to_rational(x)
    if x == 0:
        raise ValueError("product formula is undefined at 0")
    product = abs(x)
    for p in set(prime_factors(x.numerator)) | set(prime_factors(x.denominator)):
        product *= abs_p(x, p)
    return product == 1


def sup_abs(values: Iterable[RationalLike], ctx: PrimeContext | int) -> Fraction:
    return max((abs_p(v, ctx) for v in values), default=Fraction(0))
