from fractions import Fraction

import pytest
from hypothesis import strategies as st

PRIMES = (2, 3, 5, 7)

primes = st.sampled_from(PRIMES)
rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)
nonzero_rationals = rationals.filter(lambda x: x != 0)
# rationals whose p-adic expansions are short: a / (b * p^k) style values
small_ints = st.integers(min_value=-200, max_value=200)


@st.composite
def padic_friendly(draw, p=None):
    p = p if p is not None else draw(primes)
    num = draw(small_ints)
    k = draw(st.integers(min_value=-4, max_value=4))
    unit = draw(st.sampled_from([1, 3, 5, 7, 11]))
    unit = unit if unit % p else 1
    return Fraction(num) * Fraction(p) ** k / unit


ACCEPTANCE_LINES: dict = {}


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.fixture
def acceptance():
    return record_acceptance


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
