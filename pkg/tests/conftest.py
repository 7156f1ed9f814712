from __future__ import annotations

from fractions import Fraction

import pytest

from minhyper.symkernel import MultiPoly, RatFunc

# l4 = -6 after elimination
POINT = {"l1": Fraction(1), "l2": Fraction(2), "l3": Fraction(3)}

ACCEPTANCE_LINES: dict[int, str] = {}


def l(i: int) -> MultiPoly:
    return MultiPoly.var(f"l{i}")


def rf(p) -> RatFunc:
    return RatFunc.coerce(p)


@pytest.fixture
def point():
    return dict(POINT)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
