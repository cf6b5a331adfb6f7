import math

import pytest

from toeplitz_spurious import make_rational_angle, pm1_symbol, zero_one_symbol

# L in {0, pi/2, pi/3, 2pi/3}
TEST_ANGLES = [(1, 0), (2, 1), (3, 1), (3, 2)]


@pytest.fixture
def half_pi():
    return pm1_symbol(make_rational_angle(2, 1))


@pytest.fixture
def half_pi01():
    return zero_one_symbol(make_rational_angle(2, 1))


@pytest.fixture(params=TEST_ANGLES, ids=lambda pq: f"L=pi*{pq[1]}/{pq[0]}")
def pm1(request):
    return pm1_symbol(make_rational_angle(*request.param))


def log2_envelope(n, omega, eps):
    return omega * (1 + math.log(n) ** 2) / (eps * n)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = {}


def record_acceptance(label, ok, detail=""):
    ACCEPTANCE_LINES[label] = f"criterion {label}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for label in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[label])
