import numpy as np
import pytest

from narrowband.model import LambdaParams


@pytest.fixture
def g01():
    """g = 0.1 via coupling 1 and v_g = 10, gamma' = 0.1, rabi = 2, delta = 5."""
    return LambdaParams(coupling=1.0, v_g=10.0, gamma_prime=0.1, rabi=2.0, delta=5.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, description, passed, detail)."""
    def record(number, text, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] criterion {number:2d}: {text}  {detail}".rstrip())
        assert passed, f"criterion {number}: {text} {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
