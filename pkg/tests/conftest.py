import numpy as np
import pytest

from quantum_eraser.eraser import default_config

ACCEPTANCE_LINES = []


@pytest.fixture
def cfg():
    return default_config()


@pytest.fixture
def scan_xs():
    # default detector scan: |x| <= 1.5 mm in 30 um steps
    return np.arange(-50, 51) * 30e-6


@pytest.fixture
def report():
    def _report(criterion, passed, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
