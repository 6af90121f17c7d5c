from functools import lru_cache

import pytest

from eulerorient.onecat import compute_M


@lru_cache(maxsize=None)
def symbolic_M(N: int, x_max: int):
    return compute_M(N, x_max)


@pytest.fixture(scope="session")
def M10():
    """Symbolic M to order 10 with room for F to x^3."""
    return symbolic_M(10, 26)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"CRITERION {k} {'PASS' if ok else 'FAIL'}: {title} | {detail}")
