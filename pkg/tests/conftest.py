import contextlib
import time

import numpy as np
import pytest

_ACCEPTANCE = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion():
    """Context manager recording one pass/fail line per acceptance criterion."""

    @contextlib.contextmanager
    def record(number, title):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            _ACCEPTANCE.append((number, title, False, elapsed, str(exc).splitlines()[0][:120]))
            raise
        elapsed = time.perf_counter() - start
        _ACCEPTANCE.append((number, title, True, elapsed, ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, note in sorted(_ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number}: {title} ({elapsed:.2f} s)"
        if note:
            line += f" -- {note}"
        terminalreporter.write_line(line)
