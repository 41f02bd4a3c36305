"""Shared fixtures: the timed acceptance-criteria run and a summary hook
that prints one line per criterion at the end of the session."""

import time

import pytest

from scatterlab.selftest import CRITERIA


@pytest.fixture(scope="session")
def criteria(request):
    """Run every acceptance criterion once, with wall-clock timing.

    Returns {id: (status, detail, seconds)}.
    """
    results = []
    for cid, title, fn in CRITERIA:
        t0 = time.perf_counter()
        try:
            status, detail = fn()
        except Exception as e:  # noqa: BLE001 -- report, don't abort the run
            status, detail = "fail", f"{type(e).__name__}: {e}"
        results.append((cid, title, status, detail, time.perf_counter() - t0))
    request.config._criteria_results = results
    return {cid: (status, detail, secs)
            for cid, _, status, detail, secs in results}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_criteria_results", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, status, detail, secs in results:
        terminalreporter.write_line(
            f"criterion {cid:02d} {status:5s} ({secs:6.2f}s) {title}: {detail}")
