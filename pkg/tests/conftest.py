"""Shared reporting: collect per-criterion verdict lines for the summary."""

import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion_report():
    """Record one '[PASS|FAIL] criterion N: ...' line and assert the verdict.

    The line is printed immediately (visible with -v / -s) and repeated in a
    dedicated terminal section after the run, so the verdict survives output
    capture.
    """

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        verdict = "PASS" if ok else "FAIL"
        line = f"[{verdict}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        _LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _LINES:
        terminalreporter.write_line(line)
