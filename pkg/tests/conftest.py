import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    """One pass/fail line per acceptance criterion, echoed after the run."""

    def _record(label: str, ok: bool, detail: str) -> None:
        line = f"[acceptance] {label}: {'PASS' if ok else 'FAIL'} ({detail})"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
