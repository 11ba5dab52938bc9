"""Shared pytest wiring for the acceptance criterion report."""

_criterion_lines = []


def record_criterion(line: str) -> None:
    """Queue a PASS/FAIL line for the end-of-run acceptance section."""
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.line(line)
