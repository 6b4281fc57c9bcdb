"""Shared test plumbing: acceptance criteria summary printed after the run."""

_ACCEPTANCE_LINES = []


def record_criterion(number, passed, detail):
    _ACCEPTANCE_LINES.append((number, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number, passed, detail in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(
            "criterion %d: %s (%s)" % (number, "PASS" if passed else "FAIL", detail))
