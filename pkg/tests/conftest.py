import pytest

# acceptance tests append (criterion, passed, detail) here; printed at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_record():
    def record(number, title, passed, detail=""):
        ACCEPTANCE_LINES.append((number, title, passed, detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_LINES, key=lambda t: str(t[0])):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
