import pytest

# filled by test_acceptance; one line per criterion
ACCEPTANCE_LINES = {}


def record(number: int, ok: bool, text: str) -> None:
    line = "[%s] criterion %2d: %s" % ("PASS" if ok else "FAIL", number, text)
    ACCEPTANCE_LINES[number] = line
    print(line)


@pytest.fixture
def acceptance_record():
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
