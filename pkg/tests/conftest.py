import pytest

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record():
    """Store the one-line verdict of an acceptance criterion."""

    def put(number: int, ok: bool, text: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
        ACCEPTANCE[number] = line
        print(line)

    return put


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
