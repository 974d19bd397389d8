import pytest

# Lines printed by the acceptance suite, echoed again in the terminal summary
# so they are visible even when output capture is on.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def cache_path(tmp_path):
    return tmp_path / "reports.jsonl"
