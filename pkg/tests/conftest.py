import contextlib

import pytest

_acceptance_lines: list[str] = []


@pytest.fixture
def criterion_verdict():
    """Context manager printing exactly one pass/fail line per criterion.

    The lines are echoed immediately and replayed in the terminal summary so
    they survive pytest's output capture.
    """
    @contextlib.contextmanager
    def run(label: str):
        try:
            yield
        except BaseException:
            _record(f"{label}: FAIL")
            raise
        _record(f"{label}: PASS")

    return run


def _record(line: str) -> None:
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
