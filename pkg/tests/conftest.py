"""Collect one pass/fail line per acceptance criterion for the terminal summary."""

import pytest

_lines: list[tuple[int, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    status = "PASS" if rep.passed else "FAIL"
    detail = item.stash.get(DETAIL, "")
    line = f"criterion {number} {status}: {title}" + (f" ({detail})" if detail else "")
    _lines.append((number, line))


DETAIL = pytest.StashKey[str]()


@pytest.fixture
def detail(request):
    """Call with a string to attach details to the criterion's summary line."""

    def record(text: str) -> None:
        request.node.stash[DETAIL] = text

    return record


def pytest_terminal_summary(terminalreporter):
    if _lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_lines):
            terminalreporter.write_line(line)
