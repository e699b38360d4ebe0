import pytest

CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion."""
    def record(number: int, label: str):
        CRITERIA[number] = (label, "PENDING")
        request.node._criterion = number
    yield record
    number = getattr(request.node, "_criterion", None)
    if number is not None:
        rep = getattr(request.node, "rep_call", None)
        status = "PASS" if rep is not None and rep.passed else "FAIL"
        CRITERIA[number] = (CRITERIA[number][0], status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        label, status = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}: {label}")
