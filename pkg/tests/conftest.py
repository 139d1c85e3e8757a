import pytest

_CRITERIA: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test marks it PASS only if it finishes."""
    state = {}

    def record(label, detail=""):
        state["label"], state["detail"] = label, detail

    yield record
    if "label" in state:
        rep = getattr(request.node, "rep_call", None)
        status = "PASS" if rep is not None and rep.passed else "FAIL"
        line = f"[{status}] {state['label']}"
        if state["detail"]:
            line += f" -- {state['detail']}"
        _CRITERIA.append(line)
        print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
