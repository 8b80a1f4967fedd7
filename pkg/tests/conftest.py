import pytest

_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Record an acceptance criterion outcome for the end-of-run summary."""
    entry = {"name": request.node.name, "ok": False, "detail": ""}
    _CRITERIA.append(entry)

    def record(detail):
        entry["detail"] = detail

    yield record
    rep = getattr(request.node, "rep_call", None)
    entry["ok"] = rep is not None and rep.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for c in _CRITERIA:
        mark = "PASS" if c["ok"] else "FAIL"
        terminalreporter.write_line(f"[{mark}] {c['name']}: {c['detail']}")
