import pytest

_criteria: dict[str, tuple[str, str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if not item.nodeid.startswith("tests/test_acceptance.py") and "test_acceptance.py" not in item.nodeid:
        return
    if rep.when == "call" or rep.failed:
        reason = ""
        if rep.failed and call.excinfo is not None:
            reason = str(call.excinfo.value).splitlines()[0] if str(call.excinfo.value) else call.excinfo.typename
        doc = (item.function.__doc__ or "").strip().splitlines()[0] if item.function.__doc__ else ""
        _criteria[item.name] = ("PASS" if rep.passed else "FAIL", doc, reason)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, (status, doc, reason) in sorted(_criteria.items()):
        number = int(name.split("_")[2])
        line = f"criterion {number:2d}: {status}  {doc}"
        if reason:
            line += f"  [{reason}]"
        terminalreporter.write_line(line)
