import pytest

ACCEPTANCE_RESULTS = []


def record(criterion, ok, detail=""):
    ACCEPTANCE_RESULTS.append((criterion, bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {criterion}" + (f"  ({detail})" if detail else ""))


@pytest.fixture(scope="session")
def S3():
    from neargroup.groups import symmetric_group
    return symmetric_group(3)


@pytest.fixture(scope="session")
def S4():
    from neargroup.groups import symmetric_group
    return symmetric_group(4)
