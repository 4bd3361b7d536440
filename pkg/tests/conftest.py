import pytest

_criteria: dict[int, tuple[str, list[str]]] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _, outcomes = _criteria.setdefault(number, (title, []))
    outcomes.append("passed" if call.excinfo is None else "failed")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcomes = _criteria[number]
        status = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} ({len(outcomes)} checks)")


@pytest.fixture
def f1_refset():
    from i3kit.corpus import ReferenceSet, ReferenceSetKey

    return ReferenceSet(ReferenceSetKey("article", 2007), (0, 1, 1, 5, 10))
