"""Prints the acceptance checklist (one line per criterion) after a run."""

import re

_CRITERION = re.compile(r"test_criterion_(\d+)")

# nodeid -> (criterion number, first docstring line); populated at collection
_descriptions: dict[str, tuple[int, str]] = {}
_failed: set[str] = set()
_seen: set[str] = set()


def pytest_collection_modifyitems(items):
    for item in items:
        match = _CRITERION.search(item.name)
        if match is None:
            continue
        doc = (getattr(item.function, "__doc__", None) or "").strip()
        first_line = doc.splitlines()[0].rstrip(".") if doc else item.name
        _descriptions[item.nodeid] = (int(match.group(1)), first_line)


def pytest_runtest_logreport(report):
    if report.nodeid not in _descriptions:
        return
    _seen.add(report.nodeid)
    # a failure in any phase (setup error included) counts as FAIL
    if report.failed:
        _failed.add(report.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not _seen:
        return
    rows = sorted(_descriptions[nodeid] + (nodeid,) for nodeid in _seen)
    terminalreporter.section("acceptance criteria")
    for number, description, nodeid in rows:
        verdict = "FAIL" if nodeid in _failed else "PASS"
        terminalreporter.write_line(
            f"criterion {number}: {verdict} — {description}"
        )
