import random

import pytest

from wpo import memo

# Every instrumented memoized comparison anywhere in the suite is audited
# against the |s| * |t| bound on main evaluations.
AUDIT = {"comparisons": 0, "violations": []}

# criterion number -> (passed, title, detail), filled by tests/test_acceptance.py
CRITERIA: dict = {}


def _audit(s, t, stats):
    AUDIT["comparisons"] += 1
    if stats.main_calls > s.size * t.size:
        AUDIT["violations"].append((str(s), str(t), stats.main_calls))


memo.comparison_observers.append(_audit)


def _line(num, passed, title, detail):
    return f"{'PASS' if passed else 'FAIL'} criterion {num} ({title}): {detail}"


@pytest.fixture
def report(request):
    """``report(num, title, passed, detail)`` records and prints one criterion line, then asserts."""
    recorded = []

    def record(num, title, passed, detail):
        recorded.append(num)
        CRITERIA[num] = (bool(passed), title, detail)
        print(_line(num, passed, title, detail))
        assert passed, detail

    yield record
    if not recorded:
        num = request.node.get_closest_marker("criterion").args[0]
        CRITERIA[num] = (False, request.node.name, "did not complete")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    if 3 in CRITERIA:
        ok, title, detail = CRITERIA[3]
        bad = AUDIT["violations"]
        CRITERIA[3] = (ok and not bad, title,
                       f"{detail}; suite-wide audit: {AUDIT['comparisons']} instrumented "
                       f"comparisons, {len(bad)} over the bound")
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        terminalreporter.write_line(_line(num, *CRITERIA[num]))


def pytest_sessionfinish(session, exitstatus):
    if AUDIT["violations"]:
        session.exitstatus = 1
        print(f"\nmain-call bound violated: {AUDIT['violations'][:5]}")


@pytest.fixture
def rng():
    return random.Random(20231015)
