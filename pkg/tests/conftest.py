import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "Grover exactness, 4 states",
    2: "Grover exactness, 16 states",
    3: "grover_iteration equals the textbook operator",
    4: "maximum finding on 64-entry tables",
    5: "query scaling slope",
    6: "RQGA optimality on 8-item knapsacks",
    7: "heuristic suites",
    8: "invariant suites",
}

_results = defaultdict(list)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
        _results[mark.args[0]].append((item.name, rep.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        runs = _results.get(n)
        if not runs:
            continue
        ok = all(p for _, p, _ in runs)
        details = " | ".join(d or name for name, p, d in runs if d or not p)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} [{n}] {CRITERIA[n]}: {details}")
