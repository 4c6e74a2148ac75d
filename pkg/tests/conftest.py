import pytest

from konum_guard.features import load_gazetteers
from konum_guard.tree import paper_reference_tree


@pytest.fixture(scope="session")
def gazetteers():
    return load_gazetteers()


@pytest.fixture(scope="session")
def paper_tree():
    return paper_reference_tree()


_acceptance_results: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _acceptance_results[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # one pass/fail line per acceptance criterion, survives output capture
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_acceptance_results):
        verdict = "PASS" if _acceptance_results[nodeid] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {nodeid.split('::')[-1]}")
