import numpy as np
import pytest

from tempmotif.netio import TemporalNetwork, project_static
from tempmotif.synthetic import benchmark_network

ACCEPTANCE: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): numbered acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    props = dict(report.user_properties)
    ACCEPTANCE[crit] = {
        "title": props.get("title", ""),
        "passed": report.outcome == "passed",
        "detail": props.get("detail", ""),
        "seconds": report.duration,
    }


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        item.user_properties.append(("criterion", mark.args[0]))
        item.user_properties.append(("title", mark.args[1]))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        r = ACCEPTANCE[n]
        status = "PASS" if r["passed"] else "FAIL"
        line = f"[{status}] criterion {n:2d}: {r['title']} ({r['seconds']:.1f}s)"
        if r["detail"]:
            line += f" -- {r['detail']}"
        tr.write_line(line)


@pytest.fixture
def detail(request):
    """Attach a measurement summary to the acceptance report line."""
    def _set(text: str) -> None:
        request.node.user_properties.append(("detail", text))
    return _set


@pytest.fixture(scope="session")
def bench():
    T = benchmark_network()
    return T, project_static(T)


@pytest.fixture
def fig1_network():
    # three nodes {2, 5, 6}; only (2,5,6), (5,6,13), (6,2,20) fits in a window of 15
    return TemporalNetwork.from_edges(
        [(5, 6, 4), (2, 5, 6), (5, 6, 13), (6, 2, 20), (2, 5, 30)], relabel=False
    )


@pytest.fixture
def one_triangle():
    return TemporalNetwork.from_edges([(1, 2, 1), (2, 3, 2), (3, 1, 3)], relabel=False)

