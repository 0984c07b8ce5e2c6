import pytest

from qtsforecast.dataio import gen_ar1


class AccessCountingSeries:
    """Sequence wrapper that records which positions are read.

    Slice reads go to ``slice_reads``; single-element reads to ``indices``.
    """

    def __init__(self, values):
        self._values = tuple(values)
        self.indices: set[int] = set()
        self.slice_reads: list[slice] = []

    def __len__(self):
        return len(self._values)

    def __getitem__(self, key):
        if isinstance(key, slice):
            self.slice_reads.append(key)
            return self._values[key]
        i = key if key >= 0 else len(self._values) + key
        self.indices.add(i)
        return self._values[key]

    def __iter__(self):
        raise AssertionError("forecasting must not iterate the whole series")


@pytest.fixture(scope="session")
def synthetic():
    """The benchmark fixture: AR(1), phi 0.8, sigma 0.001, 1040 points, seed 42."""
    return gen_ar1(0.8, 0.001, 1040, 42)


@pytest.fixture
def counting():
    return AccessCountingSeries


_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        doc = getattr(report, "criterion", None) or report.nodeid.split("::")[-1]
        _criteria[report.nodeid] = (report.outcome.upper(), doc)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        rep.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for status, doc in _criteria.values():
        terminalreporter.write_line(f"{status:6s} {doc}")
