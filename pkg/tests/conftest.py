import contextlib
import time

import pytest

from mdeck import kernels

ACCEPTANCE_RESULTS = {}


def pytest_addoption(parser):
    parser.addoption(
        "--extended", action="store_true", default=False, help="run hours-scale searches"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


BACKENDS = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


class Recorder:
    @contextlib.contextmanager
    def criterion(self, number, title):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            if isinstance(exc, pytest.skip.Exception):
                ACCEPTANCE_RESULTS[number] = ("SKIP", title, time.perf_counter() - start)
            else:
                ACCEPTANCE_RESULTS[number] = ("FAIL", title, time.perf_counter() - start)
            raise
        ACCEPTANCE_RESULTS[number] = ("PASS", title, time.perf_counter() - start)


@pytest.fixture
def acceptance():
    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        status, title, elapsed = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({elapsed:.2f}s)")
