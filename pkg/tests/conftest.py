import random

import pytest

from nodaljac import checks


def pytest_configure(config):
    config.addinivalue_line("markers", "timing: wall-clock comparisons; debug validation stays off")


@pytest.fixture(autouse=True)
def debug_checks(request):
    """Validate group-law inputs everywhere except in timing tests."""
    saved = checks.ENABLED
    checks.ENABLED = request.node.get_closest_marker("timing") is None
    yield
    checks.ENABLED = saved


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
