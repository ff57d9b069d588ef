import pytest
from hypothesis import HealthCheck, settings

from eqschub.eqqring import build_ring
from eqschub.partitions import GrassmannShape

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def rings():
    """Session-wide rings keyed by (model, p, m); reducers fill in lazily."""
    cache = {}

    def get(model, p, m, bound=None):
        key = (model, p, m, bound)
        if key not in cache:
            cache[key] = build_ring(model, GrassmannShape(p, m), bound)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    import sys
    lines = []
    for name, mod in list(sys.modules.items()):
        if name.endswith("test_acceptance") and hasattr(mod, "RESULTS"):
            lines = mod.RESULTS
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
