import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def pytest_addoption(parser):
    parser.addoption("--seed", action="store", default=None, type=int,
                     help="fix the randomness of property tests")


def pytest_configure(config):
    seed = config.getoption("--seed")
    if seed is not None and hasattr(config.option, "hypothesis_seed"):
        config.option.hypothesis_seed = seed


@pytest.fixture
def data_dir():
    return Path(os.path.abspath(DATA))


def read_data(*parts):
    with open(os.path.join(DATA, *parts)) as fh:
        return fh.read()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
