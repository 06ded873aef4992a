"""
Test suite configuration
"""

import os
import logging
import pytest
import hypothesis

logger = logging.getLogger()

from lsclib.lib import log
log.set_logger(logger)
# console handler bound to the session stderr, not to a per-test capsys stream
log.set_up(logger)

from lsclib.test import util_test
from lsclib.test.fixtures.vectors import UNITTEST_VECTOR

from lsclib.lib import config

# settings written by server.initialise_config
LIVE_SETTINGS = ('SEED', 'FUEL', 'BUDGET', 'MAX_SIZE', 'WORKERS', 'SUITE_CASES', 'LOG', 'VERBOSE')

hypothesis.settings.register_profile('ci', max_examples=200, deadline=None)
hypothesis.settings.register_profile('dev', max_examples=30, deadline=None)
hypothesis.settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'dev'))


def pytest_generate_tests(metafunc):
    """Generate all py.test cases. Checks for different types of tests and creates proper context."""
    if metafunc.function.__name__ == 'test_vector':
        args = util_test.vector_to_args(UNITTEST_VECTOR, metafunc.config.getoption('function'))
        metafunc.parametrize('module, method, inputs, outputs, error, comment', args)

def pytest_addoption(parser):
    """Add useful test suite argument options."""
    parser.addoption("--function", action="append", default=[], help="list of functions to test")


@pytest.fixture(scope='function')
def lsc_config(monkeypatch):
    """The default configuration, restored after the test."""
    monkeypatch.delenv(config.SEED_ENV_VAR, raising=False)
    before = {k: vars(config)[k] for k in LIVE_SETTINGS}
    yield config
    for k, v in before.items():
        vars(config)[k] = v
