#! /usr/bin/python3
import pytest
from lsclib.test import conftest  # this is require near the top to do setup of the test suite
from lsclib.test import util_test

from lsclib import server
from lsclib.lib import config


def test_config_context(lsc_config):
    server.initialise_config()
    assert config.FUEL == config.DEFAULT_FUEL

    with util_test.ConfigContext(FUEL=7):
        assert config.FUEL == 7

        with util_test.ConfigContext(FUEL=3):
            assert config.FUEL == 3

        assert config.FUEL == 7

    assert config.FUEL == config.DEFAULT_FUEL


def test_config_context_new_key():
    with util_test.ConfigContext(NOT_A_SETTING=1):
        assert config.NOT_A_SETTING == 1
    assert not hasattr(config, 'NOT_A_SETTING')


def test_initialise_config_values(lsc_config):
    server.initialise_config(seed=5, fuel=50, budget=100, max_size=12, workers=0, suite_cases=9)
    assert (config.SEED, config.FUEL, config.BUDGET, config.MAX_SIZE) == (5, 50, 100, 12)
    assert config.WORKERS == 1
    assert config.SUITE_CASES == 9
    assert config.LOG is None


def test_initialise_config_seed_from_environment(lsc_config, monkeypatch):
    monkeypatch.setenv(config.SEED_ENV_VAR, '42')
    server.initialise_config()
    assert config.SEED == 42

    server.initialise_config(seed=3)
    assert config.SEED == 3


def test_initialise_config_log_file(lsc_config, tmp_path):
    path = str(tmp_path / 'lsc.log')
    server.initialise_config(log_file=path)
    assert config.LOG == path


@pytest.mark.parametrize('options, message', [
    ({'fuel': 'lots'}, "invalid fuel: 'lots'"),
    ({'budget': -1}, 'budget must not be negative'),
    ({'max_size': 1}, 'maximum size must be at least 2'),
])
def test_initialise_config_errors(lsc_config, options, message):
    with pytest.raises(server.ConfigurationError) as exception:
        server.initialise_config(**options)
    assert str(exception.value) == message
