#! /usr/bin/env python3

import os
import pprint
import sys
import appdirs
import logging

from lsclib.lib import log
logger = logging.getLogger(__name__)
log.set_logger(logging.getLogger())  # root logger, unless a caller set one first

from lsclib.lib import config


class ConfigurationError(Exception):
    pass


def _positive(name, value, default):
    if value is None:
        return default
    try:
        value = int(value)
    except (TypeError, ValueError):
        raise ConfigurationError('invalid {}: {!r}'.format(name, value))
    if value < 0:
        raise ConfigurationError('{} must not be negative'.format(name))
    return value

def initialise_config(seed=None, fuel=None, budget=None, max_size=None, workers=None, suite_cases=None,
                      log_file=False, verbose=False, console_logfilter=None):

    # Seed
    if seed is None and os.environ.get(config.SEED_ENV_VAR):
        seed = os.environ[config.SEED_ENV_VAR]
    config.SEED = _positive('seed', seed, config.DEFAULT_SEED)

    config.FUEL = _positive('fuel', fuel, config.DEFAULT_FUEL)
    config.BUDGET = _positive('budget', budget, config.DEFAULT_BUDGET)
    config.MAX_SIZE = _positive('maximum size', max_size, config.DEFAULT_MAX_SIZE)
    if config.MAX_SIZE < 2:
        raise ConfigurationError('maximum size must be at least 2')
    config.WORKERS = _positive('workers', workers, config.DEFAULT_WORKERS) or 1
    config.SUITE_CASES = _positive('suite cases', suite_cases, config.DEFAULT_SUITE_CASES)
    config.VERBOSE = verbose

    # Log
    if log_file is False:  # no file logging
        config.LOG = None
    elif not log_file:  # default location
        log_dir = appdirs.user_log_dir(appauthor=config.APP_AUTHOR, appname=config.APP_NAME)
        if not os.path.isdir(log_dir):
            os.makedirs(log_dir, mode=0o755)
        config.LOG = os.path.join(log_dir, '{}.log'.format(config.APP_NAME))
    else:  # user-specified location
        config.LOG = log_file

    # Set up logging.
    log.set_up(log.ROOT_LOGGER, verbose=verbose, logfile=config.LOG, console_logfilter=console_logfilter)
    if config.LOG:
        logger.debug('Writing log to file: `{}`'.format(config.LOG))

    # Log unhandled errors.
    def handle_exception(exc_type, exc_value, exc_traceback):
        logger.error("Unhandled Exception", exc_info=(exc_type, exc_value, exc_traceback))
    sys.excepthook = handle_exception


def debug_config():
    output = dict(vars(config))
    for k in list(output.keys()):
        if k[:2] == "__" and k[-2:] == "__" or k == 'sys':
            del output[k]

    pprint.pprint(output)

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
