import logging
logger = logging.getLogger(__name__)
import logging.handlers
import time
from datetime import datetime
from dateutil.tz import tzlocal
from colorlog import ColoredFormatter

LOG_FILE_MAX_BYTES = 20 * 1024 * 1024
LOG_FILE_BACKUPS = 5
CONSOLE_COLORS = {'WARNING': 'yellow', 'ERROR': 'red', 'CRITICAL': 'red'}


class ModuleLoggingFilter(logging.Filter):
    """
    Comma separated module filters, '*' for everything else and a leading '-' to exclude:

        "*,-lsclib.lib,lsclib.lib.distillery"

    logs lsclib.cli and lsclib.lib.distillery, but not lsclib.lib.syntax
    or lsclib.lib.machines.wam. An inclusion wins over an exclusion.
    """

    def __init__(self, filters):
        names = [name.strip() for name in str(filters).split(',') if name.strip()]
        self.catchall = '*' in names
        self.included = [name for name in names if name != '*' and not name.startswith('-')]
        self.excluded = [name[1:] for name in names if name.startswith('-')]

    def filter(self, record):
        if any(ModuleLoggingFilter.ismatch(record, name) for name in self.included):
            return True
        if any(ModuleLoggingFilter.ismatch(record, name) for name in self.excluded):
            return False
        return self.catchall

    @classmethod
    def ismatch(cls, record, name):
        """`name` is the logger of the record or one of its ancestors: 'lsclib.lib' matches 'lsclib.lib.calculus'."""
        return not name or record.name == name or record.name.startswith(name + '.')


ROOT_LOGGER = None
def set_logger(logger):
    global ROOT_LOGGER
    if ROOT_LOGGER is None:
        ROOT_LOGGER = logger


def _file_handler(logfile):
    handler = logging.handlers.RotatingFileHandler(logfile, maxBytes=LOG_FILE_MAX_BYTES, backupCount=LOG_FILE_BACKUPS)
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter('%(asctime)s [%(levelname)s] %(name)s: %(message)s', '%Y-%m-%d-T%H:%M:%S%z'))
    return handler

def _console_handler(level, console_logfilter):
    # stderr, stdout is kept for traces and reports
    handler = logging.StreamHandler()
    handler.setLevel(level)
    name = '' if console_logfilter is None else '[%(name)s]'
    handler.setFormatter(ColoredFormatter('%(log_color)s[%(asctime)s][%(levelname)s]' + name + ' %(message)s%(reset)s',
                                          '%Y-%m-%d %H:%M:%S', log_colors=CONSOLE_COLORS))
    if console_logfilter:
        handler.addFilter(ModuleLoggingFilter(console_logfilter))
    return handler

LOGGING_SETUP = False
LOGGING_TOFILE_SETUP = False
def set_up(logger, verbose=False, logfile=None, console_logfilter=None):
    """Console logging once per process; file logging the first time a file is given."""
    global LOGGING_SETUP
    global LOGGING_TOFILE_SETUP

    if not LOGGING_SETUP:
        level = logging.DEBUG if verbose else logging.INFO
        logger.setLevel(level)
        logger.addHandler(_console_handler(level, console_logfilter))
        LOGGING_SETUP = True
    else:
        logger.getChild('log.set_up').debug('logging already set up')

    if logfile and not LOGGING_TOFILE_SETUP:
        logger.addHandler(_file_handler(logfile))
        LOGGING_TOFILE_SETUP = True


def curr_time():
    return int(time.time())

def isodt(epoch_time):
    try:
        return datetime.fromtimestamp(epoch_time, tzlocal()).isoformat()
    except OSError:
        return '<datetime>'


def _suite_level(bindings):
    if bindings['failures']:
        return logging.ERROR
    elif bindings['inconclusive']:
        return logging.WARNING
    return logging.INFO

_VERDICT_LEVELS = {'pass': logging.DEBUG, 'inconclusive': logging.WARNING}

def event(category, bindings):
    """One log line per harness event."""

    if category == 'step':
        logger.debug('Step: {machine} #{index} {label} {state}'.format(**bindings))

    elif category == 'trace':
        logger.debug('Trace: {machine} on {term} ran {steps} steps (c={c}, m={m}, e={e}) [{outcome}]'.format(**bindings))

    elif category == 'verdict':
        level = _VERDICT_LEVELS.get(bindings['status'], logging.ERROR)
        if level == logging.DEBUG:
            logger.debug('Verdict: {machine} step {index} {label} [pass]'.format(**bindings))
        elif level == logging.WARNING:
            logger.warning('Verdict: {machine} step {index} {label} inconclusive: {detail}'.format(**bindings))
        else:
            logger.error('Verdict: {machine} step {index} {label} failed: {detail}'.format(**bindings))

    elif category == 'equiv':
        logger.debug('Equivalence: {left} vs {right} under {theory} -> {verdict} ({expanded} nodes)'.format(**bindings))

    elif category == 'suite':
        logger.log(_suite_level(bindings), 'Suite: {name} ran {cases} cases, {failures} failures, {inconclusive} inconclusive'.format(**bindings))

    else:
        logger.debug('{}: {}'.format(category.capitalize(), bindings))

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
