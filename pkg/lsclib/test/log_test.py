#! /usr/bin/python3
import logging
import pytest
from lsclib.test import conftest  # this is require near the top to do setup of the test suite

from lsclib.lib import log


def _record(name):
    return logging.LogRecord(name, logging.INFO, __file__, 0, 'message', None, None)

@pytest.mark.parametrize('name, logged', [
    ('lsclib.cli', True),
    ('lsclib.lib.distillery', True),
    ('lsclib.lib', False),
    ('lsclib.lib.machines.wam', False),
    ('lsclib.library', True),
])
def test_module_logging_filter(name, logged):
    module_filter = log.ModuleLoggingFilter('*,-lsclib.lib,lsclib.lib.distillery')
    assert module_filter.filter(_record(name)) is logged

def test_module_logging_filter_without_catchall():
    module_filter = log.ModuleLoggingFilter('lsclib.lib.equivalence')
    assert module_filter.filter(_record('lsclib.lib.equivalence'))
    assert not module_filter.filter(_record('lsclib.lib.calculus'))

@pytest.mark.parametrize('failures, inconclusive, level', [
    (0, 0, 'INFO'),
    (0, 2, 'WARNING'),
    (1, 2, 'ERROR'),
])
def test_suite_event_level(caplog, failures, inconclusive, level):
    caplog.set_level(logging.DEBUG, logger='lsclib.lib.log')
    log.event('suite', {'name': 'traces', 'cases': 6, 'failures': failures, 'inconclusive': inconclusive})
    assert len(caplog.records) == 1
    assert caplog.records[0].levelname == level
    assert caplog.records[0].getMessage() == 'Suite: traces ran 6 cases, {} failures, {} inconclusive'.format(failures, inconclusive)

def test_verdict_event_level(caplog):
    caplog.set_level(logging.DEBUG, logger='lsclib.lib.log')
    log.event('verdict', {'machine': 'kam', 'index': 3, 'label': 'e', 'status': 'fail', 'detail': 'not identical'})
    assert caplog.records[-1].levelname == 'ERROR'
    assert caplog.records[-1].getMessage() == 'Verdict: kam step 3 e failed: not identical'

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
