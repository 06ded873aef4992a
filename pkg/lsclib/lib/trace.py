"""Machine executions: run a machine on a term and record every transition."""

import enum
import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import config, log, util
from lsclib.lib.syntax import render
from lsclib.lib.machines import COMMUTATIVE, MULTIPLICATIVE, get_module, inject, step_machine


class Outcome(enum.Enum):
    Final = 'final'
    FuelExhausted = 'fuel-exhausted'

StepRecord = collections.namedtuple('StepRecord', ['index', 'label', 'pre', 'post', 'decoded_pre', 'decoded_post'])
Trace = collections.namedtuple('Trace', ['machine', 'initial', 'fuel', 'start', 'steps', 'outcome'])


def run_machine(m, t, fuel=None):
    """Iterate transitions from the initial state of `t` until a final state or `fuel` transitions."""
    module = get_module(m)
    fuel = config.FUEL if fuel is None else fuel
    state = inject(module.ID, t)
    start = state
    decoded = module.decode(state)
    steps = []
    while True:
        result = step_machine(state)
        if result is None:
            outcome = Outcome.Final
            break
        if len(steps) == fuel:
            outcome = Outcome.FuelExhausted
            break
        index = len(steps)
        label, post = result
        decoded_post = module.decode(post)
        steps.append(StepRecord(index, label, state, post, decoded, decoded_post))
        if logger.isEnabledFor(logging.DEBUG):
            log.event('step', {'machine': module.ID.value, 'index': index, 'label': label.value,
                               'state': module.render_state(post)})
        state, decoded = post, decoded_post

    trace = Trace(module.ID, start.initial, fuel, start, steps, outcome)
    log.event('trace', dict(counts(trace), machine=module.ID.value, term=render(t), steps=len(steps), outcome=outcome.value))
    return trace

def final_state(trace):
    return trace.steps[-1].post if trace.steps else trace.start

def labels(trace):
    return [record.label for record in trace.steps]

def principal_labels(trace):
    """The labels of the principal transitions, as 'm' or 'e'."""
    return ['m' if record.label in MULTIPLICATIVE else 'e'
            for record in trace.steps if record.label not in COMMUTATIVE]

def counts(trace, upto=None):
    """Label multiplicities of the first `upto` steps: c1, c2, m (m1 and m2 included), e, c and p."""
    steps = trace.steps if upto is None else trace.steps[:upto]
    result = collections.Counter({'c1': 0, 'c2': 0, 'm': 0, 'e': 0})
    for record in steps:
        if record.label in MULTIPLICATIVE:
            result['m'] += 1
        else:
            result[record.label.value] += 1
    result['c'] = result['c1'] + result['c2']
    result['p'] = result['m'] + result['e']
    return dict(result)


######################################
# Serialization

def trace_records(trace):
    """JSONL records: a header, then one record per transition."""
    module = get_module(trace.machine)
    records = [{'machine': trace.machine.value, 'initial': render(trace.initial), 'fuel': trace.fuel,
                'outcome': trace.outcome.value}]
    running = collections.Counter({'c': 0, 'm': 0, 'e': 0})
    for record in trace.steps:
        if record.label in COMMUTATIVE:
            running['c'] += 1
        elif record.label in MULTIPLICATIVE:
            running['m'] += 1
        else:
            running['e'] += 1
        records.append({'i': record.index, 'label': record.label.value, 'state': module.render_state(record.post),
                        'decoded': render(record.decoded_post), 'counters': dict(running)})
    return records

def write_trace(trace, path=None, stream=None):
    return util.write_jsonl(trace_records(trace), path=path, stream=stream)

def render_trace(trace):
    """Plain text, one transition per line."""
    module = get_module(trace.machine)
    lines = ['    ' + module.render_state(trace.start)]
    for record in trace.steps:
        lines.append('{:<4}{}'.format(record.label.value, module.render_state(record.post)))
    lines.append('{} after {} transitions'.format(trace.outcome.value, len(trace.steps)))
    return '\n'.join(lines)

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
