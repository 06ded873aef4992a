"""
Invariants of reachable machine states, one clause at a time.

The clauses checked for a state depend on its machine:

    closure       every closure of the state is closed
    subterm       every code is a subterm of the initial code, up to renaming
    name          every closure is well-named
    value         codes that must be values are abstractions (CEK, LAM, Split CEK)
    env-size      environments are bounded by the initial code (local machines)
                  or by the multiplicative count so far (global machines, when given)
    contextual    the state with a hole for its code decodes to an evaluation context
    duality       environment and dump are dual (Pointing WAM)
"""

import collections
import logging
logger = logging.getLogger(__name__)

from cachetools import LRUCache, cached

from lsclib.lib import exceptions
from lsclib.lib.syntax import (Abs, App, ESub, Term, bound_names, is_well_named, shape,
                               subterms, support, term_size, render)
from lsclib.lib.calculus import (HOLE, AppLeft, AppRight, SubBody, SubInside, is_admissible,
                                 render_context)
from lsclib.lib.machines import get_module, pointing_wam
from lsclib.lib.machines.common import MachineId, MULTIPLICATIVE, closure_closed, global_closed, local_closures

ClauseCheck = collections.namedtuple('ClauseCheck', ['clause', 'passed', 'detail'])


@cached(cache=LRUCache(maxsize=1024))
def subterm_shapes(t):
    return frozenset(shape(sub) for sub in subterms(t))

def hole_path(t, marker=HOLE):
    """Frames from the root of `t` to the unique occurrence of `marker`, or None."""
    if t == marker:
        return ()
    children = []
    if isinstance(t, Abs):
        return None
    elif isinstance(t, App):
        children = [(AppLeft(t.arg), t.fun), (AppRight(t.fun), t.arg)]
    elif isinstance(t, ESub):
        children = [(SubBody(t.name, t.arg), t.body), (SubInside(t.name, t.body), t.arg)]
    for frame, sub in children:
        path = hole_path(sub, marker)
        if path is not None:
            return (frame,) + path
    return None


def _closure_clause(module, s):
    bad = []
    for closure in module.closures(s):
        closed = global_closed(closure) if module.GLOBAL else closure_closed(closure)
        if not closed:
            bad.append(render(closure.code))
    return ClauseCheck('closure', not bad, 'open closures: {}'.format(', '.join(bad)) if bad else '')

def _subterm_clause(module, s):
    shapes = subterm_shapes(s.initial)
    limit = term_size(s.initial)
    bad = [code for code in module.codes(s) if term_size(code) > limit or shape(code) not in shapes]
    return ClauseCheck('subterm', not bad, 'not subterms of the initial code: {}'.format(
        ', '.join(render(code) for code in bad)) if bad else '')

def globally_well_named(closure):
    """Well-named, and no binder of a payload is repeated anywhere in the closure."""
    names = support(closure)
    for _, payload in closure.env:
        if isinstance(payload, Term):
            names.update(bound_names(payload))
    return all(count == 1 for count in names.values())

def _name_clause(module, s):
    if module.GLOBAL:
        bad = [closure for closure in module.closures(s) if not globally_well_named(closure)]
    else:
        bad = [c for closure in module.closures(s) for c in local_closures(closure) if not is_well_named(c)]
    return ClauseCheck('name', not bad, 'closures that are not well-named: {}'.format(
        ', '.join(render(closure.code) for closure in bad)) if bad else '')

def _value_clause(module, s):
    bad = [code for code in module.value_codes(s) if not isinstance(code, Abs)]
    return ClauseCheck('value', not bad, 'not values: {}'.format(', '.join(render(code) for code in bad)) if bad else '')

def _env_size_clause(module, s, multiplicative):
    size = module.env_size(s)
    if not module.GLOBAL:
        bound = term_size(s.initial)
    elif multiplicative is None:
        return None
    else:
        bound = multiplicative
    passed = size <= bound
    return ClauseCheck('env-size', passed, '' if passed else 'environment of length {} exceeds {}'.format(size, bound))

def _contextual_clause(module, s):
    try:
        decoded = module.decode(s, code=HOLE)
    except exceptions.MachineError as e:
        return ClauseCheck('contextual', False, str(e))
    path = hole_path(decoded)
    if path is None:
        return ClauseCheck('contextual', False, 'hole lost in decoding')
    passed = is_admissible(path, module.STRATEGY)
    return ClauseCheck('contextual', passed, '' if passed else 'not a {} context: {}'.format(
        module.STRATEGY.value, render_context(path)))

def _duality_clause(module, s):
    passed = pointing_wam.duality_check(s.env, s.dump)
    return ClauseCheck('duality', passed, '' if passed else 'dumped entries {} against dump {}'.format(
        pointing_wam.dumped_names(s.env), [entry.name for entry in s.dump]))

def check_machine_invariants(s, multiplicative=None):
    """Evaluate every invariant clause of the machine of `s`; returns a list of ClauseCheck."""
    module = get_module(s)
    report = []
    if module.ID is MachineId.PointingWAM:
        report.append(_duality_clause(module, s))
        if not report[-1].passed:
            return report
    report.append(_closure_clause(module, s))
    report.append(_subterm_clause(module, s))
    report.append(_name_clause(module, s))
    if module.ID in (MachineId.CEK, MachineId.LAM, MachineId.SplitCEK):
        report.append(_value_clause(module, s))
    if module.ID is not MachineId.PointingWAM:
        clause = _env_size_clause(module, s, multiplicative)
        if clause is not None:
            report.append(clause)
    report.append(_contextual_clause(module, s))
    return report

def check_trace_invariants(trace):
    """Check every state of a trace: (state index, failed clause) pairs."""
    bad = [(0, clause) for clause in failures(check_machine_invariants(trace.start, multiplicative=0))]
    multiplicative = 0
    for record in trace.steps:
        if record.label in MULTIPLICATIVE:
            multiplicative += 1
        report = check_machine_invariants(record.post, multiplicative=multiplicative)
        bad.extend((record.index + 1, clause) for clause in failures(report))
    return bad

def failures(report):
    return [clause for clause in report if not clause.passed]

def all_passed(report):
    return not failures(report)

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
