"""
Split CEK: the CEK with its stack split in two, arguments on the stack and
functions awaiting their argument on the dump (a revisited SECD).

    t u | e | π | D                        →c1   t | e | (u, e)::π | D
    v | e | (t, e')::π | D                 →c2   t | e' | ε | ((v, e), π)::D
    v | e | ε | ((λx.t, e'), π)::D         →m    t | [x<-(v, e)]::e' | π | D
    x | e | π | D                          →e    c.code | c.env | π | D     where e(x) = c
"""

import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import exceptions
from lsclib.lib.syntax import Var, Abs, App, Closure, render, term_size
from lsclib.lib.calculus import Strategy
from lsclib.lib.machines.common import (MachineId, TransitionLabel, decode_local, decode_closure,
                                        lookup_local, local_closures, render_env, render_closure, render_list)

ID = MachineId.SplitCEK
STRATEGY = Strategy.ValueLR
LABELS = (TransitionLabel.C1, TransitionLabel.C2, TransitionLabel.M, TransitionLabel.E)
GLOBAL = False

State = collections.namedtuple('SplitCekState', ['code', 'env', 'stack', 'dump', 'counter', 'initial'])
DumpEntry = collections.namedtuple('DumpEntry', ['closure', 'stack'])


def inject(t, counter):
    return State(t, (), (), (), counter, t)

def is_final(s):
    return isinstance(s.code, Abs) and not s.stack and not s.dump

def step(s):
    code = s.code
    if isinstance(code, App):
        return TransitionLabel.C1, s._replace(code=code.fun, stack=(Closure(code.arg, s.env),) + s.stack)
    elif isinstance(code, Var):
        _, closure = lookup_local(s.env, code.name)
        return TransitionLabel.E, s._replace(code=closure.code, env=closure.env)
    elif not isinstance(code, Abs):
        raise exceptions.MalformedStateError('not a pure code: {}'.format(render(code)))

    if s.stack:
        argument = s.stack[0]
        entry = DumpEntry(Closure(code, s.env), s.stack[1:])
        return TransitionLabel.C2, s._replace(code=argument.code, env=argument.env, stack=(), dump=(entry,) + s.dump)
    if not s.dump:
        return None
    entry = s.dump[0]
    function = entry.closure
    if not isinstance(function.code, Abs):
        raise exceptions.MalformedStateError('dumped function is not a value: {}'.format(render(function.code)))
    return TransitionLabel.M, s._replace(code=function.code.body,
                                         env=((function.code.name, Closure(code, s.env)),) + function.env,
                                         stack=entry.stack, dump=s.dump[1:])

def _plug_stack(stack, t):
    for closure in stack:
        t = App(t, decode_closure(closure))
    return t

def decode(s, code=None):
    t = _plug_stack(s.stack, decode_local(s.env, s.code if code is None else code))
    for entry in s.dump:
        t = _plug_stack(entry.stack, App(decode_closure(entry.closure), t))
    return t

def closures(s):
    result = [Closure(s.code, s.env)] + list(s.stack)
    for entry in s.dump:
        result.append(entry.closure)
        result.extend(entry.stack)
    return result

def codes(s):
    return [c.code for closure in closures(s) for c in local_closures(closure)]

def value_codes(s):
    """Every dumped function and every environment code."""
    result = [entry.closure.code for entry in s.dump]
    for closure in closures(s):
        for c in local_closures(closure):
            result.extend(payload.code for _, payload in c.env)
    return result

def card(s):
    size = term_size(s.code)
    if s.stack:
        size += term_size(s.stack[0].code)
    return size

def env_size(s):
    return max(len(c.env) for closure in closures(s) for c in local_closures(closure))

def dump_size(s):
    return len(s.dump)

def lookup_depth(s):
    if isinstance(s.code, Var):
        return lookup_local(s.env, s.code.name)[0]
    return None

def _render_entry(entry):
    return '({}, {})'.format(render_closure(entry.closure), render_list(entry.stack, render_closure))

def render_state(s):
    return '<{} | {} | {} | {}>'.format(render(s.code), render_env(s.env), render_list(s.stack, render_closure),
                                        render_list(s.dump, _render_entry))

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
