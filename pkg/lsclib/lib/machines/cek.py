"""
CEK machine: left-to-right call-by-value with local environments.

    t u | e | π                 →c1   t | e | a(u, e)::π
    v | e | a(u, e')::π         →c2   u | e' | f(v, e)::π
    v | e | f(λx.t, e')::π      →m    t | [x<-(v, e)]::e' | π
    x | e | π                   →e    c.code | c.env | π     where e(x) = c
"""

import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import exceptions
from lsclib.lib.syntax import Var, Abs, App, Closure, render, term_size
from lsclib.lib.calculus import Strategy
from lsclib.lib.machines.common import (MachineId, TransitionLabel, FunFrame, ArgFrame, decode_local,
                                        decode_frames, lookup_local, local_closures, render_env,
                                        render_frame, render_list)

ID = MachineId.CEK
STRATEGY = Strategy.ValueLR
LABELS = (TransitionLabel.C1, TransitionLabel.C2, TransitionLabel.M, TransitionLabel.E)
GLOBAL = False

State = collections.namedtuple('CekState', ['code', 'env', 'stack', 'counter', 'initial'])


def inject(t, counter):
    return State(t, (), (), counter, t)

def is_final(s):
    return isinstance(s.code, Abs) and not s.stack

def step(s):
    code = s.code
    if isinstance(code, App):
        return TransitionLabel.C1, s._replace(code=code.fun, stack=(ArgFrame(Closure(code.arg, s.env)),) + s.stack)
    elif isinstance(code, Var):
        _, closure = lookup_local(s.env, code.name)
        return TransitionLabel.E, s._replace(code=closure.code, env=closure.env)
    elif not isinstance(code, Abs):
        raise exceptions.MalformedStateError('not a pure code: {}'.format(render(code)))

    if not s.stack:
        return None
    top, rest = s.stack[0], s.stack[1:]
    if isinstance(top, ArgFrame):
        argument = top.closure
        return TransitionLabel.C2, s._replace(code=argument.code, env=argument.env,
                                              stack=(FunFrame(Closure(code, s.env)),) + rest)
    function = top.closure
    if not isinstance(function.code, Abs):
        raise exceptions.MalformedStateError('function entry is not a value: {}'.format(render(function.code)))
    return TransitionLabel.M, s._replace(code=function.code.body,
                                         env=((function.code.name, Closure(code, s.env)),) + function.env,
                                         stack=rest)

def decode(s, code=None):
    return decode_frames(s.stack, decode_local(s.env, s.code if code is None else code))

def closures(s):
    return [Closure(s.code, s.env)] + [entry.closure for entry in s.stack]

def codes(s):
    return [c.code for closure in closures(s) for c in local_closures(closure)]

def value_codes(s):
    """Codes the value invariant constrains: every environment code and every f-entry."""
    result = [entry.closure.code for entry in s.stack if isinstance(entry, FunFrame)]
    for closure in closures(s):
        for c in local_closures(closure):
            result.extend(payload.code for _, payload in c.env)
    return result

def card(s):
    size = term_size(s.code)
    if s.stack and isinstance(s.stack[0], ArgFrame):
        size += term_size(s.stack[0].closure.code)
    return size

def env_size(s):
    return max(len(c.env) for closure in closures(s) for c in local_closures(closure))

def dump_size(s):
    return 0

def lookup_depth(s):
    if isinstance(s.code, Var):
        return lookup_local(s.env, s.code.name)[0]
    return None

def render_state(s):
    return '<{} | {} | {}>'.format(render(s.code), render_env(s.env), render_list(s.stack, render_frame))

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
