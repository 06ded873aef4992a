"""
Krivine Abstract Machine: call-by-name with local environments.

    t u | e | π        →c1   t | e | (u, e)::π
    λx.t | e | c::π    →m    t | [x<-c]::e | π
    x | e | π          →e    c.code | c.env | π     where e(x) = c
"""

import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import exceptions
from lsclib.lib.syntax import Var, Abs, App, Closure, render, term_size
from lsclib.lib.calculus import Strategy
from lsclib.lib.machines.common import (MachineId, TransitionLabel, decode_local, decode_closure,
                                        lookup_local, local_closures, render_env, render_closure, render_list)

ID = MachineId.KAM
STRATEGY = Strategy.Name
LABELS = (TransitionLabel.C1, TransitionLabel.M, TransitionLabel.E)
GLOBAL = False

State = collections.namedtuple('KamState', ['code', 'env', 'stack', 'counter', 'initial'])


def inject(t, counter):
    return State(t, (), (), counter, t)

def is_final(s):
    return isinstance(s.code, Abs) and not s.stack

def step(s):
    code = s.code
    if isinstance(code, App):
        return TransitionLabel.C1, s._replace(code=code.fun, stack=(Closure(code.arg, s.env),) + s.stack)
    elif isinstance(code, Abs):
        if not s.stack:
            return None
        return TransitionLabel.M, s._replace(code=code.body, env=((code.name, s.stack[0]),) + s.env, stack=s.stack[1:])
    elif isinstance(code, Var):
        _, closure = lookup_local(s.env, code.name)
        return TransitionLabel.E, s._replace(code=closure.code, env=closure.env)
    raise exceptions.MalformedStateError('not a pure code: {}'.format(render(code)))

def decode(s, code=None):
    t = decode_local(s.env, s.code if code is None else code)
    for closure in s.stack:
        t = App(t, decode_closure(closure))
    return t

def closures(s):
    return [Closure(s.code, s.env)] + list(s.stack)

def codes(s):
    return [c.code for closure in closures(s) for c in local_closures(closure)]

def value_codes(s):
    return []

def card(s):
    return term_size(s.code)

def env_size(s):
    return max(len(c.env) for closure in closures(s) for c in local_closures(closure))

def dump_size(s):
    return 0

def lookup_depth(s):
    if isinstance(s.code, Var):
        return lookup_local(s.env, s.code.name)[0]
    return None

def render_state(s):
    return '<{} | {} | {}>'.format(render(s.code), render_env(s.env), render_list(s.stack, render_closure))

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
