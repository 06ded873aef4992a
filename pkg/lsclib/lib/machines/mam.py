"""
Milner Abstract Machine: call-by-name with a single global environment and no
closures. Variables are replaced by a fresh copy of their definition.

    t u | π | E         →c1   t | u::π | E
    λx.t | u::π | E     →m    t | π | [x<-u]::E
    x | π | E           →e    t^α | π | E       where E(x) = t
"""

import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import exceptions
from lsclib.lib.syntax import Var, Abs, App, GlobalClosure, render, term_size
from lsclib.lib.calculus import Strategy
from lsclib.lib.machines.common import (MachineId, TransitionLabel, decode_global, lookup_global,
                                        plug_arguments, rename_copy, render_env, render_list)

ID = MachineId.MAM
STRATEGY = Strategy.Name
LABELS = (TransitionLabel.C1, TransitionLabel.M, TransitionLabel.E)
GLOBAL = True

State = collections.namedtuple('MamState', ['code', 'stack', 'env', 'counter', 'initial'])


def inject(t, counter):
    return State(t, (), (), counter, t)

def is_final(s):
    return isinstance(s.code, Abs) and not s.stack

def step(s):
    code = s.code
    if isinstance(code, App):
        return TransitionLabel.C1, s._replace(code=code.fun, stack=(code.arg,) + s.stack)
    elif isinstance(code, Abs):
        if not s.stack:
            return None
        return TransitionLabel.M, s._replace(code=code.body, stack=s.stack[1:], env=((code.name, s.stack[0]),) + s.env)
    elif isinstance(code, Var):
        _, definition = lookup_global(s.env, code.name)
        copy, counter = rename_copy(definition, s.counter)
        return TransitionLabel.E, s._replace(code=copy, counter=counter)
    raise exceptions.MalformedStateError('not a pure code: {}'.format(render(code)))

def decode(s, code=None):
    return decode_global(s.env, plug_arguments(s.stack, s.code if code is None else code))

def closures(s):
    return [GlobalClosure(plug_arguments(s.stack, s.code), s.env)]

def codes(s):
    return [s.code] + list(s.stack) + [payload for _, payload in s.env]

def value_codes(s):
    return []

def card(s):
    return term_size(s.code)

def env_size(s):
    return len(s.env)

def dump_size(s):
    return 0

def lookup_depth(s):
    if isinstance(s.code, Var):
        return lookup_global(s.env, s.code.name)[0]
    return None

def render_state(s):
    return '<{} | {} | {}>'.format(render(s.code), render_list(s.stack, render), render_env(s.env))

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
