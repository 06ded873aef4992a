"""
Merged WAM: the WAM with its dump merged into the stack. Stack entries are
arguments a(u) or holes h(E, x) waiting for the value of x.

    t u | π | E                       →c1   t | a(u)::π | E
    λx.t | a(u)::π | E                →m    t | π | [x<-u]::E
    x | π | E1::[x<-t]::E2            →c2   t | h(E1, x)::π | E2
    v | h(E1, x)::π | E2              →e    v^α | π | E1::[x<-v]::E2
"""

import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import exceptions
from lsclib.lib.syntax import Var, Abs, App, render, term_size
from lsclib.lib.calculus import Strategy
from lsclib.lib.machines import wam
from lsclib.lib.machines.common import (MachineId, TransitionLabel, lookup_global, rename_copy,
                                        render_env, render_list)

ID = MachineId.MergedWAM
STRATEGY = Strategy.Need
LABELS = (TransitionLabel.C1, TransitionLabel.C2, TransitionLabel.M, TransitionLabel.E)
GLOBAL = True

State = collections.namedtuple('MergedWamState', ['code', 'stack', 'env', 'counter', 'initial'])
Arg = collections.namedtuple('Arg', ['code'])
Hole = collections.namedtuple('Hole', ['env', 'name'])


def inject(t, counter):
    return State(t, (), (), counter, t)

def is_final(s):
    return isinstance(s.code, Abs) and not s.stack

def step(s):
    code = s.code
    if isinstance(code, App):
        return TransitionLabel.C1, s._replace(code=code.fun, stack=(Arg(code.arg),) + s.stack)
    elif isinstance(code, Var):
        index, definition = lookup_global(s.env, code.name)
        return TransitionLabel.C2, s._replace(code=definition, stack=(Hole(s.env[:index], code.name),) + s.stack,
                                              env=s.env[index + 1:])
    elif not isinstance(code, Abs):
        raise exceptions.MalformedStateError('not a pure code: {}'.format(render(code)))

    if not s.stack:
        return None
    top, rest = s.stack[0], s.stack[1:]
    if isinstance(top, Arg):
        return TransitionLabel.M, s._replace(code=code.body, stack=rest, env=((code.name, top.code),) + s.env)
    copy, counter = rename_copy(code, s.counter)
    return TransitionLabel.E, s._replace(code=copy, stack=rest, env=top.env + ((top.name, code),) + s.env,
                                         counter=counter)

def split_stack(stack):
    """The WAM view of a merged stack: (arguments before the first hole, dump of (E, x, arguments))."""
    segments = [[]]
    holes = []
    for entry in stack:
        if isinstance(entry, Hole):
            holes.append(entry)
            segments.append([])
        else:
            segments[-1].append(entry.code)
    dump = tuple(wam.DumpEntry(hole.env, hole.name, tuple(segment)) for hole, segment in zip(holes, segments[1:]))
    return tuple(segments[0]), dump

def decode(s, code=None):
    stack, dump = split_stack(s.stack)
    return wam.decode(wam.State(s.code, stack, dump, s.env, s.counter, s.initial), code=code)

def closures(s):
    stack, dump = split_stack(s.stack)
    return wam.dump_closures(s.code, stack, dump, s.env)

def codes(s):
    result = [s.code] + [payload for _, payload in s.env]
    for entry in s.stack:
        if isinstance(entry, Arg):
            result.append(entry.code)
        else:
            result.extend(payload for _, payload in entry.env)
    return result

def value_codes(s):
    return []

def card(s):
    return term_size(s.code)

def env_size(s):
    return len(s.env)

def dump_size(s):
    return sum(1 for entry in s.stack if isinstance(entry, Hole))

def lookup_depth(s):
    if isinstance(s.code, Var):
        return lookup_global(s.env, s.code.name)[0]
    return None

def _render_entry(entry):
    if isinstance(entry, Arg):
        return 'a({})'.format(render(entry.code))
    return 'h({}, {})'.format(render_env(entry.env), entry.name)

def render_state(s):
    return '<{} | {} | {}>'.format(render(s.code), render_list(s.stack, _render_entry), render_env(s.env))

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
