"""
Wadsworth Abstract Machine: call-by-need with a global environment and a
dump of suspended lookups.

    t u | π | D | E                         →c1   t | u::π | D | E
    λx.t | u::π | D | E                     →m    t | π | D | [x<-u]::E
    x | π | D | E1::[x<-t]::E2              →c2   t | ε | (E1, x, π)::D | E2
    v | ε | (E1, x, π)::D | E2              →e    v^α | π | D | E1::[x<-v]::E2

A dump entry (E1, x, π) decodes to ⟦E1⟧⟨⟦D⟧⟨⟦π⟧⟨x⟩⟩⟩[x<-⟨·⟩]: the newest entry
is the outermost one and the rest of the dump sits inside it.
"""

import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import exceptions
from lsclib.lib.syntax import Var, Abs, App, ESub, GlobalClosure, render, term_size
from lsclib.lib.calculus import Strategy
from lsclib.lib.machines.common import (MachineId, TransitionLabel, decode_global, lookup_global,
                                        plug_arguments, rename_copy, render_env, render_list)

ID = MachineId.WAM
STRATEGY = Strategy.Need
LABELS = (TransitionLabel.C1, TransitionLabel.C2, TransitionLabel.M, TransitionLabel.E)
GLOBAL = True

State = collections.namedtuple('WamState', ['code', 'stack', 'dump', 'env', 'counter', 'initial'])
DumpEntry = collections.namedtuple('DumpEntry', ['env', 'name', 'stack'])


def inject(t, counter):
    return State(t, (), (), (), counter, t)

def is_final(s):
    return isinstance(s.code, Abs) and not s.stack and not s.dump

def step(s):
    code = s.code
    if isinstance(code, App):
        return TransitionLabel.C1, s._replace(code=code.fun, stack=(code.arg,) + s.stack)
    elif isinstance(code, Var):
        index, definition = lookup_global(s.env, code.name)
        entry = DumpEntry(s.env[:index], code.name, s.stack)
        return TransitionLabel.C2, s._replace(code=definition, stack=(), dump=(entry,) + s.dump, env=s.env[index + 1:])
    elif not isinstance(code, Abs):
        raise exceptions.MalformedStateError('not a pure code: {}'.format(render(code)))

    if s.stack:
        return TransitionLabel.M, s._replace(code=code.body, stack=s.stack[1:], env=((code.name, s.stack[0]),) + s.env)
    if not s.dump:
        return None
    entry = s.dump[0]
    copy, counter = rename_copy(code, s.counter)
    return TransitionLabel.E, s._replace(code=copy, stack=entry.stack, dump=s.dump[1:],
                                         env=entry.env + ((entry.name, code),) + s.env, counter=counter)

def decode_dump(dump, t):
    """⟦D⟧⟨t⟩."""
    if not dump:
        return t
    entry = dump[0]
    inner = decode_dump(dump[1:], plug_arguments(entry.stack, Var(entry.name)))
    return ESub(decode_global(entry.env, inner), entry.name, t)

def decode(s, code=None):
    return decode_global(s.env, decode_dump(s.dump, plug_arguments(s.stack, s.code if code is None else code)))

def dump_closures(code, stack, dump, env):
    """
    The closures of a dump-carrying state: (π⟨t⟩, E) and, for the i-th dump
    entry (Ei, xi, πi), the code πi⟨xi⟩ in the environment Ei::[xi<-c]::E'
    where c is the code of the previous closure and E' its environment.
    """
    current = GlobalClosure(plug_arguments(stack, code), env)
    result = [current]
    for entry in dump:
        current = GlobalClosure(plug_arguments(entry.stack, Var(entry.name)),
                                entry.env + ((entry.name, current.code),) + current.env)
        result.append(current)
    return result

def closures(s):
    return dump_closures(s.code, s.stack, s.dump, s.env)

def codes(s):
    result = [s.code] + list(s.stack) + [payload for _, payload in s.env]
    for entry in s.dump:
        result.extend(entry.stack)
        result.extend(payload for _, payload in entry.env)
    return result

def value_codes(s):
    return []

def card(s):
    return term_size(s.code)

def env_size(s):
    return len(s.env)

def dump_size(s):
    return len(s.dump)

def lookup_depth(s):
    if isinstance(s.code, Var):
        return lookup_global(s.env, s.code.name)[0]
    return None

def _render_entry(entry):
    return '({}, {}, {})'.format(render_env(entry.env), entry.name, render_list(entry.stack, render))

def render_state(s):
    return '<{} | {} | {} | {}>'.format(render(s.code), render_list(s.stack, render),
                                        render_list(s.dump, _render_entry), render_env(s.env))

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
