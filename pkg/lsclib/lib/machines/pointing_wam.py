"""
Pointing WAM: the WAM where a dump entry does not carry the environment
prefix anymore. The substitution of a variable under evaluation stays in
place, dumped as [x<-☐], and the dump keeps only (x, π).

    t u | π | D | E                               →c1   t | u::π | D | E
    λx.t | u::π | ε | E                           →m1   t | π | ε | [x<-u]::E
    λx.t | u::π | (y, π')::D | E1::[y<-☐]::E2     →m2   t | π | (y, π')::D | E1::[y<-☐]::[x<-u]::E2
    x | π | D | E1::[x<-t]::E2                    →c2   t | ε | (x, π)::D | E1::[x<-☐]::E2
    v | ε | (x, π)::D | E1::[x<-☐]::E2            →e    v^α | π | D | E1::[x<-v]::E2

Environments are tuples with the innermost entry first, so the outermost ☐
entry is the one of the newest dump entry.
"""

import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import exceptions
from lsclib.lib.syntax import Var, Abs, App, ESub, BOX, GlobalClosure, render, term_size
from lsclib.lib.calculus import Strategy
from lsclib.lib.machines.common import (MachineId, TransitionLabel, lookup_global, plug_arguments,
                                        rename_copy, render_env, render_list)

ID = MachineId.PointingWAM
STRATEGY = Strategy.Need
LABELS = (TransitionLabel.C1, TransitionLabel.C2, TransitionLabel.M1, TransitionLabel.M2, TransitionLabel.E)
GLOBAL = True

State = collections.namedtuple('PointingWamState', ['code', 'stack', 'dump', 'env', 'counter', 'initial'])
DumpEntry = collections.namedtuple('DumpEntry', ['name', 'stack'])


def inject(t, counter):
    return State(t, (), (), (), counter, t)

def is_final(s):
    return isinstance(s.code, Abs) and not s.stack and not s.dump


######################################
# Duality and slices

def dumped_names(env):
    """Names of the ☐ entries, outermost first."""
    return [name for name, payload in reversed(env) if payload is BOX]

def duality_check(env, dump):
    """E ⊥ D: read from the outermost end, the ☐ entries of E are the dump entries in order."""
    return dumped_names(env) == [entry.name for entry in dump]

def _box_index(env, name):
    for index, (entry, payload) in enumerate(env):
        if entry == name and payload is BOX:
            return index
    raise exceptions.DualityViolation('no dumped substitution on {}'.format(name))

def env_slice(env):
    """E↾: the entries outside the outermost ☐ entry."""
    for index in range(len(env) - 1, -1, -1):
        if env[index][1] is BOX:
            return env[index + 1:]
    return env

def env_slice_at(env, name):
    """E↾x: the slice of the part of E inside [x<-☐], followed by [x<-☐] and everything outside it."""
    index = _box_index(env, name)
    return env_slice(env[:index]) + env[index:]


######################################
# Transitions

def step(s):
    code = s.code
    if isinstance(code, App):
        return TransitionLabel.C1, s._replace(code=code.fun, stack=(code.arg,) + s.stack)
    elif isinstance(code, Var):
        index, definition = lookup_global(s.env, code.name)
        if definition is BOX:
            raise exceptions.MalformedStateError('lookup of dumped variable {}'.format(code.name))
        env = s.env[:index] + ((code.name, BOX),) + s.env[index + 1:]
        return TransitionLabel.C2, s._replace(code=definition, stack=(), dump=(DumpEntry(code.name, s.stack),) + s.dump,
                                              env=env)
    elif not isinstance(code, Abs):
        raise exceptions.MalformedStateError('not a pure code: {}'.format(render(code)))

    if s.stack:
        entry = (code.name, s.stack[0])
        if not s.dump:
            return TransitionLabel.M1, s._replace(code=code.body, stack=s.stack[1:], env=(entry,) + s.env)
        index = _box_index(s.env, s.dump[0].name)
        env = s.env[:index + 1] + (entry,) + s.env[index + 1:]
        return TransitionLabel.M2, s._replace(code=code.body, stack=s.stack[1:], env=env)
    if not s.dump:
        return None
    top = s.dump[0]
    index = _box_index(s.env, top.name)
    copy, counter = rename_copy(code, s.counter)
    env = s.env[:index] + ((top.name, code),) + s.env[index + 1:]
    return TransitionLabel.E, s._replace(code=copy, stack=top.stack, dump=s.dump[1:], env=env, counter=counter)


######################################
# Decoding

def _decode_pair(env, dump, t):
    """⟦E, D⟧⟨t⟩, read from the outermost entry of E inwards."""
    if not env:
        if dump:
            raise exceptions.DualityViolation('dump entry {} has no dumped substitution'.format(dump[0].name))
        return t
    name, payload = env[-1]
    if payload is not BOX:
        return ESub(_decode_pair(env[:-1], dump, t), name, payload)
    if not dump or dump[0].name != name:
        raise exceptions.DualityViolation('dumped substitution on {} does not match the dump'.format(name))
    inner = _decode_pair(env[:-1], dump[1:], plug_arguments(dump[0].stack, Var(name)))
    return ESub(inner, name, t)

def decode(s, code=None):
    if not duality_check(s.env, s.dump):
        raise exceptions.DualityViolation('environment and dump are not dual')
    return _decode_pair(s.env, s.dump, plug_arguments(s.stack, s.code if code is None else code))

def closures(s):
    result = [GlobalClosure(plug_arguments(s.stack, s.code), env_slice(s.env))]
    for entry in s.dump:
        result.append(GlobalClosure(plug_arguments(entry.stack, Var(entry.name)), env_slice_at(s.env, entry.name)))
    return result

def codes(s):
    result = [s.code] + list(s.stack) + [payload for _, payload in s.env if payload is not BOX]
    for entry in s.dump:
        result.extend(entry.stack)
    return result

def value_codes(s):
    return []

def card(s):
    return term_size(s.code)

def env_size(s):
    return sum(1 for _, payload in s.env if payload is not BOX)

def dump_size(s):
    return len(s.dump)

def lookup_depth(s):
    if isinstance(s.code, Var):
        return lookup_global(s.env, s.code.name)[0]
    return None

def _render_entry(entry):
    return '({}, {})'.format(entry.name, render_list(entry.stack, render))

def render_state(s):
    return '<{} | {} | {} | {}>'.format(render(s.code), render_list(s.stack, render),
                                        render_list(s.dump, _render_entry), render_env(s.env))

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
