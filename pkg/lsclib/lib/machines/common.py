import enum
import collections
import logging
logger = logging.getLogger(__name__)

from cachetools import LRUCache, cached

from lsclib.lib import exceptions
from lsclib.lib.syntax import (App, ESub, Closure, BOX,
                               NameSupply, free_vars, fresh_rename, render)


class MachineId(enum.Enum):
    KAM = 'kam'
    CEK = 'cek'
    LAM = 'lam'
    MAM = 'mam'
    SplitCEK = 'split-cek'
    WAM = 'wam'
    MergedWAM = 'merged-wam'
    PointingWAM = 'pointing-wam'

class TransitionLabel(enum.Enum):
    C1 = 'c1'
    C2 = 'c2'
    M = 'm'
    M1 = 'm1'
    M2 = 'm2'
    E = 'e'

COMMUTATIVE = frozenset((TransitionLabel.C1, TransitionLabel.C2))
MULTIPLICATIVE = frozenset((TransitionLabel.M, TransitionLabel.M1, TransitionLabel.M2))
EXPONENTIAL = frozenset((TransitionLabel.E,))

def is_commutative(label):
    return label in COMMUTATIVE


######################################
# Local environments: tuples of (name, Closure), innermost first

@cached(cache=LRUCache(maxsize=65536))
def decode_closure(closure):
    return decode_local(closure.env, closure.code)

def decode_local(env, t):
    for name, closure in env:
        t = ESub(t, name, decode_closure(closure))
    return t

def lookup_local(env, name):
    for index, (entry, closure) in enumerate(env):
        if entry == name:
            return index, closure
    raise exceptions.MalformedStateError('unbound variable {}'.format(name))

def closure_closed(closure):
    names = set(name for name, _ in closure.env)
    if not free_vars(closure.code) <= names:
        return False
    return all(closure_closed(c) for _, c in closure.env)

def local_closures(closure):
    """The closure and, recursively, every closure in its environment."""
    result = [closure]
    for _, c in closure.env:
        result.extend(local_closures(c))
    return result


# Call-by-value stack entries: f(c) waits with a function, a(c) with an argument
FunFrame = collections.namedtuple('FunFrame', ['closure'])
ArgFrame = collections.namedtuple('ArgFrame', ['closure'])

def decode_frames(stack, t):
    for entry in stack:
        if isinstance(entry, FunFrame):
            t = App(decode_closure(entry.closure), t)
        else:
            t = App(t, decode_closure(entry.closure))
    return t

def render_frame(entry):
    tag = 'f' if isinstance(entry, FunFrame) else 'a'
    return '{}{}'.format(tag, render_closure(entry.closure))


######################################
# Global environments: tuples of (name, payload), innermost first, payload a code or BOX

def decode_global(env, t):
    for name, payload in env:
        if payload is BOX:
            raise exceptions.DualityViolation('dumped substitution on {} outside of a dual pair'.format(name))
        t = ESub(t, name, payload)
    return t

def lookup_global(env, name):
    for index, (entry, payload) in enumerate(env):
        if entry == name:
            return index, payload
    raise exceptions.MalformedStateError('unbound variable {}'.format(name))

def global_closed(closure):
    """fv(code) is captured by the environment and each payload is closed by the entries outside it."""
    env = closure.env
    if not free_vars(closure.code) <= set(name for name, _ in env):
        return False
    for index, (_, payload) in enumerate(env):
        if payload is not BOX:
            outer = set(name for name, _ in env[index + 1:])
            if not free_vars(payload) <= outer:
                return False
    return True

def rename_copy(t, counter):
    """t^α with freshly minted binders: (copy, next counter)."""
    supply = NameSupply(counter)
    return fresh_rename(t, supply=supply), supply.counter


######################################
# Stacks of codes, head innermost

def plug_arguments(stack, t):
    for u in stack:
        t = App(t, u)
    return t

def render_env(env):
    entries = []
    for name, payload in env:
        if isinstance(payload, Closure):
            entries.append('[{}<-{}]'.format(name, render_closure(payload)))
        elif payload is BOX:
            entries.append('[{}<-☐]'.format(name))
        else:
            entries.append('[{}<-{}]'.format(name, render(payload)))
    return ''.join(entries) or 'ε'

def render_closure(closure):
    return '({}, {})'.format(render(closure.code), render_env(closure.env))

def render_list(items, render_item):
    return '::'.join(render_item(item) for item in items) + '::ε' if items else 'ε'

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
