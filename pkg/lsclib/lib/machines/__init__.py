# One module per machine, each identified by its `ID`.
#
#   kam           call-by-name, local environments
#   cek           left-to-right call-by-value, local environments
#   lam           right-to-left call-by-value, local environments
#   mam           call-by-name, global environment
#   split_cek     left-to-right call-by-value, stack split into stack and dump
#   wam           call-by-need, global environment and dump
#   merged_wam    call-by-need, dump merged into the stack
#   pointing_wam  call-by-need, dumped substitutions left in place
#
# Every module exposes the same names: ID, STRATEGY, LABELS, GLOBAL, State,
# inject, step, is_final, decode, closures, codes, value_codes, card,
# env_size, dump_size, lookup_depth, render_state.

import logging
logger = logging.getLogger(__name__)

from lsclib.lib import exceptions
from lsclib.lib.syntax import NameSupply, free_vars, is_pure, is_well_named, fresh_rename, render
from lsclib.lib.machines.common import MachineId, TransitionLabel, COMMUTATIVE, MULTIPLICATIVE, EXPONENTIAL
from lsclib.lib.machines import (kam, cek, lam, mam, split_cek, wam, merged_wam, pointing_wam)

MODULES = {module.ID: module for module in (kam, cek, lam, mam, split_cek, wam, merged_wam, pointing_wam)}
_BY_STATE = {module.State: module for module in MODULES.values()}


def machine_id(value):
    if isinstance(value, MachineId):
        return value
    try:
        return MachineId(value)
    except ValueError:
        raise exceptions.UsageError('unknown machine {!r}, expected one of: {}'.format(
            value, ', '.join(m.value for m in MachineId)))

def get_module(value):
    """The machine module for a machine id, an id string, or a state of that machine."""
    module = _BY_STATE.get(type(value))
    if module is not None:
        return module
    return MODULES[machine_id(value)]

def state_machine(s):
    return get_module(s).ID

def inject(m, t):
    if not is_pure(t):
        raise exceptions.TermError('machine codes are pure terms: {}'.format(render(t)))
    free = free_vars(t)
    if free:
        raise exceptions.OpenTermError('open term, free variables: {}'.format(', '.join(sorted(free))), free=free)
    if not is_well_named(t):
        t = fresh_rename(t)
    return get_module(m).inject(t, NameSupply.past(t).counter)

def step_machine(s):
    """One transition: (label, state), or None when `s` is final."""
    module = get_module(s)
    result = module.step(s)
    if result is None:
        if not module.is_final(s):
            raise exceptions.MalformedStateError('no transition applies to {}'.format(module.render_state(s)))
        return None
    return result

def decode_state(s, code=None):
    return get_module(s).decode(s, code=code)

def is_final_state(s):
    return get_module(s).is_final(s)

def render_state(s):
    return get_module(s).render_state(s)

def duality_check(env, dump):
    return pointing_wam.duality_check(env, dump)

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
