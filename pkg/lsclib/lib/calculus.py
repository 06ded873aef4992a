"""
The four deterministic strategies of the linear substitution calculus.

Evaluation contexts are frame paths, outermost frame first:

    AppLeft(arg)         ⟨·⟩ arg
    AppRight(fun)        fun ⟨·⟩
    SubBody(name, arg)   ⟨·⟩[name<-arg]
    SubInside(name, body)  body[name<-⟨·⟩]

Each strategy admits a subset of the frames (name: H, value left-to-right: V,
value right-to-left: S, need: N).
"""

import enum
import logging
logger = logging.getLogger(__name__)
import collections

from lsclib.lib import exceptions
from lsclib.lib.syntax import (Var, Abs, App, ESub, NameSupply, free_vars,
                               rename_binder, render)


class Strategy(enum.Enum):
    Name = 'name'
    ValueLR = 'value-lr'
    ValueRL = 'value-rl'
    Need = 'need'

class StepLabel(enum.Enum):
    Mul = 'm'
    Exp = 'e'


AppLeft = collections.namedtuple('AppLeft', ['arg'])
AppRight = collections.namedtuple('AppRight', ['fun'])
SubBody = collections.namedtuple('SubBody', ['name', 'arg'])
SubInside = collections.namedtuple('SubInside', ['name', 'body'])

EvalContext = collections.namedtuple('EvalContext', ['path', 'strategy'])

DbRedex = collections.namedtuple('DbRedex', ['subst', 'binder', 'body', 'argument'])
LsRedex = collections.namedtuple('LsRedex', ['inner', 'variable', 'payload'])

NeedContextProperties = collections.namedtuple('NeedContextProperties', ['not_answer', 'unique_var_decomp', 'is_need_normal'])

HOLE = Var('<.>')


######################################
# Contexts

def plug(path, t):
    if isinstance(path, EvalContext):
        path = path.path
    for frame in reversed(path):
        if isinstance(frame, AppLeft):
            t = App(t, frame.arg)
        elif isinstance(frame, AppRight):
            t = App(frame.fun, t)
        elif isinstance(frame, SubBody):
            t = ESub(t, frame.name, frame.arg)
        else:
            t = ESub(frame.body, frame.name, t)
    return t

def render_context(path):
    return render(plug(path, HOLE))

def captures(path, name):
    return any(isinstance(frame, SubBody) and frame.name == name for frame in path)

def split_answer(t):
    """(L, v) with t = L⟨v⟩, L innermost first, or None when t is not an answer."""
    subst = []
    while isinstance(t, ESub):
        subst.append((t.name, t.arg))
        t = t.body
    if isinstance(t, Abs):
        return tuple(reversed(subst)), t
    return None

def plug_subst(subst, t):
    for name, arg in subst:
        t = ESub(t, name, arg)
    return t

def is_answer(t):
    while isinstance(t, ESub):
        t = t.body
    return isinstance(t, Abs)

def need_vars(t):
    """Variables x with t = N⟨x⟩ for some need context N not capturing x."""
    if isinstance(t, Var):
        return frozenset((t.name,))
    elif isinstance(t, Abs):
        return frozenset()
    elif isinstance(t, App):
        return need_vars(t.fun)
    inner = need_vars(t.body)
    result = inner - {t.name}
    if t.name in inner:
        result = result | need_vars(t.arg)
    return result

def frame_admissible(frame, strategy):
    if isinstance(frame, SubBody):
        return True
    if strategy is Strategy.Name:
        return isinstance(frame, AppLeft)
    elif strategy is Strategy.ValueLR:
        return isinstance(frame, AppLeft) or (isinstance(frame, AppRight) and is_answer(frame.fun))
    elif strategy is Strategy.ValueRL:
        return isinstance(frame, AppRight) or (isinstance(frame, AppLeft) and is_answer(frame.arg))
    return isinstance(frame, AppLeft) or (isinstance(frame, SubInside) and frame.name in need_vars(frame.body))

def is_admissible(path, strategy):
    return all(frame_admissible(frame, strategy) for frame in path)

def eval_positions(t, strategy, path=()):
    """Every (path, subterm) with t = path⟨subterm⟩ and path an evaluation context of `strategy`."""
    yield path, t
    if isinstance(t, App):
        for frame, sub in ((AppLeft(t.arg), t.fun), (AppRight(t.fun), t.arg)):
            if frame_admissible(frame, strategy):
                yield from eval_positions(sub, strategy, path + (frame,))
    elif isinstance(t, ESub):
        yield from eval_positions(t.body, strategy, path + (SubBody(t.name, t.arg),))
        frame = SubInside(t.name, t.body)
        if strategy is Strategy.Need and frame_admissible(frame, strategy):
            yield from eval_positions(t.arg, strategy, path + (frame,))


######################################
# Redexes

def _multiplicative(t, strategy):
    if not isinstance(t, App):
        return None
    split = split_answer(t.fun)
    if split is None:
        return None
    if strategy in (Strategy.ValueLR, Strategy.ValueRL) and not is_answer(t.arg):
        return None
    subst, value = split
    return DbRedex(subst, value.name, value.body, t.arg)

def _exponential(t, strategy):
    if not isinstance(t, ESub):
        return []
    if strategy is not Strategy.Name and not is_answer(t.arg):
        return []
    return [LsRedex(inner, t.name, t.arg)
            for inner, sub in eval_positions(t.body, strategy)
            if isinstance(sub, Var) and sub.name == t.name and not captures(inner, t.name)]

def decompose_all(t, strategy):
    """Every (context, redex) decomposition of `t`; exhaustive, it does not stop at the first."""
    result = []
    for path, sub in eval_positions(t, strategy):
        redex = _multiplicative(sub, strategy)
        if redex is not None:
            result.append((EvalContext(path, strategy), redex))
        for redex in _exponential(sub, strategy):
            result.append((EvalContext(path, strategy), redex))
    return result

def is_normal_form(t, strategy):
    return not decompose_all(t, strategy)


######################################
# Firing

def _freshen_spine(t, names, supply):
    """Rename the substitution binders on the spine of an answer that belong to `names`."""
    if not isinstance(t, ESub):
        return t
    if t.name in names:
        t = rename_binder(t, supply)
    return ESub(_freshen_spine(t.body, names, supply), t.name, t.arg)

def _replace_at(t, inner, u, supply):
    """Put `u` at the end of the path `inner`, renaming binders of the path that would capture fv(u)."""
    if not inner:
        assert isinstance(t, Var)
        return u
    frame, rest = inner[0], inner[1:]
    if isinstance(frame, AppLeft):
        return App(_replace_at(t.fun, rest, u, supply), t.arg)
    elif isinstance(frame, AppRight):
        return App(t.fun, _replace_at(t.arg, rest, u, supply))
    elif isinstance(frame, SubInside):
        return ESub(t.body, t.name, _replace_at(t.arg, rest, u, supply))
    if t.name in free_vars(u):
        t = rename_binder(t, supply)
    return ESub(_replace_at(t.body, rest, u, supply), t.name, t.arg)

def _fire_db(sub, redex, supply):
    function = _freshen_spine(sub.fun, free_vars(redex.argument), supply)
    subst, value = split_answer(function)
    return plug_subst(subst, ESub(value.body, value.name, redex.argument))

def _fire_ls(sub, redex, supply):
    if sub.name in free_vars(sub.arg):
        sub = rename_binder(sub, supply)
    return ESub(_replace_at(sub.body, redex.inner, sub.arg, supply), sub.name, sub.arg)

def _fire_lsv(sub, redex, supply):
    payload = _freshen_spine(sub.arg, free_vars(sub.body) - {sub.name}, supply)
    subst, value = split_answer(payload)
    sub = ESub(sub.body, sub.name, value)
    if sub.name in free_vars(value):
        sub = rename_binder(sub, supply)
    body = _replace_at(sub.body, redex.inner, value, supply)
    return plug_subst(subst, ESub(body, sub.name, value))

def fire(t, context, redex, supply=None):
    if supply is None:
        supply = NameSupply.past(t)
    path = context.path

    def go(t, depth):
        if depth == len(path):
            if isinstance(redex, DbRedex):
                return _fire_db(t, redex, supply)
            elif context.strategy is Strategy.Name:
                return _fire_ls(t, redex, supply)
            return _fire_lsv(t, redex, supply)
        frame = path[depth]
        if isinstance(frame, AppLeft):
            return App(go(t.fun, depth + 1), t.arg)
        elif isinstance(frame, AppRight):
            return App(t.fun, go(t.arg, depth + 1))
        elif isinstance(frame, SubBody):
            return ESub(go(t.body, depth + 1), t.name, t.arg)
        return ESub(t.body, t.name, go(t.arg, depth + 1))

    label = StepLabel.Mul if isinstance(redex, DbRedex) else StepLabel.Exp
    return label, go(t, 0)

def step_calculus(t, strategy, supply=None):
    """One step of `strategy` on `t`: (label, reduct), or None on a normal form."""
    decompositions = decompose_all(t, strategy)
    if not decompositions:
        return None
    if len(decompositions) > 1:
        raise exceptions.DeterminismError('{} decompositions of {} under {}'.format(len(decompositions), render(t), strategy.value))
    context, redex = decompositions[0]
    return fire(t, context, redex, supply=supply)

def evaluate(t, strategy, steps):
    """Up to `steps` steps from `t`: the list of (label, term) pairs."""
    derivation = []
    for _ in range(steps):
        result = step_calculus(t, strategy)
        if result is None:
            break
        derivation.append(result)
        t = result[1]
    return derivation


######################################
# Executable lemmas

def need_context_properties(context, x):
    path = context.path if isinstance(context, EvalContext) else tuple(context)
    if not is_admissible(path, Strategy.Need):
        raise exceptions.PreconditionError('not a call-by-need evaluation context: {}'.format(render_context(path)))
    if captures(path, x):
        raise exceptions.PreconditionError('context captures {}'.format(x))

    t = plug(path, Var(x))
    not_answer = split_answer(t) is None
    unique = all(inner == path and sub.name == x
                 for inner, sub in eval_positions(t, Strategy.Need)
                 if isinstance(sub, Var) and not captures(inner, sub.name))
    return NeedContextProperties(not_answer, unique, is_normal_form(t, Strategy.Need))

def cbv_candidate_count(t, strategy):
    if strategy not in (Strategy.ValueLR, Strategy.ValueRL):
        raise exceptions.PreconditionError('not a call-by-value strategy: {}'.format(strategy.value))
    count = 0
    for _, sub in eval_positions(t, strategy):
        if isinstance(sub, Var):
            count += 1
        elif isinstance(sub, App) and is_answer(sub.fun) and is_answer(sub.arg):
            count += 1
    return count

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
