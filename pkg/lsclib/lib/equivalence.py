"""
Structural equivalence.

Axioms, oriented left to right (forward):

    gc    t[x<-u]          -> t                   x not in fv(t)
    dup   t[x<-u]          -> t{some x := y}[x<-u][y<-u]
    at    (t w)[x<-u]      -> t[x<-u] w[x<-u]
    com   t[x<-u][y<-w]    -> t[y<-w][x<-u]       y not in fv(u), x not in fv(w)
    box   t[x<-u][y<-w]    -> t[x<-u[y<-w]]       y not in fv(t)
    atl   (t w)[x<-u]      -> t[x<-u] w           x not in fv(w)

`Full` closes gc, dup, at, com and box under weak contexts, `NeedEq` closes
atl, com and box under weak contexts, `MamEq` closes atl under call-by-name
evaluation contexts. Every theory also has α-renaming of a subterm as an
explicit step.

`Full` is decided by interned keys of normal forms computed with sharing; its
witness path rewrites both sides only where they differ. `MamEq` is decided
by comparing normal forms. `NeedEq` falls back to a bounded search between
normal forms that the unfolding does not tell apart. Verdicts are cached up
to α-renaming of both sides.

Positions are tuples over 'L' (function), 'R' (argument), 'B' (substitution
body) and 'S' (substitution payload).
"""

import enum
import logging
logger = logging.getLogger(__name__)
import collections
import itertools
import threading

from cachetools import cached, LRUCache
from cachetools.keys import hashkey

from lsclib.lib import config, exceptions, log
from lsclib.lib.syntax import (Var, Abs, App, ESub, NameSupply, free_vars,
                               alpha_eq, canonical, term_size, unfold, render,
                               subterms, fresh_rename, substitute)
from lsclib.lib.calculus import plug, captures, HOLE


class AxiomId(enum.Enum):
    ALPHA = 'alpha'
    GC = 'gc'
    DUP = 'dup'
    AT = 'at'
    COM = 'com'
    BOX = 'box'
    ATL = 'atl'

class EqTheory(enum.Enum):
    Full = 'full'
    NeedEq = 'need'
    MamEq = 'mam'

    @property
    def axioms(self):
        return THEORY_AXIOMS[self]

THEORY_AXIOMS = {
    EqTheory.Full: frozenset((AxiomId.ALPHA, AxiomId.GC, AxiomId.DUP, AxiomId.AT, AxiomId.COM, AxiomId.BOX)),
    EqTheory.NeedEq: frozenset((AxiomId.ALPHA, AxiomId.ATL, AxiomId.COM, AxiomId.BOX)),
    EqTheory.MamEq: frozenset((AxiomId.ALPHA, AxiomId.ATL)),
}

FORWARD = 'fwd'
BACKWARD = 'bwd'

AxiomStep = collections.namedtuple('AxiomStep', ['axiom', 'direction', 'position', 'choice', 'argument'])
AxiomStep.__new__.__defaults__ = (None, None)

class VerdictKind(enum.Enum):
    Equivalent = 'equivalent'
    RefutedByUnfolding = 'refuted'
    Inconclusive = 'inconclusive'

EquivVerdict = collections.namedtuple('EquivVerdict', ['kind', 'path', 'expanded'])

def is_equivalent(verdict):
    return verdict.kind is VerdictKind.Equivalent


######################################
# Positions

def subterm_at(t, position):
    for direction in position:
        if direction == 'L':
            t = t.fun
        elif direction == 'R':
            t = t.arg
        elif direction == 'B':
            t = t.body
        else:
            t = t.arg
    return t

def replace_at(t, position, new):
    if not position:
        return new
    direction, rest = position[0], position[1:]
    if direction == 'L':
        return App(replace_at(t.fun, rest, new), t.arg)
    elif direction == 'R':
        return App(t.fun, replace_at(t.arg, rest, new))
    elif direction == 'B':
        return ESub(replace_at(t.body, rest, new), t.name, t.arg)
    return ESub(t.body, t.name, replace_at(t.arg, rest, new))

def positions(t, theory):
    """(position, subterm, names bound above) for every position the theory is closed under, preorder."""
    weak = theory is not EqTheory.MamEq
    result = []
    stack = [((), t, frozenset())]
    while stack:
        position, sub, scope = stack.pop()
        result.append((position, sub, scope))
        if isinstance(sub, App):
            if weak:
                stack.append((position + ('R',), sub.arg, scope))
            stack.append((position + ('L',), sub.fun, scope))
        elif isinstance(sub, ESub):
            if weak:
                stack.append((position + ('S',), sub.arg, scope))
            stack.append((position + ('B',), sub.body, scope | {sub.name}))
    return result


######################################
# Occurrence renaming for dup

def _occurrences(t, names):
    """Free occurrences of any of `names` in `t`, preorder, as a list of names."""
    found = []

    def go(t, bound):
        if isinstance(t, Var):
            if t.name in names and t.name not in bound:
                found.append(t.name)
        elif isinstance(t, Abs):
            go(t.body, bound | {t.name})
        elif isinstance(t, App):
            go(t.fun, bound)
            go(t.arg, bound)
        else:
            go(t.body, bound | {t.name})
            go(t.arg, bound)
    go(t, frozenset())
    return found

def _split_occurrences(t, x, y, chosen):
    """Rename the free occurrences of x whose preorder index is in `chosen` to y."""
    counter = itertools.count()

    def go(t, bound):
        if isinstance(t, Var):
            if t.name == x and x not in bound:
                return Var(y) if next(counter) in chosen else t
            return t
        elif isinstance(t, Abs):
            return Abs(t.name, go(t.body, bound | {t.name}))
        elif isinstance(t, App):
            return App(go(t.fun, bound), go(t.arg, bound))
        return ESub(go(t.body, bound | {t.name}), t.name, go(t.arg, bound))
    return go(t, frozenset())

def _merge_occurrences(t, y, x):
    """Rename the free occurrences of y to x; None if some of them would be captured by a binder of x."""
    captured = []

    def go(t, bound):
        if isinstance(t, Var):
            if t.name == y and y not in bound:
                if x in bound:
                    captured.append(t)
                return Var(x)
            return t
        elif isinstance(t, Abs):
            return Abs(t.name, go(t.body, bound | {t.name}))
        elif isinstance(t, App):
            return App(go(t.fun, bound), go(t.arg, bound))
        return ESub(go(t.body, bound | {t.name}), t.name, go(t.arg, bound))
    result = go(t, frozenset())
    return None if captured else result

def dup_choices(count):
    if count <= config.DUP_SUBSET_LIMIT:
        return [frozenset(c) for size in range(count + 1) for c in itertools.combinations(range(count), size)]
    choices = [frozenset()] + [frozenset((i,)) for i in range(count)] + [frozenset(range(count))]
    return choices


######################################
# Single axiom applications on a subterm; None when the side conditions fail.

def _gc_fwd(s):
    if isinstance(s, ESub) and s.name not in free_vars(s.body):
        return s.body

def _gc_bwd(s, name, payload):
    if name not in free_vars(s):
        return ESub(s, name, payload)

def _dup_fwd(s, choice, name):
    if isinstance(s, ESub):
        body = _split_occurrences(s.body, s.name, name, choice)
        return ESub(ESub(body, s.name, s.arg), name, s.arg)

def _dup_bwd(s):
    if isinstance(s, ESub) and isinstance(s.body, ESub):
        inner = s.body
        if inner.name != s.name and inner.arg == s.arg and s.name not in free_vars(inner.arg):
            body = _merge_occurrences(inner.body, s.name, inner.name)
            if body is not None:
                return ESub(body, inner.name, inner.arg)

def _at_fwd(s):
    if isinstance(s, ESub) and isinstance(s.body, App):
        return App(ESub(s.body.fun, s.name, s.arg), ESub(s.body.arg, s.name, s.arg))

def _at_bwd(s):
    if isinstance(s, App) and isinstance(s.fun, ESub) and isinstance(s.arg, ESub):
        left, right = s.fun, s.arg
        if left.name == right.name and left.arg == right.arg:
            return ESub(App(left.body, right.body), left.name, left.arg)

def _com(s):
    if isinstance(s, ESub) and isinstance(s.body, ESub):
        inner = s.body
        if inner.name != s.name and s.name not in free_vars(inner.arg) and inner.name not in free_vars(s.arg):
            return ESub(ESub(inner.body, s.name, s.arg), inner.name, inner.arg)

def _box_fwd(s):
    if isinstance(s, ESub) and isinstance(s.body, ESub):
        inner = s.body
        if inner.name != s.name and s.name not in free_vars(inner.body):
            return ESub(inner.body, inner.name, ESub(inner.arg, s.name, s.arg))

def _box_bwd(s):
    if isinstance(s, ESub) and isinstance(s.arg, ESub):
        payload = s.arg
        if payload.name != s.name and payload.name not in free_vars(s.body):
            return ESub(ESub(s.body, s.name, payload.body), payload.name, payload.arg)

def _atl_fwd(s):
    if isinstance(s, ESub) and isinstance(s.body, App) and s.name not in free_vars(s.body.arg):
        return App(ESub(s.body.fun, s.name, s.arg), s.body.arg)

def _atl_bwd(s):
    if isinstance(s, App) and isinstance(s.fun, ESub) and s.fun.name not in free_vars(s.arg):
        return ESub(App(s.fun.body, s.arg), s.fun.name, s.fun.arg)

SIMPLE_RULES = {
    (AxiomId.AT, FORWARD): _at_fwd,
    (AxiomId.AT, BACKWARD): _at_bwd,
    (AxiomId.COM, FORWARD): _com,
    (AxiomId.BOX, FORWARD): _box_fwd,
    (AxiomId.BOX, BACKWARD): _box_bwd,
    (AxiomId.ATL, FORWARD): _atl_fwd,
    (AxiomId.ATL, BACKWARD): _atl_bwd,
    (AxiomId.GC, FORWARD): _gc_fwd,
    (AxiomId.DUP, BACKWARD): _dup_bwd,
}

def apply_step(t, step, supply=None):
    """The term obtained by applying `step` to `t`, or None when it does not apply."""
    s = subterm_at(t, step.position)
    if step.axiom is AxiomId.ALPHA:
        return replace_at(t, step.position, step.argument) if alpha_eq(s, step.argument) else None
    if step.axiom is AxiomId.GC and step.direction == BACKWARD:
        name, payload = step.argument
        result = _gc_bwd(s, name, payload)
    elif step.axiom is AxiomId.DUP and step.direction == FORWARD:
        name = step.argument
        if name is None:
            name = (supply or NameSupply.past(t)).fresh(s.name)
        elif name in free_vars(s) or name == s.name:
            return None
        result = _dup_fwd(s, step.choice, name)
    else:
        result = SIMPLE_RULES[(step.axiom, step.direction)](s)
    if result is None:
        return None
    return replace_at(t, step.position, result)

def inverse(step, before):
    """The step undoing `step`, given the term it was applied to."""
    s = subterm_at(before, step.position)
    if step.axiom is AxiomId.ALPHA:
        return AxiomStep(AxiomId.ALPHA, FORWARD, step.position, None, s)
    if step.axiom is AxiomId.COM:
        return step
    if step.axiom is AxiomId.GC:
        if step.direction == FORWARD:
            return AxiomStep(AxiomId.GC, BACKWARD, step.position, None, (s.name, s.arg))
        return AxiomStep(AxiomId.GC, FORWARD, step.position)
    if step.axiom is AxiomId.DUP:
        if step.direction == FORWARD:
            return AxiomStep(AxiomId.DUP, BACKWARD, step.position)
        inner = s.body
        occurrences = _occurrences(inner.body, {inner.name, s.name})
        chosen = frozenset(i for i, name in enumerate(occurrences) if name == s.name)
        return AxiomStep(AxiomId.DUP, FORWARD, step.position, chosen, s.name)
    direction = BACKWARD if step.direction == FORWARD else FORWARD
    return AxiomStep(step.axiom, direction, step.position)

def replay(t, path):
    """Apply every step of `path`; None as soon as one does not apply."""
    supply = NameSupply.past(t)
    for step in path:
        t = apply_step(t, step, supply)
        if t is None:
            return None
    return t


######################################
# Neighbourhood

def axiom_neighbors(t, theory, size_cap):
    """Every one-step axiom application on `t`, both directions, with result size at most `size_cap`."""
    axioms = theory.axioms
    supply = NameSupply.past(t)
    fv = free_vars(t)
    payloads = None
    result = []

    def emit(step, position, new):
        if new is not None:
            candidate = replace_at(t, position, new)
            if term_size(candidate) <= size_cap:
                result.append((step, candidate))

    for position, s, scope in positions(t, theory):
        for (axiom, direction), rule in SIMPLE_RULES.items():
            if axiom in axioms:
                emit(AxiomStep(axiom, direction, position), position, rule(s))

        if AxiomId.DUP in axioms and isinstance(s, ESub):
            name = supply.fresh(s.name)
            count = len(_occurrences(s.body, {s.name}))
            for choice in dup_choices(count):
                emit(AxiomStep(AxiomId.DUP, FORWARD, position, choice, name), position, _dup_fwd(s, choice, name))

        if AxiomId.GC in axioms:
            if payloads is None:
                payloads = []
                seen = set()
                for sub in subterms(t):
                    if sub not in seen:
                        seen.add(sub)
                        payloads.append(sub)
            name = supply.fresh('g')
            for payload in payloads:
                if free_vars(payload) <= fv | scope:
                    emit(AxiomStep(AxiomId.GC, BACKWARD, position, None, (name, payload)), position, _gc_bwd(s, name, payload))
    return result


######################################
# Normal forms

def unshared_size(t, sizes=None):
    """Size of the `Full` normal form of `t` before payloads are merged."""
    sizes = {} if sizes is None else sizes
    if isinstance(t, Var):
        return 2 + sizes[t.name] if t.name in sizes else 1
    elif isinstance(t, Abs):
        return term_size(t) + sum(1 + sizes[name] for name in free_vars(t) if name in sizes)
    elif isinstance(t, App):
        return 1 + unshared_size(t.fun, sizes) + unshared_size(t.arg, sizes)
    return unshared_size(t.body, {**sizes, t.name: unshared_size(t.arg, sizes)})

def _chain(t):
    """Entries of a substitution chain innermost first, and the term under it."""
    entries = []
    while isinstance(t, ESub):
        entries.append((t.name, t.arg))
        t = t.body
    entries.reverse()
    return entries, t

def _entry(entries, index):
    """Position of a chain entry relative to the chain, innermost is index 0."""
    return ('B',) * (len(entries) - 1 - index)

def _copy_into_payload(s, name):
    """
    s = t[y<-w][x<-u] with x free in both t and w: the occurrences of x in w
    get their own substitution, moved into w. Returns (steps relative to s, result).
    """
    body = s.body
    in_rest = len(_occurrences(body.body, {s.name}))
    count = in_rest + len(_occurrences(body.arg, {s.name}))
    choice = frozenset(range(in_rest, count))
    split = _dup_fwd(s, choice, name)
    swapped = _com(split.body)
    boxed = None if swapped is None else _box_fwd(ESub(swapped, name, s.arg))
    if boxed is None:
        return None, None
    steps = [AxiomStep(AxiomId.DUP, FORWARD, (), choice, name),
             AxiomStep(AxiomId.COM, FORWARD, ('B',)),
             AxiomStep(AxiomId.BOX, FORWARD, ())]
    return steps, boxed


class Normalizer(object):
    """
    Rewrites a term into the normal form of a theory, recording every axiom
    step with its position. Terms are expected to be well-named; a rule whose
    side conditions fail leaves its subterm as it is and marks the result `stuck`.

    `Full`: every substitution is pushed into each of its occurrences, so the
    normal form is a tree of applications over free variables, leaves
    `x[x<-N]` and abstractions `λy.t[x1<-N1]..[xk<-Nk]`. The substitutions of
    an abstraction have pairwise distinct payloads and are sorted by the first
    occurrence of their name. Two terms are `Full`-equivalent iff their normal
    forms are α-equivalent.

    `NeedEq`: substitutions move left along applications, into the payloads of
    substitutions that do not use them, and inward past independent ones.

    `MamEq`: substitutions move left along applications, in name contexts.
    """

    def __init__(self, theory, supply):
        self.theory = theory
        self.supply = supply
        self.steps = []
        self.stuck = False

    def rewrite(self, axiom, position, new, choice=None, argument=None):
        if new is None:
            self.stuck = True
        else:
            self.steps.append(AxiomStep(axiom, FORWARD, position, choice, argument))
        return new

    def normalize(self, t, position=()):
        if self.theory is EqTheory.MamEq:
            if isinstance(t, App):
                return App(self.normalize(t.fun, position + ('L',)), t.arg)
            elif isinstance(t, ESub):
                return self.sink_left(ESub(self.normalize(t.body, position + ('B',)), t.name, t.arg), position)
            return t
        if isinstance(t, App):
            return App(self.normalize(t.fun, position + ('L',)), self.normalize(t.arg, position + ('R',)))
        elif isinstance(t, ESub):
            body = self.normalize(t.body, position + ('B',))
            payload = self.normalize(t.arg, position + ('S',))
            s = ESub(body, t.name, payload)
            if self.theory is EqTheory.Full:
                return self.unshare(s, position)
            return self.sink_need(s, position)
        return t

    def sink_left(self, s, position):
        body = s.body
        if isinstance(body, App) and s.name not in free_vars(body.arg):
            new = self.rewrite(AxiomId.ATL, position, _atl_fwd(s))
            return App(self.sink_left(new.fun, position + ('L',)), new.arg)
        return s

    def sink_need(self, s, position):
        body = s.body
        if isinstance(body, App) and s.name not in free_vars(body.arg):
            new = self.rewrite(AxiomId.ATL, position, _atl_fwd(s))
            return App(self.sink_need(new.fun, position + ('L',)), new.arg)
        if isinstance(body, ESub):
            if s.name not in free_vars(body.body):
                new = self.rewrite(AxiomId.BOX, position, _box_fwd(s))
                if new is not None:
                    return ESub(new.body, new.name, self.sink_need(new.arg, position + ('S',)))
            elif s.name not in free_vars(body.arg):
                new = self.rewrite(AxiomId.COM, position, _com(s))
                if new is not None:
                    return ESub(self.sink_need(new.body, position + ('B',)), new.name, new.arg)
        return s

    def unshare(self, s, position):
        """Push s = t[x<-u], with t and u in normal form, into the occurrences of x."""
        body = s.body
        if s.name not in free_vars(body):
            return self.rewrite(AxiomId.GC, position, _gc_fwd(s))
        elif isinstance(body, App):
            new = self.rewrite(AxiomId.AT, position, _at_fwd(s))
            return App(self.unshare(new.fun, position + ('L',)), self.unshare(new.arg, position + ('R',)))
        elif isinstance(body, ESub):
            base = _chain(body)[1]
            if isinstance(base, Var) and isinstance(body.body, Var):
                new = self.rewrite(AxiomId.BOX, position, _box_fwd(s))
                if new is not None:
                    return ESub(new.body, new.name, self.unshare(new.arg, position + ('S',)))
            elif isinstance(base, Abs):
                return self.arrange(self.insert(s, position), position)
        return s

    def insert(self, s, position):
        """Move s = c[x<-u], c a chain over an abstraction, into the chain and the payloads that use x."""
        body = s.body
        if not isinstance(body, ESub):
            return s
        in_rest, in_payload = s.name in free_vars(body.body), s.name in free_vars(body.arg)
        if in_payload and not in_rest:
            new = self.rewrite(AxiomId.BOX, position, _box_fwd(s))
            if new is None:
                return s
            return ESub(new.body, new.name, self.unshare(new.arg, position + ('S',)))
        elif not in_payload:
            new = self.rewrite(AxiomId.COM, position, _com(s))
            if new is None:
                return s
            return ESub(self.insert(new.body, position + ('B',)), new.name, new.arg)

        steps, new = _copy_into_payload(s, self.supply.fresh(s.name))
        if new is None:
            self.stuck = True
            return s
        self.steps.extend(step._replace(position=position + step.position) for step in steps)
        return ESub(self.insert(new.body, position + ('B',)), new.name, self.unshare(new.arg, position + ('S',)))

    def arrange(self, t, position):
        """Merge the substitutions of an abstraction that have α-equivalent payloads, then sort them."""
        entries, base = _chain(t)
        if not isinstance(base, Abs):
            return t

        def swap(index):
            nonlocal t
            where = _entry(entries, index + 1)
            new = self.rewrite(AxiomId.COM, position + where, _com(subterm_at(t, where)))
            if new is None:
                return False
            t = replace_at(t, where, new)
            entries[index], entries[index + 1] = entries[index + 1], entries[index]
            return True

        while True:
            keys = [canonical(payload) for _, payload in entries]
            pairs = [(i, j) for j in range(len(entries)) for i in range(j) if keys[i] == keys[j]]
            if not pairs:
                break
            i, j = pairs[0]
            for index in range(j - 1, i, -1):
                if not swap(index):
                    return t
            where = _entry(entries, i + 1)
            outer = subterm_at(t, where)
            if outer.arg != outer.body.arg:
                self.steps.append(AxiomStep(AxiomId.ALPHA, FORWARD, position + where + ('S',), None, outer.body.arg))
                outer = ESub(outer.body, outer.name, outer.body.arg)
                t = replace_at(t, where, outer)
            new = _dup_bwd(outer)
            if new is None:
                self.stuck = True
                return t
            self.steps.append(AxiomStep(AxiomId.DUP, BACKWARD, position + where))
            t = replace_at(t, where, new)
            entries, base = _chain(t)

        _sort_chain(entries, base, swap)
        return t

def _sort_chain(entries, base, swap):
    """Bubble the entries of a chain into first-occurrence order of their names in `base`."""
    first = {}
    for index, name in enumerate(_occurrences(base, {name for name, _ in entries})):
        first.setdefault(name, index)
    ordered = False
    while not ordered:
        ordered = True
        for index in range(len(entries) - 1):
            if first.get(entries[index][0], -1) > first.get(entries[index + 1][0], -1):
                if not swap(index):
                    return False
                ordered = False
    return True

def _normal_form(t, theory, supply=None):
    normalizer = Normalizer(theory, supply or NameSupply.past(t))
    return normalizer.normalize(t), normalizer.steps, normalizer.stuck

def normalize(t, theory):
    """The normal form of `t` in `theory` and the steps that reach it."""
    return _normal_form(t, theory)[:2]


######################################
# Full normal forms, kept shared

class SharedKeys(object):
    """
    Interned keys of `Full` normal forms, computed without unsharing: two
    terms get the same key iff their normal forms are α-equivalent. `env`
    maps the names of enclosing substitutions to the key of their payload.
    Memo tables are keyed by object identity, so one instance serves one decision.
    """

    def __init__(self):
        self.interned = {}
        self.memo = {}
        self.free_memo = {}
        self.markers = itertools.count()

    def intern(self, node):
        return self.interned.setdefault(node, len(self.interned))

    def opaque(self):
        """A key equal to no payload: a substitution kept shared on both sides."""
        return self.intern(('opaque', next(self.markers)))

    def free(self, t):
        entry = self.free_memo.get(id(t))
        if entry is not None and entry[0] is t:
            return entry[1]
        if isinstance(t, Var):
            names = frozenset((t.name,))
        elif isinstance(t, Abs):
            names = self.free(t.body) - {t.name}
        elif isinstance(t, App):
            names = self.free(t.fun) | self.free(t.arg)
        else:
            names = (self.free(t.body) - {t.name}) | self.free(t.arg)
        self.free_memo[id(t)] = (t, names)
        return names

    def key(self, t, env):
        scope = tuple(sorted((name, env[name]) for name in self.free(t) if name in env))
        entry = self.memo.get((id(t), scope))
        if entry is not None and entry[0] is t:
            return entry[1]
        if isinstance(t, Var):
            key = self.intern(('leaf', env[t.name]) if t.name in env else ('var', t.name))
        elif isinstance(t, App):
            key = self.intern(('app', self.key(t.fun, env), self.key(t.arg, env)))
        elif isinstance(t, ESub):
            if t.name in self.free(t.body):
                key = self.key(t.body, {**env, t.name: self.key(t.arg, env)})
            else:
                key = self.key(t.body, env)
        else:
            key = self.abstraction_key(t, env)
        self.memo[(id(t), scope)] = (t, key)
        return key

    def abstraction_key(self, t, env):
        names = {name for name in self.free(t) if name in env}
        classes = []
        for name in _occurrences(t, names):
            if env[name] not in classes:
                classes.append(env[name])
        supply = NameSupply.past(t)
        for name in names:
            t = substitute(t, name, Var('#{}'.format(classes.index(env[name]))), supply)
        return self.intern(('abs', canonical(t), tuple(classes)))


class Alignment(object):
    """
    Two `Full`-equivalent terms rewritten into a common α-variant. Substitutions
    found at matching places with matching payloads stay shared; the others
    are pushed one level down, and only where the two sides differ. Every
    position is absolute; `left` and `right` collect the steps of each side.
    """

    def __init__(self, keys, supply):
        self.keys = keys
        self.supply = supply

    def record(self, steps, axiom, position, new):
        if new is not None:
            steps.append(AxiomStep(axiom, FORWARD, position))
        return new

    def head(self, t, position, steps):
        """An application, a variable, an abstraction, a leaf y[y<-N] or a chain over an abstraction."""
        if not isinstance(t, ESub):
            return t
        body = self.head(t.body, position + ('B',), steps)
        if body is None:
            return None
        s = ESub(body, t.name, t.arg)
        if s.name not in self.keys.free(body):
            return self.record(steps, AxiomId.GC, position, _gc_fwd(s))
        elif isinstance(body, App):
            return self.record(steps, AxiomId.AT, position, _at_fwd(s))
        elif isinstance(body, (Var, Abs)):
            return s
        elif isinstance(body.body, Var):
            return self.record(steps, AxiomId.BOX, position, _box_fwd(s))
        elif isinstance(_chain(body)[1], Abs):
            return self.insert(s, position, steps)
        return None

    def insert(self, s, position, steps):
        body = s.body
        if not isinstance(body, ESub):
            return s
        in_rest, in_payload = s.name in self.keys.free(body.body), s.name in self.keys.free(body.arg)
        if in_payload and not in_rest:
            return self.record(steps, AxiomId.BOX, position, _box_fwd(s))
        elif not in_payload:
            new = self.record(steps, AxiomId.COM, position, _com(s))
            inner = None if new is None else self.insert(new.body, position + ('B',), steps)
            return None if inner is None else ESub(inner, new.name, new.arg)
        copy_steps, new = _copy_into_payload(s, self.supply.fresh(s.name))
        if new is None:
            return None
        steps.extend(step._replace(position=position + step.position) for step in copy_steps)
        inner = self.insert(new.body, position + ('B',), steps)
        return None if inner is None else ESub(inner, new.name, new.arg)

    def meet(self, t, u, t_at, u_at, env, left, right):
        """(t', u') α-equivalent, or None."""
        if alpha_eq(t, u):
            return t, u
        shared = self.shared(t, u, t_at, u_at, env, left, right)
        if shared is not None:
            return shared
        t, u = self.head(t, t_at, left), self.head(u, u_at, right)
        if t is None or u is None:
            return None
        if alpha_eq(t, u):
            return t, u
        if isinstance(t, App) and isinstance(u, App):
            fun = self.meet(t.fun, u.fun, t_at + ('L',), u_at + ('L',), env, left, right)
            arg = None if fun is None else self.meet(t.arg, u.arg, t_at + ('R',), u_at + ('R',), env, left, right)
            return None if arg is None else (App(fun[0], arg[0]), App(fun[1], arg[1]))
        if isinstance(t, ESub) and isinstance(u, ESub):
            if isinstance(t.body, Var) and isinstance(u.body, Var):
                return self.shared(t, u, t_at, u_at, env, left, right)
            return self.chains(t, u, t_at, u_at, env, left, right)
        return None

    def shared(self, t, u, t_at, u_at, env, left, right):
        if not (isinstance(t, ESub) and isinstance(u, ESub)):
            return None
        keys = self.keys
        if keys.key(t.arg, env) != keys.key(u.arg, env):
            return None
        marker = keys.opaque()
        inner = {**env, t.name: marker}
        if keys.key(t.body, inner) != keys.key(u.body, {**env, u.name: marker}):
            return None

        marks = len(left), len(right)
        if u.name != t.name:
            u = ESub(substitute(u.body, u.name, Var(t.name), self.supply), t.name, u.arg)
            right.append(AxiomStep(AxiomId.ALPHA, FORWARD, u_at, None, u))
        payloads = self.meet(t.arg, u.arg, t_at + ('S',), u_at + ('S',), env, left, right)
        bodies = None if payloads is None else self.meet(t.body, u.body, t_at + ('B',), u_at + ('B',), inner, left, right)
        if bodies is None:
            del left[marks[0]:]
            del right[marks[1]:]
            return None
        return ESub(bodies[0], t.name, payloads[0]), ESub(bodies[1], t.name, payloads[1])

    def chains(self, t, u, t_at, u_at, env, left, right):
        t, u = self.arrange(t, t_at, env, left), self.arrange(u, u_at, env, right)
        if t is None or u is None:
            return None
        t_entries, u_entries = _chain(t)[0], _chain(u)[0]
        if len(t_entries) != len(u_entries):
            return None
        renamed = _chain(u)[1]
        for (name, _), (target, _) in zip(u_entries, t_entries):
            renamed = substitute(renamed, name, Var(target), self.supply)
        for (target, _), (_, payload) in zip(t_entries, u_entries):
            renamed = ESub(renamed, target, payload)
        if renamed != u:
            right.append(AxiomStep(AxiomId.ALPHA, FORWARD, u_at, None, renamed))
            u = renamed
        for index in range(len(t_entries)):
            where = _entry(t_entries, index) + ('S',)
            met = self.meet(subterm_at(t, where), subterm_at(u, where), t_at + where, u_at + where, env, left, right)
            if met is None:
                return None
            t, u = replace_at(t, where, met[0]), replace_at(u, where, met[1])
        return t, u

    def arrange(self, t, position, env, steps):
        """Merge the substitutions of a chain whose payloads have the same key, then sort them."""
        entries, base = _chain(t)

        def swap(index):
            nonlocal t
            where = _entry(entries, index + 1)
            new = self.record(steps, AxiomId.COM, position + where, _com(subterm_at(t, where)))
            if new is None:
                return False
            t = replace_at(t, where, new)
            entries[index], entries[index + 1] = entries[index + 1], entries[index]
            return True

        while True:
            keys = [self.keys.key(payload, env) for _, payload in entries]
            pairs = [(i, j) for j in range(len(entries)) for i in range(j) if keys[i] == keys[j]]
            if not pairs:
                break
            i, j = pairs[0]
            for index in range(j - 1, i, -1):
                if not swap(index):
                    return None
            inner, outer = _entry(entries, i) + ('S',), _entry(entries, i + 1) + ('S',)
            met = self.meet(subterm_at(t, inner), subterm_at(t, outer), position + inner, position + outer, env, steps, steps)
            if met is None:
                return None
            t = replace_at(replace_at(t, inner, met[0]), outer, met[1])
            if met[1] != met[0]:
                steps.append(AxiomStep(AxiomId.ALPHA, FORWARD, position + outer, None, met[0]))
                t = replace_at(t, outer, met[0])
            where = _entry(entries, i + 1)
            new = _dup_bwd(subterm_at(t, where))
            if new is None:
                return None
            steps.append(AxiomStep(AxiomId.DUP, BACKWARD, position + where))
            t = replace_at(t, where, new)
            entries, base = _chain(t)

        return t if _sort_chain(entries, base, swap) else None


######################################
# Decision procedure

VERDICT_CACHE = LRUCache(maxsize=8192)

def unfolding_refutes(t, u):
    return not alpha_eq(unfold(t), unfold(u))

def _join(left_steps, meeting_left, meeting_right, right_chain):
    """Path t -> meeting_left, α to meeting_right, then back along the right chain to its origin."""
    path = list(left_steps)
    if meeting_left != meeting_right:
        path.append(AxiomStep(AxiomId.ALPHA, FORWARD, (), None, meeting_right))
    for step, before in reversed(right_chain):
        path.append(inverse(step, before))
    return path

def _walk(t, steps):
    """(step, term it applies to) along `steps`, or None when one does not apply."""
    chain = []
    for step in steps:
        chain.append((step, t))
        t = apply_step(t, step)
        if t is None:
            return None
    return chain

def _renaming(t, renamed):
    return [] if renamed == t else [AxiomStep(AxiomId.ALPHA, FORWARD, (), None, renamed)]

def _search(t, u, theory, budget, size_cap):
    # Each side maps canonical key -> (term, parent key, step from parent)
    sides = [{canonical(t): (t, None, None)}, {canonical(u): (u, None, None)}]
    frontiers = [collections.deque([canonical(t)]), collections.deque([canonical(u)])]
    expanded = 0

    def chain_to(side, key):
        chain = []
        term, parent, step = sides[side][key]
        while parent is not None:
            before = sides[side][parent][0]
            chain.append((step, before))
            key = parent
            term, parent, step = sides[side][key]
        chain.reverse()
        return chain

    while expanded < budget and (frontiers[0] or frontiers[1]):
        side = 0 if (len(frontiers[0]) <= len(frontiers[1]) and frontiers[0]) or not frontiers[1] else 1
        key = frontiers[side].popleft()
        term = sides[side][key][0]
        expanded += 1
        for step, neighbor in axiom_neighbors(term, theory, size_cap):
            neighbor_key = canonical(neighbor)
            if neighbor_key in sides[side]:
                continue
            sides[side][neighbor_key] = (neighbor, key, step)
            if neighbor_key in sides[1 - side]:
                left_chain, right_chain = chain_to(0, neighbor_key), chain_to(1, neighbor_key)
                return left_chain, sides[0][neighbor_key][0], sides[1][neighbor_key][0], right_chain, expanded
            frontiers[side].append(neighbor_key)
    return None, None, None, None, expanded

def _verdict_key(t, u, theory, budget):
    return hashkey(canonical(t), canonical(u), theory, budget,
                   config.EQUIV_SIZE_SLACK, config.NORMALIZE_SIZE_LIMIT, config.DUP_SUBSET_LIMIT)

@cached(cache=VERDICT_CACHE, key=_verdict_key, lock=threading.RLock())
def _decide(t, u, theory, budget):
    return t, u, _struct_equiv(t, u, theory, budget)

def _rebase(verdict, t, u, origin_t, origin_u):
    """A verdict computed for α-variants of t and u, with its path starting at t and ending at u."""
    if verdict.path is None or (t == origin_t and u == origin_u):
        return verdict
    return verdict._replace(path=_renaming(t, origin_t) + list(verdict.path) + _renaming(origin_u, u))

def struct_equiv(t, u, theory, budget=None):
    """Bounded, sound decision of t ≡ u in `theory`."""
    if budget is None:
        budget = config.BUDGET
    verdict = _up_to_alpha(t, u)
    if verdict is None:
        origin_t, origin_u, verdict = _decide(t, u, theory, budget)
        verdict = _rebase(verdict, t, u, origin_t, origin_u)
    if log.logger.isEnabledFor(logging.DEBUG):
        log.event('equiv', {'left': render(t), 'right': render(u), 'theory': theory.value,
                            'verdict': verdict.kind.value, 'expanded': verdict.expanded})
    return verdict

def _up_to_alpha(t, u):
    if t == u:
        return EquivVerdict(VerdictKind.Equivalent, [], 0)
    if alpha_eq(t, u):
        return EquivVerdict(VerdictKind.Equivalent, [AxiomStep(AxiomId.ALPHA, FORWARD, (), None, u)], 0)
    return None

def _struct_equiv(t, u, theory, budget):
    # binders renamed apart, on both sides together, so that no side condition fails on a name clash
    supply = NameSupply.past(t, u)
    t_fresh, u_fresh = fresh_rename(t, supply=supply), fresh_rename(u, supply=supply)
    if theory is EqTheory.Full:
        return _full_equiv(t, u, t_fresh, u_fresh, supply)

    t_normal, t_steps, t_stuck = _normal_form(t_fresh, theory, supply)
    u_normal, u_steps, u_stuck = _normal_form(u_fresh, theory, supply)
    t_steps = _renaming(t, t_fresh) + t_steps
    u_steps = _renaming(u, u_fresh) + u_steps
    if alpha_eq(t_normal, u_normal):
        return EquivVerdict(VerdictKind.Equivalent, _join(t_steps, t_normal, u_normal, _walk(u, u_steps)), 0)
    # left-moving normal forms are unique
    decided = theory is EqTheory.MamEq and not (t_stuck or u_stuck)
    if decided or unfolding_refutes(t, u):
        return EquivVerdict(VerdictKind.RefutedByUnfolding, None, 0)

    size_cap = max(term_size(t), term_size(u)) + config.EQUIV_SIZE_SLACK
    size_cap = max(size_cap, term_size(t_normal), term_size(u_normal))
    left, meeting_left, meeting_right, right, expanded = _search(t_normal, u_normal, theory, budget, size_cap)
    if left is None:
        return EquivVerdict(VerdictKind.Inconclusive, None, expanded)
    path = _join(t_steps + [step for step, _ in left], meeting_left, meeting_right, _walk(u, u_steps) + right)
    return EquivVerdict(VerdictKind.Equivalent, path, expanded)

def _full_equiv(t, u, t_fresh, u_fresh, supply):
    keys = SharedKeys()
    if keys.key(t_fresh, {}) != keys.key(u_fresh, {}):
        return EquivVerdict(VerdictKind.RefutedByUnfolding, None, 0)

    left, right = _renaming(t, t_fresh), _renaming(u, u_fresh)
    met = Alignment(keys, supply).meet(t_fresh, u_fresh, (), (), {}, left, right)
    if met is not None:
        t_end, u_end = replay(t, left), replay(u, right)
        if t_end is not None and u_end is not None and alpha_eq(t_end, u_end):
            return EquivVerdict(VerdictKind.Equivalent, _join(left, t_end, u_end, _walk(u, right)), 0)
    logger.warning('alignment failed on {} and {}, unsharing both'.format(render(t), render(u)))

    if max(unshared_size(t), unshared_size(u)) > config.NORMALIZE_SIZE_LIMIT:
        return EquivVerdict(VerdictKind.Inconclusive, None, 0)
    t_normal, t_steps, _ = _normal_form(t_fresh, EqTheory.Full, supply)
    u_normal, u_steps, _ = _normal_form(u_fresh, EqTheory.Full, supply)
    if not alpha_eq(t_normal, u_normal):
        return EquivVerdict(VerdictKind.Inconclusive, None, 0)
    t_steps = _renaming(t, t_fresh) + t_steps
    u_steps = _renaming(u, u_fresh) + u_steps
    return EquivVerdict(VerdictKind.Equivalent, _join(t_steps, t_normal, u_normal, _walk(u, u_steps)), 0)

def es_commute_witness(context, t, x, u, theory, budget=None):
    """struct_equiv(C⟨t⟩[x<-u], C⟨t[x<-u]⟩)."""
    path = context.path if hasattr(context, 'path') else tuple(context)
    if x in free_vars(plug(path, HOLE)) or captures(path, x):
        raise exceptions.PreconditionError('context mentions {}'.format(x))
    if any(captures(path, name) for name in free_vars(u)):
        raise exceptions.PreconditionError('context captures free variables of {}'.format(render(u)))
    return struct_equiv(ESub(plug(path, t), x, u), plug(path, ESub(t, x, u)), theory, budget)

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
