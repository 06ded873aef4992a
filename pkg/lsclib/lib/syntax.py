"""
Terms of the linear substitution calculus.

Terms are immutable records: `Var(name)`, `Abs(name, body)`, `App(fun, arg)`
and `ESub(body, name, arg)`, the explicit substitution `body[name<-arg]`.
Pure terms are the ones without `ESub` nodes. Names are plain strings; names
minted by a `NameSupply` carry a `$N` suffix so they never clash with names
written by hand.
"""

import re
import logging
logger = logging.getLogger(__name__)
import collections
from dataclasses import dataclass

from cachetools import LRUCache, cached

from lsclib.lib import exceptions

NAME_PATTERN = r"[a-zA-Z][a-zA-Z0-9_']*(?:\$[0-9]+)?"
NAME_RE = re.compile('^' + NAME_PATTERN + '$')
FRESH_SUFFIX_RE = re.compile(r'^(.*)\$([0-9]+)$')


class Term(object):
    __slots__ = ()

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Var(Term):
    name: str

@dataclass(frozen=True)
class Abs(Term):
    name: str
    body: Term

@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term

@dataclass(frozen=True)
class ESub(Term):
    body: Term
    name: str
    arg: Term


class Dumped(object):
    """Payload of a dumped global substitution `[x<-☐]`."""
    __slots__ = ()

    def __repr__(self):
        return '☐'

BOX = Dumped()


# A closure pairs a pure code with a local environment: a tuple of
# (name, Closure) entries, innermost first.
Closure = collections.namedtuple('Closure', ['code', 'env'])

# A global closure pairs a code with a global environment: a tuple of
# (name, payload) entries, innermost first, payload a pure term or BOX.
GlobalClosure = collections.namedtuple('GlobalClosure', ['code', 'env'])


def is_value(t):
    return isinstance(t, Abs)

def is_pure(t):
    if isinstance(t, Var):
        return True
    elif isinstance(t, Abs):
        return is_pure(t.body)
    elif isinstance(t, App):
        return is_pure(t.fun) and is_pure(t.arg)
    return False

def check_name(name):
    if not isinstance(name, str) or not NAME_RE.match(name):
        raise exceptions.ParseError('invalid name {!r}'.format(name))
    return name


######################################
# Parsing and rendering

TOKEN_RE = re.compile(r'\s*(?:(?P<lam>\\|λ)|(?P<arrow><-)|(?P<punct>[.()\[\]])|(?P<name>' + NAME_PATTERN + r'))')

def tokenize(text):
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = TOKEN_RE.match(text, position)
        if not match:
            stripped = len(text[position:]) - len(text[position:].lstrip())
            raise exceptions.ParseError('unexpected character {!r}'.format(text[position + stripped]), position + stripped)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind if kind != 'punct' else match.group(kind), match.group(kind), start))
        position = match.end()
    tokens.append(('eof', '', len(text)))
    return tokens


class Parser(object):
    """Recursive descent over the token list.

        term := abs | app
        abs  := ('\\' | 'λ') name '.' term
        app  := atom+ [abs]
        atom := (name | '(' term ')') ('[' name '<-' term ']')*
    """

    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind):
        token = self.advance()
        if token[0] != kind:
            expected = {'name': 'name', 'arrow': "'<-'"}.get(kind, repr(kind))
            found = 'end of input' if token[0] == 'eof' else repr(token[1])
            raise exceptions.ParseError('expected {}, found {}'.format(expected, found), token[2])
        return token

    def parse(self):
        term = self.term()
        token = self.peek()
        if token[0] != 'eof':
            raise exceptions.ParseError('unexpected {!r}'.format(token[1]), token[2])
        return term

    def term(self):
        if self.peek()[0] == 'lam':
            return self.abstraction()
        return self.application()

    def abstraction(self):
        self.expect('lam')
        name = self.expect('name')[1]
        self.expect('.')
        return Abs(name, self.term())

    def application(self):
        head = self.atom()
        while True:
            kind = self.peek()[0]
            if kind in ('name', '('):
                head = App(head, self.atom())
            elif kind == 'lam':
                # An abstraction extends as far right as possible, so it ends the spine.
                return App(head, self.abstraction())
            else:
                return head

    def atom(self):
        token = self.advance()
        if token[0] == 'name':
            atom = Var(token[1])
        elif token[0] == '(':
            atom = self.term()
            self.expect(')')
        else:
            found = 'end of input' if token[0] == 'eof' else repr(token[1])
            raise exceptions.ParseError('expected a term, found {}'.format(found), token[2])
        while self.peek()[0] == '[':
            self.advance()
            name = self.expect('name')[1]
            self.expect('arrow')
            payload = self.term()
            self.expect(']')
            atom = ESub(atom, name, payload)
        return atom


def parse(text):
    return Parser(text).parse()

def _is_atom(t):
    return isinstance(t, (Var, ESub))

def render(t):
    if isinstance(t, Var):
        return t.name
    elif isinstance(t, Abs):
        return '\\{}.{}'.format(t.name, render(t.body))
    elif isinstance(t, App):
        fun = render(t.fun)
        if isinstance(t.fun, Abs):
            fun = '(' + fun + ')'
        arg = render(t.arg)
        if not _is_atom(t.arg):
            arg = '(' + arg + ')'
        return fun + ' ' + arg
    elif isinstance(t, ESub):
        body = render(t.body)
        if not _is_atom(t.body):
            body = '(' + body + ')'
        return '{}[{}<-{}]'.format(body, t.name, render(t.arg))
    raise TypeError('not a term: {!r}'.format(t))


######################################
# Variables, support, size

def free_vars(t):
    if isinstance(t, Var):
        return frozenset((t.name,))
    elif isinstance(t, Abs):
        return free_vars(t.body) - {t.name}
    elif isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    elif isinstance(t, ESub):
        return (free_vars(t.body) - {t.name}) | free_vars(t.arg)
    raise TypeError('not a term: {!r}'.format(t))

def bound_names(t):
    """Binder names of `t` in preorder, repetitions included."""
    names = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Abs):
            names.append(node.name)
            stack.append(node.body)
        elif isinstance(node, App):
            stack.append(node.arg)
            stack.append(node.fun)
        elif isinstance(node, ESub):
            names.append(node.name)
            stack.append(node.arg)
            stack.append(node.body)
    return names

def all_names(t):
    names = set(bound_names(t))
    names.update(free_vars(t))
    return names

def support(x):
    """
    Multiset of bound names:
     - of a term, its binders;
     - of an environment (a sequence of (name, payload) pairs), its substitution names;
     - of a closure, local or global, code support plus environment support.
    """
    if isinstance(x, Term):
        return collections.Counter(bound_names(x))
    elif isinstance(x, (Closure, GlobalClosure)):
        return support(x.code) + support(x.env)
    return collections.Counter(name for name, _ in x)

def is_well_named(x):
    return all(count == 1 for count in support(x).values())

def term_size(t):
    if isinstance(t, Var):
        return 1
    elif isinstance(t, Abs):
        return 1 + term_size(t.body)
    elif isinstance(t, (App, ESub)):
        left, right = (t.fun, t.arg) if isinstance(t, App) else (t.body, t.arg)
        return 1 + term_size(left) + term_size(right)
    raise TypeError('not a term: {!r}'.format(t))

def subterms(t):
    """Every subterm occurrence of `t`, preorder."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Abs):
            stack.append(node.body)
        elif isinstance(node, App):
            stack.append(node.arg)
            stack.append(node.fun)
        elif isinstance(node, ESub):
            stack.append(node.arg)
            stack.append(node.body)


######################################
# α-equivalence

def _nameless(t, scope):
    if isinstance(t, Var):
        for depth in range(len(scope) - 1, -1, -1):
            if scope[depth] == t.name:
                return len(scope) - 1 - depth
        return t.name
    elif isinstance(t, Abs):
        return ('L', _nameless(t.body, scope + (t.name,)))
    elif isinstance(t, App):
        return ('A', _nameless(t.fun, scope), _nameless(t.arg, scope))
    return ('S', _nameless(t.body, scope + (t.name,)), _nameless(t.arg, scope))

@cached(cache=LRUCache(maxsize=65536))
def canonical(t):
    """Nameless form: bound occurrences become binder-depth indices, free names stay."""
    return _nameless(t, ())

def alpha_eq(t, u):
    return t == u or canonical(t) == canonical(u)

def shape(t):
    """Form invariant under any injective renaming of names, free ones included: names become first-occurrence indices."""
    numbering = {}

    def number(name):
        return numbering.setdefault(name, len(numbering))

    def go(t):
        if isinstance(t, Var):
            return number(t.name)
        elif isinstance(t, Abs):
            return ('L', number(t.name), go(t.body))
        elif isinstance(t, App):
            return ('A', go(t.fun), go(t.arg))
        return ('S', number(t.name), go(t.body), go(t.arg))
    return go(t)


######################################
# Fresh names and substitution

class NameSupply(object):
    """Mints `base$N` names from a monotonically increasing counter."""

    def __init__(self, counter=0):
        self.counter = counter

    @classmethod
    def past(cls, *items):
        """A supply whose names differ from every name occurring in `items` (terms or name collections)."""
        top = -1
        for item in items:
            names = all_names(item) if isinstance(item, Term) else item
            for name in names:
                match = FRESH_SUFFIX_RE.match(name)
                if match:
                    top = max(top, int(match.group(2)))
        return cls(top + 1)

    def fresh(self, base='x'):
        match = FRESH_SUFFIX_RE.match(base)
        if match:
            base = match.group(1)
        name = '{}${}'.format(base, self.counter)
        self.counter += 1
        return name

def _rename_binders(t, mapping, supply):
    if isinstance(t, Var):
        return Var(mapping.get(t.name, t.name))
    elif isinstance(t, Abs):
        name = supply.fresh(t.name)
        return Abs(name, _rename_binders(t.body, dict(mapping, **{t.name: name}), supply))
    elif isinstance(t, App):
        return App(_rename_binders(t.fun, mapping, supply), _rename_binders(t.arg, mapping, supply))
    name = supply.fresh(t.name)
    body = _rename_binders(t.body, dict(mapping, **{t.name: name}), supply)
    return ESub(body, name, _rename_binders(t.arg, mapping, supply))

def fresh_rename(t, avoid=(), supply=None):
    """α-variant of `t` whose binders are all freshly minted, hence well-named and outside `avoid`."""
    if supply is None:
        supply = NameSupply.past(t, avoid)
    return _rename_binders(t, {}, supply)

def rename_binder(t, supply):
    """Rename the binder at the root of an abstraction or substitution to a fresh name."""
    name = supply.fresh(t.name)
    if isinstance(t, Abs):
        return Abs(name, substitute(t.body, t.name, Var(name), supply))
    return ESub(substitute(t.body, t.name, Var(name), supply), name, t.arg)

def substitute(t, x, u, supply):
    """Capture-avoiding meta-substitution t{x<-u}."""
    fvu = free_vars(u)

    def go(t):
        if isinstance(t, Var):
            return u if t.name == x else t
        elif isinstance(t, App):
            return App(go(t.fun), go(t.arg))
        elif isinstance(t, Abs):
            if t.name == x or x not in free_vars(t.body):
                return t
            if t.name in fvu:
                t = rename_binder(t, supply)
            return Abs(t.name, go(t.body))
        else:
            arg = go(t.arg)
            if t.name == x or x not in free_vars(t.body):
                return ESub(t.body, t.name, arg)
            if t.name in fvu:
                t = rename_binder(t, supply)
            return ESub(go(t.body), t.name, arg)
    return go(t)

def _unfold(t, supply):
    if isinstance(t, Var):
        return t
    elif isinstance(t, Abs):
        return Abs(t.name, _unfold(t.body, supply))
    elif isinstance(t, App):
        return App(_unfold(t.fun, supply), _unfold(t.arg, supply))
    return substitute(_unfold(t.body, supply), t.name, _unfold(t.arg, supply), supply)

@cached(cache=LRUCache(maxsize=16384))
def unfold(t):
    """The pure term obtained by turning every explicit substitution into a meta-substitution."""
    return _unfold(t, NameSupply.past(t))

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
