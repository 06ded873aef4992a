"""Random and exhaustive closed pure terms."""

import random
import collections
import logging
logger = logging.getLogger(__name__)

from cachetools import LRUCache, cached

from lsclib.lib import config, exceptions
from lsclib.lib.syntax import Var, Abs, App

GenConfig = collections.namedtuple('GenConfig', ['seed', 'max_size', 'closed'])
GenConfig.__new__.__defaults__ = (True,)

_VAR, _ABS, _APP = 'var', 'abs', 'app'


def binder_name(index):
    """x, y, z, w, u, v, x1, y1, ..."""
    base = config.GEN_NAMES[index % len(config.GEN_NAMES)]
    round_ = index // len(config.GEN_NAMES)
    return base if not round_ else '{}{}'.format(base, round_)


######################################
# Random generation

class _Generator(object):

    def __init__(self, rng):
        self.rng = rng
        self.binders = 0

    def min_size(self, scope):
        return 1 if scope else 2

    def term(self, budget, scope):
        kinds, weights = [], []
        if scope:
            kinds.append(_VAR)
            weights.append(config.GEN_WEIGHT_VAR)
        if budget >= 2:
            kinds.append(_ABS)
            weights.append(config.GEN_WEIGHT_ABS)
        if budget >= 1 + 2 * self.min_size(scope):
            kinds.append(_APP)
            weights.append(config.GEN_WEIGHT_APP)
        kind = self.rng.choices(kinds, weights=weights)[0]

        if kind == _VAR:
            return Var(self.rng.choice(scope))
        elif kind == _ABS:
            name = binder_name(self.binders)
            self.binders += 1
            return Abs(name, self.term(budget - 1, scope + (name,)))
        least = self.min_size(scope)
        left = self.rng.randint(least, budget - 1 - least)
        fun = self.term(left, scope)
        arg = self.term(budget - 1 - left, scope)
        return App(fun, arg)

def gen_closed_term(cfg):
    """A random closed pure well-named term of size at most `cfg.max_size`, determined by `cfg.seed`."""
    if cfg.max_size < 2:
        raise exceptions.PreconditionError('no closed term has size below 2')
    return _Generator(random.Random(cfg.seed)).term(cfg.max_size, ())

def gen_corpus(seed, cases, max_size):
    """`cases` terms, the i-th one generated from a seed derived from `seed` and i."""
    master = random.Random(seed)
    return [gen_closed_term(GenConfig(master.getrandbits(64), max_size)) for _ in range(cases)]


######################################
# Exhaustive enumeration, up to α

@cached(cache=LRUCache(maxsize=4096))
def _terms(size, depth):
    result = []
    if size == 1:
        result.extend(Var(binder_name(i)) for i in range(depth))
        return tuple(result)
    name = binder_name(depth)
    result.extend(Abs(name, body) for body in _terms(size - 1, depth + 1))
    for left in range(1, size - 1):
        for fun in _terms(left, depth):
            for arg in _terms(size - 1 - left, depth):
                result.append(App(fun, arg))
    return tuple(result)

def enumerate_closed_terms(max_size):
    """Every closed pure term of size at most `max_size`, binders named by depth, by increasing size."""
    if max_size > config.ENUMERATION_MAX_SIZE:
        raise exceptions.SizeTooLargeError('enumeration is limited to size {}'.format(config.ENUMERATION_MAX_SIZE))
    result = []
    for size in range(1, max_size + 1):
        result.extend(_terms(size, 0))
    return result

def count_closed_terms(max_size):
    """Number of closed pure terms up to α of size at most `max_size`, counted without building them."""
    table = {}

    def count(size, depth):
        key = (size, depth)
        if key not in table:
            if size == 1:
                table[key] = depth
            else:
                table[key] = count(size - 1, depth + 1) + sum(
                    count(left, depth) * count(size - 1 - left, depth) for left in range(1, size - 1))
        return table[key]

    return sum(count(size, 0) for size in range(1, max_size + 1))

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
