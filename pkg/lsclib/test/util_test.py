"""
Utilities for the test suite: vector runner, configuration context and term strategies.
"""

import os
import sys
import pprint
import pytest
import hypothesis.strategies as st

from lsclib.lib import config
from lsclib.lib.syntax import Var, Abs, App, ESub, free_vars

CURR_DIR = os.path.dirname(os.path.realpath(__file__))

NAMES = st.sampled_from(['x', 'y', 'z'])

terms = st.recursive(
    st.builds(Var, NAMES),
    lambda children: st.one_of(
        st.builds(Abs, NAMES, children),
        st.builds(App, children, children),
        st.builds(ESub, children, NAMES, children)),
    max_leaves=6)

pure_terms = st.recursive(
    st.builds(Var, NAMES),
    lambda children: st.one_of(
        st.builds(Abs, NAMES, children),
        st.builds(App, children, children)),
    max_leaves=6)

def close(t):
    """Abstract the free variables of `t`."""
    for name in sorted(free_vars(t)):
        t = Abs(name, t)
    return t

closed_terms = pure_terms.map(close)


def vector_to_args(vector, functions=[]):
    """Translate from UNITTEST_VECTOR style to function arguments."""
    args = []
    for module in sorted(vector.keys()):
        for method in sorted(vector[module].keys()):
            for params in vector[module][method]:
                error = params.get('error', None)
                outputs = params.get('out', None)
                comment = params.get('comment', None)
                if functions == [] or (module + '.' + method) in functions:
                    args.append((module, method, params['in'], outputs, error, comment))
    return args

def check_outputs(module, method, inputs, outputs, error, comment):
    """Check actual and expected outputs of a particular function."""
    tested_module = sys.modules['lsclib.lib.{}'.format(module)]
    tested_method = getattr(tested_module, method)

    test_outputs = None
    if error is not None:
        with pytest.raises(error[0]) as exception:
            test_outputs = tested_method(*inputs)
    else:
        test_outputs = tested_method(*inputs)

    if outputs is not None or error is None:
        try:
            assert outputs == test_outputs
        except AssertionError:
            msg = "expected outputs don't match test_outputs:\nexpected_outputs=\n" + pprint.pformat(outputs) + \
                  "\ntest_outputs=\n" + pprint.pformat(test_outputs)
            if comment:
                msg += '\n' + comment
            raise Exception(msg)
    if error is not None:
        assert str(exception.value) == error[1]


class ConfigContext(object):
    """Override `config` values inside a `with` block; keys that did not exist are removed afterwards."""
    _MISSING = object()

    def __init__(self, **kwargs):
        self.overrides = kwargs
        self.saved = {}

    def __enter__(self):
        settings = vars(config)
        self.saved = {k: settings.get(k, self._MISSING) for k in self.overrides}
        settings.update(self.overrides)
        return config

    def __exit__(self, exc_type, exc_val, exc_tb):
        settings = vars(config)
        for k, v in self.saved.items():
            if v is self._MISSING:
                del settings[k]
            else:
                settings[k] = v

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
