"""
This structure holds the unit test vectors. They are used to generate test cases in conftest.py.

Each test vector consists of the following fields:
    - in: The input arguments to the function being tested.
    - out: The expected output.
    - error: If the function is expected to raise an error, then `(exception class, message)`.
    - comment: A description of the test case.
"""

import collections

from lsclib.lib import exceptions
from lsclib.lib.syntax import Var, Abs, App, ESub, BOX, GlobalClosure, parse
from lsclib.lib.calculus import (Strategy, StepLabel, AppLeft, AppRight, SubBody, SubInside,
                                 NeedContextProperties)
from lsclib.lib.equivalence import AxiomId, AxiomStep, EqTheory, FORWARD, BACKWARD
from lsclib.lib.distillery import Relation, Status
from lsclib.lib.machines import MachineId, TransitionLabel

# modules whose functions the vectors call
from lsclib.lib import syntax, calculus, equivalence, generate, oracle, distillery, util  # noqa
from lsclib.lib.machines import common, pointing_wam  # noqa

I = Abs('x', Var('x'))
J = Abs('y', Var('y'))
K = Abs('z', Var('z'))
DELTA_DELTA = parse(r'(\x.x x) (\x.x x)')

# a Pointing WAM environment with two dumped substitutions, innermost first
POINTING_ENV = (('a', Var('p')), ('x', BOX), ('b', Var('q')), ('y', BOX), ('c', Var('r')))

UNITTEST_VECTOR = {
    'syntax': {
        'parse': [{
            'in': (r'\x.x',),
            'out': I
        }, {
            'in': (r'λx.x',),
            'out': I
        }, {
            'in': ('x y z',),
            'out': App(App(Var('x'), Var('y')), Var('z'))
        }, {
            'in': (r'x[x<-\y.y]',),
            'out': ESub(Var('x'), 'x', J)
        }, {
            'in': ('x[x<-y][y<-z]',),
            'out': ESub(ESub(Var('x'), 'x', Var('y')), 'y', Var('z'))
        }, {
            'in': ('x[y<-a[z<-b]]',),
            'out': ESub(Var('x'), 'y', ESub(Var('a'), 'z', Var('b')))
        }, {
            'in': (r'x y \z.z w',),
            'out': App(App(Var('x'), Var('y')), Abs('z', App(Var('z'), Var('w')))),
            'comment': 'a trailing abstraction extends to the right'
        }, {
            'in': (r'x \y.y',),
            'out': App(Var('x'), J),
            'comment': 'an unparenthesized abstraction is accepted as the last argument'
        }, {
            'in': ('x$3',),
            'out': Var('x$3')
        }, {
            'in': ('(x',),
            'error': (exceptions.ParseError, "expected ')', found end of input (at position 2)")
        }, {
            'in': ('x @ y',),
            'error': (exceptions.ParseError, "unexpected character '@' (at position 2)")
        }, {
            'in': ('x y)',),
            'error': (exceptions.ParseError, "unexpected ')' (at position 3)")
        }, {
            'in': (r'\x.',),
            'error': (exceptions.ParseError, 'expected a term, found end of input (at position 3)')
        }, {
            'in': ('x[x y]',),
            'error': (exceptions.ParseError, "expected '<-', found 'y' (at position 4)")
        }, {
            'in': ('',),
            'error': (exceptions.ParseError, 'expected a term, found end of input (at position 0)')
        }],
        'render': [{
            'in': (App(I, J),),
            'out': r'(\x.x) (\y.y)'
        }, {
            'in': (ESub(App(Var('x'), Var('y')), 'x', K),),
            'out': r'(x y)[x<-\z.z]'
        }, {
            'in': (App(Var('x'), App(Var('y'), Var('z'))),),
            'out': 'x (y z)'
        }, {
            'in': (App(App(Var('x'), Var('y')), Var('z')),),
            'out': 'x y z'
        }, {
            'in': (App(Var('x'), ESub(Var('y'), 'y', Var('z'))),),
            'out': 'x y[y<-z]'
        }],
        'free_vars': [{
            'in': (parse(r'(\x.x y)[y<-z]'),),
            'out': frozenset({'z'})
        }, {
            'in': (I,),
            'out': frozenset()
        }, {
            'in': (parse('x[x<-x]'),),
            'out': frozenset({'x'}),
            'comment': 'the payload is outside the scope of its binder'
        }],
        'bound_names': [{
            'in': (parse(r'(\x.x)[y<-\z.z]'),),
            'out': ['y', 'x', 'z']
        }],
        'term_size': [{
            'in': (DELTA_DELTA,),
            'out': 9
        }, {
            'in': (parse('x[x<-y]'),),
            'out': 3
        }],
        'alpha_eq': [{
            'in': (I, J),
            'out': True
        }, {
            'in': (parse(r'\x.x y'), parse(r'\y.y y')),
            'out': False
        }, {
            'in': (parse('x[x<-y]'), parse('z[z<-y]')),
            'out': True
        }],
        'support': [{
            'in': (parse(r'\x.\y.\x.z x'),),
            'out': collections.Counter({'x': 2, 'y': 1})
        }, {
            'in': ((('x', Var('a')), ('y', Var('b')), ('x', Var('c'))),),
            'out': collections.Counter({'x': 2, 'y': 1})
        }, {
            'in': (GlobalClosure(J, (('x', K),)),),
            'out': collections.Counter({'y': 1, 'x': 1}),
            'comment': 'the binders of a payload are not captured by the environment'
        }],
        'is_well_named': [{
            'in': (parse(r'(\x.x) (\x.x)'),),
            'out': False
        }, {
            'in': (App(I, J),),
            'out': True
        }],
        'unfold': [{
            'in': (parse(r'(x y)[x<-\z.z]'),),
            'out': App(K, Var('y'))
        }, {
            'in': (parse('x[y<-z]'),),
            'out': Var('x')
        }, {
            'in': (parse(r'(\y.y)[x<-\y.y]'),),
            'out': J
        }],
    },
    'calculus': {
        'step_calculus': [{
            'in': (App(I, J), Strategy.Name),
            'out': (StepLabel.Mul, ESub(Var('x'), 'x', J))
        }, {
            'in': (App(I, J), Strategy.Need),
            'out': (StepLabel.Mul, ESub(Var('x'), 'x', J))
        }, {
            'in': (App(I, J), Strategy.ValueRL),
            'out': (StepLabel.Mul, ESub(Var('x'), 'x', J))
        }, {
            'in': (ESub(Var('x'), 'x', J), Strategy.Name),
            'out': (StepLabel.Exp, ESub(J, 'x', J))
        }, {
            'in': (ESub(Var('x'), 'x', J), Strategy.Need),
            'out': (StepLabel.Exp, ESub(J, 'x', J))
        }, {
            'in': (ESub(Var('x'), 'x', J), Strategy.ValueLR),
            'out': (StepLabel.Exp, ESub(J, 'x', J))
        }, {
            'in': (App(I, App(J, K)), Strategy.ValueLR),
            'out': (StepLabel.Mul, App(I, ESub(Var('y'), 'y', K))),
            'comment': 'the argument is evaluated first'
        }, {
            'in': (App(I, App(J, K)), Strategy.Name),
            'out': (StepLabel.Mul, ESub(Var('x'), 'x', App(J, K)))
        }, {
            'in': (parse(r'\x.(\y.y) x'), Strategy.Name),
            'out': None,
            'comment': 'no reduction under abstractions'
        }, {
            'in': (parse('x y'), Strategy.ValueLR),
            'out': None
        }],
        'need_vars': [{
            'in': (parse('x[x<-y]'),),
            'out': frozenset({'y'})
        }, {
            'in': (parse('(x y)[y<-z]'),),
            'out': frozenset({'x'})
        }, {
            'in': (I,),
            'out': frozenset()
        }],
        'is_admissible': [{
            'in': ((AppLeft(Var('x')),), Strategy.Name),
            'out': True
        }, {
            'in': ((AppRight(Var('x')),), Strategy.Name),
            'out': False
        }, {
            'in': ((AppRight(Var('x')),), Strategy.ValueLR),
            'out': False
        }, {
            'in': ((AppRight(I),), Strategy.ValueLR),
            'out': True
        }, {
            'in': ((SubInside('x', Var('x')),), Strategy.Need),
            'out': True
        }, {
            'in': ((SubInside('x', Var('y')),), Strategy.Need),
            'out': False
        }],
        'plug': [{
            'in': ((AppLeft(Var('y')), SubBody('y', Var('z'))), Var('x')),
            'out': App(ESub(Var('x'), 'y', Var('z')), Var('y'))
        }],
        'need_context_properties': [{
            'in': ((), 'x'),
            'out': NeedContextProperties(True, True, True)
        }, {
            'in': ((SubBody('x', Var('y')),), 'x'),
            'error': (exceptions.PreconditionError, 'context captures x')
        }],
        'cbv_candidate_count': [{
            'in': (App(I, J), Strategy.ValueLR),
            'out': 1
        }, {
            'in': (App(I, J), Strategy.Name),
            'error': (exceptions.PreconditionError, 'not a call-by-value strategy: name')
        }],
    },
    'equivalence': {
        'normalize': [{
            'in': (parse('(x y)[x<-z]'), EqTheory.Full),
            'out': (App(ESub(Var('x'), 'x', Var('z')), Var('y')),
                    [AxiomStep(AxiomId.AT, FORWARD, ()), AxiomStep(AxiomId.GC, FORWARD, ('R',))])
        }, {
            'in': (parse('(x y)[x<-z]'), EqTheory.NeedEq),
            'out': (App(ESub(Var('x'), 'x', Var('z')), Var('y')), [AxiomStep(AxiomId.ATL, FORWARD, ())])
        }, {
            'in': (parse(r'(\z.x y)[x<-a][y<-a]'), EqTheory.Full),
            'out': (ESub(Abs('z', App(Var('y'), Var('y'))), 'y', Var('a')),
                    [AxiomStep(AxiomId.COM, FORWARD, ()), AxiomStep(AxiomId.DUP, BACKWARD, ())]),
            'comment': 'substitutions of an abstraction with the same payload are merged'
        }, {
            'in': (parse(r'(\z.y x)[y<-b][x<-a]'), EqTheory.Full),
            'out': (parse(r'(\z.y x)[y<-b][x<-a]'), [AxiomStep(AxiomId.COM, FORWARD, ()), AxiomStep(AxiomId.COM, FORWARD, ())]),
            'comment': 'sorted by first occurrence, innermost first'
        }],
        'apply_step': [{
            'in': (parse('(x x)[x<-y]'), AxiomStep(AxiomId.DUP, FORWARD, (), frozenset({1}), 'w')),
            'out': parse('(x w)[x<-y][w<-y]')
        }, {
            'in': (parse('x[y<-a][z<-b]'), AxiomStep(AxiomId.COM, FORWARD, ())),
            'out': parse('x[z<-b][y<-a]')
        }, {
            'in': (parse('x[y<-a][z<-b]'), AxiomStep(AxiomId.BOX, FORWARD, ())),
            'out': parse('x[y<-a[z<-b]]')
        }, {
            'in': (parse('x[x<-y]'), AxiomStep(AxiomId.GC, FORWARD, ())),
            'out': None,
            'comment': 'x occurs in the body'
        }, {
            'in': (parse(r'x[x<-\y.y]'), AxiomStep(AxiomId.ALPHA, FORWARD, ('S',), None, parse(r'\z.z'))),
            'out': parse(r'x[x<-\z.z]'),
            'comment': 'renaming a payload only'
        }, {
            'in': (parse(r'x[x<-\y.y]'), AxiomStep(AxiomId.ALPHA, FORWARD, ('S',), None, Var('w'))),
            'out': None
        }],
        'unfolding_refutes': [{
            'in': (Var('x'), Var('y')),
            'out': True
        }, {
            'in': (parse('x[y<-z]'), Var('x')),
            'out': False
        }],
        'dup_choices': [{
            'in': (2,),
            'out': [frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})]
        }, {
            'in': (5,),
            'out': [frozenset(), frozenset({0}), frozenset({1}), frozenset({2}), frozenset({3}), frozenset({4}),
                    frozenset({0, 1, 2, 3, 4})],
            'comment': 'above the subset limit only singletons and the extremes'
        }],
    },
    'machines.common': {
        'lookup_local': [{
            'in': ((), 'x'),
            'error': (exceptions.MalformedStateError, 'unbound variable x')
        }],
        'lookup_global': [{
            'in': ((('y', J), ('x', I)), 'x'),
            'out': (1, I)
        }, {
            'in': ((), 'x'),
            'error': (exceptions.MalformedStateError, 'unbound variable x')
        }],
        'decode_global': [{
            'in': ((('y', J), ('x', I)), Var('x')),
            'out': ESub(ESub(Var('x'), 'y', J), 'x', I)
        }, {
            'in': ((('x', BOX),), Var('x')),
            'error': (exceptions.DualityViolation, 'dumped substitution on x outside of a dual pair')
        }],
    },
    'machines.pointing_wam': {
        'env_slice': [{
            'in': (POINTING_ENV,),
            'out': (('c', Var('r')),)
        }, {
            'in': ((('a', Var('p')),),),
            'out': (('a', Var('p')),)
        }],
        'env_slice_at': [{
            'in': (POINTING_ENV, 'x'),
            'out': POINTING_ENV
        }, {
            'in': (POINTING_ENV, 'y'),
            'out': (('b', Var('q')), ('y', BOX), ('c', Var('r')))
        }, {
            'in': (POINTING_ENV, 'c'),
            'error': (exceptions.DualityViolation, 'no dumped substitution on c')
        }],
        'dumped_names': [{
            'in': (POINTING_ENV,),
            'out': ['y', 'x']
        }],
        'duality_check': [{
            'in': (POINTING_ENV, (pointing_wam.DumpEntry('y', ()), pointing_wam.DumpEntry('x', ()))),
            'out': True
        }, {
            'in': (POINTING_ENV, (pointing_wam.DumpEntry('x', ()), pointing_wam.DumpEntry('y', ()))),
            'out': False
        }, {
            'in': (POINTING_ENV, ()),
            'out': False
        }],
    },
    'machines': {
        'machine_id': [{
            'in': ('split-cek',),
            'out': MachineId.SplitCEK
        }, {
            'in': ('secd',),
            'error': (exceptions.UsageError,
                      "unknown machine 'secd', expected one of: kam, cek, lam, mam, split-cek, wam, merged-wam, pointing-wam")
        }],
        'inject': [{
            'in': (MachineId.KAM, Var('x')),
            'error': (exceptions.OpenTermError, 'open term, free variables: x')
        }, {
            'in': (MachineId.WAM, parse(r'x[x<-\y.y]')),
            'error': (exceptions.TermError, r'machine codes are pure terms: x[x<-\y.y]')
        }],
    },
    'generate': {
        'binder_name': [
            {'in': (0,), 'out': 'x'},
            {'in': (5,), 'out': 'v'},
            {'in': (6,), 'out': 'x1'},
            {'in': (13,), 'out': 'y2'},
        ],
        'count_closed_terms': [
            {'in': (1,), 'out': 0},
            {'in': (2,), 'out': 1},
            {'in': (3,), 'out': 3},
            {'in': (4,), 'out': 7},
            {'in': (5,), 'out': 20},
            {'in': (6,), 'out': 62},
        ],
        'enumerate_closed_terms': [{
            'in': (3,),
            'out': [I, Abs('x', Abs('y', Var('x'))), Abs('x', Abs('y', Var('y')))]
        }, {
            'in': (10,),
            'error': (exceptions.SizeTooLargeError, 'enumeration is limited to size 9')
        }],
        'gen_closed_term': [{
            'in': (generate.GenConfig(0, 1),),
            'error': (exceptions.PreconditionError, 'no closed term has size below 2')
        }, {
            'in': (generate.GenConfig(7, 2),),
            'out': I,
            'comment': 'the only closed term of size 2'
        }],
    },
    'oracle': {
        'reference_eval': [{
            'in': (App(I, J), Strategy.Name),
            'out': J
        }, {
            'in': (App(I, J), Strategy.Need),
            'out': J
        }, {
            'in': (DELTA_DELTA, Strategy.Name, 10),
            'out': None,
            'comment': 'diverges'
        }, {
            'in': (Var('x'), Strategy.Name),
            'error': (exceptions.OpenTermError, 'open term, free variables: x')
        }],
    },
    'distillery': {
        'calculus_label': [
            {'in': (TransitionLabel.M2,), 'out': StepLabel.Mul},
            {'in': (TransitionLabel.E,), 'out': StepLabel.Exp},
        ],
        'relate': [{
            'in': (Relation.Identity, None, Var('x'), Var('x')),
            'out': (Status.Pass, '')
        }, {
            'in': (Relation.Identity, None, Var('x'), Var('y')),
            'out': (Status.Fail, 'not identical: x vs y')
        }, {
            'in': (Relation.AlphaEq, None, I, J),
            'out': (Status.Pass, '')
        }, {
            'in': (Relation.StructEquiv, EqTheory.Full, parse('x[y<-z]'), Var('x')),
            'out': (Status.Pass, '')
        }, {
            'in': (Relation.StructEquiv, EqTheory.Full, Var('x'), Var('y')),
            'out': (Status.Fail, 'refuted under full: x vs y')
        }],
        'overall': [
            {'in': ([],), 'out': Status.Pass},
            {'in': ([Status.Pass, Status.Inconclusive],), 'out': Status.Inconclusive},
            {'in': ([Status.Inconclusive, Status.Fail, Status.Pass],), 'out': Status.Fail},
            {'in': ([Status.Inconclusive, Status.FuelExhausted],), 'out': Status.FuelExhausted},
        ],
        'bisimulation_probe': [{
            'in': (Var('x'), EqTheory.NeedEq, Strategy.Name),
            'error': (exceptions.PreconditionError, 'need is not a bisimulation for name')
        }],
    },
    'util': {
        'chunkify': [
            {'in': ([1, 2, 3, 4, 5], 2), 'out': [[1, 2], [3, 4], [5]]},
            {'in': ([1, 2], 0), 'out': [[1], [2]]},
        ],
    },
}
