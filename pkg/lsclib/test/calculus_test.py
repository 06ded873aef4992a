#! /usr/bin/python3
import hypothesis
import pytest
from lsclib.test import conftest  # this is require near the top to do setup of the test suite
from lsclib.test import util_test

from lsclib.lib import exceptions
from lsclib.lib.syntax import parse, free_vars
from lsclib.lib.calculus import (Strategy, StepLabel, LsRedex, decompose_all, step_calculus, evaluate,
                                 cbv_candidate_count, need_context_properties, is_normal_form, SubInside)
from lsclib.lib.generate import enumerate_closed_terms
from lsclib.lib.suites import REFERENCE_TRACES, check_reference_trace

DELTA_DELTA = r'(\x.x x) (\x.x x)'


@pytest.mark.parametrize('name, strategy, start, expected', REFERENCE_TRACES, ids=[r[0] for r in REFERENCE_TRACES])
def test_reference_trace(name, strategy, start, expected):
    assert check_reference_trace(strategy, start, expected) == []


def test_reference_trace_mismatch():
    problems = check_reference_trace(Strategy.Name, DELTA_DELTA, [('e', r'(x x)[x<-\x.x x]')])
    assert problems == ['step 0: m step, expected e']


@pytest.mark.parametrize('strategy, labels', [
    (Strategy.Name, 'memeem'),
    (Strategy.ValueLR, 'meemee'),
    (Strategy.ValueRL, 'meemee'),
    (Strategy.Need, 'memeemee'),
])
def test_delta_delta_labels(strategy, labels):
    derivation = evaluate(parse(DELTA_DELTA), strategy, len(labels))
    assert ''.join(label.value for label, _ in derivation) == labels


def test_evaluate_stops_on_normal_form():
    derivation = evaluate(parse(r'(\x.x) (\y.y)'), Strategy.Name, 10)
    assert [label for label, _ in derivation] == [StepLabel.Mul, StepLabel.Exp]
    assert is_normal_form(derivation[-1][1], Strategy.Name)


@pytest.mark.parametrize('strategy', list(Strategy))
def test_determinism_on_small_terms(strategy):
    for t in enumerate_closed_terms(5):
        for _ in range(5):
            decompositions = decompose_all(t, strategy)
            assert len(decompositions) <= 1
            if not decompositions:
                break
            t = step_calculus(t, strategy)[1]


@hypothesis.given(util_test.closed_terms)
def test_determinism(t):
    for strategy in Strategy:
        current = t
        for _ in range(6):
            decompositions = decompose_all(current, strategy)
            assert len(decompositions) <= 1
            if strategy in (Strategy.ValueLR, Strategy.ValueRL):
                assert cbv_candidate_count(current, strategy) <= 1
            if not decompositions:
                break
            context, redex = decompositions[0]
            if strategy is Strategy.Need and isinstance(redex, LsRedex):
                assert all(need_context_properties(redex.inner, redex.variable))
            current = step_calculus(current, strategy)[1]


@hypothesis.given(util_test.closed_terms)
def test_reduction_keeps_terms_closed(t):
    for strategy in Strategy:
        for _, reduct in evaluate(t, strategy, 6):
            assert free_vars(reduct) == frozenset()


def test_need_context_properties_rejects_non_need_context():
    with pytest.raises(exceptions.PreconditionError):
        need_context_properties((SubInside('y', parse('z')),), 'x')
