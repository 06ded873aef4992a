#! /usr/bin/python3
import json
import hypothesis
import hypothesis.strategies as st
import pytest
from lsclib.test import conftest  # this is require near the top to do setup of the test suite
from lsclib.test.util_test import ConfigContext

from lsclib.lib import exceptions
from lsclib.lib.syntax import parse, alpha_eq, free_vars, term_size, is_well_named
from lsclib.lib.calculus import Strategy
from lsclib.lib.machines import MachineId
from lsclib.lib import generate, oracle, suites
from lsclib.lib import trace as traces
from lsclib.lib.generate import GenConfig

IDENTITY_APP = parse(r'(\x.x) (\y.y)')
DELTA_DELTA = parse(r'(\x.x x) (\x.x x)')


######################################
# generation

@hypothesis.given(st.integers(min_value=0, max_value=2 ** 32), st.integers(min_value=2, max_value=30))
def test_gen_closed_term(seed, max_size):
    t = generate.gen_closed_term(GenConfig(seed, max_size))
    assert t == generate.gen_closed_term(GenConfig(seed, max_size))
    assert free_vars(t) == frozenset()
    assert term_size(t) <= max_size
    assert is_well_named(t)

def test_gen_closed_term_minimum_size():
    with pytest.raises(exceptions.PreconditionError):
        generate.gen_closed_term(GenConfig(0, 1))

def test_gen_corpus():
    corpus = generate.gen_corpus(3, 5, 12)
    assert len(corpus) == 5
    assert corpus == generate.gen_corpus(3, 5, 12)

@pytest.mark.parametrize('max_size', range(1, 8))
def test_enumeration_matches_count(max_size):
    terms = generate.enumerate_closed_terms(max_size)
    assert len(terms) == generate.count_closed_terms(max_size)
    assert len(set(terms)) == len(terms)
    assert all(not free_vars(t) and term_size(t) <= max_size for t in terms)

def test_enumeration_limit():
    with pytest.raises(exceptions.SizeTooLargeError, match='enumeration is limited to size 9'):
        generate.enumerate_closed_terms(10)


######################################
# traces

def test_trace_counts():
    run = traces.run_machine(MachineId.KAM, IDENTITY_APP)
    assert run.outcome is traces.Outcome.Final
    assert traces.counts(run) == {'c1': 1, 'c2': 0, 'm': 1, 'e': 1, 'c': 1, 'p': 2}
    assert traces.counts(run, upto=1) == {'c1': 1, 'c2': 0, 'm': 0, 'e': 0, 'c': 1, 'p': 0}
    assert traces.principal_labels(run) == ['m', 'e']

def test_trace_records(tmp_path):
    run = traces.run_machine(MachineId.KAM, IDENTITY_APP)
    records = traces.trace_records(run)
    assert len(records) == 4
    assert records[0] == {'machine': 'kam', 'initial': r'(\x.x) (\y.y)', 'fuel': run.fuel, 'outcome': 'final'}
    assert [r['label'] for r in records[1:]] == ['c1', 'm', 'e']
    assert records[-1]['counters'] == {'c': 1, 'm': 1, 'e': 1}
    assert records[-1]['decoded'] == r'\y.y'

    path = tmp_path / 'kam.jsonl'
    traces.write_trace(run, path=str(path))
    lines = path.read_text(encoding='utf-8').splitlines()
    assert [json.loads(line) for line in lines] == records

def test_render_trace():
    text = traces.render_trace(traces.run_machine(MachineId.MAM, IDENTITY_APP))
    lines = text.splitlines()
    assert len(lines) == 5
    assert lines[-1] == 'final after 3 transitions'
    assert lines[1].startswith('c1')

def test_fuel():
    run = traces.run_machine(MachineId.CEK, DELTA_DELTA, 5)
    assert run.outcome is traces.Outcome.FuelExhausted
    assert len(run.steps) == 5

    run = traces.run_machine(MachineId.CEK, parse(r'\x.x'), 0)
    assert run.outcome is traces.Outcome.Final
    assert run.steps == []
    assert traces.final_state(run) == run.start

def test_fuel_from_config():
    with ConfigContext(FUEL=7):
        run = traces.run_machine(MachineId.LAM, DELTA_DELTA)
    assert run.fuel == 7
    assert len(run.steps) == 7


######################################
# differential runs

@pytest.mark.parametrize('group', list(Strategy))
def test_differential_run_on_identity_application(group):
    report = oracle.differential_run(IDENTITY_APP, group, 50)
    assert report.mismatches == []
    assert report.terminated
    assert alpha_eq(report.result, parse(r'\y.y'))
    assert set(report.counts) == set(m.value for m in oracle.GROUPS[group])

def test_differential_run_on_divergent_term():
    report = oracle.differential_run(DELTA_DELTA, Strategy.Need, 30)
    assert report.mismatches == []
    assert not report.terminated
    assert report.result is None
    document = oracle.report_document(report)
    assert document['group'] == 'need'
    assert document['result'] is None

def test_reference_eval_open_term():
    with pytest.raises(exceptions.OpenTermError):
        oracle.reference_eval(parse('x'), Strategy.Name)


######################################
# suites

def test_suite_traces():
    results = suites.run_suite('traces')
    assert len(results) == 1
    assert results[0].name == 'traces'
    assert results[0].cases == len(suites.REFERENCE_TRACES)
    assert results[0].failures == 0
    assert results[0].details == []

def test_suite_document():
    document = suites.suite_document([suites.suite_traces()])
    assert set(document) == {'timestamp', 'suites'}
    assert document['suites'][0]['name'] == 'traces'
    assert document['suites'][0]['failures'] == 0

def test_small_distillation_suite():
    with ConfigContext(MAX_SIZE=8, FUEL=30):
        result = suites.suite_distillation(seed=1, cases=3)
    assert result.cases == 3
    assert result.failures == 0, result.details

def test_small_reflection_suite():
    with ConfigContext(MAX_SIZE=8):
        result = suites.suite_reflection(seed=2, cases=2)
    assert result.cases == 2 * len(MachineId)
    assert result.failures == 0, result.details

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
