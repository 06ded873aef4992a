"""
Acceptance suites.

    traces          the reference Ω and ττ derivations, step for step
    determinism     at most one decomposition on every small closed term and its reducts
    distillation    random corpus on all eight machines: per-step clauses, counts,
                    invariants, progress, complexity and end-to-end agreement
    bisimulation    structural equivalence is a strong bisimulation for each strategy
    reflection      each strategy step is realized by every machine of its group
"""

import random
import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import config, log, util
from lsclib.lib.syntax import parse, alpha_eq, render
from lsclib.lib.calculus import (Strategy, LsRedex, decompose_all, step_calculus, cbv_candidate_count,
                                 need_context_properties)
from lsclib.lib.equivalence import EqTheory, struct_equiv, is_equivalent
from lsclib.lib.machines import MachineId, COMMUTATIVE
from lsclib.lib import check, distillery, generate, oracle
from lsclib.lib import trace as traces

SuiteResult = collections.namedtuple('SuiteResult', ['name', 'cases', 'failures', 'inconclusive', 'details', 'artifacts'])
CaseResult = collections.namedtuple('CaseResult', ['failures', 'inconclusive', 'details'])

DELTA = r'(\x.x x)'
TAU = r'((\z.\x.x x) (\y.y))'

# (name, strategy, start, [(label, term)]), terms compared up to α; a trailing '~' compares with ≡ instead
REFERENCE_TRACES = [
    ('omega-name', Strategy.Name, DELTA + DELTA, [
        ('m', r'(x x)[x<-\x.x x]'),
        ('e', r'((\x.x x) x)[x<-\x.x x]'),
        ('m', r'(y y)[y<-x][x<-\x.x x]'),
        ('e', r'(x y)[y<-x][x<-\x.x x]'),
        ('e', r'((\x.x x) y)[y<-x][x<-\x.x x]'),
        ('m', r'(z z)[z<-y][y<-x][x<-\x.x x]'),
    ]),
    ('omega-value-lr', Strategy.ValueLR, DELTA + DELTA, [
        ('m', r'(x1 x1)[x1<-\x.x x]'),
        ('e', r'((\x.x x) x1)[x1<-\x.x x]'),
        ('e', r'((\x.x x) (\x.x x))[x1<-\x.x x]'),
        ('m', r'(x2 x2)[x2<-\x.x x][x1<-\x.x x]'),
        ('e', r'((\x.x x) x2)[x2<-\x.x x][x1<-\x.x x]'),
    ]),
    ('omega-value-rl', Strategy.ValueRL, DELTA + DELTA, [
        ('m', r'(x1 x1)[x1<-\x.x x]'),
        ('e', r'(x1 (\x.x x))[x1<-\x.x x]'),
        ('e', r'((\x.x x) (\x.x x))[x1<-\x.x x]'),
        ('m', r'(x2 x2)[x2<-\x.x x][x1<-\x.x x]'),
        ('e', r'(x2 (\x.x x))[x2<-\x.x x][x1<-\x.x x]'),
    ]),
    ('omega-need', Strategy.Need, DELTA + DELTA, [
        ('m', r'(x1 x1)[x1<-\x.x x]'),
        ('e', r'((\x.x x) x1)[x1<-\x.x x]'),
        ('m', r'(x2 x2)[x2<-x1][x1<-\x.x x]'),
        ('e', r'(x2 x2)[x2<-\x.x x][x1<-\x.x x]'),
        ('e', r'((\x.x x) x2)[x2<-\x.x x][x1<-\x.x x]'),
        ('m', r'(x3 x3)[x3<-x2][x2<-\x.x x][x1<-\x.x x]'),
        ('e', r'(x3 x3)[x3<-\x.x x][x2<-\x.x x][x1<-\x.x x]'),
        ('e', r'((\x.x x) x3)[x3<-\x.x x][x2<-\x.x x][x1<-\x.x x]'),
    ]),
    ('tau-name', Strategy.Name, TAU + TAU, [
        ('m', r'(\x.x x)[z<-\y.y] ((\z.\x.x x) (\y.y))'),
        ('m', r'(x x)[x<-(\z.\x.x x) (\y.y)][z<-\y.y]'),
        ('e', r'((\z.\x.x x) (\y.y) x)[x<-(\z.\x.x x) (\y.y)][z<-\y.y]'),
    ]),
    ('tau-value-lr', Strategy.ValueLR, TAU + TAU, [
        ('m', r'(\x.x x)[z<-\y.y] ((\z.\x.x x) (\y.y))'),
        ('m', r'(\x.x x)[z<-\y.y] ((\x.x x)[z<-\y.y])'),
        ('m', r'(x x)[x<-(\x.x x)[z<-\y.y]][z<-\y.y]'),
        ('e~', r'((\x.x x) x)[x<-(\x.x x)[z<-\y.y]][z<-\y.y]'),
    ]),
]


def _result(name, results, artifacts=None):
    failures = sum(r.failures for r in results)
    inconclusive = sum(r.inconclusive for r in results)
    details = [detail for r in results for detail in r.details]
    log.event('suite', {'name': name, 'cases': len(results), 'failures': failures, 'inconclusive': inconclusive})
    for detail in details:
        logger.warning('{}: {}'.format(name, detail))
    return SuiteResult(name, len(results), failures, inconclusive, details, artifacts or [])

def _case(failures=None, inconclusive=None):
    failures = failures or []
    inconclusive = inconclusive or []
    return CaseResult(len(failures), len(inconclusive), failures + inconclusive)

def _tally(case, verdicts):
    """Split verdict details into failures and inconclusive ones."""
    for prefix, verdict in verdicts:
        if verdict.status is distillery.Status.Inconclusive:
            case['inconclusive'].append('{}: {}'.format(prefix, verdict.detail))
        elif verdict.status is not distillery.Status.Pass:
            case['failures'].append('{}: {}'.format(prefix, verdict.detail))


######################################
# traces

def check_reference_trace(strategy, start, expected):
    """Failures of the strategy on `start` against the expected (label, term) list."""
    problems = []
    t = parse(start)
    for index, (label, text) in enumerate(expected):
        result = step_calculus(t, strategy)
        if result is None:
            problems.append('step {}: normal form {}'.format(index, render(t)))
            break
        relation = '~' if label.endswith('~') else '='
        label = label.rstrip('~')
        if result[0].value != label:
            problems.append('step {}: {} step, expected {}'.format(index, result[0].value, label))
        t = result[1]
        reference = parse(text)
        if relation == '=' and not alpha_eq(t, reference):
            problems.append('step {}: {} is not α-equivalent to {}'.format(index, render(t), text))
        elif relation == '~' and not is_equivalent(struct_equiv(t, reference, EqTheory.Full)):
            problems.append('step {}: {} is not equivalent to {}'.format(index, render(t), text))
    return problems

def suite_traces(seed=None, cases=None):
    results = []
    for name, strategy, start, expected in REFERENCE_TRACES:
        problems = check_reference_trace(strategy, start, expected)
        results.append(_case(['{}: {}'.format(name, p) for p in problems]))
    return _result('traces', results)


######################################
# determinism

def _determinism_case(t):
    failures = []
    for strategy in Strategy:
        current = t
        for _ in range(config.DETERMINISM_STEPS):
            decompositions = decompose_all(current, strategy)
            if len(decompositions) > 1:
                failures.append('{} decompositions of {} under {}'.format(len(decompositions), render(current), strategy.value))
                break
            if strategy in (Strategy.ValueLR, Strategy.ValueRL) and cbv_candidate_count(current, strategy) > 1:
                failures.append('several candidates in {} under {}'.format(render(current), strategy.value))
            if not decompositions:
                break
            context, redex = decompositions[0]
            if strategy is Strategy.Need and isinstance(redex, LsRedex):
                properties = need_context_properties(redex.inner, redex.variable)
                if not all(properties):
                    failures.append('need context lemma fails on {} in {}'.format(redex.variable, render(current)))
            current = step_calculus(current, strategy)[1]
    return _case(failures)

def suite_determinism(seed=None, cases=None):
    corpus = generate.enumerate_closed_terms(config.DETERMINISM_MAX_SIZE)
    return _result('determinism', util.parallel_map(_determinism_case, corpus))


######################################
# distillation

def _distillation_case(t):
    case = {'failures': [], 'inconclusive': []}
    term = render(t)
    runs = {}
    for m in MachineId:
        run = traces.run_machine(m, t, config.FUEL)
        runs[m] = run
        report = distillery.verify_trace(run, config.BUDGET)
        _tally(case, [('{} on {} step {}'.format(m.value, term, v.index), v) for v in report.verdicts + [report.final]])
        if report.machine_counts['m'] != report.calculus_counts['m'] or report.machine_counts['e'] != report.calculus_counts['e']:
            case['failures'].append('{} on {}: counts {} against calculus {}'.format(
                m.value, term, report.machine_counts, report.calculus_counts))

        for index, clause in check.check_trace_invariants(run):
            case['failures'].append('{} on {} state {}: {} {}'.format(m.value, term, index, clause.clause, clause.detail))

        normal_states = [record.pre for record in run.steps if record.label not in COMMUTATIVE]
        if run.outcome is traces.Outcome.Final:
            normal_states.append(traces.final_state(run))
        _tally(case, [('{} progress on {}'.format(m.value, term), distillery.verify_progress(s)) for s in normal_states])

        for violation in distillery.complexity_report(run).violations:
            case['failures'].append('{} on {}: {}'.format(m.value, term, violation))

    name = traces.principal_labels(runs[MachineId.KAM])
    mam = traces.principal_labels(runs[MachineId.MAM])
    common = min(len(name), len(mam))
    if name[:common] != mam[:common]:
        case['failures'].append('KAM and MAM principal labels differ on {}'.format(term))

    for group in oracle.GROUPS:
        report = oracle.differential_run(t, group, config.FUEL)
        case['failures'].extend('{} on {}: {}'.format(group.value, term, m) for m in report.mismatches)
    return _case(case['failures'], case['inconclusive'])

def suite_distillation(seed=None, cases=None):
    seed = config.SEED if seed is None else seed
    cases = config.SUITE_CASES if cases is None else cases
    corpus = generate.gen_corpus(seed, cases, config.MAX_SIZE)
    return _result('distillation', util.parallel_map(_distillation_case, corpus))


######################################
# bisimulation

BISIMULATION_PAIRS = [
    (EqTheory.Full, Strategy.Name),
    (EqTheory.Full, Strategy.ValueLR),
    (EqTheory.Full, Strategy.ValueRL),
    (EqTheory.NeedEq, Strategy.Need),
    (EqTheory.MamEq, Strategy.Name),
]

def _bisimulation_case(args):
    theory, strategy, case_seed = args
    rng = random.Random(case_seed)
    t = generate.gen_closed_term(generate.GenConfig(rng.getrandbits(64), config.BISIMULATION_MAX_SIZE))
    for _ in range(rng.randrange(6)):
        result = step_calculus(t, strategy)
        if result is None:
            break
        t = result[1]
    u, _ = distillery.random_equivalent(t, theory, config.BISIMULATION_PATH_LENGTH, rng)
    name = '{}/{} on {} and {}'.format(theory.value, strategy.value, render(t), render(u))
    verdicts = [
        distillery.bisimulation_probe(t, theory, strategy, budget=config.BUDGET, u=u),
        distillery.verify_postponement(t, u, strategy, config.POSTPONEMENT_STEPS, config.BUDGET, theory),
    ]
    case = {'failures': [], 'inconclusive': []}
    _tally(case, [(name, verdict) for verdict in verdicts])
    return _case(case['failures'], case['inconclusive'])

def suite_bisimulation(seed=None, cases=None):
    seed = config.SEED if seed is None else seed
    cases = config.DEFAULT_BISIMULATION_CASES if cases is None else cases
    master = random.Random(seed)
    jobs = [(theory, strategy, master.getrandbits(64)) for theory, strategy in BISIMULATION_PAIRS for _ in range(cases)]
    return _result('bisimulation', util.parallel_map(_bisimulation_case, jobs))


######################################
# reflection

def _reflection_case(args):
    m, t = args
    verdict = distillery.verify_reflection(m, t, config.DEFAULT_REFLECTION_STEPS, config.BUDGET)
    case = {'failures': [], 'inconclusive': []}
    _tally(case, [('{} reflection on {}'.format(m.value, render(t)), verdict)])
    return _case(case['failures'], case['inconclusive'])

def suite_reflection(seed=None, cases=None):
    seed = config.SEED if seed is None else seed
    cases = config.DEFAULT_REFLECTION_CASES if cases is None else cases
    corpus = generate.gen_corpus(seed, cases, config.MAX_SIZE)
    jobs = [(m, t) for m in MachineId for t in corpus]
    return _result('reflection', util.parallel_map(_reflection_case, jobs))


SUITES = collections.OrderedDict([
    ('traces', suite_traces),
    ('determinism', suite_determinism),
    ('distillation', suite_distillation),
    ('bisimulation', suite_bisimulation),
    ('reflection', suite_reflection),
])

def run_suite(name, seed=None, cases=None):
    """Run one suite, or every suite for 'all'."""
    if name == 'all':
        return [SUITES[n](seed, cases) for n in SUITES]
    return [SUITES[name](seed, cases)]

def suite_document(results):
    return {'timestamp': log.isodt(log.curr_time()),
            'suites': [{'name': r.name, 'cases': r.cases, 'failures': r.failures, 'inconclusive': r.inconclusive,
                        'details': r.details, 'artifacts': r.artifacts} for r in results]}

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
