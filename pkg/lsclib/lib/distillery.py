"""
Checks that a machine execution is distilled by its strategy.

Each transition is related to the decodings of its two states by the clause
table: commutative transitions must preserve the decoding up to identity,
α or structural equivalence, principal ones must be mirrored by one step of
the strategy, followed by the clause's relation. Verdicts are values, not
exceptions.
"""

import enum
import random
import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import config, exceptions, log
from lsclib.lib.syntax import alpha_eq, term_size, render
from lsclib.lib.calculus import Strategy, StepLabel, step_calculus
from lsclib.lib.equivalence import (EqTheory, VerdictKind, struct_equiv, axiom_neighbors)
from lsclib.lib.machines import (MachineId, TransitionLabel, COMMUTATIVE, MULTIPLICATIVE, get_module,
                                 inject, step_machine)
from lsclib.lib import trace as traces


class Relation(enum.Enum):
    Identity = 'identity'
    AlphaEq = 'alpha'
    StructEquiv = 'struct'

class Status(enum.Enum):
    Pass = 'pass'
    Fail = 'fail'
    Inconclusive = 'inconclusive'
    FuelExhausted = 'fuel-exhausted'

# `calculus`: the transition is mirrored by a step of the strategy before `relation` is checked
Clause = collections.namedtuple('Clause', ['calculus', 'relation', 'theory'])
Verdict = collections.namedtuple('Verdict', ['index', 'label', 'status', 'detail'])
SimulationReport = collections.namedtuple('SimulationReport', ['machine', 'status', 'verdicts', 'machine_counts',
                                                               'calculus_counts', 'labels_match', 'final'])
ComplexityReport = collections.namedtuple('ComplexityReport', ['machine', 'size', 'counts', 'max_run', 'run_bound',
                                                               'ratio', 'lookup_max', 'lookup_total', 'violations'])


_EQ = Clause(False, Relation.StructEquiv, EqTheory.Full)
_ID = Clause(False, Relation.Identity, None)
_MUL = Clause(True, Relation.Identity, None)
_EXP_EQ = Clause(True, Relation.StructEquiv, EqTheory.Full)
_MUL_EQ = Clause(True, Relation.StructEquiv, EqTheory.Full)
_MUL_NEED = Clause(True, Relation.StructEquiv, EqTheory.NeedEq)
_EXP_ALPHA = Clause(True, Relation.AlphaEq, None)

C1, C2, M, M1, M2, E = (TransitionLabel.C1, TransitionLabel.C2, TransitionLabel.M, TransitionLabel.M1,
                        TransitionLabel.M2, TransitionLabel.E)

CLAUSE_TABLE = {
    MachineId.KAM:         {C1: _EQ, M: _MUL, E: _EXP_EQ},
    MachineId.CEK:         {C1: _EQ, C2: _ID, M: _MUL, E: _EXP_EQ},
    MachineId.LAM:         {C1: _EQ, C2: _ID, M: _MUL, E: _EXP_EQ},
    MachineId.MAM:         {C1: _ID, M: _MUL_EQ, E: _EXP_ALPHA},
    MachineId.SplitCEK:    {C1: _EQ, C2: _EQ, M: _MUL, E: _EXP_EQ},
    MachineId.WAM:         {C1: _ID, C2: _ID, M: _MUL_NEED, E: _EXP_ALPHA},
    MachineId.MergedWAM:   {C1: _ID, C2: _ID, M: _MUL_NEED, E: _EXP_ALPHA},
    MachineId.PointingWAM: {C1: _ID, C2: _ID, M1: _MUL_NEED, M2: _MUL_NEED, E: _EXP_ALPHA},
}

# Theory relating whole derivations, per strategy
STRATEGY_THEORY = {
    Strategy.Name: EqTheory.Full,
    Strategy.ValueLR: EqTheory.Full,
    Strategy.ValueRL: EqTheory.Full,
    Strategy.Need: EqTheory.NeedEq,
}

COMPATIBLE = {
    EqTheory.Full: (Strategy.Name, Strategy.ValueLR, Strategy.ValueRL),
    EqTheory.NeedEq: (Strategy.Need,),
    EqTheory.MamEq: (Strategy.Name,),
}


def calculus_label(label):
    return StepLabel.Mul if label in MULTIPLICATIVE else StepLabel.Exp

def relate(relation, theory, t, u, budget=None):
    """(status, detail) for `t` against `u` under `relation`."""
    if relation is Relation.Identity:
        if t == u:
            return Status.Pass, ''
        return Status.Fail, 'not identical: {} vs {}'.format(render(t), render(u))
    elif relation is Relation.AlphaEq:
        if alpha_eq(t, u):
            return Status.Pass, ''
        return Status.Fail, 'not α-equivalent: {} vs {}'.format(render(t), render(u))
    verdict = struct_equiv(t, u, theory, budget)
    if verdict.kind is VerdictKind.Equivalent:
        return Status.Pass, ''
    elif verdict.kind is VerdictKind.Inconclusive:
        return Status.Inconclusive, 'search exhausted after {} nodes: {} vs {}'.format(verdict.expanded, render(t), render(u))
    return Status.Fail, 'refuted under {}: {} vs {}'.format(theory.value, render(t), render(u))


######################################
# Steps and traces

def _step_status(module, clause, record, budget):
    if not clause.calculus:
        return relate(clause.relation, clause.theory, record.decoded_pre, record.decoded_post, budget)
    try:
        result = step_calculus(record.decoded_pre, module.STRATEGY)
    except exceptions.DeterminismError as e:
        return Status.Fail, str(e)
    if result is None:
        return Status.Fail, 'principal transition on a {} normal form: {}'.format(module.STRATEGY.value, render(record.decoded_pre))
    label, reduct = result
    if label is not calculus_label(record.label):
        return Status.Fail, 'machine {} mirrored by a calculus {} step'.format(record.label.value, label.value)
    return relate(clause.relation, clause.theory, reduct, record.decoded_post, budget)

def verify_step(record, budget=None, theory=None):
    """Check one StepRecord against its clause; `theory` overrides the theory of the multiplicative clause."""
    module = get_module(record.pre)
    clause = CLAUSE_TABLE[module.ID].get(record.label)
    if clause is None:
        status, detail = Status.Fail, '{} is not a transition of the {}'.format(record.label.value, module.ID.value)
    else:
        if theory is not None and record.label in MULTIPLICATIVE and clause.relation is Relation.StructEquiv:
            clause = clause._replace(theory=theory)
        status, detail = _step_status(module, clause, record, budget)
    log.event('verdict', {'machine': module.ID.value, 'index': record.index, 'label': record.label.value,
                          'status': status.value, 'detail': detail})
    return Verdict(record.index, record.label, status, detail)

def overall(statuses):
    statuses = list(statuses)
    for status in (Status.Fail, Status.FuelExhausted, Status.Inconclusive):
        if status in statuses:
            return status
    return Status.Pass

def verify_trace(trace, budget=None, theory=None):
    """Verify every step, then replay the strategy for as many principal steps as the machine made."""
    module = get_module(trace.machine)
    verdicts = [verify_step(record, budget, theory) for record in trace.steps]
    machine_counts = traces.counts(trace)
    principal = traces.principal_labels(trace)

    t = module.decode(trace.start)
    derived = []
    final = Verdict(len(trace.steps), None, Status.Pass, '')
    for _ in principal:
        try:
            result = step_calculus(t, module.STRATEGY)
        except exceptions.DeterminismError as e:
            final = Verdict(len(trace.steps), None, Status.Fail, str(e))
            break
        if result is None:
            break
        derived.append(result[0].value)
        t = result[1]
    calculus_counts = {'m': derived.count('m'), 'e': derived.count('e')}
    labels_match = derived == principal
    if not labels_match:
        final = Verdict(len(trace.steps), None, Status.Fail, 'machine principal labels {} against calculus {}'.format(
            ''.join(principal), ''.join(derived)))
    elif final.status is Status.Pass:
        status, detail = relate(Relation.StructEquiv, STRATEGY_THEORY[module.STRATEGY], t,
                                module.decode(traces.final_state(trace)), budget)
        final = Verdict(len(trace.steps), None, status, detail)

    status = overall([v.status for v in verdicts] + [final.status])
    return SimulationReport(module.ID, status, verdicts, machine_counts, calculus_counts, labels_match, final)

def verify_progress(s):
    """On a commutative-normal state the machine moves exactly when the decoding does, with the same kind of step."""
    module = get_module(s)
    result = step_machine(s)
    if result is not None and result[0] in COMMUTATIVE:
        raise exceptions.PreconditionError('state is not commutative-normal: {}'.format(module.render_state(s)))
    decoded = module.decode(s)
    calculus = step_calculus(decoded, module.STRATEGY)
    if calculus is None:
        if result is None:
            return Verdict(None, None, Status.Pass, '')
        return Verdict(None, result[0], Status.Fail, 'machine moves on the normal form {}'.format(render(decoded)))
    if result is None:
        return Verdict(None, None, Status.Fail, 'final state decodes to {} which still has a {} redex'.format(
            render(decoded), calculus[0].value))
    if calculus_label(result[0]) is not calculus[0]:
        return Verdict(None, result[0], Status.Fail, 'machine {} against calculus {}'.format(result[0].value, calculus[0].value))
    return Verdict(None, result[0], Status.Pass, '')

def verify_reflection(m, t, k, budget=None):
    """Each of the first `k` strategy steps from `t` is realized by the machine after finitely many commutative transitions."""
    module = get_module(m)
    state = inject(module.ID, t)
    size = term_size(state.initial)
    theory = STRATEGY_THEORY[module.STRATEGY]
    current = state.initial
    counts = collections.Counter()
    commutative = 0
    for i in range(k):
        calculus = step_calculus(current, module.STRATEGY)
        if calculus is None:
            break
        label, current = calculus
        bound = config.REFLECTION_SAFETY_FACTOR * (size + 1) * (i + 1)
        while True:
            result = step_machine(state)
            if result is None:
                return Verdict(i, None, Status.Fail, 'machine final before calculus step {}'.format(i))
            machine_label, state = result
            if machine_label not in COMMUTATIVE:
                break
            commutative += 1
            if commutative > bound:
                return Verdict(i, None, Status.FuelExhausted, 'more than {} commutative transitions'.format(bound))
        if calculus_label(machine_label) is not label:
            return Verdict(i, machine_label, Status.Fail, 'machine {} against calculus {}'.format(machine_label.value, label.value))
        counts[label.value] += 1
        status, detail = relate(Relation.StructEquiv, theory, current, module.decode(state), budget)
        if status is not Status.Pass:
            return Verdict(i, machine_label, status, detail)
    return Verdict(k, None, Status.Pass, 'm={} e={}'.format(counts['m'], counts['e']))


######################################
# Structural equivalence as a bisimulation

def random_equivalent(t, theory, path_length, rng):
    """A term reached from `t` by at most `path_length` random axiom steps, and the steps taken."""
    steps = []
    size_cap = term_size(t) + config.EQUIV_SIZE_SLACK
    for _ in range(path_length):
        neighbors = axiom_neighbors(t, theory, size_cap)
        if not neighbors:
            break
        step, t = neighbors[rng.randrange(len(neighbors))]
        steps.append(step)
    return t, steps

def bisimulation_probe(t, theory, strategy, path_length=None, budget=None, rng=None, u=None):
    """If t ≡ u and t steps then u steps with the same label to an equivalent term, and conversely."""
    if strategy not in COMPATIBLE[theory]:
        raise exceptions.PreconditionError('{} is not a bisimulation for {}'.format(theory.value, strategy.value))
    if u is None:
        rng = rng or random.Random(config.SEED)
        path_length = config.BISIMULATION_PATH_LENGTH if path_length is None else path_length
        u, _ = random_equivalent(t, theory, path_length, rng)

    left = step_calculus(t, strategy)
    right = step_calculus(u, strategy)
    if left is None or right is None:
        if left is None and right is None:
            return Verdict(None, None, Status.Pass, '')
        return Verdict(None, None, Status.Fail, 'only one of {} and {} is normal'.format(render(t), render(u)))
    if left[0] is not right[0]:
        return Verdict(None, None, Status.Fail, '{} step against {} step'.format(left[0].value, right[0].value))
    status, detail = relate(Relation.StructEquiv, theory, left[1], right[1], budget)
    return Verdict(None, left[0], status, detail)

def verify_postponement(t, u, strategy, k, budget=None, theory=None):
    """
    For t ≡ u, the first `k` strategy steps from each side carry the same labels
    and end on equivalent terms: equivalence can be postponed after reduction.
    """
    theory = STRATEGY_THEORY[strategy] if theory is None else theory
    if strategy not in COMPATIBLE[theory]:
        raise exceptions.PreconditionError('{} is not a bisimulation for {}'.format(theory.value, strategy.value))
    labels = []
    for i in range(k):
        left = step_calculus(t, strategy)
        right = step_calculus(u, strategy)
        if left is None and right is None:
            break
        elif left is None or right is None:
            return Verdict(i, None, Status.Fail, 'only one of {} and {} is normal'.format(render(t), render(u)))
        elif left[0] is not right[0]:
            return Verdict(i, None, Status.Fail, '{} step against {} step'.format(left[0].value, right[0].value))
        labels.append(left[0].value)
        t, u = left[1], right[1]
    status, detail = relate(Relation.StructEquiv, theory, t, u, budget)
    return Verdict(len(labels), None, status, detail or ''.join(labels))


######################################
# Complexity

def local_run_bound(module, size):
    """Bound on consecutive commutative transitions, or None when the machine has no local bound."""
    if module.ID in (MachineId.KAM, MachineId.MAM):
        return size
    elif module.ID in (MachineId.CEK, MachineId.LAM, MachineId.SplitCEK):
        return 2 * size
    return None

def complexity_report(trace):
    module = get_module(trace.machine)
    size = term_size(trace.initial)
    run_bound = local_run_bound(module, size)
    wam_family = module.ID in (MachineId.WAM, MachineId.MergedWAM, MachineId.PointingWAM)
    violations = []
    running = collections.Counter()
    run = max_run = 0
    lookups = []

    for record in trace.steps:
        label = record.label
        if label in COMMUTATIVE:
            run += 1
            max_run = max(max_run, run)
            if run_bound is not None and module.card(record.post) >= module.card(record.pre):
                violations.append('step {}: measure {} does not decrease to {}'.format(
                    record.index, module.card(record.pre), module.card(record.post)))
        else:
            run = 0
        running['m' if label in MULTIPLICATIVE else label.value] += 1

        if module.GLOBAL and (label is TransitionLabel.C2 or (label is TransitionLabel.E and module.ID is MachineId.MAM)):
            depth = module.lookup_depth(record.pre)
            if depth is not None:
                lookups.append(depth + 1)

        if wam_family:
            dump = module.dump_size(record.post)
            if running['c2'] != running['e'] + dump:
                violations.append('step {}: c2={} but e + |D| = {}'.format(record.index, running['c2'], running['e'] + dump))
            env = module.env_size(record.post)
            if env + dump > running['m']:
                violations.append('step {}: |E| + |D| = {} exceeds m={}'.format(record.index, env + dump, running['m']))

    if run_bound is not None and max_run > run_bound:
        violations.append('commutative run of {} exceeds {}'.format(max_run, run_bound))

    counts = traces.counts(trace)
    ratio = counts['c'] / ((size + 1) * max(1, counts['p']))
    if ratio > config.BILINEAR_RATIO_BOUND:
        violations.append('ratio {:.3f} exceeds {}'.format(ratio, config.BILINEAR_RATIO_BOUND))
    return ComplexityReport(module.ID, size, counts, max_run, run_bound, ratio,
                            max(lookups) if lookups else 0, sum(lookups), violations)

def report_document(report):
    """JSON-ready dict of a SimulationReport or ComplexityReport."""
    if isinstance(report, SimulationReport):
        return {'machine': report.machine.value, 'status': report.status.value,
                'machine_counts': report.machine_counts, 'calculus_counts': report.calculus_counts,
                'labels_match': report.labels_match,
                'verdicts': [_verdict_document(v) for v in report.verdicts if v.status is not Status.Pass],
                'steps': len(report.verdicts), 'final': _verdict_document(report.final)}
    return {'machine': report.machine.value, 'size': report.size, 'counts': report.counts,
            'max_run': report.max_run, 'run_bound': report.run_bound, 'ratio': report.ratio,
            'lookup_max': report.lookup_max, 'lookup_total': report.lookup_total, 'violations': report.violations}

def _verdict_document(verdict):
    return {'index': verdict.index, 'label': verdict.label.value if verdict.label else None,
            'status': verdict.status.value, 'detail': verdict.detail}

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
