import collections
import logging
logger = logging.getLogger(__name__)

from lsclib.lib import config, exceptions
from lsclib.lib.syntax import alpha_eq, free_vars, unfold, render
from lsclib.lib.calculus import Strategy, step_calculus
from lsclib.lib.machines import MachineId, get_module
from lsclib.lib import trace as traces

GROUPS = {
    Strategy.Name: (MachineId.KAM, MachineId.MAM),
    Strategy.ValueLR: (MachineId.CEK, MachineId.SplitCEK),
    Strategy.ValueRL: (MachineId.LAM,),
    Strategy.Need: (MachineId.WAM, MachineId.MergedWAM, MachineId.PointingWAM),
}

DifferentialReport = collections.namedtuple('DifferentialReport', ['group', 'counts', 'terminated', 'result', 'mismatches'])


def reference_eval(t, strategy, fuel=None):
    """Unfolded normal form of `t` under `strategy`, or None when `fuel` steps do not reach it."""
    free = free_vars(t)
    if free:
        raise exceptions.OpenTermError('open term, free variables: {}'.format(', '.join(sorted(free))), free=free)
    fuel = config.FUEL if fuel is None else fuel
    for _ in range(fuel):
        result = step_calculus(t, strategy)
        if result is None:
            return unfold(t)
        t = result[1]
    if step_calculus(t, strategy) is None:
        return unfold(t)
    return None

def _prefix_counts(labels, length):
    prefix = labels[:length]
    return prefix.count('m'), prefix.count('e')

def differential_run(t, group, fuel=None):
    """Run every machine of a strategy group and the calculus on `t` and compare them."""
    fuel = config.FUEL if fuel is None else fuel
    runs = collections.OrderedDict((m, traces.run_machine(m, t, fuel)) for m in GROUPS[group])
    mismatches = []

    principal = {m: traces.principal_labels(trace) for m, trace in runs.items()}
    common = min(len(labels) for labels in principal.values())
    reference_machine = next(iter(runs))
    expected = _prefix_counts(principal[reference_machine], common)
    for m, labels in principal.items():
        counts = _prefix_counts(labels, common)
        if counts != expected:
            mismatches.append('{} made (m, e) = {} in its first {} principal steps, {} made {}'.format(
                m.value, counts, common, reference_machine.value, expected))

    terminated = all(trace.outcome is traces.Outcome.Final for trace in runs.values())
    result = None
    if terminated:
        unfolded = {m: unfold(get_module(m).decode(traces.final_state(trace))) for m, trace in runs.items()}
        result = reference_eval(t, group, fuel)
        if result is None:
            mismatches.append('machines terminated but the calculus did not within {} steps'.format(fuel))
        for m, term in unfolded.items():
            if result is not None and not alpha_eq(term, result):
                mismatches.append('{} computed {}, the calculus {}'.format(m.value, render(term), render(result)))

    counts = {m.value: traces.counts(trace) for m, trace in runs.items()}
    return DifferentialReport(group, counts, terminated, result, mismatches)

def report_document(report):
    return {'group': report.group.value, 'counts': report.counts, 'terminated': report.terminated,
            'result': render(report.result) if report.result is not None else None,
            'mismatches': report.mismatches}

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
