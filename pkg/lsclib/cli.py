#! /usr/bin/env python3

"""
Command line front end.

Fuel counts machine transitions for `run`, `verify` and `diff`, and strategy
steps for `calc`. Exit status: 0 when everything passes, 1 on a failed check,
2 on a usage error.
"""

import sys
import argparse
import logging
logger = logging.getLogger(__name__)

from lsclib import server
from lsclib.lib import config, exceptions, util
from lsclib.lib.syntax import parse, render, is_pure
from lsclib.lib.calculus import Strategy, evaluate
from lsclib.lib.equivalence import EqTheory, VerdictKind, struct_equiv
from lsclib.lib.machines import MachineId, machine_id
from lsclib.lib import check, distillery, generate, oracle, suites
from lsclib.lib import trace as traces

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _enum_value(enum_class, value):
    try:
        return enum_class(value)
    except ValueError:
        raise exceptions.UsageError('unknown {} {!r}, expected one of: {}'.format(
            enum_class.__name__.lower(), value, ', '.join(e.value for e in enum_class)))

def _pure(text):
    t = parse(text)
    if not is_pure(t):
        raise exceptions.UsageError('machines run pure terms, got {}'.format(text))
    return t

def _emit(text, out=None):
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text + '\n')
    else:
        print(text)


def cmd_run(args):
    run = traces.run_machine(machine_id(args.machine), _pure(args.term), args.fuel)
    if args.format == 'text':
        _emit(traces.render_trace(run), args.out)
    elif args.out:
        traces.write_trace(run, path=args.out)
    else:
        traces.write_trace(run, stream=sys.stdout)
    return EXIT_OK

def cmd_calc(args):
    strategy = _enum_value(Strategy, args.strategy)
    t = parse(args.term)
    lines = [render(t)]
    for label, reduct in evaluate(t, strategy, args.steps):
        lines.append('{} {}'.format(label.value, render(reduct)))
    _emit('\n'.join(lines), args.out)
    return EXIT_OK

def cmd_equiv(args):
    theory = _enum_value(EqTheory, args.theory)
    verdict = struct_equiv(parse(args.left), parse(args.right), theory, args.budget)
    document = {'verdict': verdict.kind.value, 'expanded': verdict.expanded,
                'path': ['{}-{}'.format(step.axiom.value, step.direction) for step in verdict.path or []]}
    _emit(util.json_dump(document), args.out)
    return EXIT_OK if verdict.kind is VerdictKind.Equivalent else EXIT_FAILURE

def cmd_verify(args):
    theory = _enum_value(EqTheory, args.theory) if args.theory else None
    run = traces.run_machine(machine_id(args.machine), _pure(args.term), args.fuel)
    simulation = distillery.verify_trace(run, args.budget, theory)
    complexity = distillery.complexity_report(run)
    invariants = check.check_trace_invariants(run)
    document = {
        'simulation': distillery.report_document(simulation),
        'complexity': distillery.report_document(complexity),
        'invariants': [{'state': index, 'clause': clause.clause, 'detail': clause.detail} for index, clause in invariants],
    }
    _emit(util.json_dump(document), args.out)
    passed = simulation.status is distillery.Status.Pass and not complexity.violations and not invariants
    return EXIT_OK if passed else EXIT_FAILURE

def cmd_diff(args):
    report = oracle.differential_run(_pure(args.term), _enum_value(Strategy, args.group), args.fuel)
    _emit(util.json_dump(oracle.report_document(report)), args.out)
    return EXIT_FAILURE if report.mismatches else EXIT_OK

def cmd_gen(args):
    if args.max_size < 2:
        raise exceptions.UsageError('--max-size must be at least 2')
    corpus = generate.gen_corpus(args.seed, args.count, args.max_size) if args.count > 1 else \
        [generate.gen_closed_term(generate.GenConfig(args.seed, args.max_size))]
    _emit('\n'.join(render(t) for t in corpus), args.out)
    return EXIT_OK

def cmd_suite(args):
    if args.name != 'all' and args.name not in suites.SUITES:
        raise exceptions.UsageError('unknown suite {!r}, expected one of: all, {}'.format(args.name, ', '.join(suites.SUITES)))
    results = suites.run_suite(args.name, args.seed, args.cases)
    _emit(util.json_dump(suites.suite_document(results)), args.out)
    return EXIT_OK if all(not r.failures and not r.inconclusive for r in results) else EXIT_FAILURE


def build_parser():
    parser = argparse.ArgumentParser(prog='lsc', description='linear substitution calculus, abstract machines and their distillation')
    parser.add_argument('-V', '--version', action='version', version='%(prog)s v{}'.format(config.VERSION_STRING))
    parser.add_argument('-v', '--verbose', dest='verbose', action='store_true', help='sets log level to DEBUG')
    parser.add_argument('--log-file', nargs='?', const=None, default=False, help='log to the specified file (default location when no file is given)')
    parser.add_argument('--console-log-filter', help='module filters for console logging, e.g. "*,-lsclib.lib.equivalence"')
    parser.add_argument('--workers', type=int, default=None, help='worker threads for suites (default: {})'.format(config.DEFAULT_WORKERS))

    subparsers = parser.add_subparsers(dest='action', help='the action to be taken')

    parser_run = subparsers.add_parser('run', help='run a machine on a term and print its trace')
    parser_run.add_argument('--machine', required=True, help=', '.join(m.value for m in MachineId))
    parser_run.add_argument('--term', required=True)
    parser_run.add_argument('--fuel', type=int, default=config.DEFAULT_FUEL, help='maximum number of transitions')
    parser_run.add_argument('--format', choices=('jsonl', 'text'), default='jsonl')
    parser_run.add_argument('--out')

    parser_calc = subparsers.add_parser('calc', help='reduce a term with a strategy')
    parser_calc.add_argument('--strategy', required=True, help=', '.join(s.value for s in Strategy))
    parser_calc.add_argument('--term', required=True)
    parser_calc.add_argument('--steps', type=int, default=config.DEFAULT_FUEL, help='maximum number of steps')
    parser_calc.add_argument('--out')

    parser_equiv = subparsers.add_parser('equiv', help='decide structural equivalence of two terms')
    parser_equiv.add_argument('--theory', default=EqTheory.Full.value, help=', '.join(t.value for t in EqTheory))
    parser_equiv.add_argument('--budget', type=int, default=config.DEFAULT_BUDGET, help='maximum number of search nodes')
    parser_equiv.add_argument('left')
    parser_equiv.add_argument('right')
    parser_equiv.add_argument('--out')

    parser_verify = subparsers.add_parser('verify', help='check the distillation of a machine execution')
    parser_verify.add_argument('--machine', required=True, help=', '.join(m.value for m in MachineId))
    parser_verify.add_argument('--term', required=True)
    parser_verify.add_argument('--fuel', type=int, default=config.DEFAULT_FUEL)
    parser_verify.add_argument('--budget', type=int, default=config.DEFAULT_BUDGET)
    parser_verify.add_argument('--theory', help='theory of the multiplicative clause, overriding the default one')
    parser_verify.add_argument('--out')

    parser_diff = subparsers.add_parser('diff', help='run every machine of a strategy against the calculus')
    parser_diff.add_argument('--group', required=True, help=', '.join(s.value for s in Strategy))
    parser_diff.add_argument('--term', required=True)
    parser_diff.add_argument('--fuel', type=int, default=config.DEFAULT_FUEL)
    parser_diff.add_argument('--out')

    parser_gen = subparsers.add_parser('gen', help='generate random closed terms')
    parser_gen.add_argument('--seed', type=int, default=config.DEFAULT_SEED)
    parser_gen.add_argument('--max-size', type=int, default=config.DEFAULT_MAX_SIZE)
    parser_gen.add_argument('--count', type=int, default=1)
    parser_gen.add_argument('--out')

    parser_suite = subparsers.add_parser('suite', help='run an acceptance suite')
    parser_suite.add_argument('--name', default='all', help='all, ' + ', '.join(suites.SUITES))
    parser_suite.add_argument('--seed', type=int, default=None, help='corpus seed (default: ${} or {})'.format(config.SEED_ENV_VAR, config.DEFAULT_SEED))
    parser_suite.add_argument('--cases', type=int, default=None)
    parser_suite.add_argument('--out')

    return parser

COMMANDS = {
    'run': cmd_run,
    'calc': cmd_calc,
    'equiv': cmd_equiv,
    'verify': cmd_verify,
    'diff': cmd_diff,
    'gen': cmd_gen,
    'suite': cmd_suite,
}

def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.action:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    try:
        server.initialise_config(seed=getattr(args, 'seed', None) if args.action == 'suite' else None,
                                 fuel=getattr(args, 'fuel', None), budget=getattr(args, 'budget', None),
                                 workers=args.workers, log_file=args.log_file, verbose=args.verbose,
                                 console_logfilter=args.console_log_filter)
        return COMMANDS[args.action](args)
    except (exceptions.UsageError, exceptions.ParseError, exceptions.TermError, server.ConfigurationError) as e:
        print('lsc {}: {}'.format(args.action, e), file=sys.stderr)
        return EXIT_USAGE

if __name__ == '__main__':
    sys.exit(main())

# vim: tabstop=8 expandtab shiftwidth=4 softtabstop=4
