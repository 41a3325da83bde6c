""" Command-line interface: one subcommand per experiment

Each subcommand writes ``<name>.csv``, a gnuplot data file ``<name>.dat``, further tables as
``<name>.<table>.csv``/``.dat`` and ``<name>.summary.json`` with the resolved configuration and the outcome of each
acceptance check. The exit status is 0 if all checks pass, 1 if a check or a solver fails, and 2 if the
configuration is invalid.

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from concurrent import futures
from edp_limits import experiments
from edp_limits._version import __version__
from edp_limits.config import ExtraValuesError, InvalidConfigError
from edp_limits.experiments import ExperimentConfig, InvalidExperimentConfigError, SUBCOMMANDS
from edp_limits.gradsys import AdmissibilityError, DetailedBalanceError, StepSizeUnderflowError
from edp_limits.markov import InvalidGeneratorError, NoUniqueStationaryError, ReversibilityError
from edp_limits.membrane import InvalidProfileError
from edp_limits.oracle import BruteForceConvergenceError
from edp_limits.potentials import DomainError, OutOfRangeError, UnboundedSupremumError
from edp_limits.reaction import InvalidSetupError
from edp_limits.three_state import OptimizationError
from edp_limits.util import io
import argparse
import json
import os
import sys
import time

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID_CONFIG = 2

CONFIG_ERRORS = (InvalidConfigError, ExtraValuesError, InvalidExperimentConfigError)
# :obj:`tuple`: errors of configurations

NUMERIC_ERRORS = (AdmissibilityError, DetailedBalanceError, StepSizeUnderflowError, InvalidGeneratorError,
                  NoUniqueStationaryError, ReversibilityError, InvalidProfileError, BruteForceConvergenceError,
                  DomainError, OutOfRangeError, UnboundedSupremumError, InvalidSetupError, OptimizationError,
                  ArithmeticError)
# :obj:`tuple`: errors of solvers which fail an experiment


def build_parser():
    """ Build the argument parser

    Returns:
        :obj:`argparse.ArgumentParser`: parser
    """
    parser = argparse.ArgumentParser(
        prog='edp-limits',
        description='Numerical experiments on limits of gradient systems')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    subparsers = parser.add_subparsers(dest='subcommand', metavar='subcommand')

    for name in SUBCOMMANDS + ('all',):
        summary = 'run every experiment' if name == 'all' else 'run the {} experiment'.format(name)
        subparser = subparsers.add_parser(name, help=summary)
        subparser.add_argument('--config', default=None,
                               help='JSON file with parameters; for "all", an object of parameters per experiment')
        subparser.add_argument('--out', default='.', help='output directory (default: current directory)')
        subparser.add_argument('--quick', action='store_true', help='run at coarse resolution')
        subparser.add_argument('--jobs', type=_positive_int, default=1, help='number of parallel sweep entries')
        subparser.add_argument('--seed', type=int, default=None, help='seed of all random draws')
        if name == 'three-state':
            subparser.add_argument('--case', choices=('quadratic', 'cosh', 'entropic-quadratic'), default=None,
                                   help='family of the three-state chain')
    return parser


def _positive_int(value):
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError('must be a positive integer')
    return number


def load_user_config(path):
    """ Read a JSON configuration

    Args:
        path (:obj:`str`): path, or :obj:`None`

    Returns:
        :obj:`dict`: configuration; empty if `path` is :obj:`None`

    Raises:
        :obj:`InvalidExperimentConfigError`: if the file can't be read or isn't a JSON object
    """
    if path is None:
        return {}
    try:
        with open(path, 'r') as file:
            user_config = json.load(file)
    except (IOError, ValueError) as error:
        raise InvalidExperimentConfigError(path, str(error))
    if not isinstance(user_config, dict):
        raise InvalidExperimentConfigError(path, 'must contain a JSON object')
    return user_config


def resolve_configs(subcommand, user_config, seed=None, quick=False, case=None):
    """ Resolve the configuration of each experiment of a subcommand

    A top-level ``seed`` of `user_config` applies to all experiments unless `seed` is given.

    Args:
        subcommand (:obj:`str`): subcommand or ``all``
        user_config (:obj:`dict`): parameters of the experiment, or, for ``all``, parameters by experiment
        seed (:obj:`int`, optional): seed
        quick (:obj:`bool`, optional): whether to run at coarse resolution
        case (:obj:`str`, optional): family of the three-state experiment

    Returns:
        :obj:`list` of :obj:`ExperimentConfig`: configurations

    Raises:
        :obj:`InvalidConfigError`: if a parameter violates the schema
        :obj:`ExtraValuesError`: if a parameter isn't defined by the schema
        :obj:`InvalidExperimentConfigError`: if the parameters can't be run
    """
    user_config = dict(user_config)
    if seed is None:
        seed = user_config.pop('seed', None)
    else:
        user_config.pop('seed', None)

    if subcommand == 'all':
        unknown = sorted(set(user_config) - set(SUBCOMMANDS) - set(map(experiments.section_name, SUBCOMMANDS)))
        if unknown:
            raise InvalidExperimentConfigError(unknown[0], 'is not an experiment')
        names = SUBCOMMANDS
        params = {name: user_config.get(name, user_config.get(experiments.section_name(name), {}))
                  for name in names}
    else:
        names = (subcommand,)
        params = {subcommand: user_config}

    if case is not None:
        params['three-state'] = dict(params.get('three-state', {}), case=case)

    configs = []
    for name in names:
        if not isinstance(params[name], dict):
            raise InvalidExperimentConfigError(name, 'must be a JSON object')
        configs.append(ExperimentConfig.resolve(name, params[name], seed=seed, quick=quick))
    return configs


def write_result(result, cfg, out_dir, runtime, jobs=1, error=None):
    """ Write the tables and the summary of an experiment

    Args:
        result (:obj:`experiments.ExperimentResult`): result; :obj:`None` if a solver failed
        cfg (:obj:`ExperimentConfig`): configuration
        out_dir (:obj:`str`): output directory
        runtime (:obj:`float`): runtime in seconds
        jobs (:obj:`int`, optional): number of workers
        error (:obj:`str`, optional): message of the failure of a solver

    Returns:
        :obj:`dict`: summary
    """
    stem = os.path.join(out_dir, cfg.name)
    files = []
    if result is not None:
        tables = [(stem, result.header, result.rows)]
        tables += [(stem + '.' + name, header, rows) for name, (header, rows) in sorted(result.tables.items())]
        for path, header, rows in tables:
            io.write_csv(path + '.csv', header, rows)
            io.write_plot_data(path + '.dat', header, rows)
            files += [os.path.basename(path) + '.csv', os.path.basename(path) + '.dat']

    checks = [check.to_dict() for check in result.checks] if result is not None else []
    failed = result.failed_checks if result is not None else ['solver']
    summary = {
        'version': __version__,
        'config': cfg.to_dict(),
        'jobs': jobs,
        'checks': checks,
        'failed_checks': failed,
        'passed': not failed,
        'error': error,
        'files': files,
        'runtime': runtime,
    }
    io.write_json(stem + '.summary.json', summary)
    return summary


def run(subcommand, config_path=None, out_dir='.', quick=False, jobs=1, seed=None, case=None):
    """ Run the experiments of a subcommand and write their outputs

    Args:
        subcommand (:obj:`str`): subcommand or ``all``
        config_path (:obj:`str`, optional): path of a JSON configuration
        out_dir (:obj:`str`, optional): output directory
        quick (:obj:`bool`, optional): whether to run at coarse resolution
        jobs (:obj:`int`, optional): number of parallel sweep entries
        seed (:obj:`int`, optional): seed
        case (:obj:`str`, optional): family of the three-state experiment

    Returns:
        :obj:`int`: exit status
    """
    try:
        configs = resolve_configs(subcommand, load_user_config(config_path), seed=seed, quick=quick, case=case)
    except CONFIG_ERRORS as error:
        sys.stderr.write('Invalid configuration:\n{}\n'.format(error))
        return EXIT_INVALID_CONFIG

    if not os.path.isdir(out_dir):
        os.makedirs(out_dir)

    status = EXIT_OK
    executor = futures.ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for cfg in configs:
            start = time.time()
            try:
                result = experiments.run(cfg, map_fn=executor.map if executor else map)
                error = None
            except NUMERIC_ERRORS as exception:
                result = None
                error = '{}: {}'.format(exception.__class__.__name__, exception)
            summary = write_result(result, cfg, out_dir, time.time() - start, jobs=jobs, error=error)

            if summary['passed']:
                print('{}: {} checks passed'.format(cfg.name, len(summary['checks'])))
            else:
                status = EXIT_FAILED
                print('{}: FAILED {}{}'.format(cfg.name, ', '.join(summary['failed_checks']),
                                               ' ({})'.format(error) if error else ''))
    finally:
        if executor:
            executor.shutdown()
    return status


def main(argv=None):
    """ Parse the command line, run the experiments and exit with their status

    Args:
        argv (:obj:`list` of :obj:`str`, optional): arguments; by default those of the process
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.subcommand is None:
        parser.print_help()
        sys.exit(EXIT_INVALID_CONFIG)
    sys.exit(run(args.subcommand, config_path=args.config, out_dir=args.out, quick=args.quick, jobs=args.jobs,
                 seed=args.seed, case=getattr(args, 'case', None)))
