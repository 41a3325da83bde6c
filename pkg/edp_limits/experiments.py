""" Experiments behind the subcommands of the command-line interface

Each experiment resolves its parameters from the ``[[experiments]]`` section of the configuration, runs the
solvers of one part of the package, and returns a table of results together with pass/fail acceptance checks.

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits import gradsys
from edp_limits import markov
from edp_limits import membrane
from edp_limits import oracle
from edp_limits import potentials
from edp_limits import reaction
from edp_limits import three_state
from edp_limits.config import get_config
from edp_limits.debug_logs import get_debug_log
from edp_limits.fv import GridFunction1D
from edp_limits.util.dict import DictUtil
from edp_limits.util.rand import RandomState, derive_seeds
import copy
import math
import numpy as np

SUBCOMMANDS = ('identities', 'two-state', 'markov', 'three-state', 'membrane', 'reaction', 'oracle')
# :obj:`tuple`: experiments, in the order in which ``all`` runs them

DEFAULT_SEED = 0
# :obj:`int`: seed used if neither the command line nor the configuration sets one

QUICK = {
    'identities': {'grid_step': 0.1, 'xi_points': 41},
    'two-state': {'duration': 1.},
    'markov': {'n_chains': 3, 'n_points': 100, 'duration': 0.5},
    'three-state': {'epsilons': [0.3, 0.1, 0.03], 'duration': 0.5, 'p_points': 5, 'eta_points': 5,
                    'growth_points': 3},
    'membrane': {'duration': 0.05, 'dt': 1e-3},
    'reaction': {'epsilons': [0.2, 0.1], 'duration': 0.1, 'dt': 0.01, 'omega_cells': 4, 'upsilon_cells': 140},
    'oracle': {'n_instances': 10, 'grid_points': 200},
}
# :obj:`dict`: coarse parameters of each experiment for quick runs

POSITIVE_KEYS = ('grid_step', 'duration', 'dt', 'p0', 'mc_epsilon', 'growth_b', 'wiggly_epsilon', 'wiggly_r')
# :obj:`tuple`: parameters which must be strictly positive

HOMOGENIZATION_EPSILONS = (0.1, 0.01)
# :obj:`tuple`: periods of the coefficient ``2 + sin(2 pi y)`` in the two-structures check


class InvalidExperimentConfigError(Exception):
    """ Parameters of an experiment which pass the schema but can't be run

    Attributes:
        path (:obj:`str`): dotted path of the offending value
        message (:obj:`str`): reason
    """

    def __init__(self, path, message):
        super(InvalidExperimentConfigError, self).__init__(path, message)
        self.path = path
        self.message = message

    def __str__(self):
        return '{} :: {}'.format(self.path, self.message)


def _log_debug(message, sim_time=float('nan')):
    log = get_debug_log()
    if log:
        log.debug(message, sim_time=sim_time)


def section_name(subcommand):
    """ Name of the configuration section of a subcommand, e.g. ``three_state`` for ``three-state`` """
    return subcommand.replace('-', '_')


class ExperimentConfig(object):
    """ Resolved parameters of one experiment

    Attributes:
        name (:obj:`str`): subcommand
        params (:obj:`dict`): parameters
        seed (:obj:`int`): seed of all random draws
        quick (:obj:`bool`): whether the coarse parameters of :obj:`QUICK` were applied
    """

    def __init__(self, name, params, seed, quick=False):
        self.name = name
        self.params = params
        self.seed = seed
        self.quick = quick

    @classmethod
    def resolve(cls, name, user_params=None, seed=None, quick=False):
        """ Merge the packaged defaults, the quick parameters and the parameters of the user, then validate them

        Args:
            name (:obj:`str`): subcommand
            user_params (:obj:`dict`, optional): parameters of the user, which override all others
            seed (:obj:`int`, optional): seed, which overrides ``edp_limits.random.seed``
            quick (:obj:`bool`, optional): if :obj:`True`, start from the coarse parameters

        Returns:
            :obj:`ExperimentConfig`: configuration

        Raises:
            :obj:`InvalidConfigError`: if a parameter violates the schema
            :obj:`ExtraValuesError`: if a parameter isn't defined by the schema
            :obj:`InvalidExperimentConfigError`: if the parameters can't be run
        """
        if name not in SUBCOMMANDS:
            raise InvalidExperimentConfigError('subcommand', 'unknown experiment {}'.format(name))

        params = copy.deepcopy(QUICK[name]) if quick else {}
        params.update(user_params or {})
        extra = {'edp_limits': {'experiments': {section_name(name): params}}}
        if seed is not None:
            extra['edp_limits']['random'] = {'seed': seed}

        config = get_config(extra=extra)
        seed = DictUtil.nested_get(config, 'edp_limits.random.seed')
        params = DictUtil.to_builtin(DictUtil.nested_get(config, ['edp_limits', 'experiments', section_name(name)]))
        resolved = cls(name, params, seed if seed is not None else DEFAULT_SEED, quick=quick)
        resolved.validate()
        return resolved

    def validate(self):
        """ Check the constraints which the schema can't express

        Raises:
            :obj:`InvalidExperimentConfigError`: if a scale list isn't positive and strictly decreasing or a step
                isn't positive
        """
        prefix = 'edp_limits.experiments.{}.'.format(section_name(self.name))
        for key in POSITIVE_KEYS:
            if key in self.params and not self.params[key] > 0:
                raise InvalidExperimentConfigError(prefix + key, 'must be positive')
        if 'p0' in self.params and not self.params['p0'] < 1:
            raise InvalidExperimentConfigError(prefix + 'p0', 'must be less than 1')
        if 'epsilons' in self.params:
            epsilons = self.params['epsilons']
            if any(epsilon <= 0 for epsilon in epsilons):
                raise InvalidExperimentConfigError(prefix + 'epsilons', 'must be positive')
            if any(current >= previous for previous, current in zip(epsilons[:-1], epsilons[1:])):
                raise InvalidExperimentConfigError(prefix + 'epsilons', 'must be strictly decreasing')
        if 'dt' in self.params and 'duration' in self.params and self.params['dt'] > self.params['duration']:
            raise InvalidExperimentConfigError(prefix + 'dt', 'must not exceed the duration')

    def to_dict(self):
        """ :obj:`dict`: resolved configuration, enough to reproduce the run """
        return {'experiment': self.name, 'params': self.params, 'seed': self.seed, 'quick': self.quick}


class Check(object):
    """ Acceptance check of an experiment

    Attributes:
        name (:obj:`str`): name
        value (:obj:`float`): measured value
        threshold (:obj:`float`): bound which `value` must satisfy
        passed (:obj:`bool`): whether the check passed
    """

    def __init__(self, name, value, threshold, passed):
        self.name = name
        self.value = value
        self.threshold = threshold
        self.passed = bool(passed)

    @classmethod
    def below(cls, name, value, threshold):
        """ :obj:`Check`: passes if `value` is finite and less than `threshold` """
        value = float(value)
        return cls(name, value, threshold, math.isfinite(value) and value < threshold)

    @classmethod
    def holds(cls, name, condition):
        """ :obj:`Check`: passes if `condition` holds """
        return cls(name, None, None, condition)

    def to_dict(self):
        return {'name': self.name, 'value': self.value, 'threshold': self.threshold, 'passed': self.passed}


class ExperimentResult(object):
    """ Tables and acceptance checks of an experiment

    Attributes:
        name (:obj:`str`): subcommand
        header (:obj:`list` of :obj:`str`): columns of the main table
        rows (:obj:`list` of :obj:`list`): main table
        checks (:obj:`list` of :obj:`Check`): acceptance checks
        tables (:obj:`dict`): further tables, as pairs of a header and rows, by name
    """

    def __init__(self, name, header, rows, checks, tables=None):
        self.name = name
        self.header = list(header)
        self.rows = rows
        self.checks = checks
        self.tables = tables or {}

    @property
    def passed(self):
        """ :obj:`bool`: whether all checks passed """
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self):
        """ :obj:`list` of :obj:`str`: names of the failed checks """
        return [check.name for check in self.checks if not check.passed]


def _grid(step):
    return np.arange(step, 1. - step / 2., step)


def run_identities(cfg, map_fn=map):
    """ Elementary relations of the cosh pair and numeric Legendre duality

    Returns:
        :obj:`ExperimentResult`: rows p, q and the residuals of ``sqrt(pq) C*(log(p/q)) = 2 (sqrt(p) - sqrt(q))^2``
        and ``sqrt(pq) C*'(log(p/q)) = p - q``
    """
    grid = _grid(cfg.params['grid_step'])
    rows = []
    for p in grid:
        for q in grid:
            xi = math.log(p) - math.log(q)
            scale = math.sqrt(p * q)
            rows.append([p, q,
                         abs(scale * float(potentials.cosh_star(xi)) - 2. * (math.sqrt(p) - math.sqrt(q)) ** 2),
                         abs(scale * float(potentials.cosh_star_prime(xi)) - (p - q))])

    xi_grid = np.linspace(-5., 5., cfg.params['xi_points'])
    conjugates = list(map_fn(potentials.legendre, [potentials.cosh_c] * xi_grid.size, xi_grid))
    biconjugates = list(map_fn(potentials.legendre, [potentials.cosh_star] * xi_grid.size, xi_grid))
    legendre_rows = [[xi, float(potentials.cosh_star(xi)), conjugate, float(potentials.cosh_c(xi)), biconjugate]
                     for xi, conjugate, biconjugate in zip(xi_grid, conjugates, biconjugates)]

    checks = [
        Check.below('cosh_pair_value', max(row[2] for row in rows), 1e-12),
        Check.below('cosh_pair_derivative', max(row[3] for row in rows), 1e-12),
        Check.below('legendre_conjugate', max(abs(row[2] - row[1]) for row in legendre_rows), 1e-8),
        Check.below('legendre_biconjugate', max(abs(row[4] - row[3]) for row in legendre_rows), 1e-8),
    ]
    return ExperimentResult(cfg.name, ['p', 'q', 'value_residual', 'derivative_residual'], rows, checks, tables={
        'legendre': (['xi', 'cosh_star', 'conjugate_of_cosh', 'cosh', 'conjugate_of_cosh_star'], legendre_rows),
    })


def _triangular_loading(t):
    """ Loading from 0 up to 2, down to -2 and back to 0 on [0, 8] """
    return 2. - abs(t - 2.) if t < 6. else t - 8.


def _periodic_coefficient(y):
    return 2. + math.sin(2. * math.pi * y)


def run_two_state(cfg, map_fn=map):
    """ The quadratic and the entropic structure of ``dp/dt = 1 - 2p`` and the two-state chain, the hysteresis of
    the wiggly energy, and the envelopes of the two structures of a decay with an oscillating rate

    Returns:
        :obj:`ExperimentResult`: rows t, p of both structures, of the chain, and the exact solution
    """
    p0 = cfg.params['p0']
    duration = cfg.params['duration']
    dt = cfg.params['dt']

    structures = [gradsys.two_state_quadratic_gs(), gradsys.two_state_entropic_gs()]
    trajectories = [gradsys.evolve(gs, [p0], duration, dt, with_edb=False) for gs in structures]
    chain = markov.forward_solve(markov.two_state_generator(1., 1.), [p0, 1. - p0], duration, dt)
    times = trajectories[0].times
    exact = 0.5 + (p0 - 0.5) * np.exp(-2. * times)

    rows = [list(row) for row in zip(times, trajectories[0].states[:, 0], trajectories[1].states[:, 0],
                                     chain.states[:, 0], exact)]
    checks = [
        Check.below('quadratic_sup_error', np.max(np.abs(trajectories[0].states[:, 0] - exact)), 1e-6),
        Check.below('entropic_sup_error', np.max(np.abs(trajectories[1].states[:, 0] - exact)), 1e-6),
        Check.below('chain_sup_error', np.max(np.abs(chain.states[:, 0] - exact)), 1e-6),
        Check.below('quadratic_edb_residual', abs(gradsys.edb_gap(structures[0], trajectories[0])), 1e-4),
        Check.below('entropic_edb_residual', abs(gradsys.edb_gap(structures[1], trajectories[1])), 1e-4),
    ]

    r = cfg.params['wiggly_r']
    wiggly = gradsys.demo_wiggly(cfg.params['wiggly_epsilon'], r, _triangular_loading, 8., n_points=4001)
    width_error = abs(wiggly.hysteresis_width / (2. * r) - 1.)
    checks.append(Check.below('wiggly_hysteresis_width', width_error, 0.05))

    homogenization = gradsys.demo_two_structures(_periodic_coefficient, list(HOMOGENIZATION_EPSILONS))
    finest = dict(zip(homogenization.HEADER, homogenization.rows[-1]))
    checks += [
        Check.below('envelope_of_first_structure', abs(finest['max_ratio'] / homogenization.envelope_first - 1.), 0.01),
        Check.below('envelope_of_second_structure',
                    abs(finest['min_ratio'] / homogenization.envelope_second - 1.), 0.01),
    ]

    return ExperimentResult(cfg.name, ['t', 'p_quadratic', 'p_entropic', 'p_chain', 'p_exact'], rows, checks, tables={
        'wiggly': (['t', 'ell', 'u', 'play'],
                   [list(row) for row in zip(wiggly.times, wiggly.ell, wiggly.u, wiggly.play)]),
        'two_structures': (list(homogenization.HEADER), homogenization.rows),
    })


def _random_interior_states(random_state, n, size):
    states = random_state.uniform(0.05, 1., size=(n, size))
    return states / np.sum(states, axis=1)[:, np.newaxis]


def _certify_chain(seed, max_states, n_points):
    """ Largest gaps of the entropic field to the forward equation, and of the two formulas of the dual dissipation

    Returns:
        :obj:`list`: seed, number of states, reversibility residual, field gap and formula gap
    """
    random_state = RandomState(seed=seed)
    size = int(random_state.randint(2, max_states + 1))
    gen = markov.random_reversible_generator(size, seed)
    cert = markov.detailed_balance(gen)
    gs = markov.entropic_gs(gen, cert)
    scale = np.max(np.abs(gen.a))

    field_gap = 0.
    formula_gap = 0.
    for c in _random_interior_states(random_state, n_points, size):
        expected = gen.a.dot(c)
        field_gap = max(field_gap, float(np.max(np.abs(gs.vector_field(c) - expected)) / (scale * np.max(c))))

        xi = random_state.uniform(-2., 2., size=size)
        closed = gs.r_star(c, xi)
        via_h = markov.r_star_via_h(gen, cert, c, xi)
        formula_gap = max(formula_gap, abs(via_h - closed) / (1. + abs(closed)))
    return [seed, size, cert.residual, field_gap, formula_gap]


def _empirical_gap(gen, c0, n_particles, duration, dt, seed):
    exact = markov.forward_solve(gen, c0, duration, dt)
    emp = markov.simulate_empirical(gen, c0, n_particles, duration, seed, n_points=exact.times.size)
    return float(np.max(np.abs(emp.densities - exact.states)))


def run_markov(cfg, map_fn=map):
    """ Certified gradient structures of random reversible chains, their balance, and the law of large numbers

    Returns:
        :obj:`ExperimentResult`: one row per random chain
    """
    params = cfg.params
    seeds = derive_seeds(cfg.seed, params['n_chains'] + 2)
    chain_seeds = seeds[:-2]
    n = len(chain_seeds)
    rows = list(map_fn(_certify_chain, chain_seeds, [params['max_states']] * n, [params['n_points']] * n))

    gen = markov.random_reversible_generator(params['edb_states'], seeds[-2])
    gs = markov.entropic_gs(gen, markov.detailed_balance(gen))
    c0 = _random_interior_states(RandomState(seed=seeds[-2]), 1, params['edb_states'])[0]
    traj = gradsys.evolve(gs, c0, params['duration'], params['dt'], with_edb=False)
    edb_residual = abs(gradsys.edb_gap(gs, traj))

    three = markov.three_state_generator(params['mc_epsilon'])
    mc_seeds = derive_seeds(seeds[-1], params['n_seeds'])
    n_mc = len(mc_seeds)
    gaps = list(map_fn(_empirical_gap, [three] * n_mc, [[1., 0., 0.]] * n_mc, [params['n_particles']] * n_mc,
                       [params['duration']] * n_mc, [params['dt']] * n_mc, mc_seeds))
    success_rate = float(np.mean(np.array(gaps) < 0.05))
    _log_debug('Certified {} chains; empirical success rate {:.2f}'.format(n, success_rate),
               sim_time=params['duration'])

    checks = [
        Check.below('field_equals_forward_equation', max(row[3] for row in rows), 1e-9),
        Check.below('dual_dissipation_formulas_agree', max(row[4] for row in rows), 1e-9),
        Check.below('edb_residual', edb_residual, 1e-4),
        Check('empirical_process_success_rate', success_rate, 0.95, success_rate >= 0.95),
    ]
    return ExperimentResult(cfg.name, ['seed', 'size', 'reversibility_residual', 'field_gap', 'formula_gap'],
                            rows, checks, tables={
                                'montecarlo': (['seed', 'sup_gap'], [list(row) for row in zip(mc_seeds, gaps)]),
                            })


def _closed_form_rows(case, p_grid, eta_grid):
    limit = three_state.reduced(three_state.FamilyConfig.from_case(case, 1.))
    rows = []
    for p in p_grid:
        sigma_gap = abs(limit.sigma(p) - limit.closed_sigma(p))
        for eta in eta_grid:
            expected = limit.closed_r_star(p, eta)
            rows.append([case, p, eta, sigma_gap, abs(limit.r_star(p, eta) - expected) / (1. + expected)])
    return rows


def _chain_limit_gap():
    """ Largest gap between the reduced cosh structure and the entropic structure of the symmetric two-state chain """
    limit = three_state.reduced(three_state.FamilyConfig.cosh(1.))
    gen = markov.two_state_generator(1., 1.)
    gs = markov.entropic_gs(gen, markov.detailed_balance(gen), normalization='unit')
    gap = 0.
    for p in np.linspace(0.05, 0.95, 19):
        c = np.array([p, 1. - p])
        gap = max(gap, abs(limit.energy(p) - gs.energy(c)))
        for eta in np.linspace(-6., 6., 13):
            value = gs.r_star(c, np.array([eta, 0.]))
            gap = max(gap, abs(limit.closed_r_star(p, eta) - value) / (1. + value))
    return gap


def run_three_state(cfg, map_fn=map):
    """ Convergence of a three-state family, the closed forms of its limit, and superquadratic growth

    Returns:
        :obj:`ExperimentResult`: one row per scale with the sup error and the dissipation gap
    """
    params = cfg.params
    case = section_name(params['case'])
    report = three_state.edp_sweep(case, params['epsilons'], params['p0'], params['duration'], params['dt'],
                                   map_fn=map_fn)

    p_grid = np.linspace(0.05, 0.95, params['p_points'])
    eta_grid = np.linspace(-6., 6., params['eta_points'])
    closed_rows = _closed_form_rows('quadratic', p_grid, eta_grid) + _closed_form_rows('cosh', p_grid, eta_grid)

    eta_max = 20.
    growth = three_state.entropic_quadratic_growth(0.5, np.linspace(10., eta_max, params['growth_points']),
                                                   b=params['growth_b'])

    checks = [
        Check.holds('all_scales_integrated', not report.failures),
        Check.holds('errors_decrease', bool(report.rows) and report.converging(slack=0.1)),
    ]
    if report.rows:
        checks.append(Check.below('smallest_scale_sup_error', report.rows[-1][1], 5e-2))
        checks.append(Check.below('smallest_scale_dissipation_gap', report.rows[-1][2], 1e-1))
    checks += [
        Check.below('closed_sigma', max(row[3] for row in closed_rows), 1e-7),
        Check.below('closed_r_star', max(row[4] for row in closed_rows), 1e-7),
        Check('growth_ratio', min(growth.ratios), 7.5, min(growth.ratios) >= 7.5),
        Check.holds('growth_bound', growth.bound_holds(safety=0.5, min_eta=eta_max)),
        Check.below('commutes_with_two_state_chain', _chain_limit_gap(), 1e-9),
    ]
    return ExperimentResult(cfg.name, three_state.SweepReport.HEADER, report.rows, checks, tables={
        'closed_forms': (['case', 'p', 'eta', 'sigma_gap', 'r_star_gap'], closed_rows),
        'growth': (three_state.GrowthReport.HEADER, growth.rows),
    })


def _initial_density(x):
    return 0.5 * (1. + 0.8 * np.sin(math.pi * np.asarray(x) / 2.))


def _membrane_structure_gap(seed):
    """ Largest gap between the limit dual dissipation and the large-deviation structure of the membrane """
    profile = membrane.LayerProfile.flat()
    mesh = membrane.limit_mesh(20)
    disc = membrane.limit_discretization(profile, mesh=mesh)
    random_state = RandomState(seed=seed)
    gap = 0.
    for _ in range(10):
        u = random_state.uniform(0.2, 1., mesh.size)
        u /= disc.mass(u)
        xi = random_state.uniform(-2., 2., mesh.size)
        v_minus, v_plus = disc.traces(u)
        traces = (v_minus * disc.w_minus, v_plus * disc.w_plus)
        r_star_0 = membrane.r_star_limit(profile, GridFunction1D(mesh, u), xi)
        r_star_ldp = membrane.r_star_membrane(mesh, np.ones(mesh.size), u, xi / 2., 2. * disc.coupling, traces)
        gap = max(gap, abs(r_star_0 / (2. * r_star_ldp) - 1.))
    return gap


def run_membrane(cfg, map_fn=map):
    """ Convergence of thin-layer solutions to the transmission problem

    Returns:
        :obj:`ExperimentResult`: one row per layer width
    """
    params = cfg.params
    profile = membrane.LayerProfile.flat()
    report = membrane.edp_check_membrane(profile, params['epsilons'], _initial_density, params['duration'],
                                         dt=params['dt'], map_fn=map_fn)

    checks = [
        Check.below('a_star_of_flat_profile', abs(membrane.a_star_coeff(profile) - 0.5), 1e-10),
        Check.holds('all_widths_solved', not report.failures),
        Check.holds('l1_gaps_decrease', bool(report.rows) and report.converging(slack=0.1)),
    ]
    if report.rows:
        checks.append(Check.below('smallest_width_l1_gap', report.column('l1_gap')[-1], 2e-2))
        checks.append(Check.below('smallest_width_energy_gap', report.column('energy_gap')[-1], 1e-2))
    checks.append(Check.below('commutes_with_membrane_structure', _membrane_structure_gap(cfg.seed), 1e-9))
    return ExperimentResult(cfg.name, membrane.MembraneReport.HEADER, report.rows, checks)


def _random_fields(setup, n, seed):
    mesh = reaction.omega_mesh(setup)
    random_state = RandomState(seed=seed)
    for _ in range(n):
        values = random_state.uniform(0.1, 2., size=(2, mesh.size))
        values /= np.dot(mesh.widths, values[0] + values[1])
        yield reaction.TwoSpeciesField(mesh, values[0], values[1])


def run_reaction(cfg, map_fn=map):
    """ Kramers scaling, equilibrium split, the limit field and the convergence of well masses

    Returns:
        :obj:`ExperimentResult`: one row per temperature
    """
    params = cfg.params
    epsilons = params['epsilons']
    setup = reaction.ReactionSetup.default(epsilons[-1], omega_cells=params['omega_cells'],
                                           upsilon_cells=params['upsilon_cells'])

    kramers = reaction.kramers(setup)

    split_disc = reaction.FPDiscretization(reaction.ReactionSetup.default(0.05, omega_cells=1))
    split = reaction.well_marginals(split_disc.equilibrium())
    alpha_0, alpha_1 = setup.alphas
    split_gap = max(abs(split.c0[0] / alpha_0 - 1.), abs(split.c1[0] / alpha_1 - 1.))

    field_gap = max(float(np.max(np.abs(reaction.limit_field(setup, c) - reaction.rds_rate(setup, c))))
                    for c in _random_fields(setup, 5, cfg.seed))

    chain_setup = reaction.ReactionSetup.default(epsilons[-1], omega_cells=1, m_omega=0.)
    random_state = RandomState(seed=cfg.seed)
    p = random_state.uniform(0.05, 0.95, size=20)
    chain_gap = reaction.reduced_structure_gap(chain_setup, np.array([p, 1. - p]).T,
                                               random_state.normal(scale=2., size=(20, 2)))

    c_init = reaction.TwoSpeciesField.sample(reaction.omega_mesh(setup), lambda x: 1. + x, lambda x: 1.5 - x)
    report = reaction.edp_check_reaction(setup, epsilons, c_init, params['duration'], dt=params['dt'],
                                         map_fn=map_fn)

    checks = [
        Check('kramers_ratio_gap', abs(float(kramers.ratios[np.argmin(kramers.epsilons)]) - 1.), 0.02,
              kramers.limit_check(0.02)),
        Check.below('equilibrium_split', split_gap, 0.02),
        Check.below('limit_field_identity', field_gap, 1e-8),
        Check.below('commutes_with_two_state_chain', chain_gap, 1e-9),
        Check.holds('all_temperatures_solved', not report.failures),
        Check.holds('l1_gaps_decrease', bool(report.rows) and report.converging(slack=0.1)),
    ]
    return ExperimentResult(cfg.name, reaction.ReactionReport.HEADER, report.rows, checks, tables={
        'kramers': (['epsilon', 'ratio'], [list(row) for row in zip(kramers.epsilons, kramers.ratios)]),
    })


def run_oracle(cfg, map_fn=map):
    """ Closed forms of the layer problems against brute-force minimization over random instances

    Returns:
        :obj:`ExperimentResult`: one row per instance
    """
    seeds = derive_seeds(cfg.seed, cfg.params['n_instances'])
    rows = oracle.oracle_table(seeds, grid_points=cfg.params['grid_points'], map_fn=map_fn)
    checks = [
        Check.below('g_gap', max(row.g_gap for row in rows), 1e-3),
        Check.below('parabola_gap', max(row.parabola_gap for row in rows), 1e-2),
        Check.below('n_gap', max(row.n_gap for row in rows), 1e-3),
        Check.below('bridge_gap', max(row.bridge_gap for row in rows), 1e-4),
    ]
    return ExperimentResult(cfg.name, oracle.OracleRow.HEADER, [row.to_list() for row in rows], checks)


RUNNERS = {
    'identities': run_identities,
    'two-state': run_two_state,
    'markov': run_markov,
    'three-state': run_three_state,
    'membrane': run_membrane,
    'reaction': run_reaction,
    'oracle': run_oracle,
}
# :obj:`dict`: experiment of each subcommand


def run(cfg, map_fn=map):
    """ Run the experiment of a configuration

    Args:
        cfg (:obj:`ExperimentConfig`): configuration
        map_fn (:obj:`callable`, optional): map over sweep entries, e.g. of an executor

    Returns:
        :obj:`ExperimentResult`: result
    """
    _log_debug('Running {} with seed {}'.format(cfg.name, cfg.seed))
    result = RUNNERS[cfg.name](cfg, map_fn=map_fn)
    _log_debug('{}: {} of {} checks passed'.format(
        cfg.name, len(result.checks) - len(result.failed_checks), len(result.checks)))
    return result
