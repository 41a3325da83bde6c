""" Gradient structures of a three-state chain whose middle state empties fast, their reduced
limit on two states, and numeric checks of the convergence of the energy-dissipation principle

The chain ``du/dt = (2 + eps) [[-1, 1/eps, 0], [1, -2/eps, 1], [0, 1/eps, -1]] u`` has the equilibrium
``w = (1, eps, 1) / (2 + eps)``. For ``eps -> 0``, ``u(t) -> (p(t), 0, 1 - p(t))`` with ``dp/dt = 1 - 2p``.
Each pair of an entropy density `phi` and a dissipation pair ``(psi, psi*)`` gives a gradient
structure of the chain; its limit is a gradient structure ``([0, 1], E, R)`` of the reduced equation.

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits import gradsys
from edp_limits import markov
from edp_limits.config import get_config
from edp_limits.debug_logs import get_debug_log
from edp_limits.gradsys import GradientSystem, StepSizeUnderflowError, Trajectory
from edp_limits.potentials import (DissipationPair, DomainError, EntropyDensity, cosh_c, cosh_star,
                                   inf_convolution, inf_convolution_cosh)
from edp_limits.util import io
from scipy import optimize
import math
import numpy as np

config = get_config()['edp_limits']['three_state']

CASES = ('quadratic', 'cosh', 'entropic_quadratic')
# :obj:`tuple`: names of the preset families

DIFF_STEP = 1e-4
# :obj:`float`: step of the central differences of the reduced dual dissipation

MAX_GROWTH_FORCE = 40.
# :obj:`float`: largest force of a growth report; ``exp(b eta)`` is evaluated up to twice this


class BoundaryStateError(DomainError):
    """ A state or density ratio is on the boundary, where the differential of the energy is undefined """
    pass


class OptimizationError(Exception):
    """ A scan and refinement over the middle density didn't converge

    Attributes:
        message (:obj:`str`): message
        trace (:obj:`list` of :obj:`tuple`): scanned middle densities and objective values
    """

    def __init__(self, message, trace):
        self.message = message
        self.trace = trace

    def __str__(self):
        return '{}; scan trace: {}'.format(self.message, self.trace)


class FamilyConfig(object):
    """ Entropy density, dissipation pair and scale of a gradient structure of the three-state chain

    Attributes:
        phi (:obj:`EntropyDensity`): strictly convex, superlinear entropy density
        pair (:obj:`DissipationPair`): dissipation pair with ``psi(0) = psi'(0) = 0``
        epsilon (:obj:`float`): scale in (0, 1]
        name (:obj:`str`): name
    """

    def __init__(self, phi, pair, epsilon, name='custom'):
        if not 0 < epsilon <= 1:
            raise ValueError('epsilon must be in (0, 1], not {}'.format(epsilon))
        self.phi = phi
        self.pair = pair
        self.epsilon = epsilon
        self.name = name

    @classmethod
    def quadratic(cls, epsilon):
        """ Quadratic energy and quadratic dissipation """
        return cls(EntropyDensity.quadratic(), DissipationPair.quadratic(), epsilon, name='quadratic')

    @classmethod
    def cosh(cls, epsilon):
        """ Boltzmann entropy and cosh dissipation, the structure of the large deviations of the chain """
        return cls(EntropyDensity.boltzmann(), DissipationPair.cosh(), epsilon, name='cosh')

    @classmethod
    def entropic_quadratic(cls, epsilon):
        """ Boltzmann entropy and quadratic dissipation """
        return cls(EntropyDensity.boltzmann(), DissipationPair.quadratic(), epsilon, name='entropic_quadratic')

    @classmethod
    def from_case(cls, case, epsilon):
        """ Build a preset family by name

        Args:
            case (:obj:`str`): ``quadratic``, ``cosh`` or ``entropic_quadratic``
            epsilon (:obj:`float`): scale

        Returns:
            :obj:`FamilyConfig`: family

        Raises:
            :obj:`ValueError`: if `case` isn't a preset
        """
        if case not in CASES:
            raise ValueError('Case must be one of {}, not "{}"'.format(', '.join(CASES), case))
        return getattr(cls, case)(epsilon)

    @property
    def w(self):
        """ :obj:`numpy.ndarray`: equilibrium ``(1, eps, 1) / (2 + eps)`` """
        return np.array([1., self.epsilon, 1.]) / (2. + self.epsilon)


def _dphi(phi, r):
    try:
        return phi.dphi(r)
    except DomainError:
        raise BoundaryStateError('The differential of the energy is undefined at the density ratio {}'.format(r))


def edge_mobility(phi, pair, x, y):
    """ Coefficient ``(x - y) / psi*'(phi'(x) - phi'(y))`` of an edge between the density ratios `x` and `y`

    On the diagonal the removable singularity is filled by ``1 / (phi''((x + y)/2) psi*''(0))``.

    Args:
        phi (:obj:`EntropyDensity`): entropy density
        pair (:obj:`DissipationPair`): dissipation pair
        x (:obj:`float`): density ratio
        y (:obj:`float`): density ratio

    Returns:
        :obj:`float`: coefficient

    Raises:
        :obj:`BoundaryStateError`: if `phi'` is undefined at `x` or `y`
    """
    force = _dphi(phi, x) - _dphi(phi, y)
    if abs(force) < config['diagonal_tol']:
        if x == y:
            secant = 1. / float(phi.ddphi((x + y) / 2.))
        else:
            secant = (x - y) / force
        return secant / pair.ddpsi_star
    return (x - y) / float(pair.dpsi_star(force))


def _scaled_psi(pair, a, v):
    """ ``a psi(v / a)``, with ``0 psi(v / 0) = 0`` if `v` is 0 and infinite otherwise """
    if a > 0:
        return a * float(pair.psi(v / a))
    return 0. if v == 0 else float('inf')


def _edge_coefficients(cfg, u):
    r = np.asarray(u, dtype=float) / cfg.w
    return (edge_mobility(cfg.phi, cfg.pair, r[0], r[1]),
            edge_mobility(cfg.phi, cfg.pair, r[1], r[2]))


def family_gs(cfg):
    """ Gradient structure ``(Prob({1, 2, 3}), E_eps, R_eps)`` of the three-state chain

    ``E_eps(u) = sum_i w_i phi(u_i / w_i)`` and
    ``R*_eps(u, xi) = a_1(u) psi*(xi_2 - xi_1) + a_2(u) psi*(xi_3 - xi_2)`` with the coefficients
    ``a_j`` of :obj:`edge_mobility` between the density ratios ``u_j / w_j`` and ``u_{j+1} / w_{j+1}``.

    Args:
        cfg (:obj:`FamilyConfig`): family

    Returns:
        :obj:`GradientSystem`: gradient system; its primal dissipation is :obj:`r_eps_primal`
    """
    w = cfg.w
    phi = cfg.phi
    pair = cfg.pair

    def energy(u):
        return float(np.sum(w * np.array([phi.phi(r) for r in np.asarray(u, dtype=float) / w])))

    def d_energy(u):
        return np.array([_dphi(phi, r) for r in np.asarray(u, dtype=float) / w])

    def r_star(u, xi):
        a_1, a_2 = _edge_coefficients(cfg, u)
        return a_1 * float(pair.psi_star(xi[1] - xi[0])) + a_2 * float(pair.psi_star(xi[2] - xi[1]))

    def d_r_star(u, xi):
        a_1, a_2 = _edge_coefficients(cfg, u)
        g_1 = a_1 * float(pair.dpsi_star(xi[1] - xi[0]))
        g_2 = a_2 * float(pair.dpsi_star(xi[2] - xi[1]))
        return np.array([-g_1, g_1 - g_2, g_2])

    return GradientSystem(
        dim=3,
        energy=energy,
        d_energy=d_energy,
        r_star=r_star,
        d_r_star=d_r_star,
        r_closed=lambda u, v: r_eps_primal(cfg, u, v),
        constraint='simplex',
        admissible=lambda u: bool(np.all(u > 0)),
        name='three-state {} (eps={})'.format(cfg.name, cfg.epsilon))


def r_eps_primal(cfg, u, v):
    """ Primal dissipation ``a_1(u) psi(v_1 / a_1(u)) + a_2(u) psi(v_3 / a_2(u))``

    Args:
        cfg (:obj:`FamilyConfig`): family
        u (:obj:`numpy.ndarray`): state
        v (:obj:`numpy.ndarray`): rate tangent to the simplex

    Returns:
        :obj:`float`: dissipation

    Raises:
        :obj:`ValueError`: if `v` doesn't sum to 0
    """
    v = np.asarray(v, dtype=float)
    if abs(np.sum(v)) > 1e-10 * (1. + np.max(np.abs(v))):
        raise ValueError('Rates must be tangent to the simplex; sum is {:.3e}'.format(np.sum(v)))
    a_1, a_2 = _edge_coefficients(cfg, u)
    return _scaled_psi(cfg.pair, a_1, v[0]) + _scaled_psi(cfg.pair, a_2, v[2])


def _optimize_over_z(objective, sign=1., z_max=None):
    """ Minimize (`sign` = 1) or maximize (`sign` = -1) a function of the middle density ratio `z`

    The function is scanned on a log grid of `three_state.z_scan_points` points in
    [`three_state.z_min`, `z_max`], then refined around the best point by bounded Brent search in ``log z``.

    Returns:
        :obj:`tuple`: optimal `z` and optimal value
    """
    z_max = z_max or config['z_max']
    log_z = np.linspace(math.log(config['z_min']), math.log(z_max), config['z_scan_points'])

    def f(log_z_i):
        value = sign * objective(math.exp(log_z_i))
        return value if np.isfinite(value) else float('inf')

    values = np.array([f(log_z_i) for log_z_i in log_z])
    if not np.any(np.isfinite(values)):
        raise OptimizationError('The objective is not finite on the scan', list(zip(np.exp(log_z), values)))

    i_best = int(np.argmin(values))
    lower = log_z[max(i_best - 1, 0)]
    upper = log_z[min(i_best + 1, log_z.size - 1)]
    result = optimize.minimize_scalar(f, bounds=(lower, upper), method='bounded', options={'xatol': 1e-10})
    if not result.success:
        raise OptimizationError(result.message, list(zip(np.exp(log_z), values)))

    if result.fun <= values[i_best]:
        return math.exp(result.x), sign * float(result.fun)
    return math.exp(log_z[i_best]), sign * float(values[i_best])


class ReducedQuantities(object):
    """ Limit of a family for ``eps -> 0``: the reduced gradient system ``([0, 1], E, R)``

    With ``a_hat(p, r) = (2p - r) / psi*'(phi'(2p) - phi'(r))``:

    * ``Sigma(p, z) = a_hat(p, z) psi*(phi'(2p) - phi'(z)) + a_hat(1-p, z) psi*(phi'(2-2p) - phi'(z))``
    * ``sigma(p) = inf_z Sigma(p, z) = m(p, 0)``
    * ``m(p, v) = inf_z (a_hat(p, z) psi(v / a_hat(p, z)) + a_hat(1-p, z) psi(v / a_hat(1-p, z)) + Sigma(p, z))``
    * ``R(p, v) = m(p, v) - sigma(p)``
    * ``R*(p, eta) = sigma(p) + sup_z (inf_tau (a_hat(p, z) psi*(eta - tau) + a_hat(1-p, z) psi*(tau)) - Sigma(p, z))``
    * ``E(p) = phi(2p)/2 + phi(2 - 2p)/2``

    Attributes:
        phi (:obj:`EntropyDensity`): entropy density
        pair (:obj:`DissipationPair`): dissipation pair
        name (:obj:`str`): name of the family
    """

    def __init__(self, phi, pair, name='custom'):
        self.phi = phi
        self.pair = pair
        self.name = name

    @staticmethod
    def _check_p(p):
        if not 0 < p < 1:
            raise ValueError('p must be in (0, 1), not {}'.format(p))

    def a_hat(self, p, r):
        """ Limit edge coefficient between the density ratios ``2p`` and `r` """
        return edge_mobility(self.phi, self.pair, 2. * p, r)

    def big_sigma(self, p, z):
        """ Dissipation rate ``Sigma(p, z)`` of the slaved middle state at the density ratio `z` """
        dphi_z = _dphi(self.phi, z)
        return (self.a_hat(p, z) * float(self.pair.psi_star(_dphi(self.phi, 2. * p) - dphi_z))
                + self.a_hat(1. - p, z) * float(self.pair.psi_star(_dphi(self.phi, 2. - 2. * p) - dphi_z)))

    def sigma(self, p):
        """ ``sigma(p) = inf_z Sigma(p, z)`` """
        self._check_p(p)
        return _optimize_over_z(lambda z: self.big_sigma(p, z))[1]

    def _m_objective(self, p, v):
        def objective(z):
            return (_scaled_psi(self.pair, self.a_hat(p, z), v)
                    + _scaled_psi(self.pair, self.a_hat(1. - p, z), v)
                    + self.big_sigma(p, z))
        return objective

    def m(self, p, v):
        """ Limit of the De Giorgi integrand, minimized over the middle density """
        self._check_p(p)
        return _optimize_over_z(self._m_objective(p, v))[1]

    def optimal_z(self, p, v):
        """ Minimizer of :obj:`m` over the middle density ratio

        Args:
            p (:obj:`float`): reduced state
            v (:obj:`float`): reduced rate

        Returns:
            :obj:`float`: density ratio of the middle state
        """
        self._check_p(p)
        return _optimize_over_z(self._m_objective(p, v))[0]

    def r(self, p, v):
        """ Reduced primal dissipation ``R(p, v) = m(p, v) - sigma(p)`` """
        return self.m(p, v) - self.sigma(p)

    def _inf_convolution(self, a, b, eta):
        if self.pair.kind == 'quadratic':
            return a * b / (2. * (a + b)) * eta ** 2
        if self.pair.kind == 'cosh':
            return float(inf_convolution_cosh(a, b, eta))
        return inf_convolution(lambda tau: a * self.pair.psi_star(tau), lambda tau: b * self.pair.psi_star(tau), eta)

    def r_star_witness(self, p, eta, z):
        """ Value of the supremum in :obj:`r_star` at the middle density ratio `z`, a lower bound of ``R*(p, eta)`` """
        self._check_p(p)
        return self.sigma(p) + self._r_star_objective(p, eta)(z)

    def _r_star_objective(self, p, eta):
        def objective(z):
            return self._inf_convolution(self.a_hat(p, z), self.a_hat(1. - p, z), eta) - self.big_sigma(p, z)
        return objective

    def r_star(self, p, eta):
        """ Reduced dual dissipation ``R*(p, eta)``

        The search over the middle density extends to ``exp(|eta|)`` because the maximizer of the
        entropic quadratic family grows like ``exp(|eta| / 2)``.

        Args:
            p (:obj:`float`): reduced state
            eta (:obj:`float`): force

        Returns:
            :obj:`float`: dual dissipation
        """
        self._check_p(p)
        z_max = max(config['z_max'], math.exp(min(abs(eta), 700.)))
        return self.sigma(p) + _optimize_over_z(self._r_star_objective(p, eta), sign=-1., z_max=z_max)[1]

    def d_r_star(self, p, eta):
        """ ``D_eta R*(p, eta)`` by central differences """
        return (self.r_star(p, eta + DIFF_STEP) - self.r_star(p, eta - DIFF_STEP)) / (2. * DIFF_STEP)

    def energy(self, p):
        """ ``E(p) = phi(2p)/2 + phi(2 - 2p)/2`` """
        return float(self.phi.phi(2. * p) + self.phi.phi(2. - 2. * p)) / 2.

    def d_energy(self, p):
        """ ``E'(p) = phi'(2p) - phi'(2 - 2p)`` """
        return _dphi(self.phi, 2. * p) - _dphi(self.phi, 2. - 2. * p)

    def m0(self, p, v):
        """ Limit De Giorgi integrand ``M_0(p, v) = R(p, v) + R*(p, -E'(p))`` """
        return self.r(p, v) + self.r_star(p, -self.d_energy(p))

    def vector_field(self, p):
        """ Reduced rate ``D_eta R*(p, -E'(p))``, which is ``1 - 2p`` for every family """
        return self.d_r_star(p, -self.d_energy(p))

    def closed_sigma(self, p):
        """ Closed form of :obj:`sigma`, available for the quadratic and the cosh family

        Returns:
            :obj:`float`: ``(1 - 2p)^2``, resp. ``2 (sqrt(p) - sqrt(1 - p))^2``, or :obj:`None`
        """
        if self.name == 'quadratic':
            return (1. - 2. * p) ** 2
        if self.name == 'cosh':
            return 2. * (math.sqrt(p) - math.sqrt(1. - p)) ** 2
        return None

    def closed_r_star(self, p, eta):
        """ Closed form of :obj:`r_star`: ``eta^2 / 4``, resp. ``sqrt(p (1 - p)) C*(eta)``, or :obj:`None` """
        if self.name == 'quadratic':
            return eta ** 2 / 4.
        if self.name == 'cosh':
            return math.sqrt(p * (1. - p)) * float(cosh_star(eta))
        return None

    def closed_r(self, p, v):
        """ Closed form of :obj:`r`: ``v^2``, resp. ``s C(v / s)`` with ``s = sqrt(p (1 - p))``, or :obj:`None` """
        if self.name == 'quadratic':
            return v ** 2
        if self.name == 'cosh':
            s = math.sqrt(p * (1. - p))
            return s * float(cosh_c(v / s))
        return None

    def gradient_system(self):
        """ The reduced structure as a scalar gradient system in the coordinate `p`

        Returns:
            :obj:`GradientSystem`: gradient system
        """
        return GradientSystem(
            dim=1,
            energy=lambda u: self.energy(u[0]),
            d_energy=lambda u: np.array([self.d_energy(u[0])]),
            r_star=lambda u, xi: self.r_star(u[0], xi[0]),
            d_r_star=lambda u, xi: np.array([self.d_r_star(u[0], xi[0])]),
            r_closed=lambda u, v: self.r(u[0], v[0]),
            admissible=lambda u: 0. < u[0] < 1.,
            name='reduced {}'.format(self.name))

    def to_csv(self, p_grid, eta_grid, path):
        """ Write the columns p, eta, sigma, R*, and the closed forms of sigma and R* (empty if unknown)

        Args:
            p_grid (:obj:`list` of :obj:`float`): reduced states
            eta_grid (:obj:`list` of :obj:`float`): forces
            path (:obj:`str`): path
        """
        rows = []
        for p in p_grid:
            sigma = self.sigma(p)
            for eta in eta_grid:
                rows.append([p, eta, sigma, self.r_star(p, eta), self.closed_sigma(p), self.closed_r_star(p, eta)])
        io.write_csv(path, ['p', 'eta', 'sigma', 'r_star', 'closed_sigma', 'closed_r_star'], rows)


def reduced(cfg):
    """ Reduced limit quantities of a family

    Args:
        cfg (:obj:`FamilyConfig`): family; its scale is ignored

    Returns:
        :obj:`ReducedQuantities`: reduced quantities
    """
    return ReducedQuantities(cfg.phi, cfg.pair, name=cfg.name)


def recovery_sequence(cfg, p, p_dot):
    """ Well-prepared state ``(p, 0, 1 - p) + eps zeta (-p, 1, p - 1)``

    `zeta` is chosen such that the density ratio ``u_2 / w_2`` of the middle state is the minimizer of
    ``m(p, p_dot)`` over the middle density.

    Args:
        cfg (:obj:`FamilyConfig`): family
        p (:obj:`float`): reduced state
        p_dot (:obj:`float`): reduced rate

    Returns:
        :obj:`numpy.ndarray`: state of the three-state chain
    """
    z = reduced(cfg).optimal_z(p, p_dot)
    zeta = z / (2. + cfg.epsilon)
    return np.array([p, 0., 1. - p]) + cfg.epsilon * zeta * np.array([-p, 1., p - 1.])


def limit_solution(p0, times):
    """ Solution ``p(t) = 1/2 + (p0 - 1/2) exp(-2t)`` of the reduced equation """
    return 0.5 + (p0 - 0.5) * np.exp(-2. * np.asarray(times, dtype=float))


class SweepReport(object):
    """ Convergence of the solutions and of the De Giorgi dissipations of a family for ``eps -> 0``

    Attributes:
        case (:obj:`str`): name of the family
        d_limit (:obj:`float`): De Giorgi dissipation of the limit solution
        energy_drop (:obj:`float`): ``E(p(0)) - E(p(T))`` of the limit solution
        rows (:obj:`list` of :obj:`list`): per successful epsilon, in decreasing order: epsilon,
            ``sup_t |u_1(t) - p(t)|`` and ``|D_eps(u) - D_0(p)|``
        failures (:obj:`list` of :obj:`float`): epsilons at which the integration failed
    """

    HEADER = ('epsilon', 'sup_error', 'dissipation_gap')

    def __init__(self, case, d_limit, energy_drop, rows, failures):
        self.case = case
        self.d_limit = d_limit
        self.energy_drop = energy_drop
        self.rows = rows
        self.failures = failures

    @property
    def smallest_epsilon(self):
        """ :obj:`float`: smallest epsilon which was integrated successfully """
        return min(row[0] for row in self.rows) if self.rows else None

    def converging(self, slack=0.1):
        """ Determine whether both errors decrease with epsilon, up to the relative `slack`

        Returns:
            :obj:`bool`: :obj:`True` if the errors decrease
        """
        for previous, current in zip(self.rows[:-1], self.rows[1:]):
            for column in (1, 2):
                if current[column] > (1. + slack) * previous[column]:
                    return False
        return True

    def to_csv(self, path):
        """ Write the rows with the columns :obj:`HEADER` """
        io.write_csv(path, self.HEADER, self.rows)


STIFF_INTEGRATOR = 'implicit_euler'
# :obj:`str`: integrator of the members of a family on which the configured integrator underflows


def _sweep_entry(case, epsilon, p0, T, dt):
    """ Integrate one member of a family from a well-prepared state

    Members on which the configured integrator underflows are integrated again with :obj:`STIFF_INTEGRATOR`.

    Returns:
        :obj:`list`: epsilon, sup error and De Giorgi dissipation, or :obj:`None` if the integration failed
    """
    cfg = FamilyConfig.from_case(case, epsilon)
    gs = family_gs(cfg)
    u0 = recovery_sequence(cfg, p0, 1. - 2. * p0)
    log = get_debug_log()
    traj = None
    for integrator in (None, STIFF_INTEGRATOR):
        try:
            traj = gradsys.evolve(gs, u0, T, dt, integrator=integrator, with_edb=False)
            break
        except StepSizeUnderflowError as exception:
            if log:
                log.debug('Integration of eps={} with {} failed: {}'.format(
                    epsilon, integrator or 'the configured integrator', exception), sim_time=exception.time)
    if traj is None:
        return None
    sup_error = float(np.max(np.abs(traj.states[:, 0] - limit_solution(p0, traj.times))))
    return [epsilon, sup_error, gradsys.degiorgi(gs, traj)]


def edp_sweep(case, epsilons, p0, T, dt, n_limit_points=101, map_fn=map):
    """ Integrate a family for a sequence of scales and compare with the reduced limit

    Args:
        case (:obj:`str`): name of the family
        epsilons (:obj:`list` of :obj:`float`): scales
        p0 (:obj:`float`): initial reduced state; the initial states are :obj:`recovery_sequence`
        T (:obj:`float`): duration
        dt (:obj:`float`): time step
        n_limit_points (:obj:`int`, optional): number of sampled times of the limit dissipation
        map_fn (:obj:`callable`, optional): map over the scales, e.g. of an executor

    Returns:
        :obj:`SweepReport`: report
    """
    limit = reduced(FamilyConfig.from_case(case, 1.))
    limit_gs = limit.gradient_system()
    times = np.linspace(0., T, n_limit_points)
    limit_path = Trajectory.from_path(limit_gs, times, limit_solution(p0, times))
    d_limit = gradsys.degiorgi(limit_gs, limit_path)
    energy_drop = limit.energy(p0) - limit.energy(float(limit_path.states[-1, 0]))

    epsilons = sorted(epsilons, reverse=True)
    n = len(epsilons)
    results = list(map_fn(_sweep_entry, [case] * n, epsilons, [p0] * n, [T] * n, [dt] * n))

    rows = []
    failures = []
    for epsilon, result in zip(epsilons, results):
        if result is None:
            failures.append(epsilon)
        else:
            rows.append([result[0], result[1], abs(result[2] - d_limit)])

    log = get_debug_log()
    if log:
        log.debug('Swept {} scales of the {} family; {} failed'.format(n, case, len(failures)), sim_time=T)
    return SweepReport(case, d_limit, energy_drop, rows, failures)


class GrowthReport(object):
    """ Growth of the reduced dual dissipation of the entropic quadratic family

    Attributes:
        p (:obj:`float`): reduced state
        b (:obj:`float`): exponent of the lower bound
        rows (:obj:`list` of :obj:`list`): per force: eta, ``R*(p, eta)``, ``R*(p, 2 eta)``,
            the witness value at ``z = exp(b eta)`` and the bound ``(1/(4b) - b) eta exp(b eta)``
    """

    HEADER = ('eta', 'r_star', 'r_star_double', 'witness', 'bound')

    def __init__(self, p, b, rows):
        self.p = p
        self.b = b
        self.rows = rows

    @property
    def ratios(self):
        """ :obj:`list` of :obj:`float`: ``R*(p, 2 eta) / R*(p, eta)``; 4 for quadratic growth """
        return [row[2] / row[1] if row[1] > 0 else float('nan') for row in self.rows]

    @property
    def threshold(self):
        """ :obj:`float`: smallest force beyond which all ratios are at least 8, or :obj:`None` """
        threshold = None
        for row, ratio in zip(self.rows, self.ratios):
            if ratio >= 8.:
                if threshold is None:
                    threshold = row[0]
            else:
                threshold = None
        return threshold

    def bound_holds(self, safety=0.5, min_eta=10.):
        """ Determine whether ``R*(p, eta)`` exceeds `safety` times the bound for all forces of at least `min_eta` """
        return all(row[1] >= safety * row[4] for row in self.rows if row[0] >= min_eta)

    def to_csv(self, path):
        """ Write the rows with the columns :obj:`HEADER` """
        io.write_csv(path, self.HEADER, self.rows)


def entropic_quadratic_growth(p, eta_grid, b=0.25):
    """ Evaluate the growth of ``R*(p, eta)`` for the Boltzmann entropy with quadratic dissipation

    Args:
        p (:obj:`float`): reduced state in (0, 1)
        eta_grid (:obj:`list` of :obj:`float`): increasing positive forces of at most 40
        b (:obj:`float`, optional): exponent in (0, 1/2) of the lower bound

    Returns:
        :obj:`GrowthReport`: report

    Raises:
        :obj:`ValueError`: if the grid isn't increasing or exceeds the overflow guard
    """
    eta_grid = np.asarray(eta_grid, dtype=float)
    if np.any(np.diff(eta_grid) <= 0):
        raise ValueError('The forces must be increasing')
    if np.max(eta_grid) > MAX_GROWTH_FORCE:
        raise ValueError('Forces must be at most {} to keep exp(b eta) finite'.format(MAX_GROWTH_FORCE))
    if not 0 < b < 0.5:
        raise ValueError('b must be in (0, 1/2)')

    limit = reduced(FamilyConfig.entropic_quadratic(1.))
    rows = []
    for eta in eta_grid:
        rows.append([
            float(eta),
            limit.r_star(p, eta),
            limit.r_star(p, 2. * eta),
            limit.r_star_witness(p, eta, math.exp(b * eta)),
            (1. / (4. * b) - b) * eta * math.exp(b * eta),
        ])
    return GrowthReport(p, b, rows)


def three_state_chain(cfg):
    """ Generator of the three-state chain at the scale of `cfg` """
    return markov.three_state_generator(cfg.epsilon)
