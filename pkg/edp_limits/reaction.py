""" Diffusion over a potential barrier and its limit, a linear reaction-diffusion system

On ``Q = Omega x Upsilon`` with ``Omega = [0, 1]`` and the reaction path ``Upsilon = [0, 7]`` the density `u`
solves ``du/dt = m_Omega u_xx + tau_eps (u_y + u V_y / eps)_y`` with no-flux boundaries. The double well `V`
has its minima ``V(2) = V(6) = 0`` and its barrier at ``y = 5``; the factor ``tau_eps = m_Upsilon int 1/w_eps``
grows like ``exp(V(5)/eps)``, so that crossings of the barrier survive the limit ``eps -> 0``. There, the masses
of the two wells follow

    dc_0/dt = m_Omega c_0'' - m_Upsilon (c_0/alpha_0 - c_1/alpha_1)
    dc_1/dt = m_Omega c_1'' + m_Upsilon (c_0/alpha_0 - c_1/alpha_1)

which is the gradient flow of ``E(c) = int sum_j alpha_j lambda_B(c_j/alpha_j)`` with the dual dissipation
``R*(c, eta) = int sum_j (m_Omega/2) c_j (eta_j')^2 + m_Upsilon sqrt(c_0 c_1/(alpha_0 alpha_1)) C*(eta_1 - eta_0)``.

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits import fv
from edp_limits import markov
from edp_limits import oracle
from edp_limits.config import get_config
from edp_limits.debug_logs import get_debug_log
from edp_limits.fv import GridFunction1D, GridFunction2D, Mesh1D
from edp_limits.gradsys import StepSizeUnderflowError, Trajectory
from edp_limits.potentials import boltzmann, cosh_c, cosh_c_prime, cosh_star, cosh_star_prime, log_mean
from edp_limits.util import io
from scipy import integrate, interpolate, linalg, optimize, sparse
from scipy.sparse import linalg as sparse_linalg
import json
import math
import numpy as np

config = get_config()['edp_limits']['reaction']

UPSILON = (0., 7.)
# :obj:`tuple`: reaction path

WELLS = (2., 6.)
# :obj:`tuple`: minimizers of the double well

BARRIER = 5.
# :obj:`float`: maximizer of the double well between the wells

WELL_HALF_WIDTHS = (0.6, 0.35)
# :obj:`tuple`: half widths of the quadratic pieces around the wells

BARRIER_HALF_WIDTH = 0.2
# :obj:`float`: half width of the quadratic piece around the barrier

KRAMERS_EPSILONS = (0.1, 0.03, 0.01)
# :obj:`tuple`: temperatures of the Laplace-quadrature sweep

SETUP_KEYS = ('knots', 'values', 'slopes', 'curvature_left', 'curvature_right', 'curvature_barrier',
              'm_omega', 'm_upsilon', 'omega_cells', 'upsilon_cells', 'epsilon')
# :obj:`tuple`: keys of a setup in JSON

STEP_WIDTH = 0.1
# :obj:`float`: width of the smoothed step which lifts two-species forces to the reaction path


class InvalidSetupError(Exception):
    """ A double well is degenerate or a mobility, mesh size or temperature is out of range """
    pass


def _log_debug(message, sim_time=float('nan')):
    log = get_debug_log()
    if log:
        log.debug(message, sim_time=sim_time)


def double_well(curvature_left, curvature_right, curvature_barrier, barrier_height=1.):
    """ C1 piecewise-cubic double well with quadratic pieces of the given curvatures at its extrema

    Between the quadratic pieces the Hermite cubics connect the values and slopes at the knots.

    Args:
        curvature_left (:obj:`float`): ``V''(2)``
        curvature_right (:obj:`float`): ``V''(6)``
        curvature_barrier (:obj:`float`): ``-V''(5)``
        barrier_height (:obj:`float`, optional): ``V(5)``

    Returns:
        :obj:`scipy.interpolate.BPoly`: potential on [0, 7]
    """
    d_left, d_right = WELL_HALF_WIDTHS
    d_barrier = BARRIER_HALF_WIDTH
    well_left = 0.5 * curvature_left * d_left ** 2
    well_right = 0.5 * curvature_right * d_right ** 2
    shoulder = barrier_height - 0.5 * curvature_barrier * d_barrier ** 2
    edge = 0.7 * barrier_height

    knots = [UPSILON[0], WELLS[0] - d_left, WELLS[0], WELLS[0] + d_left,
             BARRIER - d_barrier, BARRIER, BARRIER + d_barrier,
             WELLS[1] - d_right, WELLS[1], WELLS[1] + d_right, UPSILON[1]]
    values = [edge, well_left, 0., well_left, shoulder, barrier_height, shoulder, well_right, 0., well_right, edge]
    slopes = [0., -curvature_left * d_left, 0., curvature_left * d_left,
              curvature_barrier * d_barrier, 0., -curvature_barrier * d_barrier,
              -curvature_right * d_right, 0., curvature_right * d_right, 0.]
    return interpolate.BPoly.from_derivatives(knots, [[value, slope] for value, slope in zip(values, slopes)])


class ReactionSetup(object):
    """ Double well, mobilities and meshes of the barrier problem

    Attributes:
        potential (:obj:`callable`): double well `V` on [0, 7], evaluated on arrays, with a ``derivative`` method
        m_omega (:obj:`float`): mobility in space
        m_upsilon (:obj:`float`): mobility along the reaction path
        omega_cells (:obj:`int`): number of cells of Omega
        upsilon_cells (:obj:`int`): number of cells of Upsilon
        epsilon (:obj:`float`): temperature
    """

    def __init__(self, potential, m_omega, m_upsilon, omega_cells, upsilon_cells, epsilon, validate=True):
        self.potential = potential
        self.m_omega = float(m_omega)
        self.m_upsilon = float(m_upsilon)
        self.omega_cells = int(omega_cells)
        self.upsilon_cells = int(upsilon_cells)
        self.epsilon = float(epsilon)
        if validate:
            self.validate()

    @classmethod
    def default(cls, epsilon, **kwargs):
        """ Setup with the double well and mobilities of the `reaction` configuration

        Args:
            epsilon (:obj:`float`): temperature
            **kwargs: overrides of `m_omega`, `m_upsilon`, `omega_cells`, `upsilon_cells` and the curvatures

        Returns:
            :obj:`ReactionSetup`: setup
        """
        options = {key: config[key] for key in ('m_omega', 'm_upsilon', 'omega_cells', 'upsilon_cells',
                                                'curvature_left', 'curvature_right', 'curvature_barrier')}
        unknown = set(kwargs) - set(options)
        if unknown:
            raise InvalidSetupError('Unknown setup options: {}'.format(', '.join(sorted(unknown))))
        options.update(kwargs)
        potential = double_well(options['curvature_left'], options['curvature_right'], options['curvature_barrier'])
        return cls(potential, options['m_omega'], options['m_upsilon'], options['omega_cells'],
                   options['upsilon_cells'], epsilon)

    @classmethod
    def from_json(cls, text):
        """ Read a setup

        The double well is given either by Hermite data ``knots``, ``values``, ``slopes`` or by the curvatures;
        missing keys take the values of the `reaction` configuration.

        Args:
            text (:obj:`str`): JSON object

        Returns:
            :obj:`ReactionSetup`: setup

        Raises:
            :obj:`InvalidSetupError`: if a key is unknown or the setup is invalid
        """
        data = json.loads(text)
        unknown = set(data) - set(SETUP_KEYS)
        if unknown:
            raise InvalidSetupError('Unknown setup keys: {}'.format(', '.join(sorted(unknown))))
        if 'epsilon' not in data:
            raise InvalidSetupError('A setup needs a temperature epsilon')

        if 'knots' in data:
            try:
                potential = interpolate.BPoly.from_derivatives(
                    data['knots'], [[value, slope] for value, slope in zip(data['values'], data['slopes'])])
            except (KeyError, ValueError) as error:
                raise InvalidSetupError('Invalid Hermite data of the double well: {}'.format(error))
        else:
            potential = double_well(*[data.get(key, config[key])
                                      for key in ('curvature_left', 'curvature_right', 'curvature_barrier')])
        return cls(potential, *[data.get(key, config[key])
                                for key in ('m_omega', 'm_upsilon', 'omega_cells', 'upsilon_cells')],
                   epsilon=data['epsilon'])

    def with_epsilon(self, epsilon):
        """ :obj:`ReactionSetup`: the same setup at another temperature """
        return ReactionSetup(self.potential, self.m_omega, self.m_upsilon, self.omega_cells, self.upsilon_cells,
                             epsilon, validate=False)

    def curvature(self, y):
        """ :obj:`float`: ``V''(y)`` """
        return float(self.potential.derivative(2)(y))

    def curvatures(self):
        """ :obj:`tuple`: ``V''(2)``, ``V''(6)`` and ``-V''(5)`` """
        return self.curvature(WELLS[0]), self.curvature(WELLS[1]), -self.curvature(BARRIER)

    @property
    def barrier_height(self):
        """ :obj:`float`: ``V(5)`` """
        return float(self.potential(BARRIER))

    @property
    def alphas(self):
        """ :obj:`numpy.ndarray`: limit well masses ``alpha_0 = sqrt(V''(6)) / (sqrt(V''(2)) + sqrt(V''(6)))`` and
        ``alpha_1`` """
        k_left, k_right, _ = self.curvatures()
        return np.array([math.sqrt(k_right), math.sqrt(k_left)]) / (math.sqrt(k_left) + math.sqrt(k_right))

    def validate(self):
        """ Check the mobilities, mesh sizes and temperature and that `V` is a non-degenerate double well

        Raises:
            :obj:`InvalidSetupError`: if the setup is invalid
        """
        if self.m_omega < 0:
            raise InvalidSetupError('The mobility m_omega must be nonnegative')
        if self.m_upsilon <= 0:
            raise InvalidSetupError('The mobility m_upsilon must be positive')
        if self.omega_cells < 1 or self.upsilon_cells < 2:
            raise InvalidSetupError('Omega needs at least 1 cell and Upsilon at least 2')
        if self.epsilon <= 0:
            raise InvalidSetupError('The temperature must be positive')

        knots = getattr(self.potential, 'x', None)
        if knots is not None and (knots[0] > UPSILON[0] or knots[-1] < UPSILON[1]):
            raise InvalidSetupError('The double well must be defined on [0, 7]')

        y = np.linspace(UPSILON[0], UPSILON[1], 7001)
        try:
            v = np.asarray(self.potential(y), dtype=float)
        except ValueError as error:
            raise InvalidSetupError('The double well must be defined on [0, 7]: {}'.format(error))
        if not np.all(np.isfinite(v)):
            raise InvalidSetupError('The double well must be defined on [0, 7]')
        if any(abs(float(self.potential(y_well))) > 1e-10 for y_well in WELLS):
            raise InvalidSetupError('The double well must vanish at its minimizers y = 2 and y = 6')
        off_wells = np.all([np.abs(y - y_well) > 1e-6 for y_well in WELLS], axis=0)
        if np.any(v[off_wells] <= 0):
            raise InvalidSetupError('The double well must be positive away from y = 2 and y = 6')
        if np.any(v[np.abs(y - BARRIER) > 1e-6] >= self.barrier_height):
            raise InvalidSetupError('The double well must have its strict maximum at y = 5')
        if min(self.curvatures()) <= 0:
            raise InvalidSetupError('The double well is degenerate: curvatures {}'.format(self.curvatures()))


def omega_mesh(setup):
    """ :obj:`Mesh1D`: uniform mesh of Omega """
    return Mesh1D.uniform(0., 1., setup.omega_cells)


def upsilon_mesh(setup):
    """ :obj:`Mesh1D`: uniform mesh of the reaction path """
    return Mesh1D.uniform(UPSILON[0], UPSILON[1], setup.upsilon_cells)


def _knots(setup):
    x = getattr(setup.potential, 'x', None)
    if x is None:
        return None
    return [knot for knot in x if UPSILON[0] < knot < UPSILON[1]]


def _quad(setup, fn, lower, upper):
    points = [knot for knot in (_knots(setup) or []) if lower < knot < upper]
    value, _ = integrate.quad(fn, lower, upper, points=points or None, limit=500, epsabs=0., epsrel=1e-11)
    return value


def _barrier_integral(setup, epsilon, lower=UPSILON[0], upper=UPSILON[1]):
    """ ``int exp((V - V(5)) / eps)`` over [`lower`, `upper`] """
    height = setup.barrier_height
    return _quad(setup, lambda y: math.exp((float(setup.potential(y)) - height) / epsilon), lower, upper)


def partition_function(setup, epsilon=None):
    """ ``Z_eps = int exp(-V/eps) dy`` by quadrature """
    epsilon = epsilon or setup.epsilon
    return _quad(setup, lambda y: math.exp(-float(setup.potential(y)) / epsilon), *UPSILON)


def tau_eps(setup, epsilon=None):
    """ Time scale ``tau_eps = m_Upsilon int 1/w_eps dy`` with ``w_eps = exp(-V/eps) / Z_eps``

    Args:
        setup (:obj:`ReactionSetup`): setup
        epsilon (:obj:`float`, optional): temperature; by default that of `setup`

    Returns:
        :obj:`float`: time scale, ``inf`` if it overflows
    """
    epsilon = epsilon or setup.epsilon
    log_tau = (math.log(setup.m_upsilon * partition_function(setup, epsilon) * _barrier_integral(setup, epsilon))
               + setup.barrier_height / epsilon)
    return math.exp(log_tau) if log_tau < 700. else float('inf')


def kramers_limit(setup):
    """ Limit ``m_Upsilon 2 pi (sqrt(V''(2)) + sqrt(V''(6))) / (sqrt(-V''(5)) sqrt(V''(2) V''(6)))`` of
    ``(tau_eps/eps) exp(-V(5)/eps)`` """
    k_left, k_right, k_barrier = setup.curvatures()
    return (setup.m_upsilon * 2. * math.pi * (math.sqrt(k_left) + math.sqrt(k_right))
            / (math.sqrt(k_barrier) * math.sqrt(k_left * k_right)))


def kramers_ratio(setup, epsilon):
    """ Ratio of ``(tau_eps/eps) exp(-V(5)/eps)`` to its limit """
    scaled_tau = setup.m_upsilon * partition_function(setup, epsilon) * _barrier_integral(setup, epsilon)
    return scaled_tau / epsilon / kramers_limit(setup)


class KramersResult(object):
    """ Time scale, limit well masses and the Laplace-quadrature sweep of a setup

    Attributes:
        tau (:obj:`float`): ``tau_eps`` at the temperature of the setup
        alpha_0 (:obj:`float`): limit mass of the left well
        alpha_1 (:obj:`float`): limit mass of the right well
        epsilons (:obj:`numpy.ndarray`): temperatures of the sweep
        ratios (:obj:`numpy.ndarray`): ratio of the scaled time scale to its limit at each temperature
    """

    def __init__(self, tau, alpha_0, alpha_1, epsilons, ratios):
        self.tau = tau
        self.alpha_0 = alpha_0
        self.alpha_1 = alpha_1
        self.epsilons = epsilons
        self.ratios = ratios

    def limit_check(self, tol=0.02):
        """ Whether the ratio at the smallest temperature is within `tol` of 1 """
        return bool(abs(self.ratios[np.argmin(self.epsilons)] - 1.) <= tol)


def kramers(setup, epsilons=KRAMERS_EPSILONS):
    """ Kramers time scale and limit well masses

    Args:
        setup (:obj:`ReactionSetup`): setup
        epsilons (:obj:`list` of :obj:`float`, optional): temperatures of the sweep

    Returns:
        :obj:`KramersResult`: result
    """
    alpha_0, alpha_1 = setup.alphas
    epsilons = np.asarray(epsilons, dtype=float)
    ratios = np.array([kramers_ratio(setup, epsilon) for epsilon in epsilons])
    return KramersResult(tau_eps(setup), alpha_0, alpha_1, epsilons, ratios)


def z_map(setup, y, epsilon=None):
    """ Rescaled reaction coordinate ``Z_eps(y) = (m_Upsilon/tau_eps) int_0^y 1/w_eps`` by quadrature

    Args:
        setup (:obj:`ReactionSetup`): setup
        y (:obj:`numpy.ndarray`): points of [0, 7]
        epsilon (:obj:`float`, optional): temperature; by default that of `setup`

    Returns:
        :obj:`numpy.ndarray`: values in [0, 1]
    """
    epsilon = epsilon or setup.epsilon
    y = np.asarray(y, dtype=float)
    order = np.argsort(y.ravel())
    nodes = np.concatenate(([UPSILON[0]], y.ravel()[order]))
    pieces = [_barrier_integral(setup, epsilon, lower, upper) if upper > lower else 0.
              for lower, upper in zip(nodes[:-1], nodes[1:])]
    z = np.empty(y.size)
    z[order] = np.cumsum(pieces) / _barrier_integral(setup, epsilon)
    return z.reshape(y.shape)


def _path_resistances(mesh_y, w):
    """ Resistances of the half cells at the ends and of the links between the centers of the reaction path """
    ends = np.array([mesh_y.widths[0] / 2. / w[0], mesh_y.widths[-1] / 2. / w[-1]])
    links = np.diff(mesh_y.centers) * np.atleast_1d(log_mean(1. / w[:-1], 1. / w[1:]))
    return ends, links


class FPDiscretization(object):
    """ Finite volumes on ``Omega x Upsilon``, centered in x and exponentially fitted in y

    The time scale is the discrete ``tau = m_Upsilon (sum of the resistances of the reaction path)``, which makes
    the discrete rescaled coordinate end exactly at 1.

    Attributes:
        setup (:obj:`ReactionSetup`): setup
        mesh_x (:obj:`Mesh1D`): mesh of Omega
        mesh_y (:obj:`Mesh1D`): mesh of the reaction path
        w_y (:obj:`numpy.ndarray`): discrete equilibrium on the reaction path with ``sum h_y w_y = 1``
        tau (:obj:`float`): discrete time scale
        K_x (:obj:`numpy.ndarray`): coefficients of the x-faces
        K_y (:obj:`numpy.ndarray`): coefficients of the y-faces, for fluxes of ``u/w``
    """

    def __init__(self, setup):
        self.setup = setup
        self.mesh_x = omega_mesh(setup)
        self.mesh_y = upsilon_mesh(setup)

        log_w = -np.asarray(setup.potential(self.mesh_y.centers), dtype=float) / setup.epsilon
        w = np.exp(log_w - np.max(log_w))
        self.w_y = w / np.dot(self.mesh_y.widths, w)

        ends, links = _path_resistances(self.mesh_y, self.w_y)
        self.tau = setup.m_upsilon * (np.sum(ends) + np.sum(links))
        self.K_y = fv.fitted_transmissivities(self.mesh_y, np.full(self.mesh_y.size, self.tau), self.w_y)

        if setup.m_omega > 0 and self.mesh_x.size > 1:
            self.K_x = fv.fitted_transmissivities(self.mesh_x, np.full(self.mesh_x.size, setup.m_omega),
                                                  np.ones(self.mesh_x.size))
        else:
            self.K_x = np.zeros(self.mesh_x.size - 1)

        self.L_x = fv.diffusion_operator(self.mesh_x, self.K_x, np.ones(self.mesh_x.size))
        self.S_y = fv.diffusion_operator(self.mesh_y, self.K_y, np.ones(self.mesh_y.size))
        self._solvers = {}

    @property
    def shape(self):
        """ :obj:`tuple`: number of cells in x and in y """
        return self.mesh_x.size, self.mesh_y.size

    @property
    def w(self):
        """ :obj:`numpy.ndarray`: discrete equilibrium on Q """
        return np.broadcast_to(self.w_y, self.shape) / np.sum(self.mesh_x.widths)

    @property
    def cell_volumes(self):
        """ :obj:`numpy.ndarray`: areas of the cells """
        return np.outer(self.mesh_x.widths, self.mesh_y.widths)

    def equilibrium(self):
        """ :obj:`GridFunction2D`: discrete equilibrium """
        return GridFunction2D(self.mesh_x, self.mesh_y, self.w)

    def mass(self, u):
        """ :obj:`float`: integral of `u` """
        return float(self.mesh_x.widths @ u @ self.mesh_y.widths)

    def energy(self, u):
        """ Relative entropy ``sum H w lambda_B(u/w)`` """
        w = self.w
        return float(np.sum(self.cell_volumes * w * boltzmann(np.asarray(u, dtype=float) / w)))

    def d_energy(self, u):
        """ :obj:`numpy.ndarray`: ``log(u/w)`` """
        return np.log(np.asarray(u, dtype=float) / self.w)

    def mobilities(self, u):
        """ Mobilities of the x-faces and y-faces at the state `u`

        Returns:
            :obj:`tuple` of :obj:`numpy.ndarray`: x-face mobilities of shape ``(n_x - 1, n_y)`` and y-face mobilities
            of shape ``(n_x, n_y - 1)``
        """
        u = np.asarray(u, dtype=float)
        if self.K_x.size and np.any(self.K_x > 0):
            mu_x = self.mesh_y.widths[np.newaxis, :] * self.K_x[:, np.newaxis] * log_mean(u[:-1, :], u[1:, :])
        else:
            mu_x = np.zeros((self.mesh_x.size - 1, self.mesh_y.size))
        v = u / self.w
        mu_y = self.mesh_x.widths[:, np.newaxis] * self.K_y[np.newaxis, :] * log_mean(v[:, :-1], v[:, 1:])
        return mu_x, mu_y

    def r_star(self, u, xi):
        """ Dual dissipation ``sum mu_x (Delta_x xi)^2/2 + sum mu_y (Delta_y xi)^2/2`` """
        mu_x, mu_y = self.mobilities(u)
        xi = np.asarray(xi, dtype=float)
        return float(np.sum(mu_x * np.diff(xi, axis=0) ** 2) / 2. + np.sum(mu_y * np.diff(xi, axis=1) ** 2) / 2.)

    def laplacian(self, u):
        """ Weighted graph Laplacian `G` of the faces with ``R*(u, xi) = xi^T G xi / 2`` on the flattened cells """
        n_x, n_y = self.shape
        mu_x, mu_y = self.mobilities(u)
        index = np.arange(n_x * n_y).reshape(n_x, n_y)
        heads = np.concatenate((index[:-1, :].ravel(), index[:, :-1].ravel()))
        tails = np.concatenate((index[1:, :].ravel(), index[:, 1:].ravel()))
        weights = np.concatenate((mu_x.ravel(), mu_y.ravel()))
        adjacency = sparse.coo_matrix((weights, (heads, tails)), shape=(n_x * n_y, n_x * n_y))
        adjacency = (adjacency + adjacency.T).tocsr()
        return sparse.diags(np.asarray(adjacency.sum(axis=1)).ravel()) - adjacency

    def r(self, u, u_dot):
        """ Primal dissipation ``b^T G^+ b / 2`` with ``b = H u_dot`` on the mass-preserving rates

        Without x-diffusion every column of cells is fixed by its own gauge.

        Args:
            u (:obj:`numpy.ndarray`): positive state
            u_dot (:obj:`numpy.ndarray`): rate

        Returns:
            :obj:`float`: dissipation
        """
        n_x, n_y = self.shape
        b = (self.cell_volumes * np.asarray(u_dot, dtype=float)).ravel()
        if np.any(self.K_x > 0):
            gauge = [0]
        else:
            gauge = [i_x * n_y for i_x in range(n_x)]
        free = np.setdiff1d(np.arange(n_x * n_y), gauge)
        G = sparse.csc_matrix(self.laplacian(u))[free, :][:, free]
        xi = sparse_linalg.spsolve(sparse.csc_matrix(G), b[free])
        return float(np.dot(b[free], xi) / 2.)

    def _solver(self, axis, dt):
        key = (axis, dt)
        if key not in self._solvers:
            if axis == 0:
                matrix = self.mesh_x.mass_matrix() - dt * self.L_x
            else:
                matrix = sparse.diags(self.mesh_y.widths * self.w_y) - dt * self.S_y
            self._solvers[key] = sparse_linalg.splu(sparse.csc_matrix(matrix))
        return self._solvers[key]

    def _x_step(self, u, dt):
        if not np.any(self.K_x > 0):
            return u
        u_new = self._solver(0, dt).solve(self.mesh_x.widths[:, np.newaxis] * u)
        # each column keeps its mass
        return _restore(u_new, self.mesh_x.widths @ u, self.mesh_x.widths @ u_new, axis=0)

    def _y_step(self, u, dt):
        """ Implicit step in ``v = u/w`` whose matrix is symmetric and diagonally dominant """
        v = u / self.w_y[np.newaxis, :]
        rhs = (self.mesh_y.widths * self.w_y)[:, np.newaxis] * v.T
        u_new = self._solver(1, dt).solve(rhs).T * self.w_y[np.newaxis, :]
        # each row keeps its mass
        return _restore(u_new, u @ self.mesh_y.widths, u_new @ self.mesh_y.widths, axis=1)

    def step(self, u, dt):
        """ Strang splitting of half steps in x around a full step in y, each implicit """
        return self._x_step(self._y_step(self._x_step(u, dt / 2.), dt), dt / 2.)


def _restore(u_new, masses, new_masses, axis):
    scale = np.where(new_masses > 0, masses / np.where(new_masses > 0, new_masses, 1.), 1.)
    if axis == 0:
        return u_new * scale[np.newaxis, :]
    return u_new * scale[:, np.newaxis]


class FPSolution(Trajectory):
    """ Time-discrete solution of the barrier problem; `states` has the shape ``(n_t, n_x, n_y)``

    Attributes:
        discretization (:obj:`FPDiscretization`): discretization
    """

    def __init__(self, discretization, times, states):
        states = np.asarray(states, dtype=float)
        super(FPSolution, self).__init__(times, states, energies=[discretization.energy(u) for u in states])
        self.discretization = discretization

    def grid_function(self, i_time=-1):
        """ :obj:`GridFunction2D`: state at the time with index `i_time` """
        disc = self.discretization
        return GridFunction2D(disc.mesh_x, disc.mesh_y, self.states[i_time])

    def masses(self):
        """ :obj:`numpy.ndarray`: mass at each time """
        return np.array([self.discretization.mass(u) for u in self.states])

    def marginals(self, i_time=-1):
        """ :obj:`TwoSpeciesField`: well masses at the time with index `i_time` """
        return well_marginals(self.grid_function(i_time))

    def to_csv(self, path, i_time=-1):
        """ Write the snapshot at the time with index `i_time` as the columns x, y, u

        Args:
            path (:obj:`str`): path
            i_time (:obj:`int`, optional): index of the time
        """
        disc = self.discretization
        x, y = np.meshgrid(disc.mesh_x.centers, disc.mesh_y.centers, indexing='ij')
        io.write_csv(path, ['x', 'y', 'u'], zip(x.ravel(), y.ravel(), self.states[i_time].ravel()))

    def marginals_to_csv(self, path, i_time=-1):
        """ Write the well masses at the time with index `i_time` as the columns x, c0, c1 """
        self.marginals(i_time).to_csv(path)


def _initial_fp_state(disc, u0):
    if callable(u0):
        x, y = np.meshgrid(disc.mesh_x.centers, disc.mesh_y.centers, indexing='ij')
        u = np.asarray(u0(x, y), dtype=float)
        if np.any(u < 0) or disc.mass(u) <= 0:
            raise ValueError('The initial density must be nonnegative with positive mass')
        u = u / disc.mass(u)
    else:
        u = np.asarray(u0, dtype=float)
        if u.shape != disc.shape:
            raise ValueError('Expected {} cell values, not {}'.format(disc.shape, u.shape))
        if np.any(u < 0):
            raise ValueError('The initial density must be nonnegative')
        if abs(disc.mass(u) - 1.) > 1e-10:
            raise ValueError('The initial density must have mass 1, not {}'.format(disc.mass(u)))
    return u


def solve_fp(setup, u0, T, dt=None):
    """ Solve the Fokker-Planck equation on ``Omega x Upsilon`` by Strang splitting of implicit steps

    A step which loses positivity is repeated as two half steps.

    Args:
        setup (:obj:`ReactionSetup`): setup
        u0 (:obj:`callable` or :obj:`numpy.ndarray`): nonnegative initial density; a function of the cell
            centers ``(x, y)`` is normalized to mass 1, cell values of shape ``(n_x, n_y)`` must have mass 1
        T (:obj:`float`): duration
        dt (:obj:`float`, optional): time step; by default `reaction.dt`

    Returns:
        :obj:`FPSolution`: solution

    Raises:
        :obj:`StepSizeUnderflowError`: if the step falls below `reaction.dt_min`
    """
    disc = FPDiscretization(setup)
    u = _initial_fp_state(disc, u0)
    dt = dt or config['dt']
    n_steps = max(int(round(T / dt)), 1)
    h = T / n_steps
    times = np.linspace(0., T, n_steps + 1)

    def advance(u, t, h):
        u_new = disc.step(u, h)
        if np.all(np.isfinite(u_new)) and np.all(u_new > 0):
            return u_new
        if h / 2. < config['dt_min']:
            raise StepSizeUnderflowError(t, h / 2., config['dt_min'], last_iterate=u)
        _log_debug('Step of size {:.3e} lost positivity; halving'.format(h), sim_time=t)
        return advance(advance(u, t, h / 2.), t + h / 2., h / 2.)

    states = [u]
    for t in times[:-1]:
        u = advance(u, t, h)
        states.append(u)
    _log_debug('Solved the barrier problem at eps={} with tau={:.3e}'.format(setup.epsilon, disc.tau), sim_time=T)
    return FPSolution(disc, times, states)


def energy_eps(setup, u):
    """ Relative entropy of a density of the barrier problem

    Args:
        setup (:obj:`ReactionSetup`): setup
        u (:obj:`GridFunction2D`): density on the meshes of the setup

    Returns:
        :obj:`float`: energy
    """
    return FPDiscretization(setup).energy(u.values)


def _midpoints(solution):
    for t_0, t_1, u_0, u_1 in zip(solution.times[:-1], solution.times[1:], solution.states[:-1], solution.states[1:]):
        yield (t_0 + t_1) / 2., t_1 - t_0, (u_0 + u_1) / 2., (u_1 - u_0) / (t_1 - t_0)


def dissipation_eps(solution):
    """ Midpoint-rule De Giorgi dissipation ``int R_eps(u, du/dt) + R*_eps(u, -DE_eps(u)) dt``

    Args:
        solution (:obj:`FPSolution`): solution

    Returns:
        :obj:`float`: dissipation
    """
    disc = solution.discretization
    total = 0.
    for _, dt, u, u_dot in _midpoints(solution):
        total += dt * (disc.r(u, u_dot) + disc.r_star(u, -disc.d_energy(u)))
    return total


def b_functional_eps(solution, xi):
    """ ``B_eps(u, xi) = int <xi, du/dt> - R*_eps(u, xi) + R*_eps(u, -DE_eps(u)) dt``, a lower bound of the
    dissipation

    Args:
        solution (:obj:`FPSolution`): solution
        xi (:obj:`callable`): test force of the midpoint time and state, with the shape of the state

    Returns:
        :obj:`float`: value
    """
    disc = solution.discretization
    H = disc.cell_volumes
    total = 0.
    for t, dt, u, u_dot in _midpoints(solution):
        force = np.asarray(xi(t, u), dtype=float)
        total += dt * (np.sum(H * force * u_dot) - disc.r_star(u, force) + disc.r_star(u, -disc.d_energy(u)))
    return total


class ZTransform(object):
    """ A density of the barrier problem in the rescaled coordinate ``z = Z_eps(y)``

    Attributes:
        mesh_z (:obj:`Mesh1D`): mesh of [0, 1] whose cells are the images of the cells of the reaction path
        z_centers (:obj:`numpy.ndarray`): images of the centers of the reaction path
        v (:obj:`numpy.ndarray`): ``u/w`` on the cells
        w_hat (:obj:`GridFunction1D`): pushed-forward equilibrium with mass 1
        normalization_gap (:obj:`float`): ``|Z_eps(7) - 1|`` of the quadrature map
    """

    def __init__(self, mesh_z, z_centers, v, w_hat, normalization_gap):
        self.mesh_z = mesh_z
        self.z_centers = z_centers
        self.v = v
        self.w_hat = w_hat
        self.normalization_gap = normalization_gap


def z_centers(disc):
    """ :obj:`numpy.ndarray`: discrete ``Z_eps`` at the centers of the reaction path """
    ends, links = _path_resistances(disc.mesh_y, disc.w_y)
    return disc.setup.m_upsilon / disc.tau * (ends[0] + np.concatenate(([0.], np.cumsum(links))))


def z_transform(setup, u_slice):
    """ Rescale the reaction path of a density by ``Z_eps``

    Args:
        setup (:obj:`ReactionSetup`): setup
        u_slice (:obj:`numpy.ndarray`): density on the reaction path, or on ``Omega x Upsilon``

    Returns:
        :obj:`ZTransform`: transform
    """
    disc = FPDiscretization(setup)
    centers = z_centers(disc)
    mesh_z = Mesh1D(np.concatenate(([0.], (centers[:-1] + centers[1:]) / 2., [1.])))
    u_slice = np.asarray(u_slice, dtype=float)
    v = u_slice / disc.w_y
    w_hat = GridFunction1D(mesh_z, disc.mesh_y.widths * disc.w_y / mesh_z.widths)
    z_end = float(z_map(setup, np.array([BARRIER, UPSILON[1]]))[-1])
    return ZTransform(mesh_z, centers, v, w_hat, abs(z_end - 1.))


def b_hat_eps(solution, zeta):
    """ ``B_eps`` in the rescaled coordinate, with ``v = u/w`` and the pushed-forward equilibrium

    Args:
        solution (:obj:`FPSolution`): solution
        zeta (:obj:`callable`): test force ``zeta(t, x, z)`` of the midpoint time on the cell centers

    Returns:
        :obj:`float`: value
    """
    disc = solution.discretization
    transform = z_transform(disc.setup, disc.w_y)
    x, z = np.meshgrid(disc.mesh_x.centers, transform.z_centers, indexing='ij')
    weights = disc.mesh_x.widths[:, np.newaxis] * (transform.w_hat.values * transform.mesh_z.widths)[np.newaxis, :]
    d_z = np.diff(transform.z_centers)
    m = disc.setup.m_upsilon

    def r_hat_star(v, force):
        total = np.sum(m / d_z[np.newaxis, :] * disc.mesh_x.widths[:, np.newaxis]
                       * log_mean(v[:, :-1], v[:, 1:]) * np.diff(force, axis=1) ** 2) / 2.
        if np.any(disc.K_x > 0):
            total += np.sum(disc.K_x[:, np.newaxis] * (transform.w_hat.values * transform.mesh_z.widths)[np.newaxis, :]
                            * log_mean(v[:-1, :], v[1:, :]) * np.diff(force, axis=0) ** 2) / 2.
        return total

    result = 0.
    for t, dt, u, u_dot in _midpoints(solution):
        v = u / disc.w
        v_dot = u_dot / disc.w
        force = np.asarray(zeta(t, x, z), dtype=float)
        result += dt * (np.sum(weights * force * v_dot) - r_hat_star(v, force) + r_hat_star(v, -np.log(v)))
    return float(result)


class TwoSpeciesField(object):
    """ Densities of the two wells on Omega

    Attributes:
        mesh (:obj:`Mesh1D`): mesh of Omega
        c0 (:obj:`numpy.ndarray`): density of the left well
        c1 (:obj:`numpy.ndarray`): density of the right well
    """

    def __init__(self, mesh, c0, c1, validate=True):
        self.mesh = mesh
        self.c0 = np.asarray(c0, dtype=float)
        self.c1 = np.asarray(c1, dtype=float)
        if validate:
            self.validate()

    @classmethod
    def uniform_equilibrium(cls, setup, mesh=None):
        """ :obj:`TwoSpeciesField`: ``c_j = alpha_j`` """
        mesh = mesh or omega_mesh(setup)
        alpha_0, alpha_1 = setup.alphas / np.sum(mesh.widths)
        return cls(mesh, np.full(mesh.size, alpha_0), np.full(mesh.size, alpha_1))

    @classmethod
    def sample(cls, mesh, c0_fn, c1_fn):
        """ Field of the values of two functions at the cell centers, normalized to mass 1 """
        c0 = np.asarray(c0_fn(mesh.centers), dtype=float)
        c1 = np.asarray(c1_fn(mesh.centers), dtype=float)
        mass = np.dot(mesh.widths, c0 + c1)
        return cls(mesh, c0 / mass, c1 / mass)

    def validate(self):
        """ Check the shapes, nonnegativity and mass

        Raises:
            :obj:`ValueError`: if the field is invalid
        """
        if self.c0.shape != (self.mesh.size,) or self.c1.shape != (self.mesh.size,):
            raise ValueError('Expected {} cell values per species'.format(self.mesh.size))
        if np.any(self.c0 < 0) or np.any(self.c1 < 0):
            raise ValueError('Densities must be nonnegative')
        if abs(self.mass() - 1.) > 1e-10:
            raise ValueError('The densities must have combined mass 1, not {}'.format(self.mass()))

    def mass(self):
        """ :obj:`float`: combined mass """
        return float(np.dot(self.mesh.widths, self.c0 + self.c1))

    def as_array(self):
        """ :obj:`numpy.ndarray`: densities with the shape ``(2, n_x)`` """
        return np.array([self.c0, self.c1])

    def grid_functions(self):
        """ :obj:`tuple` of :obj:`GridFunction1D`: the two densities """
        return GridFunction1D(self.mesh, self.c0), GridFunction1D(self.mesh, self.c1)

    def l1_distance(self, other):
        """ :obj:`float`: sum of the L1 distances of the densities """
        return sum(mine.l1_distance(theirs) for mine, theirs in zip(self.grid_functions(), other.grid_functions()))

    def to_csv(self, path):
        """ Write the columns x, c0, c1 """
        io.write_csv(path, ['x', 'c0', 'c1'], zip(self.mesh.centers, self.c0, self.c1))


def well_marginals(u):
    """ Masses of the wells below and above the barrier as functions of x

    Args:
        u (:obj:`GridFunction2D`): density on ``Omega x Upsilon``

    Returns:
        :obj:`TwoSpeciesField`: well masses
    """
    return TwoSpeciesField(u.mesh_x, u.band_marginal(UPSILON[0], BARRIER).values,
                           u.band_marginal(BARRIER, UPSILON[1]).values, validate=False)


def _cut_off(y, width):
    return np.maximum(1. - np.abs(y) / width, 0.)


def recovery_state(setup, c, width=1.):
    """ Density ``c_0 w beta_0 chi(y - 2) + c_1 w beta_1 chi(y - 6)`` whose well masses are `c`

    ``chi(y) = max(1 - |y|/width, 0)`` and ``beta_j`` normalizes ``w chi`` on the discrete mesh.

    Args:
        setup (:obj:`ReactionSetup`): setup
        c (:obj:`TwoSpeciesField`): well masses on the mesh of Omega
        width (:obj:`float`, optional): half width of the cut-off

    Returns:
        :obj:`GridFunction2D`: density
    """
    disc = FPDiscretization(setup)
    if c.mesh.size != disc.mesh_x.size:
        raise ValueError('Expected {} cells of Omega, not {}'.format(disc.mesh_x.size, c.mesh.size))
    if width <= 0 or width > BARRIER - WELLS[0]:
        raise ValueError('The cut-off width must lie in ]0, {}]'.format(BARRIER - WELLS[0]))
    y = disc.mesh_y.centers
    profiles = []
    for y_well in WELLS:
        profile = disc.w_y * _cut_off(y - y_well, width)
        profiles.append(profile / np.dot(disc.mesh_y.widths, profile))
    return GridFunction2D(disc.mesh_x, disc.mesh_y, np.outer(c.c0, profiles[0]) + np.outer(c.c1, profiles[1]))


def _rds_coefficients(setup, mesh):
    if setup.m_omega > 0 and mesh.size > 1:
        return fv.fitted_transmissivities(mesh, np.full(mesh.size, setup.m_omega), np.ones(mesh.size))
    return np.zeros(mesh.size - 1)


def rds_matrix(setup, mesh):
    """ Matrix `A` of the limit system ``dc/dt = A c`` on the stacked densities ``(c_0, c_1)``

    Args:
        setup (:obj:`ReactionSetup`): setup
        mesh (:obj:`Mesh1D`): mesh of Omega

    Returns:
        :obj:`numpy.ndarray`: matrix
    """
    n = mesh.size
    alpha_0, alpha_1 = setup.alphas
    diffusion = fv.diffusion_operator(mesh, _rds_coefficients(setup, mesh), np.ones(n)).toarray() \
        / mesh.widths[:, np.newaxis]
    identity = np.eye(n)
    m = setup.m_upsilon
    return np.block([[diffusion - m / alpha_0 * identity, m / alpha_1 * identity],
                     [m / alpha_0 * identity, diffusion - m / alpha_1 * identity]])


def rds_rate(setup, c):
    """ :obj:`numpy.ndarray`: right-hand side of the limit system, with the shape ``(2, n_x)`` """
    return (rds_matrix(setup, c.mesh) @ c.as_array().ravel()).reshape(2, -1)


def energy_limit(setup, c):
    """ ``E(c) = sum_x h sum_j alpha_j lambda_B(c_j/alpha_j)``

    Args:
        setup (:obj:`ReactionSetup`): setup
        c (:obj:`TwoSpeciesField`): densities

    Returns:
        :obj:`float`: energy
    """
    alpha = setup.alphas[:, np.newaxis]
    return float(np.sum(c.mesh.widths * alpha * boltzmann(c.as_array() / alpha)))


def d_energy_limit(setup, c):
    """ :obj:`numpy.ndarray`: ``log(c_j/alpha_j)`` """
    return np.log(c.as_array() / setup.alphas[:, np.newaxis])


def _reaction_weights(setup, c):
    """ ``m_Upsilon sqrt(c_0 c_1 / (alpha_0 alpha_1))`` per cell """
    alpha_0, alpha_1 = setup.alphas
    return setup.m_upsilon * np.sqrt(c.c0 * c.c1 / (alpha_0 * alpha_1))


def _diffusion_mobilities(setup, c):
    K = _rds_coefficients(setup, c.mesh)
    if not np.any(K > 0):
        return np.zeros((2, c.mesh.size - 1))
    return np.array([K * np.atleast_1d(log_mean(c_j[:-1], c_j[1:])) for c_j in (c.c0, c.c1)])


def r_star_limit(setup, c, eta):
    """ Dual dissipation of the limit system

    ``R*(c, eta) = sum_faces (m_Omega/d) L(c_j) (Delta eta_j)^2 / 2 + sum_x h m_Upsilon s C*(eta_1 - eta_0)`` with
    ``s = sqrt(c_0 c_1/(alpha_0 alpha_1))`` and the logarithmic mean `L`

    Args:
        setup (:obj:`ReactionSetup`): setup
        c (:obj:`TwoSpeciesField`): positive densities
        eta (:obj:`numpy.ndarray`): forces with the shape ``(2, n_x)``

    Returns:
        :obj:`float`: dissipation
    """
    eta = np.asarray(eta, dtype=float)
    mu = _diffusion_mobilities(setup, c)
    diffusion = np.sum(mu * np.diff(eta, axis=1) ** 2) / 2.
    reaction = np.sum(c.mesh.widths * _reaction_weights(setup, c) * cosh_star(eta[1] - eta[0]))
    return float(diffusion + reaction)


def limit_field(setup, c, eta=None):
    """ Rate ``D_eta R*(c, eta)`` per unit length, by default at ``eta = -DE(c)``, where it is the right-hand side
    of the limit system

    Args:
        setup (:obj:`ReactionSetup`): setup
        c (:obj:`TwoSpeciesField`): positive densities
        eta (:obj:`numpy.ndarray`, optional): forces with the shape ``(2, n_x)``

    Returns:
        :obj:`numpy.ndarray`: rates with the shape ``(2, n_x)``
    """
    eta = -d_energy_limit(setup, c) if eta is None else np.asarray(eta, dtype=float)
    fluxes = _diffusion_mobilities(setup, c) * np.diff(eta, axis=1)
    zero = np.zeros((2, 1))
    gradient = np.concatenate((zero, fluxes), axis=1) - np.concatenate((fluxes, zero), axis=1)
    reaction = c.mesh.widths * _reaction_weights(setup, c) * cosh_star_prime(eta[1] - eta[0])
    gradient[0] -= reaction
    gradient[1] += reaction
    return gradient / c.mesh.widths


def r_limit(setup, c, c_dot):
    """ Primal dissipation ``R(c, c_dot) = sup_eta <eta, c_dot> - R*(c, eta)`` of the limit system

    The reaction fluxes ``r`` with ``c_dot_1 = (diffusion) + r`` are the unknowns; the fluxes of the diffusion
    follow from them, and the convex cost
    ``sum_faces J_j^2 / (2 mu_j) + sum_x h m_Upsilon s C(r / (m_Upsilon s))`` is minimized by BFGS.

    Args:
        setup (:obj:`ReactionSetup`): setup
        c (:obj:`TwoSpeciesField`): positive densities
        c_dot (:obj:`numpy.ndarray`): mass-preserving rates with the shape ``(2, n_x)``

    Returns:
        :obj:`float`: dissipation
    """
    c_dot = np.asarray(c_dot, dtype=float)
    h = c.mesh.widths
    weights = _reaction_weights(setup, c)
    mu = _diffusion_mobilities(setup, c)

    def reaction_cost(r):
        return np.sum(h * weights * cosh_c(r / weights)), h * cosh_c_prime(r / weights)

    if c.mesh.size == 1 or not np.any(mu > 0):
        return float(reaction_cost((c_dot[1] - c_dot[0]) / 2.)[0])

    r_mean = -np.dot(h, c_dot[0]) / np.sum(h)

    def fluxes(z):
        r = np.append(r_mean + z, r_mean - np.dot(h[:-1], z) / h[-1])
        return r, -np.cumsum(h * (c_dot[0] + r))[:-1], -np.cumsum(h * (c_dot[1] - r))[:-1]

    def objective(z):
        r, J_0, J_1 = fluxes(z)
        value, grad_r = reaction_cost(r)
        value += np.sum(J_0 ** 2 / mu[0]) / 2. + np.sum(J_1 ** 2 / mu[1]) / 2.
        grad_r = grad_r - h * np.append(np.cumsum((J_0 / mu[0])[::-1])[::-1], 0.) \
            + h * np.append(np.cumsum((J_1 / mu[1])[::-1])[::-1], 0.)
        return value, grad_r[:-1] - grad_r[-1] * h[:-1] / h[-1]

    alpha_0, alpha_1 = setup.alphas
    r_start = setup.m_upsilon * (c.c0 / alpha_0 - c.c1 / alpha_1)
    result = optimize.minimize(objective, (r_start - r_mean)[:-1], jac=True, method='BFGS',
                               options={'gtol': 1e-12, 'maxiter': 10000})
    return float(result.fun)


class RDSSolution(Trajectory):
    """ Time-discrete solution of the limit system; `states` has the shape ``(n_t, 2, n_x)``

    Attributes:
        setup (:obj:`ReactionSetup`): setup
        mesh (:obj:`Mesh1D`): mesh of Omega
    """

    def __init__(self, setup, mesh, times, states):
        states = np.asarray(states, dtype=float)
        self.setup = setup
        self.mesh = mesh
        super(RDSSolution, self).__init__(times, states)
        self.energies = np.array([energy_limit(setup, self.field(i)) for i in range(self.times.size)])

    def field(self, i_time=-1):
        """ :obj:`TwoSpeciesField`: densities at the time with index `i_time` """
        return TwoSpeciesField(self.mesh, self.states[i_time][0], self.states[i_time][1], validate=False)

    def masses(self):
        """ :obj:`numpy.ndarray`: combined mass at each time """
        return np.array([self.field(i).mass() for i in range(self.times.size)])

    def to_csv(self, path, i_time=-1):
        """ Write the densities at the time with index `i_time` as the columns x, c0, c1 """
        self.field(i_time).to_csv(path)


def _expm_propagator(setup, mesh, dt):
    propagator = linalg.expm(rds_matrix(setup, mesh) * dt)
    return lambda c: propagator.dot(c.ravel()).reshape(2, -1)


def _split_propagator(setup, mesh, dt):
    """ Half steps of the diffusion around a full step of the reaction, each by implicit Euler """
    n = mesh.size
    diffusion = fv.diffusion_operator(mesh, _rds_coefficients(setup, mesh), np.ones(n))
    solve_diffusion = fv.implicit_euler_solver(mesh.mass_matrix(), diffusion, dt / 2.)
    alpha_0, alpha_1 = setup.alphas
    m = setup.m_upsilon
    reaction_step = np.linalg.inv(np.eye(2) - dt * m * np.array([[-1. / alpha_0, 1. / alpha_1],
                                                                  [1. / alpha_0, -1. / alpha_1]]))

    def half_step(c):
        return np.array([solve_diffusion(c_j) for c_j in c])

    return lambda c: half_step(reaction_step @ half_step(c))


INTEGRATORS = {
    'expm': _expm_propagator,
    'split': _split_propagator,
}
# :obj:`dict`: propagators of one time step of the limit system


def solve_limit_rds(setup, c_init, T, dt=None, integrator='expm'):
    """ Solve the limit system

    The ``expm`` propagator is exact in time. The ``split`` propagator takes the same Strang splitting of implicit
    steps as :obj:`solve_fp`, so that both solutions share their time-discretization error.

    Args:
        setup (:obj:`ReactionSetup`): setup
        c_init (:obj:`TwoSpeciesField`): initial densities with mass 1
        T (:obj:`float`): duration
        dt (:obj:`float`, optional): time step; by default `reaction.dt`
        integrator (:obj:`str`, optional): ``expm`` or ``split``

    Returns:
        :obj:`RDSSolution`: solution
    """
    c_init.validate()
    dt = dt or config['dt']
    n_steps = max(int(round(T / dt)), 1)
    times = np.linspace(0., T, n_steps + 1)
    step = INTEGRATORS[integrator](setup, c_init.mesh, T / n_steps)

    states = np.empty((n_steps + 1, 2, c_init.mesh.size))
    states[0] = c_init.as_array()
    for i_step in range(n_steps):
        states[i_step + 1] = step(states[i_step])
    return RDSSolution(setup, c_init.mesh, times, states)


def _limit_midpoints(solution):
    for t, dt, c, c_dot in _midpoints(solution):
        yield t, dt, TwoSpeciesField(solution.mesh, c[0], c[1], validate=False), c_dot


def dissipation_limit(solution):
    """ Midpoint-rule ``int R(c, dc/dt) + R*(c, -DE(c)) dt`` of the limit system

    Args:
        solution (:obj:`RDSSolution`): positive solution

    Returns:
        :obj:`float`: dissipation
    """
    setup = solution.setup
    total = 0.
    for _, dt, c, c_dot in _limit_midpoints(solution):
        total += dt * (r_limit(setup, c, c_dot) + r_star_limit(setup, c, -d_energy_limit(setup, c)))
    return total


def b_functional_limit(solution, zeta):
    """ ``B(c, zeta) = int <zeta, dc/dt> - R*(c, zeta) + R*(c, -DE(c)) dt``

    Args:
        solution (:obj:`RDSSolution`): positive solution
        zeta (:obj:`callable`): test force of the midpoint time and densities, with the shape ``(2, n_x)``

    Returns:
        :obj:`float`: value
    """
    setup = solution.setup
    h = solution.mesh.widths
    total = 0.
    for t, dt, c, c_dot in _limit_midpoints(solution):
        force = np.asarray(zeta(t, c), dtype=float)
        total += dt * (np.sum(h * force * c_dot) - r_star_limit(setup, c, force)
                       + r_star_limit(setup, c, -d_energy_limit(setup, c)))
    return total


def z_profile_cost(setup, v0, v1, zeta0, zeta1, v_profile=None, zeta_profile=None, grid_points=None):
    """ Reaction cost ``m_Upsilon N(v, zeta)`` across the rescaled path between the boundary values

    Without profiles the inf-sup over the profiles is taken by :obj:`oracle.n_brute`; its closed form is
    ``m_Upsilon oracle.n_closed``.

    Args:
        setup (:obj:`ReactionSetup`): setup
        v0 (:obj:`float`): ``c_0/alpha_0``
        v1 (:obj:`float`): ``c_1/alpha_1``
        zeta0 (:obj:`float`): force at z = 0
        zeta1 (:obj:`float`): force at z = 1
        v_profile (:obj:`numpy.ndarray`, optional): positive profile at the nodes of a uniform grid of [0, 1]
        zeta_profile (:obj:`numpy.ndarray`, optional): force at the same nodes
        grid_points (:obj:`int`, optional): number of cells of the brute-force grid

    Returns:
        :obj:`float`: cost
    """
    if v_profile is None:
        return setup.m_upsilon * oracle.n_brute(zeta1 - zeta0, v0, v1, grid_points=grid_points)
    return setup.m_upsilon * oracle.n_of_profile(v_profile, zeta_profile)


def b_hat_limit(solution, zeta, grid_points=20):
    """ ``B-hat_0`` with the geometric profile ``v0^(1-z) v1^z`` and the linear force between the wells

    Args:
        solution (:obj:`RDSSolution`): positive solution
        zeta (:obj:`callable`): test force of the midpoint time and densities, with the shape ``(2, n_x)``
        grid_points (:obj:`int`, optional): number of cells of [0, 1]

    Returns:
        :obj:`float`: value
    """
    setup = solution.setup
    h = solution.mesh.widths
    alpha = setup.alphas[:, np.newaxis]
    z = np.linspace(0., 1., grid_points + 1)

    def spatial(c, force):
        return np.sum(_diffusion_mobilities(setup, c) * np.diff(force, axis=1) ** 2) / 2.

    def path(c, force):
        v = c.as_array() / alpha
        return sum(h_x * z_profile_cost(setup, v_0, v_1, f_0, f_1, v_profile=v_0 ** (1. - z) * v_1 ** z,
                                        zeta_profile=(1. - z) * f_0 + z * f_1)
                   for h_x, v_0, v_1, f_0, f_1 in zip(h, v[0], v[1], force[0], force[1]))

    total = 0.
    for t, dt, c, c_dot in _limit_midpoints(solution):
        force = np.asarray(zeta(t, c), dtype=float)
        total += dt * (np.sum(h * force * c_dot) - spatial(c, force) + spatial(c, -d_energy_limit(setup, c))
                       + path(c, force))
    return total


def two_state_reference(setup):
    """ Chain on the two wells with the jump rates ``m_Upsilon/alpha_0`` and ``m_Upsilon/alpha_1``

    Returns:
        :obj:`tuple`: :obj:`markov.MarkovGenerator` and its :obj:`markov.DetailedBalanceCertificate`
    """
    alpha_0, alpha_1 = setup.alphas
    gen = markov.two_state_generator(setup.m_upsilon / alpha_0, setup.m_upsilon / alpha_1)
    return gen, markov.detailed_balance(gen)


def reduced_structure_gap(setup, states, forces, normalization='unit'):
    """ Largest gap between the limit structure on one cell and the entropic structure of :obj:`two_state_reference`

    With the ``half`` normalization the chain's structure is compared as ``2 E`` and ``2 R*(c, eta/2)``.

    Args:
        setup (:obj:`ReactionSetup`): setup
        states (:obj:`numpy.ndarray`): positive well masses ``(c_0, c_1)`` with sum 1, one per row
        forces (:obj:`numpy.ndarray`): forces ``(eta_0, eta_1)``, one per row
        normalization (:obj:`str`, optional): ``unit`` or ``half``

    Returns:
        :obj:`float`: largest relative gap of the energies and dual dissipations
    """
    gen, cert = two_state_reference(setup)
    gs = markov.entropic_gs(gen, cert, normalization=normalization)
    scale = 2. if normalization == 'half' else 1.
    cell = Mesh1D.uniform(0., 1., 1)
    gaps = []
    for c, eta in zip(np.asarray(states, dtype=float), np.asarray(forces, dtype=float)):
        field = TwoSpeciesField(cell, [c[0]], [c[1]])
        pairs = [(energy_limit(setup, field), scale * gs.energy(c)),
                 (r_star_limit(setup, field, eta[:, np.newaxis]), scale * gs.r_star(c, eta / scale))]
        gaps.extend(abs(mine - theirs) / max(abs(theirs), 1.) for mine, theirs in pairs)
    return max(gaps)


def smoothed_step(z):
    """ ``(1 + tanh((z - 1/2) / width)) / 2`` """
    return (1. + np.tanh((np.asarray(z, dtype=float) - 0.5) / STEP_WIDTH)) / 2.


def force_dictionary(disc, limit):
    """ Test forces of the barrier problem for lower bounds of its dissipation

    The first lifts the optimal force ``-log(c_j/alpha_j)`` of the limit solution to the reaction path by a smoothed
    step in z; the others are products of low-order polynomials in x with the centered step.

    Args:
        disc (:obj:`FPDiscretization`): discretization
        limit (:obj:`RDSSolution`): limit solution on the same mesh of Omega

    Returns:
        :obj:`list` of :obj:`callable`: forces of the midpoint time and state
    """
    step = smoothed_step(z_centers(disc))[np.newaxis, :]
    x = disc.mesh_x.centers[:, np.newaxis]
    alpha = disc.setup.alphas[:, np.newaxis]
    forces = -np.log(limit.states / alpha[np.newaxis, :, :])
    lifted_force = interpolate.interp1d(limit.times, forces, axis=0)

    def lifted(t, u):
        zeta = lifted_force(t)
        return zeta[0][:, np.newaxis] * (1. - step) + zeta[1][:, np.newaxis] * step

    def static(polynomial):
        return lambda t, u: polynomial(x) * (step - 0.5)

    return [lifted, static(lambda x: np.ones_like(x)), static(lambda x: 2. * x - 1.)]


class ReactionReport(object):
    """ Convergence of solutions of the barrier problem to the solution of the limit system

    Attributes:
        d_limit (:obj:`float`): dissipation of the limit solution
        limit_edb_residual (:obj:`float`): ``E(T) + D - E(0)`` of the limit solution
        rows (:obj:`list` of :obj:`list`): per temperature, the columns of :obj:`HEADER`
        failures (:obj:`list` of :obj:`tuple`): temperatures whose solve failed, with the error message
    """

    HEADER = ['epsilon', 'l1_gap', 'energy_gap', 'initial_energy_gap', 'equilibrium_gap', 'd_eps', 'b_lower',
              'edb_residual']

    def __init__(self, d_limit, limit_edb_residual, rows, failures):
        self.d_limit = d_limit
        self.limit_edb_residual = limit_edb_residual
        self.rows = rows
        self.failures = failures

    def column(self, name):
        """ :obj:`numpy.ndarray`: values of a column """
        i_col = self.HEADER.index(name)
        return np.array([row[i_col] for row in self.rows])

    @property
    def smallest_epsilon(self):
        """ :obj:`float`: smallest temperature which was solved """
        return min(row[0] for row in self.rows) if self.rows else None

    def converging(self, slack=0.1):
        """ Whether the L1 gaps of the well masses decrease with the temperature, up to the relative `slack` """
        gaps = self.column('l1_gap')
        return bool(np.all(gaps[1:] <= (1. + slack) * gaps[:-1]))

    def to_csv(self, path):
        """ Write the rows """
        io.write_csv(path, self.HEADER, self.rows)


def _reaction_entry(setup, epsilon, c_init, T, dt, width, limit):
    setup_eps = setup.with_epsilon(epsilon)
    try:
        setup_eps.validate()
        sol = solve_fp(setup_eps, recovery_state(setup_eps, c_init, width=width).values, T, dt=dt)
    except (InvalidSetupError, StepSizeUnderflowError) as error:
        _log_debug('Barrier solve failed at eps={}: {}'.format(epsilon, error))
        return epsilon, None, str(error)

    disc = sol.discretization
    l1_gap = max(sol.marginals(i).l1_distance(limit.field(i)) for i in range(sol.times.size))
    energy_gap = float(np.max(np.abs(sol.energies - limit.energies)))
    split = well_marginals(disc.equilibrium())
    equilibrium_gap = float(np.max(np.abs([np.dot(disc.mesh_x.widths, split.c0) - setup.alphas[0],
                                           np.dot(disc.mesh_x.widths, split.c1) - setup.alphas[1]])))
    d_eps = dissipation_eps(sol)
    b_lower = max(b_functional_eps(sol, xi) for xi in force_dictionary(disc, limit))
    return epsilon, [epsilon, l1_gap, energy_gap, abs(sol.energies[0] - limit.energies[0]), equilibrium_gap, d_eps,
                     b_lower, sol.energies[-1] + d_eps - sol.energies[0]], None


def edp_check_reaction(setup, epsilons, c_init, T, dt=None, width=1., map_fn=map):
    """ Compare solutions of the barrier problem from recovery data with the solution of the limit system

    The limit system is solved by the same splitting as the barrier problem.

    Args:
        setup (:obj:`ReactionSetup`): setup; its temperature is replaced by each of `epsilons`
        epsilons (:obj:`list` of :obj:`float`): temperatures
        c_init (:obj:`TwoSpeciesField`): positive initial densities of the limit system on the mesh of Omega
        T (:obj:`float`): duration
        dt (:obj:`float`, optional): time step of all solves
        width (:obj:`float`, optional): half width of the cut-off of the recovery data
        map_fn (:obj:`callable`, optional): map over the temperatures, e.g. of an executor

    Returns:
        :obj:`ReactionReport`: report, ordered by decreasing temperature
    """
    dt = dt or config['dt']
    limit = solve_limit_rds(setup, c_init, T, dt=dt, integrator='split')
    d_limit = dissipation_limit(limit)

    epsilons = sorted(epsilons, reverse=True)
    entries = list(map_fn(lambda epsilon: _reaction_entry(setup, epsilon, c_init, T, dt, width, limit), epsilons))
    rows = [row for _, row, _ in entries if row is not None]
    failures = [(epsilon, message) for epsilon, row, message in entries if row is None]
    for row in rows:
        _log_debug('eps={}: L1 gap {:.3e}, B bound {:.3e} of {:.3e}'.format(row[0], row[1], row[6], row[5]),
                   sim_time=T)
    return ReactionReport(d_limit, limit.energies[-1] + d_limit - limit.energies[0], rows, failures)
