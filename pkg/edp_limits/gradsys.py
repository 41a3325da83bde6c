""" Finite-dimensional gradient systems: rate equations, De Giorgi dissipation, rate functionals,
mass-action reaction structures, and two demonstrations of limits which depend on the gradient
structure

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits.config import get_config
from edp_limits.debug_logs import get_debug_log
from edp_limits.potentials import (DissipationPair, DomainError, OutOfRangeError, boltzmann,
                                   cosh_c, cosh_star, cosh_star_prime, legendre)
from edp_limits.util import io
from scipy import integrate, optimize
import math
import numpy as np

config = get_config()['edp_limits']['gradsys']


class AdmissibilityError(Exception):
    """ A state is outside the admissible set of a gradient system """
    pass


class StepSizeUnderflowError(Exception):
    """ The time step of an integrator fell below the smallest allowed step

    Attributes:
        time (:obj:`float`): time of the failed step
        dt (:obj:`float`): rejected step
        dt_min (:obj:`float`): smallest allowed step
        last_iterate (:obj:`numpy.ndarray`): last accepted state
    """

    def __init__(self, time, dt, dt_min, last_iterate=None):
        self.time = time
        self.dt = dt
        self.dt_min = dt_min
        self.last_iterate = last_iterate

    def __str__(self):
        return 'Step size {:.3e} fell below {:.3e} at t={}; last state {}'.format(
            self.dt, self.dt_min, self.time, self.last_iterate)


class DetailedBalanceError(Exception):
    """ Reaction rates violate detailed balance with respect to the equilibrium

    Attributes:
        residual (:obj:`float`): largest relative violation
    """

    def __init__(self, residual):
        self.residual = residual

    def __str__(self):
        return 'Rates violate detailed balance; relative residual {:.3e}'.format(self.residual)


def _log_debug(message, sim_time=float('nan')):
    log = get_debug_log()
    if log:
        log.debug(message, sim_time=sim_time)


class GradientSystem(object):
    """ Gradient system ``(X, E, R)`` on a finite-dimensional state space

    The system generates the rate equation ``du/dt = D_xi R*(u, -DE(u))``.

    Attributes:
        dim (:obj:`int`): dimension of the state space
        energy (:obj:`callable`): state to energy
        d_energy (:obj:`callable`): state to differential of the energy
        r_star (:obj:`callable`): state and force to dual dissipation
        d_r_star (:obj:`callable`): state and force to rate
        r_closed (:obj:`callable`): state and rate to primal dissipation; :obj:`None` if the primal
            dissipation is computed by numeric Legendre transforms
        constraint (:obj:`str`): :obj:`None` or ``simplex``; forces of a simplex constrained system
            are defined up to constants
        admissible (:obj:`callable`): state to :obj:`bool`; :obj:`None` means finite, and
            nonnegative for simplex systems
        name (:obj:`str`): name
    """

    def __init__(self, dim, energy, d_energy, r_star, d_r_star, r_closed=None, constraint=None,
                 admissible=None, name=None):
        self.dim = dim
        self.energy = energy
        self.d_energy = d_energy
        self.r_star = r_star
        self.d_r_star = d_r_star
        self.r_closed = r_closed
        self.constraint = constraint
        self.admissible = admissible
        self.name = name

    def vector_field(self, u):
        """ Rate ``D_xi R*(u, -DE(u))``

        Args:
            u (:obj:`numpy.ndarray`): state

        Returns:
            :obj:`numpy.ndarray`: rate
        """
        u = np.asarray(u, dtype=float)
        return np.asarray(self.d_r_star(u, -np.asarray(self.d_energy(u), dtype=float)), dtype=float)

    def is_admissible(self, u):
        """ Determine whether `u` is an admissible state

        Args:
            u (:obj:`numpy.ndarray`): state

        Returns:
            :obj:`bool`: :obj:`True` if `u` is admissible
        """
        u = np.asarray(u, dtype=float)
        if not np.all(np.isfinite(u)):
            return False
        if self.admissible is not None:
            return bool(self.admissible(u))
        if self.constraint == 'simplex':
            return bool(np.all(u >= 0))
        return True

    def r(self, u, v):
        """ Primal dissipation ``R(u, v)``

        Without a closed form, ``R(u, v) = sup_xi (<xi, v> - R*(u, xi))`` is computed by bracketing
        and golden section for scalar systems, and by BFGS otherwise. Forces of simplex systems
        are normalized by ``xi_n = 0``, so `v` must be tangent to the simplex.

        Args:
            u (:obj:`numpy.ndarray`): state
            v (:obj:`numpy.ndarray`): rate

        Returns:
            :obj:`float`: dissipation
        """
        u = np.asarray(u, dtype=float)
        v = np.atleast_1d(np.asarray(v, dtype=float))
        if self.r_closed is not None:
            return float(self.r_closed(u, v))

        if self.dim == 1:
            return legendre(lambda xi: self.r_star(u, np.array([xi])), v[0])

        n_free = self.dim - 1 if self.constraint == 'simplex' else self.dim

        def full(xi_free):
            if n_free == self.dim:
                return xi_free
            return np.append(xi_free, 0.)

        def objective(xi_free):
            xi = full(xi_free)
            value = self.r_star(u, xi) - np.dot(xi, v)
            grad = np.asarray(self.d_r_star(u, xi), dtype=float) - v
            return value, grad[:n_free]

        result = optimize.minimize(objective, np.zeros(n_free), jac=True, method='BFGS',
                                   options={'gtol': 1e-12})
        return float(-result.fun)

    def check_axioms(self, u, xi, tol=1e-10):
        """ Check the dissipation-potential axioms of `r_star` at state `u` along the line through `xi`

        Args:
            u (:obj:`numpy.ndarray`): state
            xi (:obj:`numpy.ndarray`): force
            tol (:obj:`float`, optional): tolerance

        Returns:
            :obj:`dict`: truth value of each axiom
        """
        u = np.asarray(u, dtype=float)
        xi = np.asarray(xi, dtype=float)
        zero = np.zeros_like(xi)
        values = np.array([self.r_star(u, t * xi) for t in np.linspace(-2., 2., 21)])
        return {
            'r_star_zero': abs(self.r_star(u, zero)) <= tol,
            'd_r_star_zero': bool(np.max(np.abs(self.d_r_star(u, zero))) <= tol),
            'convex_along_line': bool(np.min(values[:-2] - 2. * values[1:-1] + values[2:]) >= -tol),
            'nonnegative': bool(np.min(values) >= -tol),
        }


class Trajectory(object):
    """ Time-discrete path of a gradient system

    Attributes:
        times (:obj:`numpy.ndarray`): increasing times
        states (:obj:`numpy.ndarray`): one state per row
        energies (:obj:`numpy.ndarray`): energy at each time
        edb_residual (:obj:`numpy.ndarray`): energy-dissipation balance residual of each step
    """

    def __init__(self, times, states, energies=None, edb_residual=None):
        self.times = np.asarray(times, dtype=float)
        self.states = np.asarray(states, dtype=float)
        if self.states.ndim == 1:
            self.states = self.states[:, np.newaxis]
        self.energies = None if energies is None else np.asarray(energies, dtype=float)
        self.edb_residual = None if edb_residual is None else np.asarray(edb_residual, dtype=float)

    @classmethod
    def from_path(cls, gs, times, states):
        """ Build a trajectory of `gs` from a prescribed path, with its energies

        Args:
            gs (:obj:`GradientSystem`): gradient system
            times (:obj:`numpy.ndarray`): times
            states (:obj:`numpy.ndarray`): states

        Returns:
            :obj:`Trajectory`: trajectory
        """
        states = np.asarray(states, dtype=float)
        if states.ndim == 1:
            states = states[:, np.newaxis]
        return cls(times, states, energies=[gs.energy(u) for u in states])

    def velocities(self):
        """ Second-order finite-difference rates at the times of the trajectory

        Returns:
            :obj:`numpy.ndarray`: one rate per row
        """
        return np.gradient(self.states, self.times, axis=0, edge_order=2)

    def reversed(self):
        """ Time-reversed trajectory on the same time grid """
        return Trajectory(self.times, self.states[::-1], None if self.energies is None else self.energies[::-1])

    def to_csv(self, path):
        """ Write the columns t, u_1..u_n, E, edb_residual; the residual of a step is written at its end

        Args:
            path (:obj:`str`): path
        """
        dim = self.states.shape[1]
        energies = self.energies if self.energies is not None else np.full(self.times.size, np.nan)
        residual = np.zeros(self.times.size)
        if self.edb_residual is not None:
            residual[1:] = self.edb_residual
        header = ['t'] + ['u_{}'.format(i + 1) for i in range(dim)] + ['E', 'edb_residual']
        rows = [[t] + list(u) + [e, r] for t, u, e, r in zip(self.times, self.states, energies, residual)]
        io.write_csv(path, header, rows)


def _rk4_step(gs, u, h):
    k1 = gs.vector_field(u)
    k2 = gs.vector_field(u + h / 2. * k1)
    k3 = gs.vector_field(u + h / 2. * k2)
    k4 = gs.vector_field(u + h * k3)
    return u + h / 6. * (k1 + 2. * k2 + 2. * k3 + k4)


def _implicit_euler_step(gs, u, h):
    result = optimize.root(lambda x: x - u - h * gs.vector_field(x), u, method='hybr',
                           tol=config['newton_tol'])
    if not result.success:
        raise ValueError(result.message)
    return result.x


STEPPERS = {
    'rk4': _rk4_step,
    'implicit_euler': _implicit_euler_step,
}


def _accept(gs, u_old, u_new):
    if not gs.is_admissible(u_new):
        return False
    return gs.energy(u_new) <= gs.energy(u_old) + 1e-8


def _advance(gs, stepper, u, t, h, dt_min):
    """ Advance `u` by `h`, halving the step while steps are rejected """
    try:
        with np.errstate(all='ignore'):
            u_new = stepper(gs, u, h)
        accepted = _accept(gs, u, u_new)
    except (DomainError, OutOfRangeError, ValueError, FloatingPointError):
        accepted = False

    if accepted:
        return u_new

    if h / 2. < dt_min:
        raise StepSizeUnderflowError(t, h / 2., dt_min, last_iterate=u)
    _log_debug('Step of size {:.3e} rejected; halving'.format(h), sim_time=t)
    u_mid = _advance(gs, stepper, u, t, h / 2., dt_min)
    return _advance(gs, stepper, u_mid, t + h / 2., h / 2., dt_min)


def _step_dissipation(gs, u_old, u_new, h):
    """ Midpoint-rule dissipation ``int R(u, du/dt) + R*(u, -DE(u))`` over one step """
    u_mid = (u_old + u_new) / 2.
    xi = -np.asarray(gs.d_energy(u_mid), dtype=float)
    return h * (gs.r(u_mid, (u_new - u_old) / h) + gs.r_star(u_mid, xi))


def evolve(gs, u0, T, dt, integrator=None, with_edb=True):
    """ Integrate the rate equation of a gradient system

    Steps are rejected, and halved, if they leave the admissible set or increase the energy by more
    than 1e-8.

    Args:
        gs (:obj:`GradientSystem`): gradient system
        u0 (:obj:`numpy.ndarray`): admissible initial state
        T (:obj:`float`): duration
        dt (:obj:`float`): time step
        integrator (:obj:`str`, optional): ``rk4`` or ``implicit_euler``
        with_edb (:obj:`bool`, optional): if :obj:`True`, record the energy-dissipation balance residuals

    Returns:
        :obj:`Trajectory`: trajectory

    Raises:
        :obj:`AdmissibilityError`: if `u0` isn't admissible
        :obj:`StepSizeUnderflowError`: if the step falls below `gradsys.dt_min`
    """
    if dt <= 0:
        raise ValueError('dt must be positive')
    u = np.atleast_1d(np.asarray(u0, dtype=float))
    if not gs.is_admissible(u):
        raise AdmissibilityError('Initial state {} is not admissible'.format(u))

    stepper = STEPPERS[integrator or config['integrator']]
    n_steps = max(int(round(T / dt)), 1)
    h = T / n_steps
    times = np.linspace(0., T, n_steps + 1)

    states = [u]
    energies = [gs.energy(u)]
    residuals = []
    for i_step in range(n_steps):
        u_new = _advance(gs, stepper, u, times[i_step], h, config['dt_min'])
        states.append(u_new)
        energies.append(gs.energy(u_new))
        if with_edb:
            residuals.append(energies[-1] - energies[-2] + _step_dissipation(gs, u, u_new, h))
        u = u_new

    return Trajectory(times, states, energies, residuals if with_edb else None)


def _dissipation_integrands(gs, traj):
    velocities = traj.velocities()
    r_values = np.array([gs.r(u, v) for u, v in zip(traj.states, velocities)])
    forces = np.array([-np.asarray(gs.d_energy(u), dtype=float) for u in traj.states])
    r_star_values = np.array([gs.r_star(u, xi) for u, xi in zip(traj.states, forces)])
    power = np.einsum('ij,ij->i', -forces, velocities)
    return r_values, r_star_values, power


def degiorgi(gs, traj):
    """ De Giorgi dissipation ``int_0^T R(u, du/dt) + R*(u, -DE(u)) dt`` by the trapezoid rule

    Args:
        gs (:obj:`GradientSystem`): gradient system
        traj (:obj:`Trajectory`): path strictly inside the admissible set

    Returns:
        :obj:`float`: dissipation
    """
    r_values, r_star_values, _ = _dissipation_integrands(gs, traj)
    return float(integrate.trapezoid(r_values + r_star_values, traj.times))


def edb_gap(gs, traj):
    """ Energy-dissipation balance ``E(u(T)) + D(u) - E(u(0))``, 0 exactly on solutions

    Args:
        gs (:obj:`GradientSystem`): gradient system
        traj (:obj:`Trajectory`): path

    Returns:
        :obj:`float`: gap
    """
    return gs.energy(traj.states[-1]) + degiorgi(gs, traj) - gs.energy(traj.states[0])


def rate_functional(gs, traj):
    """ ``int_0^T R(u, du/dt) + R*(u, -DE(u)) + <DE(u), du/dt> dt``, nonnegative and 0 on solutions

    Args:
        gs (:obj:`GradientSystem`): gradient system
        traj (:obj:`Trajectory`): path

    Returns:
        :obj:`float`: value
    """
    r_values, r_star_values, power = _dissipation_integrands(gs, traj)
    return float(integrate.trapezoid(r_values + r_star_values + power, traj.times))


def two_state_quadratic_gs(a=1.):
    """ ``([0, 1], a (p - 1/2)^2, (a/2) v^2)``, which generates ``dp/dt = 1 - 2p``

    Args:
        a (:obj:`float`, optional): positive coefficient

    Returns:
        :obj:`GradientSystem`: gradient system in the coordinate `p`
    """
    return GradientSystem(
        dim=1,
        energy=lambda u: float(a * (u[0] - 0.5) ** 2),
        d_energy=lambda u: np.array([2. * a * (u[0] - 0.5)]),
        r_star=lambda u, xi: float(xi[0] ** 2 / (2. * a)),
        d_r_star=lambda u, xi: np.array([xi[0] / a]),
        r_closed=lambda u, v: float(a / 2. * v[0] ** 2),
        name='two-state quadratic')


def two_state_entropic_gs(a=0.5):
    """ ``([0, 1], a (p log p + (1 - p) log(1 - p)), a sqrt(p(1 - p)) C*(xi/a))``, which generates
    ``dp/dt = 1 - 2p``

    Args:
        a (:obj:`float`, optional): positive coefficient

    Returns:
        :obj:`GradientSystem`: gradient system in the coordinate `p`
    """
    floor = config['density_floor']

    def mobility(u):
        return math.sqrt(max(u[0] * (1. - u[0]), 0.))

    return GradientSystem(
        dim=1,
        energy=lambda u: float(a * (boltzmann(u[0]) + boltzmann(1. - u[0]) - 1.)),
        d_energy=lambda u: np.array([a * (math.log(max(u[0], floor)) - math.log(max(1. - u[0], floor)))]),
        r_star=lambda u, xi: float(a * mobility(u) * cosh_star(xi[0] / a)),
        d_r_star=lambda u, xi: np.array([mobility(u) * cosh_star_prime(xi[0] / a)]),
        r_closed=lambda u, v: float(a * mobility(u) * cosh_c(v[0] / mobility(u))) if mobility(u) > 0 else (
            0. if v[0] == 0 else float('inf')),
        admissible=lambda u: 0. <= u[0] <= 1.,
        name='two-state entropic')


class Reaction(object):
    """ Reversible mass-action reaction ``alpha X <-> beta X``

    Attributes:
        alpha (:obj:`numpy.ndarray`): stoichiometric coefficients of the reactants
        beta (:obj:`numpy.ndarray`): stoichiometric coefficients of the products
        k_forward (:obj:`float`): forward rate constant
        k_backward (:obj:`float`): backward rate constant
    """

    def __init__(self, alpha, beta, k_forward, k_backward):
        self.alpha = np.asarray(alpha, dtype=float)
        self.beta = np.asarray(beta, dtype=float)
        self.k_forward = k_forward
        self.k_backward = k_backward

    def forward_rate(self, c):
        return self.k_forward * np.prod(c ** self.alpha)

    def backward_rate(self, c):
        return self.k_backward * np.prod(c ** self.beta)


def mass_action_field(reactions, c):
    """ Mass-action rate ``sum_r (k_f c^alpha - k_b c^beta) (beta - alpha)``

    Args:
        reactions (:obj:`list` of :obj:`Reaction`): reactions
        c (:obj:`numpy.ndarray`): concentrations

    Returns:
        :obj:`numpy.ndarray`: rate
    """
    c = np.asarray(c, dtype=float)
    return sum((rxn.forward_rate(c) - rxn.backward_rate(c)) * (rxn.beta - rxn.alpha) for rxn in reactions)


def build_reaction_gs(reactions, w, pair=None):
    """ Entropic gradient structure of reversible mass-action kinetics

    ``E(c) = sum_i w_i lambda_B(c_i / w_i)`` and ``R*(c, mu) = sum_r H_r(c) psi*((alpha_r - beta_r) . mu)``
    with ``H_r(c) = (k_f c^alpha - k_b c^beta) / psi*'(log(k_f c^alpha) - log(k_b c^beta))``.

    Args:
        reactions (:obj:`list` of :obj:`Reaction`): reactions
        w (:obj:`numpy.ndarray`): positive equilibrium
        pair (:obj:`DissipationPair`, optional): dissipation pair; defaults to the cosh pair

    Returns:
        :obj:`GradientSystem`: gradient system

    Raises:
        :obj:`DetailedBalanceError`: if the rates don't satisfy ``k_f w^alpha = k_b w^beta``
    """
    w = np.asarray(w, dtype=float)
    pair = pair or DissipationPair.cosh()
    floor = config['density_floor']

    residual = max(abs(rxn.forward_rate(w) - rxn.backward_rate(w)) / max(rxn.forward_rate(w), rxn.backward_rate(w))
                   for rxn in reactions)
    if residual > 1e-10:
        raise DetailedBalanceError(residual)

    def prefactors(c):
        c = np.maximum(c, floor)
        return [pair.mobility(rxn.forward_rate(c), rxn.backward_rate(c)) for rxn in reactions]

    def r_star(c, mu):
        return float(sum(h * pair.psi_star(np.dot(rxn.alpha - rxn.beta, mu))
                         for h, rxn in zip(prefactors(c), reactions)))

    def d_r_star(c, mu):
        return sum(h * pair.dpsi_star(np.dot(rxn.alpha - rxn.beta, mu)) * (rxn.alpha - rxn.beta)
                   for h, rxn in zip(prefactors(c), reactions))

    return GradientSystem(
        dim=w.size,
        energy=lambda c: float(np.sum(w * boltzmann(np.asarray(c) / w))),
        d_energy=lambda c: np.log(np.maximum(c, floor) / w),
        r_star=r_star,
        d_r_star=d_r_star,
        admissible=lambda c: bool(np.all(c >= 0)),
        name='mass action ({})'.format(pair.kind))


def play_operator(ell, r, z0=0.):
    """ Scalar play operator: ``z_k`` is the projection of ``z_{k-1}`` onto ``[ell_k - r, ell_k + r]``

    The play operator solves the rate-independent system with energy ``z^2/2 - ell z`` and
    dissipation ``r |dz/dt|``.

    Args:
        ell (:obj:`numpy.ndarray`): loading at the sampled times
        r (:obj:`float`): half width of the elastic range
        z0 (:obj:`float`, optional): initial state

    Returns:
        :obj:`numpy.ndarray`: state at the sampled times
    """
    z = np.empty(len(ell))
    previous = z0
    for k, ell_k in enumerate(ell):
        previous = min(max(previous, ell_k - r), ell_k + r)
        z[k] = previous
    return z


class WigglyReport(object):
    """ Comparison of a wiggly-energy solution with the play operator

    Attributes:
        epsilon (:obj:`float`): wiggle scale
        r (:obj:`float`): wiggle amplitude
        times (:obj:`numpy.ndarray`): times
        ell (:obj:`numpy.ndarray`): loading
        u (:obj:`numpy.ndarray`): wiggly solution
        play (:obj:`numpy.ndarray`): play-operator solution
    """

    def __init__(self, epsilon, r, times, ell, u, play):
        self.epsilon = epsilon
        self.r = r
        self.times = times
        self.ell = ell
        self.u = u
        self.play = play

    @property
    def sup_gap(self):
        """ :obj:`float`: sup-distance between the wiggly and the play solution """
        return float(np.max(np.abs(self.u - self.play)))

    @property
    def hysteresis_width(self):
        """ :obj:`float`: range of ``ell - u``; 2r for the play operator under loading and unloading """
        lag = self.ell - self.u
        return float(np.max(lag) - np.min(lag))


def demo_wiggly(epsilon, r, ell, T, n_points=2001, u0=0.):
    """ Integrate ``epsilon du/dt = -(u - ell(t) + r cos(u / epsilon))``, the viscous gradient flow of
    ``u^2/2 - ell(t) u + r epsilon sin(u / epsilon)``, and compare it with the play operator

    Args:
        epsilon (:obj:`float`): wiggle scale in (0, 1]
        r (:obj:`float`): wiggle amplitude
        ell (:obj:`callable`): loading
        T (:obj:`float`): duration
        n_points (:obj:`int`, optional): number of sampled times
        u0 (:obj:`float`, optional): initial state

    Returns:
        :obj:`WigglyReport`: report

    Raises:
        :obj:`StepSizeUnderflowError`: if the stiff integrator fails
    """
    def rhs(t, u):
        return -(u - ell(t) + r * np.cos(u / epsilon)) / epsilon

    def jac(t, u):
        return np.array([[-(1. - r / epsilon * math.sin(u[0] / epsilon)) / epsilon]])

    times = np.linspace(0., T, n_points)
    solution = integrate.solve_ivp(rhs, (0., T), [u0], method='Radau', jac=jac, t_eval=times,
                                   rtol=1e-8, atol=1e-10, max_step=T / 200.)
    if not solution.success:
        raise StepSizeUnderflowError(solution.t[-1] if solution.t.size else 0., float('nan'), config['dt_min'])

    ell_values = np.array([ell(t) for t in times])
    return WigglyReport(epsilon, r, times, ell_values, solution.y[0], play_operator(ell_values, r, z0=u0))


class TwoStructuresReport(object):
    """ Pointwise decay ``u(t, x) = u0(x) exp(-a(x/epsilon) t)`` and the two limits of its gradient structures

    Attributes:
        a_min (:obj:`float`): minimum of the coefficient
        a_max (:obj:`float`): maximum of the coefficient
        T (:obj:`float`): time of the envelope check
        rows (:obj:`list` of :obj:`list`): per epsilon: epsilon, min and max over x of ``u(T, x)/u0(x)``,
            energies ``E_eps`` and ``E_hat_eps`` of the recovery sequence of the first structure, and
            of the recovery sequence of the second structure
    """

    HEADER = ('epsilon', 'min_ratio', 'max_ratio', 'E_first', 'E_hat_first', 'E_second', 'E_hat_second')

    def __init__(self, a_min, a_max, T, rows):
        self.a_min = a_min
        self.a_max = a_max
        self.T = T
        self.rows = rows

    @property
    def envelope_first(self):
        """ :obj:`float`: ``exp(-a_min T)``, the decay of the limit of ``(int a u, int xi^2 u / 2)`` """
        return math.exp(-self.a_min * self.T)

    @property
    def envelope_second(self):
        """ :obj:`float`: ``exp(-a_max T)``, the decay of the limit of ``(int u/a, int a^2 xi^2 u / 2)`` """
        return math.exp(-self.a_max * self.T)

    @property
    def limit_energies(self):
        """ :obj:`dict`: limit energies of a unit mass: ``a_min`` for the first structure and
        ``1/a_max`` for the second """
        return {'E_first': self.a_min, 'E_hat_second': 1. / self.a_max}


def demo_two_structures(a_profile, epsilons, T=1., n_points=10001, band=0.02):
    """ Evolve ``du/dt = -a(x/epsilon) u`` on [0, 1] from ``u0 = 1`` and evaluate the energies of the
    recovery sequences of its two gradient structures

    Both ``(E = int a u, R* = int xi^2 u / 2)`` and ``(E_hat = int u / a, R_hat* = int a^2 xi^2 u / 2)``
    generate the equation. Their recovery sequences concentrate unit mass where `a` is within `band`
    (relative) of its minimum, resp. maximum.

    Args:
        a_profile (:obj:`callable`): positive 1-periodic coefficient
        epsilons (:obj:`list` of :obj:`float`): periods
        T (:obj:`float`, optional): time of the envelope check
        n_points (:obj:`int`, optional): number of grid points
        band (:obj:`float`, optional): relative width of the concentration sets

    Returns:
        :obj:`TwoStructuresReport`: report
    """
    y = np.linspace(0., 1., 10001)
    a_samples = np.array([a_profile(y_i) for y_i in y])
    a_min, a_max = float(np.min(a_samples)), float(np.max(a_samples))
    spread = a_max - a_min

    x = np.linspace(0., 1., n_points)
    rows = []
    for epsilon in epsilons:
        a_eps = np.array([a_profile(x_i / epsilon) for x_i in x])
        ratio = np.exp(-a_eps * T)

        recovery = []
        for near in (a_eps <= a_min + band * spread, a_eps >= a_max - band * spread):
            u = near / np.mean(near)
            recovery.append((float(np.mean(a_eps * u)), float(np.mean(u / a_eps))))

        rows.append([epsilon, float(np.min(ratio)), float(np.max(ratio)),
                     recovery[0][0], recovery[0][1], recovery[1][0], recovery[1][1]])

    return TwoStructuresReport(a_min, a_max, T, rows)
