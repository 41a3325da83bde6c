""" Diffusion through a thin layer of low mobility and its limit, a transmission problem across a membrane

On ``Omega = ]-1, 1[`` the density `u` solves ``du/dt = (a_eps (u' + u V_eps'))'`` with no-flux boundaries,
where the layer ``[0, eps]`` has the mobility ``eps a_*(x/eps)`` and the potential ``V_*(x/eps)``. For
``eps -> 0`` the layer turns into a membrane at ``x = 0`` which carries the flux
``A_* (u(0-)/w_0(0-) - u(0+)/w_0(0+))``. The thin-layer equation is the gradient flow of the relative entropy
with a quadratic dual dissipation ``R*_eps(u, xi) = int a_eps u xi'^2 / 2``; the limit is a generalized gradient
flow whose dual dissipation has the cosh term ``A_* sqrt(u(0-) u(0+) / (w_0(0-) w_0(0+))) C*(xi(0+) - xi(0-))``
at the membrane.

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits import fv
from edp_limits import oracle
from edp_limits.config import get_config
from edp_limits.debug_logs import get_debug_log
from edp_limits.fv import GridFunction1D, Mesh1D
from edp_limits.gradsys import StepSizeUnderflowError, Trajectory
from edp_limits.potentials import boltzmann, cosh_c, cosh_star, log_mean
from edp_limits.util import io
from numpy.polynomial import Polynomial
from scipy import integrate, interpolate
import json
import math
import numpy as np

config = get_config()['edp_limits']['membrane']

MIN_LAYER_CELLS = 20
# :obj:`int`: smallest number of cells which resolve the layer

CONTINUITY_TOL = 1e-10
# :obj:`float`: largest jump of the assembled potential at the layer edges

PROFILE_KEYS = ('a_minus', 'a_plus', 'a_star', 'v_minus', 'v_plus', 'v_star')
# :obj:`tuple`: coefficient functions of a layer profile


class InvalidProfileError(Exception):
    """ A layer profile violates positivity or continuity, or its equilibrium can't be integrated """
    pass


def _log_debug(message, sim_time=float('nan')):
    log = get_debug_log()
    if log:
        log.debug(message, sim_time=sim_time)


def _constant(value):
    value = float(value)
    return lambda x: np.full(np.shape(x), value)


def _coefficient_from_json(spec):
    """ Coefficient function from a number, a list of polynomial coefficients or samples ``{x, values}`` """
    if isinstance(spec, (int, float)):
        return _constant(spec)
    if isinstance(spec, list):
        return Polynomial(spec)
    if isinstance(spec, dict) and 'x' in spec and 'values' in spec:
        return interpolate.CubicSpline(spec['x'], spec['values'])
    raise InvalidProfileError('Coefficients must be numbers, polynomial coefficients or samples, not {}'.format(spec))


class LayerProfile(object):
    """ Coefficients of the thin-layer problem

    `a_minus` and `v_minus` are functions on [-1, 0]; `a_plus` and `v_plus` on [0, 1]; the layer coefficients
    `a_star` and `v_star` are functions of the rescaled layer coordinate ``y = x/eps`` in [0, 1]. All functions
    are evaluated on arrays.

    Attributes:
        a_minus (:obj:`callable`): mobility left of the layer
        a_plus (:obj:`callable`): mobility right of the layer
        a_star (:obj:`callable`): rescaled mobility in the layer
        v_minus (:obj:`callable`): potential left of the layer
        v_plus (:obj:`callable`): potential right of the layer
        v_star (:obj:`callable`): potential in the layer
    """

    def __init__(self, a_minus, a_plus, a_star, v_minus, v_plus, v_star, validate=True):
        self.a_minus = a_minus
        self.a_plus = a_plus
        self.a_star = a_star
        self.v_minus = v_minus
        self.v_plus = v_plus
        self.v_star = v_star
        if validate:
            self.validate()

    @classmethod
    def flat(cls, a_star=1., a_minus=1., a_plus=1.):
        """ Profile with constant mobilities and a vanishing potential """
        return cls(_constant(a_minus), _constant(a_plus), _constant(a_star),
                   _constant(0.), _constant(0.), _constant(0.))

    @classmethod
    def from_json(cls, text):
        """ Read a profile from JSON

        Each of the keys ``a_minus``, ``a_plus``, ``a_star``, ``v_minus``, ``v_plus`` and ``v_star`` maps to a
        number, a list of polynomial coefficients in increasing degree, or a sampled function
        ``{"x": [...], "values": [...]}`` interpolated by cubic splines. Missing mobilities are 1 and missing
        potentials are 0.

        Args:
            text (:obj:`str`): JSON document

        Returns:
            :obj:`LayerProfile`: profile

        Raises:
            :obj:`InvalidProfileError`: if the document has unknown keys or the profile is invalid
        """
        doc = json.loads(text)
        unknown = sorted(set(doc) - set(PROFILE_KEYS))
        if unknown:
            raise InvalidProfileError('Unknown profile keys: {}'.format(', '.join(unknown)))
        defaults = {'a_minus': 1., 'a_plus': 1., 'a_star': 1., 'v_minus': 0., 'v_plus': 0., 'v_star': 0.}
        return cls(*[_coefficient_from_json(doc.get(key, defaults[key])) for key in PROFILE_KEYS])

    def validate(self):
        """ Check that the mobilities are positive and the assembled potential is continuous

        Raises:
            :obj:`InvalidProfileError`: if the profile is invalid
        """
        y = np.linspace(0., 1., 201)
        for name, values in [('a_minus', self.a_minus(-y)), ('a_plus', self.a_plus(y)), ('a_star', self.a_star(y))]:
            values = np.asarray(values, dtype=float)
            if not np.all(np.isfinite(values)) or np.min(values) <= 0:
                raise InvalidProfileError('Mobility {} must be positive; minimum {}'.format(name, np.min(values)))

        jump_left = float(self.v_minus(0.)) - float(self.v_star(0.))
        jump_right = float(self.v_star(1.)) - float(self.v_plus(0.))
        if abs(jump_left) > CONTINUITY_TOL or abs(jump_right) > CONTINUITY_TOL:
            raise InvalidProfileError('The potential must be continuous at the layer edges; jumps {:.3e}, {:.3e}'.format(
                jump_left, jump_right))

    def a_eps(self, x, epsilon):
        """ Mobility ``a_-(x)``, ``eps a_*(x/eps)`` on [0, eps], ``a_+(x)`` """
        x = np.asarray(x, dtype=float)
        return np.where(x < 0, self.a_minus(np.minimum(x, 0.)),
                        np.where(x <= epsilon, epsilon * self.a_star(np.clip(x / epsilon, 0., 1.)),
                                 self.a_plus(np.maximum(x, 0.))))

    def v_eps(self, x, epsilon):
        """ Potential ``V_-(x)``, ``V_*(x/eps)`` on [0, eps], ``V_+(x - eps)``, which is continuous """
        x = np.asarray(x, dtype=float)
        return np.where(x < 0, self.v_minus(np.minimum(x, 0.)),
                        np.where(x <= epsilon, self.v_star(np.clip(x / epsilon, 0., 1.)),
                                 self.v_plus(np.maximum(x - epsilon, 0.))))

    def a_limit(self, x):
        """ Mobility of the limit problem, ``a_-`` left and ``a_+`` right of the membrane """
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0, self.a_minus(np.minimum(x, 0.)), self.a_plus(np.maximum(x, 0.)))

    def v_limit(self, x):
        """ Potential of the limit problem; at 0 the left branch """
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0, self.v_minus(np.minimum(x, 0.)), self.v_plus(np.maximum(x, 0.)))


def _quad(fn, lower, upper):
    if upper <= lower:
        return 0.
    value, abserr = integrate.quad(fn, lower, upper, epsabs=1e-13, epsrel=1e-12, limit=200)
    if not np.isfinite(value) or abserr > 1e-8 * (1. + abs(value)):
        raise InvalidProfileError('Quadrature over [{}, {}] failed; error estimate {:.3e}'.format(lower, upper, abserr))
    return value


class Equilibrium(object):
    """ Equilibrium density ``exp(-V)/Z``

    Attributes:
        potential (:obj:`callable`): potential
        z (:obj:`float`): normalization
    """

    def __init__(self, potential, z):
        self.potential = potential
        self.z = z

    def __call__(self, x):
        return np.exp(-np.asarray(self.potential(x), dtype=float)) / self.z


class LimitEquilibrium(Equilibrium):
    """ Equilibrium of the transmission problem, which may jump at the membrane

    Attributes:
        w_minus (:obj:`float`): left trace ``w_0(0-)``
        w_plus (:obj:`float`): right trace ``w_0(0+)``
    """

    def __init__(self, potential, z, w_minus, w_plus):
        super(LimitEquilibrium, self).__init__(potential, z)
        self.w_minus = w_minus
        self.w_plus = w_plus


def equilibrium(profile, epsilon):
    """ Equilibrium ``w_eps = exp(-V_eps)/Z_eps`` of the thin-layer problem

    Args:
        profile (:obj:`LayerProfile`): profile
        epsilon (:obj:`float`): layer width

    Returns:
        :obj:`Equilibrium`: equilibrium

    Raises:
        :obj:`InvalidProfileError`: if the normalization can't be integrated
    """
    z = (_quad(lambda x: math.exp(-float(profile.v_minus(x))), -1., 0.)
         + epsilon * _quad(lambda y: math.exp(-float(profile.v_star(y))), 0., 1.)
         + _quad(lambda x: math.exp(-float(profile.v_plus(x))), 0., 1. - epsilon))
    return Equilibrium(lambda x: profile.v_eps(x, epsilon), z)


def limit_equilibrium(profile):
    """ Equilibrium ``w_0 = exp(-V_-)/Z_0`` on [-1, 0[ and ``exp(-V_+)/Z_0`` on ]0, 1] of the transmission problem

    Returns:
        :obj:`LimitEquilibrium`: equilibrium with its one-sided traces at the membrane
    """
    z = (_quad(lambda x: math.exp(-float(profile.v_minus(x))), -1., 0.)
         + _quad(lambda x: math.exp(-float(profile.v_plus(x))), 0., 1.))
    return LimitEquilibrium(profile.v_limit, z,
                            math.exp(-float(profile.v_minus(0.))) / z,
                            math.exp(-float(profile.v_plus(0.))) / z)


def a_star_coeff(profile, full_output=False):
    """ Transmission coefficient ``A_* = (int_0^1 Z_0 exp(V_*(y)) / a_*(y) dy)^-1``

    The value is cross-checked against the harmonic mean of the product of the rescaled layer mobility and the
    layer equilibrium ``exp(-V_*)/Z_0``.

    Args:
        profile (:obj:`LayerProfile`): profile
        full_output (:obj:`bool`, optional): if :obj:`True`, also return the relative gap of the two evaluations

    Returns:
        :obj:`float`: coefficient, or a tuple of the coefficient and the relative gap
    """
    z0 = limit_equilibrium(profile).z
    value = 1. / _quad(lambda y: z0 * math.exp(float(profile.v_star(y))) / float(profile.a_star(y)), 0., 1.)
    if not full_output:
        return value

    harmonic = oracle.a_star(profile.a_star, lambda y: math.exp(-float(profile.v_star(y))) / z0)
    return value, abs(value - harmonic) / value


class Discretization(object):
    """ Finite-volume discretization of ``du/dt = (a w (u/w)')'`` with fitted fluxes

    Attributes:
        mesh (:obj:`Mesh1D`): mesh
        a (:obj:`numpy.ndarray`): mobility per cell
        w (:obj:`numpy.ndarray`): equilibrium per cell, normalized to discrete mass 1
        K (:obj:`numpy.ndarray`): coefficients of the interior faces
        epsilon (:obj:`float`): layer width, or :obj:`None` for the transmission problem
        weights (:obj:`numpy.ndarray`): weights of the rates in the flux integral, 1 except in blown-up layers
    """

    def __init__(self, mesh, a, w, epsilon=None, weights=None):
        self.mesh = mesh
        self.a = np.asarray(a, dtype=float)
        w = np.asarray(w, dtype=float)
        self.w = w / np.dot(mesh.widths * (1. if weights is None else weights), w)
        self.K = fv.fitted_transmissivities(mesh, self.a, self.w)
        self.epsilon = epsilon
        self.weights = np.ones(mesh.size) if weights is None else np.asarray(weights, dtype=float)

    def operator(self):
        """ :obj:`scipy.sparse.csc_matrix`: operator `L` with ``d/dt (h u) = L u`` """
        return fv.diffusion_operator(self.mesh, self.K, self.w)

    def mass(self, u):
        """ :obj:`float`: discrete mass """
        return float(np.dot(self.mesh.widths * self.weights, u))

    def energy(self, u):
        """ Relative entropy ``sum_i h_i w_i lambda_B(u_i / w_i)`` """
        return float(np.dot(self.mesh.widths * self.weights * self.w, boltzmann(np.asarray(u) / self.w)))

    def fluxes(self, u):
        """ Fluxes at all faces, 0 at the boundary """
        return np.concatenate(([0.], fv.face_fluxes(self.K, u, self.w), [0.]))

    def flux_integral(self, u_dot):
        """ ``I[u_dot]`` at the faces """
        return fv.flux_integral(self.mesh, self.weights * np.asarray(u_dot, dtype=float))

    def bulk_faces(self):
        """ Indices, into :obj:`K`, of the faces with quadratic dissipation """
        return np.arange(self.mesh.size - 1)

    def link_terms(self, u, I):
        """ Dissipation ``R(u, -I)`` of the rates ``I`` at the faces and ``R*(u, -DE(u))``

        Each bulk face with the coefficient ``K`` has the mobility ``K L(v_i, v_{i+1})`` of the relative densities
        ``v = u/w``; its primal dissipation is ``I^2/(2 mobility)`` and its dual dissipation at the force
        ``-log v_{i+1} + log v_i`` is ``mobility (force)^2 / 2``.

        Args:
            u (:obj:`numpy.ndarray`): positive state
            I (:obj:`numpy.ndarray`): flux integral at all faces

        Returns:
            :obj:`tuple` of :obj:`float`: primal and dual dissipation
        """
        v = np.asarray(u, dtype=float) / self.w
        faces = self.bulk_faces()
        mobility = self.K[faces] * np.atleast_1d(log_mean(v[faces], v[faces + 1]))
        force = np.log(v[faces + 1]) - np.log(v[faces])
        return (float(np.sum(I[faces + 1] ** 2 / (2. * mobility))),
                float(np.sum(mobility * force ** 2 / 2.)))


class LimitDiscretization(Discretization):
    """ Discretization of the transmission problem on a mesh with a face at the membrane

    The cells next to the membrane are coupled through three resistances in series: the half cell left of the
    membrane, the membrane with ``A_*``, and the half cell right of it. The one-sided traces of the relative
    density ``v = u/w`` follow from the continuity of the flux through the three.

    Attributes:
        interface (:obj:`int`): index, into :obj:`K`, of the membrane face
        a_star (:obj:`float`): transmission coefficient
        w_minus (:obj:`float`): left trace of the equilibrium, in the discrete normalization
        w_plus (:obj:`float`): right trace of the equilibrium, in the discrete normalization
        k_minus (:obj:`float`): coefficient of the half cell left of the membrane
        k_plus (:obj:`float`): coefficient of the half cell right of the membrane
        coupling (:obj:`float`): membrane coefficient for the discrete relative densities
    """

    def __init__(self, mesh, profile, a_star):
        i_face = mesh.face_index(0.)
        if mesh.faces[i_face] != 0.:
            raise ValueError('The mesh of the transmission problem needs a face at 0')
        centers = mesh.centers
        super(LimitDiscretization, self).__init__(mesh, profile.a_limit(centers),
                                                  np.exp(-profile.v_limit(centers)))
        eq = limit_equilibrium(profile)
        scale = self.w[0] / float(eq(centers[0]))
        self.interface = i_face - 1
        self.a_star = a_star
        self.w_minus = eq.w_minus * scale
        self.w_plus = eq.w_plus * scale
        # in units of u/w with the discrete normalization
        self.coupling = a_star * scale

        left = self.interface
        right = left + 1
        h = mesh.widths
        self.k_minus = 2. * self.a[left] / (h[left] * log_mean(1. / self.w[left], 1. / self.w_minus))
        self.k_plus = 2. * self.a[right] / (h[right] * log_mean(1. / self.w[right], 1. / self.w_plus))
        if self.coupling > 0:
            self.K[self.interface] = 1. / (1. / self.k_minus + 1. / self.coupling + 1. / self.k_plus)
        else:
            self.K[self.interface] = 0.

    def bulk_faces(self):
        faces = super(LimitDiscretization, self).bulk_faces()
        return faces[faces != self.interface]

    def traces(self, u):
        """ One-sided traces ``v(0-)`` and ``v(0+)`` of the relative density

        The traces split the interface flux across the two half cells and the membrane as resistances in
        series, so they are exact for the fitted flux: the flux through each half cell equals the
        flux through the membrane. A linear extrapolation from the cell centers doesn't have this property.
        """
        v = np.asarray(u, dtype=float) / self.w
        left = self.interface
        flux = self.K[left] * (v[left] - v[left + 1])
        return v[left] - flux / self.k_minus, v[left + 1] + flux / self.k_plus

    def link_terms(self, u, I):
        r, r_star = super(LimitDiscretization, self).link_terms(u, I)

        v = np.asarray(u, dtype=float) / self.w
        left = self.interface
        v_minus, v_plus = self.traces(u)
        alpha = I[left + 1]
        for k, v_a, v_b in [(self.k_minus, v[left], v_minus), (self.k_plus, v_plus, v[left + 1])]:
            mobility = k * log_mean(v_a, v_b)
            r += alpha ** 2 / (2. * mobility)
            r_star += mobility * (math.log(v_b) - math.log(v_a)) ** 2 / 2.

        r_membrane, r_star_membrane_ = _membrane_terms(self.coupling, alpha, v_minus, v_plus)
        return r + r_membrane, r_star + r_star_membrane_


def _membrane_terms(coupling, alpha, v_minus, v_plus):
    """ ``A s C(alpha/(A s))`` and ``A s C*(log v_- - log v_+)`` with ``s = sqrt(v_- v_+)`` """
    s = math.sqrt(v_minus * v_plus)
    if coupling == 0:
        return (0. if abs(alpha) <= 1e-9 else float('inf')), 0.
    return (coupling * s * cosh_c(alpha / (coupling * s)),
            coupling * s * cosh_star(math.log(v_minus) - math.log(v_plus)))


def thin_layer_discretization(profile, epsilon, mesh=None):
    """ Discretization of the thin-layer problem

    Args:
        profile (:obj:`LayerProfile`): profile
        epsilon (:obj:`float`): layer width
        mesh (:obj:`Mesh1D`, optional): mesh; by default layered with `membrane.cells_per_side`,
            `membrane.layer_cells` and `membrane.layer_ratio`

    Returns:
        :obj:`Discretization`: discretization

    Raises:
        :obj:`ValueError`: if the mesh doesn't resolve the layer
    """
    if mesh is None:
        mesh = Mesh1D.layered(epsilon, config['cells_per_side'], config['layer_cells'], config['layer_ratio'])
    n_layer = int(np.count_nonzero(mesh.cells_in(0., epsilon)))
    if n_layer < MIN_LAYER_CELLS:
        raise ValueError('The mesh must resolve the layer with at least {} cells, not {}'.format(MIN_LAYER_CELLS, n_layer))
    return Discretization(mesh, profile.a_eps(mesh.centers, epsilon),
                          np.exp(-profile.v_eps(mesh.centers, epsilon)), epsilon=epsilon)


def limit_mesh(cells_per_side=None):
    """ Uniform mesh of [-1, 1] with a face at the membrane """
    cells_per_side = cells_per_side or config['cells_per_side']
    return Mesh1D.join(Mesh1D.uniform(-1., 0., cells_per_side), Mesh1D.uniform(0., 1., cells_per_side))


def limit_discretization(profile, mesh=None, a_star=None):
    """ Discretization of the transmission problem

    Args:
        profile (:obj:`LayerProfile`): profile
        mesh (:obj:`Mesh1D`, optional): mesh with a face at 0; by default :obj:`limit_mesh`
        a_star (:obj:`float`, optional): transmission coefficient; by default :obj:`a_star_coeff`

    Returns:
        :obj:`LimitDiscretization`: discretization
    """
    return LimitDiscretization(mesh or limit_mesh(), profile, a_star_coeff(profile) if a_star is None else a_star)


class MembraneSolution(Trajectory):
    """ Time-discrete solution of a membrane problem

    Attributes:
        discretization (:obj:`Discretization`): discretization
    """

    def __init__(self, discretization, times, states):
        states = np.asarray(states, dtype=float)
        super(MembraneSolution, self).__init__(times, states,
                                               energies=[discretization.energy(u) for u in states])
        self.discretization = discretization

    @property
    def mesh(self):
        """ :obj:`Mesh1D`: mesh """
        return self.discretization.mesh

    def grid_function(self, i_time=-1):
        """ :obj:`GridFunction1D`: state at the time with index `i_time` """
        return GridFunction1D(self.mesh, self.states[i_time])

    def masses(self):
        """ :obj:`numpy.ndarray`: mass at each time """
        return np.array([self.discretization.mass(u) for u in self.states])

    def to_csv(self, path, i_time=-1):
        """ Write the snapshot at the time with index `i_time` as the columns x, u, w, flux

        The flux at a cell center is the mean of the fluxes at its faces.

        Args:
            path (:obj:`str`): path
            i_time (:obj:`int`, optional): index of the time
        """
        u = self.states[i_time]
        flux = self.discretization.fluxes(u)
        rows = zip(self.mesh.centers, u, self.discretization.w, (flux[:-1] + flux[1:]) / 2.)
        io.write_csv(path, ['x', 'u', 'w', 'flux'], rows)


def _initial_state(disc, u0):
    if callable(u0):
        u = np.asarray(u0(disc.mesh.centers), dtype=float)
        u = u / disc.mass(u)
    else:
        u = np.asarray(u0, dtype=float)
        if u.shape != (disc.mesh.size,):
            raise ValueError('Expected {} cell values, not {}'.format(disc.mesh.size, u.shape))
        if abs(disc.mass(u) - 1.) > 1e-10:
            raise ValueError('The initial density must have mass 1, not {}'.format(disc.mass(u)))
    if not np.all(u > 0):
        raise ValueError('The initial density must be positive')
    return u


def _integrate(disc, u, T, dt):
    """ Implicit Euler steps; a step which loses positivity is repeated as two half steps """
    n_steps = max(int(round(T / dt)), 1)
    h = T / n_steps
    times = np.linspace(0., T, n_steps + 1)
    M = disc.mesh.mass_matrix()
    L = disc.operator()
    solvers = {}

    def advance(u, t, h):
        if h not in solvers:
            solvers[h] = fv.implicit_euler_solver(M, L, h)
        u_new = solvers[h](u)
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
    return MembraneSolution(disc, times, states)


def solve_thin_layer(profile, epsilon, u0, T, dt=None, mesh=None):
    """ Solve the thin-layer problem by implicit Euler steps of the fitted finite-volume scheme

    Args:
        profile (:obj:`LayerProfile`): profile
        epsilon (:obj:`float`): layer width
        u0 (:obj:`callable` or :obj:`numpy.ndarray`): positive initial density; a function is sampled at the
            cell centers and normalized to mass 1, cell values must have mass 1
        T (:obj:`float`): duration
        dt (:obj:`float`, optional): time step; by default `membrane.dt`
        mesh (:obj:`Mesh1D`, optional): mesh which resolves the layer

    Returns:
        :obj:`MembraneSolution`: solution

    Raises:
        :obj:`StepSizeUnderflowError`: if the step falls below `membrane.dt_min`
    """
    disc = thin_layer_discretization(profile, epsilon, mesh=mesh)
    return _integrate(disc, _initial_state(disc, u0), T, dt or config['dt'])


def solve_limit(profile, u0, T, dt=None, mesh=None, a_star=None):
    """ Solve the transmission problem ``du/dt = (a w_0 (u/w_0)')'`` on both sides of the membrane

    Args:
        profile (:obj:`LayerProfile`): profile
        u0 (:obj:`callable` or :obj:`numpy.ndarray`): positive initial density
        T (:obj:`float`): duration
        dt (:obj:`float`, optional): time step; by default `membrane.dt`
        mesh (:obj:`Mesh1D`, optional): mesh with a face at 0
        a_star (:obj:`float`, optional): transmission coefficient; by default :obj:`a_star_coeff`

    Returns:
        :obj:`MembraneSolution`: solution
    """
    disc = limit_discretization(profile, mesh=mesh, a_star=a_star)
    return _integrate(disc, _initial_state(disc, u0), T, dt or config['dt'])


def _degiorgi(solution):
    """ Midpoint-rule ``int R(u, du/dt) + R*(u, -DE(u)) dt`` along a solution """
    disc = solution.discretization
    total = 0.
    for t_0, t_1, u_0, u_1 in zip(solution.times[:-1], solution.times[1:], solution.states[:-1], solution.states[1:]):
        dt = t_1 - t_0
        I = disc.flux_integral((u_1 - u_0) / dt)
        r, r_star = disc.link_terms((u_0 + u_1) / 2., I)
        total += dt * (r + r_star)
    return total


def dissipation_eps(solution):
    """ De Giorgi dissipation ``int int I[du/dt]^2/(2 a_eps u) + (a_eps u/2) ((log(u/w_eps))')^2 dx dt``

    Args:
        solution (:obj:`MembraneSolution`): positive trajectory of a thin-layer discretization

    Returns:
        :obj:`float`: dissipation
    """
    return _degiorgi(solution)


def dissipation_limit(solution):
    """ De Giorgi dissipation ``int R_0(u, du/dt) + R*_0(u, -DE_0(u)) dt`` of the transmission problem

    The membrane contributes ``A_* s C(I[du/dt](0)/(A_* s)) + A_* s C*(log((u/w_0)(0-)) - log((u/w_0)(0+)))``
    with ``s = sqrt((u/w_0)(0-) (u/w_0)(0+))``.

    Args:
        solution (:obj:`MembraneSolution`): positive trajectory of a transmission discretization

    Returns:
        :obj:`float`: dissipation
    """
    if not isinstance(solution.discretization, LimitDiscretization):
        raise ValueError('The trajectory must belong to the transmission problem')
    return _degiorgi(solution)


def energy_eps(profile, epsilon, u):
    """ Relative entropy of a density of the thin-layer problem

    Args:
        profile (:obj:`LayerProfile`): profile
        epsilon (:obj:`float`): layer width
        u (:obj:`GridFunction1D`): density on a mesh which resolves the layer

    Returns:
        :obj:`float`: energy
    """
    return thin_layer_discretization(profile, epsilon, mesh=u.mesh).energy(u.values)


def energy_limit(profile, u):
    """ Relative entropy with respect to `w_0` of a density on a mesh with a face at 0 """
    return limit_discretization(profile, mesh=u.mesh).energy(u.values)


def r_star_limit(profile, u, xi, a_star=None):
    """ Dual dissipation ``R*_0(u, xi)`` of the transmission problem

    The bulk terms are ``sum mobility (xi_{i+1} - xi_i)^2 / 2`` over the faces away from the membrane. The
    membrane term is ``A_* s C*(xi(0+) - xi(0-))`` with the values of `xi` in the cells next to the membrane
    and the traces of ``v = u/w_0`` in `s`.

    Args:
        profile (:obj:`LayerProfile`): profile
        u (:obj:`GridFunction1D`): positive density on a mesh with a face at 0
        xi (:obj:`numpy.ndarray`): force per cell
        a_star (:obj:`float`, optional): transmission coefficient

    Returns:
        :obj:`float`: dual dissipation
    """
    disc = limit_discretization(profile, mesh=u.mesh, a_star=a_star)
    xi = np.asarray(xi, dtype=float)
    v = u.values / disc.w
    faces = disc.bulk_faces()
    mobility = disc.K[faces] * np.atleast_1d(log_mean(v[faces], v[faces + 1]))
    bulk = float(np.sum(mobility * (xi[faces + 1] - xi[faces]) ** 2 / 2.))

    v_minus, v_plus = disc.traces(u.values)
    jump = xi[disc.interface + 1] - xi[disc.interface]
    return bulk + disc.coupling * math.sqrt(v_minus * v_plus) * float(cosh_star(jump))


def r_limit(profile, u, u_dot, a_star=None):
    """ Primal dissipation ``R_0(u, u_dot)`` of the transmission problem

    Args:
        profile (:obj:`LayerProfile`): profile
        u (:obj:`GridFunction1D`): positive density on a mesh with a face at 0
        u_dot (:obj:`numpy.ndarray`): rate per cell with vanishing integral
        a_star (:obj:`float`, optional): transmission coefficient

    Returns:
        :obj:`float`: dissipation
    """
    disc = limit_discretization(profile, mesh=u.mesh, a_star=a_star)
    return disc.link_terms(u.values, disc.flux_integral(u_dot))[0]


def r_star_membrane(mesh, a, rho, xi, b, rho_traces):
    """ Dual dissipation of the large deviations of diffusing particles which cross a membrane at 0

    ``int a xi'^2 rho + (b/2) sqrt(rho(0-) rho(0+)) C*(2 (xi(0+) - xi(0-)))``, where `b` is the rate
    coefficient of the membrane, ``a rho'(0+) = b (rho(0+) - rho(0-))``. It belongs to the relative entropy
    with the factor 1/2.

    Args:
        mesh (:obj:`Mesh1D`): mesh with a face at 0
        a (:obj:`numpy.ndarray`): mobility per cell
        rho (:obj:`numpy.ndarray`): positive density per cell
        xi (:obj:`numpy.ndarray`): force per cell
        b (:obj:`float`): membrane coefficient
        rho_traces (:obj:`tuple` of :obj:`float`): one-sided traces ``rho(0-)``, ``rho(0+)``

    Returns:
        :obj:`float`: dual dissipation
    """
    rho = np.asarray(rho, dtype=float)
    xi = np.asarray(xi, dtype=float)
    h = mesh.widths
    conductance = 1. / (h[:-1] / (2. * a[:-1]) + h[1:] / (2. * a[1:]))
    interface = mesh.face_index(0.) - 1
    faces = np.arange(mesh.size - 1)
    faces = faces[faces != interface]
    bulk = float(np.sum(conductance[faces] * np.atleast_1d(log_mean(rho[faces], rho[faces + 1]))
                        * (xi[faces + 1] - xi[faces]) ** 2))
    jump = xi[interface + 1] - xi[interface]
    return bulk + b / 2. * math.sqrt(rho_traces[0] * rho_traces[1]) * float(cosh_star(2. * jump))


def interface_flux(profile, u_minus, u_plus, a_star=None):
    """ Flux ``A_* (u(0-)/w_0(0-) - u(0+)/w_0(0+))`` through the membrane, from left to right """
    eq = limit_equilibrium(profile)
    a_star = a_star_coeff(profile) if a_star is None else a_star
    return a_star * (u_minus / eq.w_minus - u_plus / eq.w_plus)


def interface_dissipation(profile, alpha, u_minus, u_plus, a_star=None):
    """ Membrane term of the limit dissipation for the flux integral `alpha` and the traces `u_minus`, `u_plus`

    ``A_* s C(alpha/(A_* s)) + A_* s C*(log(u(0-) w_0(0+) / (u(0+) w_0(0-))))`` with
    ``s = sqrt(u(0-) u(0+) / (w_0(0-) w_0(0+)))``; the minimal cost of a layer profile which carries `alpha`.

    Returns:
        :obj:`float`: dissipation rate
    """
    eq = limit_equilibrium(profile)
    a_star = a_star_coeff(profile) if a_star is None else a_star
    r, r_star = _membrane_terms(a_star, alpha, u_minus / eq.w_minus, u_plus / eq.w_plus)
    return r + r_star


def optimal_layer_profile(epsilon, u_minus, u_plus, alpha):
    """ Cheapest layer profile ``x -> P(x/eps)`` on [0, eps] which carries the flux integral `alpha`

    `P` is the parabola ``(1 - y) u_- + y u_+ + b (y^2 - y)`` with ``b = u_- + u_+ - sqrt(alpha^2 + 4 u_- u_+)``.

    Returns:
        :obj:`callable`: profile
    """
    parabola = oracle.g_minimizer(alpha, u_minus, u_plus)
    return lambda x: parabola(np.asarray(x, dtype=float) / epsilon)


def well_prepared_state(profile, epsilon, u0, mesh=None):
    """ Thin-layer density which agrees with the limit density `u0` outside the layer

    Inside the layer it follows :obj:`optimal_layer_profile` between the one-sided values of `u0` at 0, with
    the initial membrane flux. The result is normalized to mass 1.

    Args:
        profile (:obj:`LayerProfile`): profile
        epsilon (:obj:`float`): layer width
        u0 (:obj:`callable`): positive limit density; at 0 it gives the left value
        mesh (:obj:`Mesh1D`, optional): mesh which resolves the layer

    Returns:
        :obj:`numpy.ndarray`: cell values
    """
    disc = thin_layer_discretization(profile, epsilon, mesh=mesh)
    x = disc.mesh.centers
    u_minus = float(u0(0.))
    u_plus = float(u0(np.nextafter(0., 1.)))
    layer = optimal_layer_profile(epsilon, u_minus, u_plus, interface_flux(profile, u_minus, u_plus))
    u = np.where((x >= 0) & (x <= epsilon), layer(np.clip(x, 0., epsilon)), u0(x))
    return u / disc.mass(u)


def y_map(epsilon, x):
    """ Blow-up ``Y_eps``: [-1, 1] -> [-1, 2], which stretches the layer [0, eps] to [0, 1 + eps] """
    x = np.asarray(x, dtype=float)
    return np.where(x <= 0, x, np.where(x <= epsilon, (1. + epsilon) / epsilon * x, x + 1.))


def x_map(epsilon, y):
    """ Inverse ``X_eps`` of the blow-up """
    y = np.asarray(y, dtype=float)
    return np.where(y <= 0, y, np.where(y <= 1. + epsilon, epsilon / (1. + epsilon) * y, y - 1.))


def x_prime(epsilon, y):
    """ Derivative of ``X_eps``; for ``eps = 0`` it vanishes on the blown-up membrane ]0, 1[ """
    y = np.asarray(y, dtype=float)
    return np.where((y > 0) & (y < 1. + epsilon), epsilon / (1. + epsilon), 1.)


def blow_up(epsilon, u):
    """ ``U_eps = u o X_eps`` on the blown-up domain [-1, 2]

    Args:
        epsilon (:obj:`float`): layer width
        u (:obj:`GridFunction1D`): function on [-1, 1]

    Returns:
        :obj:`GridFunction1D`: function on [-1, 2]
    """
    return GridFunction1D(u.mesh.transform(lambda x: y_map(epsilon, x)), u.values)


def blow_down(epsilon, U):
    """ Inverse of :obj:`blow_up` """
    return GridFunction1D(U.mesh.transform(lambda y: x_map(epsilon, y)), U.values)


def blown_up_discretization(profile, epsilon, mesh_hat):
    """ Discretization of the blown-up thin-layer problem with ``A_eps = a_eps(X_eps)/X_eps'``

    Its dissipation coincides with the one of the thin-layer problem for ``U = u o X_eps``.

    Args:
        profile (:obj:`LayerProfile`): profile
        epsilon (:obj:`float`): layer width
        mesh_hat (:obj:`Mesh1D`): blown-up mesh of [-1, 2]

    Returns:
        :obj:`Discretization`: discretization with the weights ``X_eps'`` in the flux integral
    """
    x = x_map(epsilon, mesh_hat.centers)
    weights = x_prime(epsilon, mesh_hat.centers)
    return Discretization(mesh_hat, profile.a_eps(x, epsilon) / weights, np.exp(-profile.v_eps(x, epsilon)),
                          epsilon=epsilon, weights=weights)


def blown_up_solution(profile, solution):
    """ Blow up each state of a thin-layer solution

    Returns:
        :obj:`MembraneSolution`: solution of :obj:`blown_up_discretization`
    """
    epsilon = solution.discretization.epsilon
    mesh_hat = solution.mesh.transform(lambda x: y_map(epsilon, x))
    return MembraneSolution(blown_up_discretization(profile, epsilon, mesh_hat), solution.times, solution.states)


class MembraneReport(object):
    """ Convergence of thin-layer solutions to the solution of the transmission problem

    Attributes:
        d_limit (:obj:`float`): dissipation of the limit solution
        limit_edb_residual (:obj:`float`): ``E_0(T) + D_0 - E_0(0)`` of the limit solution
        rows (:obj:`list` of :obj:`list`): per layer width, the columns of :obj:`HEADER`
        failures (:obj:`list` of :obj:`tuple`): layer widths whose solve failed, with the error message
    """

    HEADER = ['epsilon', 'l1_gap', 'energy_gap', 'initial_energy_gap', 'd_eps', 'dissipation_gap', 'edb_residual']

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
        """ :obj:`float`: smallest layer width which was solved """
        return min(row[0] for row in self.rows) if self.rows else None

    def converging(self, slack=0.1):
        """ Whether the L1 gaps decrease with the layer width, up to the relative `slack` """
        gaps = self.column('l1_gap')
        return bool(np.all(gaps[1:] <= (1. + slack) * gaps[:-1]))

    def to_csv(self, path):
        """ Write the rows """
        io.write_csv(path, self.HEADER, self.rows)


def _membrane_entry(profile, epsilon, u0, T, dt, limit):
    try:
        sol = solve_thin_layer(profile, epsilon, well_prepared_state(profile, epsilon, u0), T, dt=dt)
    except StepSizeUnderflowError as error:
        _log_debug('Thin-layer solve failed at eps={}: {}'.format(epsilon, error))
        return epsilon, None, str(error)

    l1_gap = max(sol.grid_function(i).l1_distance(limit.grid_function(i)) for i in range(sol.times.size))
    energy_gap = float(np.max(np.abs(sol.energies - limit.energies)))
    d_eps = dissipation_eps(sol)
    return epsilon, [epsilon, l1_gap, energy_gap, abs(sol.energies[0] - limit.energies[0]), d_eps,
                     d_eps - dissipation_limit(limit), sol.energies[-1] + d_eps - sol.energies[0]], None


def edp_check_membrane(profile, epsilons, u0, T, dt=None, map_fn=map):
    """ Compare thin-layer solutions from well-prepared data with the solution of the transmission problem

    Args:
        profile (:obj:`LayerProfile`): profile
        epsilons (:obj:`list` of :obj:`float`): layer widths
        u0 (:obj:`callable`): positive initial density of the limit problem with mass 1
        T (:obj:`float`): duration
        dt (:obj:`float`, optional): time step of all solves
        map_fn (:obj:`callable`, optional): map over the layer widths, e.g. of an executor

    Returns:
        :obj:`MembraneReport`: report, ordered by decreasing layer width
    """
    dt = dt or config['dt']
    limit = solve_limit(profile, u0, T, dt=dt)
    d_limit = dissipation_limit(limit)

    epsilons = sorted(epsilons, reverse=True)
    entries = list(map_fn(lambda epsilon: _membrane_entry(profile, epsilon, u0, T, dt, limit), epsilons))
    rows = [row for _, row, _ in entries if row is not None]
    failures = [(epsilon, message) for epsilon, row, message in entries if row is None]
    for row in rows:
        _log_debug('eps={}: L1 gap {:.3e}, dissipation gap {:.3e}'.format(row[0], row[1], row[5]), sim_time=T)
    return MembraneReport(d_limit, limit.energies[-1] + d_limit - limit.energies[0], rows, failures)
