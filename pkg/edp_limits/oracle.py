""" Value functions of the layer problems: closed forms and brute-force minimizers

* `G(alpha, u0, u1)`: minimal cost of a positive profile on [0, 1] which carries the flux `alpha`
  between the boundary values `u0` and `u1`
* `G_hat`: the same problem with variable mobility and equilibrium density
* `N(delta, v0, v1)`: inf-sup value of the reaction-path profile problem

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits.config import get_config
from edp_limits.debug_logs import get_debug_log
from edp_limits.potentials import cosh_c, cosh_star, legendre
from edp_limits.util.rand import RandomState
from scipy import integrate, optimize
import numpy as np

config = get_config()['edp_limits']['oracle']


class BruteForceConvergenceError(Exception):
    """ A brute-force minimization didn't converge

    Attributes:
        message (:obj:`str`): optimizer message
        last_iterate (:obj:`numpy.ndarray`): last profile
        residual (:obj:`float`): max-norm of the last gradient
    """

    def __init__(self, message, last_iterate, residual):
        self.message = message
        self.last_iterate = last_iterate
        self.residual = residual

    def __str__(self):
        return 'Brute-force minimization did not converge ({}); gradient residual {:.3e}; last iterate {}'.format(
            self.message, self.residual, self.last_iterate)


def g_closed(alpha, u0, u1):
    """ Closed form ``G = s C(alpha/s) + s C*(log u1 - log u0)`` with ``s = sqrt(u0 u1)``

    Args:
        alpha (:obj:`float`): flux
        u0 (:obj:`float`): positive left boundary value
        u1 (:obj:`float`): positive right boundary value

    Returns:
        :obj:`float`: minimal cost
    """
    s = np.sqrt(u0 * u1)
    return s * cosh_c(alpha / s) + s * cosh_star(np.log(u1) - np.log(u0))


class LayerParabola(object):
    """ Minimizing profile ``u(x) = (1 - x) u0 + x u1 + b (x^2 - x)`` of `G`

    Attributes:
        u0 (:obj:`float`): left boundary value
        u1 (:obj:`float`): right boundary value
        b (:obj:`float`): curvature coefficient
    """

    def __init__(self, u0, u1, b):
        self.u0 = u0
        self.u1 = u1
        self.b = b

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return (1. - x) * self.u0 + x * self.u1 + self.b * (x ** 2 - x)


def g_minimizer(alpha, u0, u1):
    """ Minimizing profile of `G`, with ``b = u0 + u1 - sqrt(alpha^2 + 4 u0 u1)``

    Args:
        alpha (:obj:`float`): flux
        u0 (:obj:`float`): left boundary value
        u1 (:obj:`float`): right boundary value

    Returns:
        :obj:`LayerParabola`: minimizer
    """
    return LayerParabola(u0, u1, u0 + u1 - np.sqrt(alpha ** 2 + 4. * u0 * u1))


def a_star(A_fun, W_fun):
    """ Harmonic mean ``(int_0^1 dy / (A(y) W(y)))^-1`` of the product of the coefficients

    Args:
        A_fun (:obj:`callable`): positive mobility on [0, 1]
        W_fun (:obj:`callable`): positive equilibrium density on [0, 1]

    Returns:
        :obj:`float`: transmission coefficient
    """
    integral, _ = integrate.quad(lambda y: 1. / (A_fun(y) * W_fun(y)), 0., 1., epsabs=1e-13, epsrel=1e-13)
    return 1. / integral


def g_hat(alpha, u0, u1, A_fun, W_fun):
    """ Closed form of the value function with variable coefficients

    ``A_* s C(alpha / (A_* s)) + A_* s C*(log(u0 w1 / (u1 w0)))`` with ``s = sqrt(u0 u1 / (w0 w1))``

    Args:
        alpha (:obj:`float`): flux
        u0 (:obj:`float`): left boundary value
        u1 (:obj:`float`): right boundary value
        A_fun (:obj:`callable`): positive mobility on [0, 1]
        W_fun (:obj:`callable`): positive equilibrium density on [0, 1]

    Returns:
        :obj:`float`: minimal cost
    """
    a = a_star(A_fun, W_fun)
    w0 = W_fun(0.)
    w1 = W_fun(1.)
    s = np.sqrt(u0 * u1 / (w0 * w1))
    return a * s * cosh_c(alpha / (a * s)) + a * s * cosh_star(np.log(u0 * w1 / (u1 * w0)))


def _profile_cost(s, alpha, a_mid, log_w, h):
    """ Discretized ``int alpha^2/(2 A U) + (A U / 2) ((log(U/W))')^2`` and its gradient in ``s = log U`` """
    u = np.exp(s)
    m = u[:-1] + u[1:]
    g = np.diff(s - log_w) / h
    cost = np.sum(h * (alpha ** 2 / (a_mid * m) + a_mid * m * g ** 2 / 4.))

    d_m = h * (-alpha ** 2 / (a_mid * m ** 2) + a_mid * g ** 2 / 4.)
    d_g = a_mid * m * g / 2.
    grad = np.zeros_like(s)
    grad[:-1] += u[:-1] * d_m - d_g
    grad[1:] += u[1:] * d_m + d_g
    return cost, grad


def _harm_term(s, delta, h):
    """ Discretized ``-(delta^2/2) Harm(v)`` and its gradient in ``s = log v`` """
    u = np.exp(s)
    m = u[:-1] + u[1:]
    total = np.sum(1. / m)
    value = -delta ** 2 / (4. * h * total)

    d_m = -delta ** 2 / (4. * h * total ** 2) / m ** 2
    grad = np.zeros_like(s)
    grad[:-1] += u[:-1] * d_m
    grad[1:] += u[1:] * d_m
    return value, grad


def _minimize_interior(objective, s_start, max_iter):
    """ Minimize over the interior nodes of a log profile with fixed end values """
    def interior(s_inner):
        s = np.concatenate(([s_start[0]], s_inner, [s_start[-1]]))
        value, grad = objective(s)
        return value, grad[1:-1]

    result = optimize.minimize(interior, s_start[1:-1], jac=True, method='L-BFGS-B',
                               options={'maxiter': max_iter, 'ftol': 1e-15, 'gtol': 1e-11, 'maxcor': 30})
    residual = np.max(np.abs(result.jac)) if result.jac.size else 0.
    if not result.success and residual > 1e-6:
        raise BruteForceConvergenceError(result.message, np.exp(result.x), residual)
    if not result.success:
        log = get_debug_log()
        if log:
            log.debug('L-BFGS-B stopped early ({}) with gradient residual {:.2e}'.format(result.message, residual))
    return np.concatenate(([s_start[0]], result.x, [s_start[-1]])), result.fun


def g_hat_brute(alpha, u0, u1, A_fun, W_fun, grid_points=None, max_iter=None, full_output=False):
    """ Minimize the discretized variable-coefficient layer cost over positive piecewise-linear profiles

    Args:
        alpha (:obj:`float`): flux
        u0 (:obj:`float`): left boundary value
        u1 (:obj:`float`): right boundary value
        A_fun (:obj:`callable`): positive mobility on [0, 1]
        W_fun (:obj:`callable`): positive equilibrium density on [0, 1]
        grid_points (:obj:`int`, optional): number of cells
        max_iter (:obj:`int`, optional): maximal number of optimizer iterations
        full_output (:obj:`bool`, optional): if :obj:`True`, also return the nodes and the minimizer

    Returns:
        :obj:`float`: minimal cost, or a tuple of the cost, the nodes and the minimizing profile

    Raises:
        :obj:`BruteForceConvergenceError`: if the minimizer doesn't converge
    """
    grid_points = grid_points or config['grid_points']
    max_iter = max_iter or config['max_iter']

    x = np.linspace(0., 1., grid_points + 1)
    h = 1. / grid_points
    x_mid = (x[:-1] + x[1:]) / 2.
    a_mid = np.array([A_fun(y) for y in x_mid], dtype=float)
    log_w = np.log(np.array([W_fun(y) for y in x], dtype=float))

    s_start = np.log((1. - x) * u0 + x * u1)
    s, value = _minimize_interior(lambda s: _profile_cost(s, alpha, a_mid, log_w, h), s_start, max_iter)
    if full_output:
        return value, x, np.exp(s)
    return value


def g_brute(alpha, u0, u1, grid_points=None, max_iter=None, full_output=False):
    """ Minimize the discretized layer cost ``int (alpha^2 + u'^2) / (2u)`` over positive profiles

    Args:
        alpha (:obj:`float`): flux
        u0 (:obj:`float`): left boundary value
        u1 (:obj:`float`): right boundary value
        grid_points (:obj:`int`, optional): number of cells
        max_iter (:obj:`int`, optional): maximal number of optimizer iterations
        full_output (:obj:`bool`, optional): if :obj:`True`, also return the nodes and the minimizer

    Returns:
        :obj:`float`: minimal cost, or a tuple of the cost, the nodes and the minimizing profile
    """
    def one(y):
        return 1.
    return g_hat_brute(alpha, u0, u1, one, one, grid_points=grid_points, max_iter=max_iter,
                       full_output=full_output)


def g_star(delta, v0, v1):
    """ Numeric Legendre transform ``sup_alpha (delta alpha - G(alpha, v0, v1))`` of `G` in the flux

    Args:
        delta (:obj:`float`): force
        v0 (:obj:`float`): left boundary value
        v1 (:obj:`float`): right boundary value

    Returns:
        :obj:`float`: conjugate
    """
    return legendre(lambda alpha: g_closed(alpha, v0, v1), delta)


def n_closed(delta, v0, v1):
    """ Closed form ``N = s C*(log v1 - log v0) - s C*(delta)`` with ``s = sqrt(v0 v1)``

    Args:
        delta (:obj:`float`): increment of the test function
        v0 (:obj:`float`): left boundary value
        v1 (:obj:`float`): right boundary value

    Returns:
        :obj:`float`: inf-sup value
    """
    s = np.sqrt(v0 * v1)
    return s * cosh_star(np.log(v1) - np.log(v0)) - s * cosh_star(delta)


def n_of_profile(v, zeta):
    """ Discretized ``int v'^2/(2v) - (1/2) zeta'^2 v dz`` on a uniform grid of [0, 1]

    Args:
        v (:obj:`numpy.ndarray`): positive profile at the nodes
        zeta (:obj:`numpy.ndarray`): test function at the nodes

    Returns:
        :obj:`float`: value
    """
    v = np.asarray(v, dtype=float)
    h = 1. / (v.size - 1)
    m = v[:-1] + v[1:]
    return float(np.sum(np.diff(v) ** 2 / (h * m)) - np.sum(np.diff(zeta) ** 2 * m) / (4. * h))


def m_of_profile(delta, v):
    """ ``int v'^2/(2v) dz - (delta^2/2) Harm(v)``, the sup of :obj:`n_of_profile` over test functions
    with ``zeta(1) - zeta(0) = delta``

    Args:
        delta (:obj:`float`): increment of the test function
        v (:obj:`numpy.ndarray`): positive profile at the nodes of a uniform grid of [0, 1]

    Returns:
        :obj:`float`: value
    """
    v = np.asarray(v, dtype=float)
    h = 1. / (v.size - 1)
    m = v[:-1] + v[1:]
    return float(np.sum(np.diff(v) ** 2 / (h * m)) - delta ** 2 / (4. * h * np.sum(1. / m)))


def m_sup_zeta(delta, v):
    """ Numeric sup of :obj:`n_of_profile` over test functions with ``zeta(1) - zeta(0) = delta``

    The last increment of `zeta` is eliminated by the constraint.

    Args:
        delta (:obj:`float`): increment of the test function
        v (:obj:`numpy.ndarray`): positive profile at the nodes

    Returns:
        :obj:`float`: value
    """
    v = np.asarray(v, dtype=float)
    n_cells = v.size - 1

    def zeta_of(increments):
        increments = np.append(increments, delta - np.sum(increments))
        return np.concatenate(([0.], np.cumsum(increments)))

    result = optimize.minimize(lambda increments: -n_of_profile(v, zeta_of(increments)),
                               np.full(n_cells - 1, delta / n_cells), method='BFGS',
                               options={'gtol': 1e-10})
    return -result.fun


def m_min_alpha(delta, v):
    """ Numeric ``min_alpha (G(alpha, v) - alpha delta)`` for a fixed profile `v`

    Args:
        delta (:obj:`float`): force
        v (:obj:`numpy.ndarray`): positive profile at the nodes of a uniform grid of [0, 1]

    Returns:
        :obj:`float`: value
    """
    v = np.asarray(v, dtype=float)
    h = 1. / (v.size - 1)
    m = v[:-1] + v[1:]
    gradient_part = np.sum(np.diff(v) ** 2 / (h * m))
    flux_weight = np.sum(h / m)
    result = optimize.minimize_scalar(lambda alpha: gradient_part + alpha ** 2 * flux_weight - alpha * delta,
                                      method='brent', options={'xtol': 1e-12})
    return result.fun


def n_brute(delta, v0, v1, grid_points=None, max_iter=None):
    """ Infimum of :obj:`m_of_profile` over positive profiles with fixed end values

    Args:
        delta (:obj:`float`): increment of the test function
        v0 (:obj:`float`): left boundary value
        v1 (:obj:`float`): right boundary value
        grid_points (:obj:`int`, optional): number of cells
        max_iter (:obj:`int`, optional): maximal number of optimizer iterations

    Returns:
        :obj:`float`: inf-sup value

    Raises:
        :obj:`BruteForceConvergenceError`: if the minimizer doesn't converge
    """
    grid_points = grid_points or config['grid_points']
    max_iter = max_iter or config['max_iter']

    x = np.linspace(0., 1., grid_points + 1)
    h = 1. / grid_points
    a_mid = np.ones(grid_points)
    log_w = np.zeros(grid_points + 1)

    def objective(s):
        gradient_value, gradient_grad = _profile_cost(s, 0., a_mid, log_w, h)
        harm_value, harm_grad = _harm_term(s, delta, h)
        return gradient_value + harm_value, gradient_grad + harm_grad

    s_start = np.log((1. - x) * v0 + x * v1)
    _, value = _minimize_interior(objective, s_start, max_iter)
    return value


class ProfileProblem(object):
    """ Layer problem with flux `alpha` and boundary values `u0`, `u1`

    Attributes:
        alpha (:obj:`float`): flux
        u0 (:obj:`float`): positive left boundary value
        u1 (:obj:`float`): positive right boundary value
        A_fun (:obj:`callable`): mobility on [0, 1]; :obj:`None` means 1
        W_fun (:obj:`callable`): equilibrium density on [0, 1]; :obj:`None` means 1
    """

    def __init__(self, alpha, u0, u1, A_fun=None, W_fun=None):
        if u0 <= 0 or u1 <= 0:
            raise ValueError('Boundary values must be positive')
        self.alpha = alpha
        self.u0 = u0
        self.u1 = u1
        self.A_fun = A_fun
        self.W_fun = W_fun

    @property
    def a_star(self):
        """ :obj:`float`: transmission coefficient of the coefficients """
        return a_star(*self._coefficients())

    def _coefficients(self):
        def one(y):
            return 1.
        return (self.A_fun or one, self.W_fun or one)

    def closed(self):
        """ Closed-form value """
        if self.A_fun is None and self.W_fun is None:
            return g_closed(self.alpha, self.u0, self.u1)
        return g_hat(self.alpha, self.u0, self.u1, *self._coefficients())

    def brute(self, grid_points=None):
        """ Brute-force value """
        return g_hat_brute(self.alpha, self.u0, self.u1, *self._coefficients(), grid_points=grid_points)


class OracleRow(object):
    """ Comparison of closed forms and brute-force values for one random instance

    Attributes:
        alpha (:obj:`float`): flux
        u0 (:obj:`float`): left boundary value
        u1 (:obj:`float`): right boundary value
        delta (:obj:`float`): increment of the test function of `N`
        g_closed (:obj:`float`): closed-form `G`
        g_brute (:obj:`float`): brute-force `G`
        parabola_gap (:obj:`float`): sup-distance between the brute minimizer and the parabola
        n_closed (:obj:`float`): closed-form `N`
        n_brute (:obj:`float`): brute-force `N`
        bridge_gap (:obj:`float`): ``|N + G*|``
    """

    HEADER = ('alpha', 'u0', 'u1', 'delta', 'g_closed', 'g_brute', 'g_gap', 'parabola_gap',
              'n_closed', 'n_brute', 'n_gap', 'bridge_gap')

    def __init__(self, alpha, u0, u1, delta, g_closed, g_brute, parabola_gap, n_closed, n_brute, bridge_gap):
        self.alpha = alpha
        self.u0 = u0
        self.u1 = u1
        self.delta = delta
        self.g_closed = g_closed
        self.g_brute = g_brute
        self.parabola_gap = parabola_gap
        self.n_closed = n_closed
        self.n_brute = n_brute
        self.bridge_gap = bridge_gap

    @property
    def g_gap(self):
        """ :obj:`float`: ``|g_brute - g_closed| / (1 + g_closed)`` """
        return abs(self.g_brute - self.g_closed) / (1. + self.g_closed)

    @property
    def n_gap(self):
        """ :obj:`float`: ``|n_brute - n_closed| / (1 + |n_closed|)`` """
        return abs(self.n_brute - self.n_closed) / (1. + abs(self.n_closed))

    def to_list(self):
        return [self.alpha, self.u0, self.u1, self.delta, self.g_closed, self.g_brute, self.g_gap,
                self.parabola_gap, self.n_closed, self.n_brute, self.n_gap, self.bridge_gap]


def random_instance(seed):
    """ Draw a random instance ``(alpha, u0, u1, delta)``

    Args:
        seed (:obj:`int`): seed

    Returns:
        :obj:`tuple`: alpha in [-3, 3], u0 and u1 in [0.2, 3], delta in [-2, 2]
    """
    random_state = RandomState(seed=seed)
    alpha = random_state.uniform(-3., 3.)
    u0, u1 = random_state.uniform(0.2, 3., size=2)
    delta = random_state.uniform(-2., 2.)
    return float(alpha), float(u0), float(u1), float(delta)


def compare_instance(alpha, u0, u1, delta, grid_points=None):
    """ Evaluate the closed forms and brute-force values of one instance

    Args:
        alpha (:obj:`float`): flux
        u0 (:obj:`float`): left boundary value
        u1 (:obj:`float`): right boundary value
        delta (:obj:`float`): increment of the test function of `N`
        grid_points (:obj:`int`, optional): number of cells of the brute-force profiles

    Returns:
        :obj:`OracleRow`: comparison
    """
    g_value, x, profile = g_brute(alpha, u0, u1, grid_points=grid_points, full_output=True)
    parabola_gap = float(np.max(np.abs(profile - g_minimizer(alpha, u0, u1)(x))))
    n_value = n_closed(delta, u0, u1)
    return OracleRow(alpha, u0, u1, delta,
                     g_closed=g_closed(alpha, u0, u1),
                     g_brute=g_value,
                     parabola_gap=parabola_gap,
                     n_closed=n_value,
                     n_brute=n_brute(delta, u0, u1, grid_points=grid_points),
                     bridge_gap=abs(n_value + g_star(delta, u0, u1)))


def oracle_table(seeds, grid_points=None, map_fn=map):
    """ Compare closed forms with brute-force values for random instances

    Args:
        seeds (:obj:`list` of :obj:`int`): one seed per instance
        grid_points (:obj:`int`, optional): number of cells of the brute-force profiles
        map_fn (:obj:`callable`, optional): map function, e.g. of an executor

    Returns:
        :obj:`list` of :obj:`OracleRow`: one row per seed, in the order of `seeds`
    """
    return list(map_fn(_compare_seed, seeds, [grid_points] * len(seeds)))


def _compare_seed(seed, grid_points):
    return compare_instance(*random_instance(seed), grid_points=grid_points)
