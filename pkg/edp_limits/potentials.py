""" Scalar convex analysis: the cosh dissipation pair, the Boltzmann function, the logarithmic mean,
numeric Legendre transforms and inf-convolutions

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits.config import get_config
from scipy import optimize, special
import numpy as np

config = get_config()['edp_limits']['potentials']

MAX_COSH_ARG = 709.
# :obj:`float`: largest argument of `cosh` and `sinh` which doesn't overflow a double


class DomainError(Exception):
    """ An argument is outside the domain of a function """
    pass


class OutOfRangeError(Exception):
    """ A value can't be represented in double precision """
    pass


class UnboundedSupremumError(Exception):
    """ The objective of a numeric Legendre transform is still increasing at the search bound

    Attributes:
        xi (:obj:`float`): force
        search_bound (:obj:`float`): search bound
        trace (:obj:`list` of :obj:`tuple`): bracketing points and objective values
    """

    def __init__(self, xi, search_bound, trace):
        self.xi = xi
        self.search_bound = search_bound
        self.trace = trace

    def __str__(self):
        return 'Supremum at xi={} is not attained within [-{}, {}]; bracketing trace: {}'.format(
            self.xi, self.search_bound, self.search_bound, self.trace)


def _as_float(x):
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        return float(x)
    return x


def arsinh(x):
    """ Inverse hyperbolic sine through the logarithm, without cancellation for negative `x`

    Args:
        x (:obj:`float` or :obj:`numpy.ndarray`): argument

    Returns:
        :obj:`float` or :obj:`numpy.ndarray`: ``ln(x + sqrt(x^2 + 1))``
    """
    x = np.asarray(x, dtype=float)
    abs_x = np.abs(x)
    return _as_float(np.sign(x) * np.log1p(abs_x + abs_x ** 2 / (1. + np.sqrt(abs_x ** 2 + 1.))))


def _check_cosh_range(xi):
    if np.any(np.abs(np.asarray(xi)) / 2. > MAX_COSH_ARG):
        raise OutOfRangeError('cosh(xi/2) overflows for |xi| > {}'.format(2 * MAX_COSH_ARG))


def cosh_star(xi):
    """ Dual cosh potential ``C*(xi) = 4 (cosh(xi/2) - 1)``

    Evaluated as ``8 sinh(xi/4)^2``, which is free of cancellation near 0.

    Args:
        xi (:obj:`float` or :obj:`numpy.ndarray`): force

    Returns:
        :obj:`float` or :obj:`numpy.ndarray`: energy rate

    Raises:
        :obj:`OutOfRangeError`: if the value overflows
    """
    _check_cosh_range(xi)
    xi = np.asarray(xi, dtype=float)
    return _as_float(8. * np.sinh(xi / 4.) ** 2)


def cosh_star_prime(xi):
    """ ``(C*)'(xi) = 2 sinh(xi/2)`` """
    _check_cosh_range(xi)
    return _as_float(2. * np.sinh(np.asarray(xi, dtype=float) / 2.))


def cosh_star_second(xi):
    """ ``(C*)''(xi) = cosh(xi/2)`` """
    _check_cosh_range(xi)
    return _as_float(np.cosh(np.asarray(xi, dtype=float) / 2.))


def cosh_c(v):
    """ Primal cosh potential ``C(v) = 2 v arsinh(v/2) - 2 sqrt(4 + v^2) + 4``

    The last two terms are evaluated as ``-2 v^2 / (sqrt(4 + v^2) + 2)``.

    Args:
        v (:obj:`float` or :obj:`numpy.ndarray`): rate

    Returns:
        :obj:`float` or :obj:`numpy.ndarray`: energy rate
    """
    v = np.asarray(v, dtype=float)
    return _as_float(2. * v * arsinh(v / 2.) - 2. * v ** 2 / (np.sqrt(4. + v ** 2) + 2.))


def cosh_c_prime(v):
    """ ``C'(v) = 2 arsinh(v/2)``, the inverse of :obj:`cosh_star_prime` """
    return _as_float(2. * arsinh(np.asarray(v, dtype=float) / 2.))


def boltzmann(z):
    """ Boltzmann function ``lambda_B(z) = z log z - z + 1``, extended by 1 at 0

    Args:
        z (:obj:`float` or :obj:`numpy.ndarray`): nonnegative density ratio

    Returns:
        :obj:`float` or :obj:`numpy.ndarray`: entropy density

    Raises:
        :obj:`DomainError`: if `z` is negative
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise DomainError('The Boltzmann function is defined for z >= 0')
    return _as_float(special.xlogy(z, z) - z + 1.)


def boltzmann_prime(z):
    """ Derivative ``log z`` of the Boltzmann function

    Raises:
        :obj:`DomainError`: if `z` isn't positive
    """
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise DomainError('The derivative of the Boltzmann function is defined for z > 0')
    return _as_float(np.log(z))


def boltzmann_second(z):
    """ Second derivative ``1/z`` of the Boltzmann function

    Raises:
        :obj:`DomainError`: if `z` isn't positive
    """
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise DomainError('The second derivative of the Boltzmann function is defined for z > 0')
    return _as_float(1. / z)


def log_mean(a, b):
    """ Logarithmic mean ``(a - b) / (log a - log b)``, continuously extended by `a` on the diagonal

    Args:
        a (:obj:`float` or :obj:`numpy.ndarray`): positive value
        b (:obj:`float` or :obj:`numpy.ndarray`): positive value

    Returns:
        :obj:`float` or :obj:`numpy.ndarray`: logarithmic mean

    Raises:
        :obj:`DomainError`: if an argument isn't positive
    """
    a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    if np.any(a <= 0) or np.any(b <= 0):
        raise DomainError('The logarithmic mean is defined for positive arguments')

    d = (b - a) / a
    near = np.abs(d) < 1e-4
    safe_d = np.where(near, 1., d)
    ratio = np.where(near, 1. + d / 2. - d ** 2 / 12. + d ** 3 / 24., safe_d / np.log1p(safe_d))
    return _as_float(a * ratio)


def _maximize_concave(f, x0, step, search_bound, tol, xi=None):
    """ Maximize a concave scalar function by bracket expansion from `x0` then golden section

    Returns:
        :obj:`tuple`: maximizer and maximum
    """
    f0 = f(x0)
    trace = [(x0, f0)]
    f_right = f(x0 + step)
    f_left = f(x0 - step)
    if f_right <= f0 and f_left <= f0:
        a, fa, b, fb, c, fc = x0 - step, f_left, x0, f0, x0 + step, f_right
    else:
        direction = 1. if f_right > f_left else -1.
        a, fa = x0, f0
        b, fb = x0 + direction * step, max(f_right, f_left)
        trace.append((b, fb))
        while True:
            step *= 2.
            c = b + direction * step
            if abs(c) > search_bound:
                raise UnboundedSupremumError(xi, search_bound, trace)
            fc = f(c)
            trace.append((c, fc))
            if fc <= fb:
                break
            a, fa, b, fb = b, fb, c, fc
        if direction < 0:
            a, fa, c, fc = c, fc, a, fa

    if fb > fa and fb > fc:
        result = optimize.minimize_scalar(lambda x: -f(x), bracket=(a, b, c), method='golden',
                                          options={'xtol': tol})
    else:
        # plateau at the bracket edge
        result = optimize.minimize_scalar(lambda x: -f(x), bounds=(a, c), method='bounded',
                                          options={'xatol': tol * max(1., abs(b))})
    return result.x, -result.fun


def legendre(psi, xi, search_bound=None, tol=None, full_output=False):
    """ Numeric Legendre-Fenchel transform ``sup_v (xi v - psi(v))`` of a convex scalar function

    Args:
        psi (:obj:`callable`): convex function
        xi (:obj:`float`): force
        search_bound (:obj:`float`, optional): largest |v| searched
        tol (:obj:`float`, optional): relative tolerance of the maximizer
        full_output (:obj:`bool`, optional): if :obj:`True`, also return the maximizer

    Returns:
        :obj:`float`: supremum, or a tuple of the supremum and the maximizer if `full_output`

    Raises:
        :obj:`UnboundedSupremumError`: if the supremum isn't attained within the search bound
    """
    if search_bound is None:
        search_bound = config['legendre_search_bound']
    if tol is None:
        tol = config['legendre_tol']

    v, value = _maximize_concave(lambda v: xi * v - psi(v), 0., 1., search_bound, tol, xi=xi)
    if full_output:
        return value, v
    return value


def inf_convolution_cosh(a, b, xi):
    """ Closed form of ``inf_tau (a C*(tau) + b C*(xi - tau))``

    The closed form ``4 sqrt((a + b)^2 + (a b / 2) C*(xi)) - 4 (a + b)`` is evaluated after
    rationalization, without cancellation for small `xi`.

    Args:
        a (:obj:`float`): positive weight
        b (:obj:`float`): positive weight
        xi (:obj:`float` or :obj:`numpy.ndarray`): force

    Returns:
        :obj:`float` or :obj:`numpy.ndarray`: energy rate

    Raises:
        :obj:`DomainError`: if a weight isn't positive
    """
    if a <= 0 or b <= 0:
        raise DomainError('The weights of the inf-convolution must be positive')
    c_star = np.asarray(cosh_star(xi))
    s = a + b
    return _as_float(2. * a * b * c_star / (np.sqrt(s ** 2 + a * b / 2. * c_star) + s))


def inf_convolution(psi_star_a, psi_star_b, xi, search_bound=None, tol=None):
    """ Numeric inf-convolution ``inf_tau (psi_star_a(tau) + psi_star_b(xi - tau))`` of convex functions

    Args:
        psi_star_a (:obj:`callable`): convex function
        psi_star_b (:obj:`callable`): convex function
        xi (:obj:`float`): force
        search_bound (:obj:`float`, optional): largest |tau| searched
        tol (:obj:`float`, optional): relative tolerance of the minimizer

    Returns:
        :obj:`float`: infimum
    """
    if search_bound is None:
        search_bound = config['legendre_search_bound']
    if tol is None:
        tol = config['legendre_tol']

    step = max(abs(xi) / 4., 0.5)
    _, value = _maximize_concave(lambda tau: -psi_star_a(tau) - psi_star_b(xi - tau),
                                 xi / 2., step, search_bound + abs(xi), tol, xi=xi)
    return -value


class DissipationPair(object):
    """ Convex dissipation potential `psi` and its Legendre dual `psi_star`

    Attributes:
        psi (:obj:`callable`): primal potential, rate to energy rate
        psi_star (:obj:`callable`): dual potential, force to energy rate
        dpsi (:obj:`callable`): derivative of `psi`
        dpsi_star (:obj:`callable`): derivative of `psi_star`
        ddpsi_star (:obj:`float`): second derivative of `psi_star` at 0
        kind (:obj:`str`): ``quadratic``, ``cosh`` or ``custom``
    """

    def __init__(self, psi, psi_star, dpsi, dpsi_star, ddpsi_star=1., kind='custom'):
        self.psi = psi
        self.psi_star = psi_star
        self.dpsi = dpsi
        self.dpsi_star = dpsi_star
        self.ddpsi_star = ddpsi_star
        self.kind = kind

    @classmethod
    def quadratic(cls):
        """ Self-dual pair ``psi(v) = v^2/2`` """
        return cls(psi=lambda v: _as_float(np.square(v) / 2.),
                   psi_star=lambda xi: _as_float(np.square(xi) / 2.),
                   dpsi=lambda v: _as_float(v),
                   dpsi_star=lambda xi: _as_float(xi),
                   ddpsi_star=1., kind='quadratic')

    @classmethod
    def cosh(cls):
        """ Pair ``(C, C*)`` generated by the large deviations of jump processes """
        return cls(psi=cosh_c, psi_star=cosh_star, dpsi=cosh_c_prime, dpsi_star=cosh_star_prime,
                   ddpsi_star=1., kind='cosh')

    @classmethod
    def from_dual(cls, psi_star, dpsi_star, ddpsi_star=1., search_bound=None, tol=None):
        """ Build a pair from its dual potential; the primal potential is a numeric Legendre transform

        Args:
            psi_star (:obj:`callable`): dual potential
            dpsi_star (:obj:`callable`): derivative of `psi_star`
            ddpsi_star (:obj:`float`, optional): second derivative of `psi_star` at 0
            search_bound (:obj:`float`, optional): search bound of the Legendre transforms
            tol (:obj:`float`, optional): tolerance of the Legendre transforms

        Returns:
            :obj:`DissipationPair`: pair
        """
        def psi(v):
            return legendre(psi_star, v, search_bound=search_bound, tol=tol)

        def dpsi(v):
            return legendre(psi_star, v, search_bound=search_bound, tol=tol, full_output=True)[1]

        return cls(psi=psi, psi_star=psi_star, dpsi=dpsi, dpsi_star=dpsi_star,
                   ddpsi_star=ddpsi_star, kind='custom')

    def young_fenchel_gap(self, v, xi):
        """ Gap ``psi(v) + psi_star(xi) - v xi`` of the Young-Fenchel inequality

        Args:
            v (:obj:`float`): rate
            xi (:obj:`float`): force

        Returns:
            :obj:`float`: nonnegative gap, 0 iff `xi` = `dpsi(v)`
        """
        return self.psi(v) + self.psi_star(xi) - v * xi

    def fenchel_equivalences(self, v, xi, tol=1e-8):
        """ Evaluate the five equivalent characterizations of a Fenchel-dual pair ``(v, xi)``

        Args:
            v (:obj:`float`): rate
            xi (:obj:`float`): force
            tol (:obj:`float`, optional): tolerance

        Returns:
            :obj:`dict`: truth value of each characterization
        """
        return {
            'v_maximizes': xi * v - self.psi(v) >= legendre(self.psi, xi) - tol,
            'xi_is_dpsi': abs(self.dpsi(v) - xi) <= tol * (1. + abs(xi)),
            'fenchel_equality': abs(self.young_fenchel_gap(v, xi)) <= tol * (1. + abs(v * xi)),
            'v_is_dpsi_star': abs(self.dpsi_star(xi) - v) <= tol * (1. + abs(v)),
            'xi_maximizes': v * xi - self.psi_star(xi) >= legendre(self.psi_star, v) - tol,
        }

    def mobility(self, x, y):
        """ Mass-action prefactor ``(x - y) / psi_star'(log x - log y)``

        Closed forms: ``sqrt(x y)`` for the cosh pair and the logarithmic mean for the quadratic pair.

        Args:
            x (:obj:`float` or :obj:`numpy.ndarray`): positive value
            y (:obj:`float` or :obj:`numpy.ndarray`): positive value

        Returns:
            :obj:`float` or :obj:`numpy.ndarray`: mobility

        Raises:
            :obj:`DomainError`: if an argument isn't positive
        """
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        if np.any(x <= 0) or np.any(y <= 0):
            raise DomainError('Mobilities are defined for positive arguments')

        if self.kind == 'cosh':
            return _as_float(np.sqrt(x * y))
        if self.kind == 'quadratic':
            return log_mean(x, y)

        values = []
        for x_i, y_i in zip(x.ravel(), y.ravel()):
            force = np.log(x_i) - np.log(y_i)
            if abs(force) < config['diagonal_tol']:
                values.append(log_mean(x_i, y_i) / self.ddpsi_star)
            else:
                values.append((x_i - y_i) / self.dpsi_star(force))
        return _as_float(np.reshape(values, x.shape))


class EntropyDensity(object):
    """ Convex entropy density `phi` with its first two derivatives

    Attributes:
        phi (:obj:`callable`): density
        dphi (:obj:`callable`): first derivative
        ddphi (:obj:`callable`): second derivative
        kind (:obj:`str`): ``boltzmann``, ``quadratic`` or ``custom``
    """

    def __init__(self, phi, dphi, ddphi, kind='custom'):
        self.phi = phi
        self.dphi = dphi
        self.ddphi = ddphi
        self.kind = kind

    @classmethod
    def boltzmann(cls):
        """ Relative entropy density :obj:`boltzmann` """
        return cls(boltzmann, boltzmann_prime, boltzmann_second, kind='boltzmann')

    @classmethod
    def quadratic(cls):
        """ Quadratic density ``r^2/2`` """
        return cls(phi=lambda r: _as_float(np.square(r) / 2.),
                   dphi=lambda r: _as_float(r),
                   ddphi=lambda r: _as_float(np.ones_like(np.asarray(r, dtype=float))),
                   kind='quadratic')
