""" Reversible finite-state Markov chains: detailed balance, the entropic gradient structure generated
by their large deviations, forward solutions and simulations of the empirical process

The generator ``a`` acts on densities, ``dc/dt = a c``; its transpose ``q`` acts on observables, so
``q[i, j]`` is the jump rate from state `i` to state `j`.

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

from edp_limits.config import get_config
from edp_limits.debug_logs import get_debug_log
from edp_limits.gradsys import GradientSystem, Trajectory
from edp_limits.potentials import boltzmann, cosh_star, cosh_star_prime
from edp_limits.util import io
from edp_limits.util.rand import RandomState, derive_seeds
from scipy import linalg, signal
import json
import numpy as np

config = get_config()['edp_limits']['markov']
floor = get_config()['edp_limits']['gradsys']['density_floor']

NORMALIZATIONS = {
    'half': 2.,
    'unit': 1.,
}
# :obj:`dict`: scaling of the force differences inside ``C*`` under each normalization; ``half``
# gives ``E = 1/2 sum w lambda_B(c/w)`` with ``C*(2 dxi)``, ``unit`` gives ``E = sum w lambda_B(c/w)``
# with ``C*(dxi)``


class InvalidGeneratorError(Exception):
    """ A matrix isn't the generator of a Markov chain """
    pass


class NoUniqueStationaryError(Exception):
    """ A chain doesn't have a unique positive stationary distribution

    Attributes:
        dimension (:obj:`int`): dimension of the null space of the generator
    """

    def __init__(self, dimension, message=None):
        self.dimension = dimension
        self.message = message

    def __str__(self):
        return self.message or 'The stationary space has dimension {}; the chain is reducible'.format(self.dimension)


class ReversibilityError(Exception):
    """ A chain doesn't satisfy detailed balance

    Attributes:
        certificate (:obj:`DetailedBalanceCertificate`): failed certificate
    """

    def __init__(self, certificate):
        self.certificate = certificate

    def __str__(self):
        return 'The chain is not reversible; max relative asymmetry of the edge fluxes is {:.3e}'.format(
            self.certificate.residual)


def _normalization_scale(normalization):
    normalization = normalization or config['normalization']
    if normalization not in NORMALIZATIONS:
        raise ValueError('Normalization must be one of {}, not "{}"'.format(
            ', '.join(sorted(NORMALIZATIONS.keys())), normalization))
    return NORMALIZATIONS[normalization]


class MarkovGenerator(object):
    """ Generator ``a`` of a continuous-time Markov chain on a finite state space

    Attributes:
        a (:obj:`numpy.ndarray`): square matrix with nonnegative off-diagonal entries and zero column sums
    """

    def __init__(self, a):
        a = np.array(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidGeneratorError('A generator must be a square matrix, not of shape {}'.format(a.shape))
        off_diagonal = a[~np.eye(a.shape[0], dtype=bool)]
        if np.any(off_diagonal < 0):
            raise InvalidGeneratorError('The off-diagonal entries of a generator must be nonnegative')
        scale = max(1., np.max(np.abs(a)))
        col_sums = np.sum(a, axis=0)
        if np.max(np.abs(col_sums)) > 1e-12 * scale:
            raise InvalidGeneratorError('The columns of a generator must sum to 0; max |column sum| is {:.3e}'.format(
                np.max(np.abs(col_sums))))
        self.a = a

    @classmethod
    def from_rates(cls, q):
        """ Build a generator from jump rates

        Args:
            q (:obj:`numpy.ndarray`): `q[i, j]` is the rate of jumps from `i` to `j`; the diagonal is ignored

        Returns:
            :obj:`MarkovGenerator`: generator
        """
        q = np.array(q, dtype=float)
        a = q.T.copy()
        np.fill_diagonal(a, 0.)
        np.fill_diagonal(a, -np.sum(a, axis=0))
        return cls(a)

    @classmethod
    def from_csv(cls, path):
        """ Read a generator from a CSV file with one row of ``a`` per line """
        return cls(io.read_csv(path))

    @classmethod
    def from_json(cls, text):
        """ Parse a generator from JSON

        The document is either the matrix ``a``, or an object with the key ``a`` (the generator) or
        ``rates`` (jump rates, as in :obj:`from_rates`).

        Args:
            text (:obj:`str`): JSON document

        Returns:
            :obj:`MarkovGenerator`: generator

        Raises:
            :obj:`InvalidGeneratorError`: if the document doesn't describe a generator
        """
        doc = json.loads(text)
        if isinstance(doc, list):
            return cls(doc)
        if isinstance(doc, dict) and 'a' in doc:
            return cls(doc['a'])
        if isinstance(doc, dict) and 'rates' in doc:
            return cls.from_rates(doc['rates'])
        raise InvalidGeneratorError('JSON generators must be a matrix or an object with the key "a" or "rates"')

    @property
    def q(self):
        """ :obj:`numpy.ndarray`: generator acting on observables """
        return self.a.T

    @property
    def size(self):
        """ :obj:`int`: number of states """
        return self.a.shape[0]

    @property
    def exit_rates(self):
        """ :obj:`numpy.ndarray`: total jump rate out of each state """
        return -np.diag(self.a)


class DetailedBalanceCertificate(object):
    """ Stationary distribution of a generator and the symmetry of its edge fluxes

    Attributes:
        w (:obj:`numpy.ndarray`): positive stationary distribution
        m (:obj:`numpy.ndarray`): edge fluxes ``m[i, j] = a[i, j] w[j]``, with zero diagonal
        residual (:obj:`float`): max relative asymmetry of `m`
        stationary_residual (:obj:`float`): max-norm of ``a w``
    """

    def __init__(self, w, m, residual, stationary_residual):
        self.w = w
        self.m = m
        self.residual = residual
        self.stationary_residual = stationary_residual

    @property
    def reversible(self):
        """ :obj:`bool`: :obj:`True` if the fluxes are symmetric within `markov.reversibility_tol` """
        return self.residual <= config['reversibility_tol']


def stationary_distribution(gen):
    """ Unique positive stationary distribution of a generator

    Args:
        gen (:obj:`MarkovGenerator`): generator

    Returns:
        :obj:`numpy.ndarray`: stationary distribution

    Raises:
        :obj:`NoUniqueStationaryError`: if the stationary space isn't one-dimensional or not positive
    """
    kernel = linalg.null_space(gen.a, rcond=1e-12)
    if kernel.shape[1] != 1:
        raise NoUniqueStationaryError(kernel.shape[1])
    w = kernel[:, 0] / np.sum(kernel[:, 0])
    if np.any(w <= config['stationary_tol'] * np.max(np.abs(w))):
        raise NoUniqueStationaryError(1, 'The stationary distribution {} is not positive'.format(w))
    return w


def detailed_balance(gen):
    """ Certify that a chain is reversible

    Args:
        gen (:obj:`MarkovGenerator`): irreducible generator

    Returns:
        :obj:`DetailedBalanceCertificate`: certificate

    Raises:
        :obj:`NoUniqueStationaryError`: if the chain is reducible
        :obj:`ReversibilityError`: if the fluxes aren't symmetric
    """
    w = stationary_distribution(gen)
    stationary_residual = float(np.max(np.abs(gen.a.dot(w))))
    if stationary_residual > config['stationary_tol'] * max(1., np.max(np.abs(gen.a))):
        raise NoUniqueStationaryError(1, 'The null vector has residual {:.3e}'.format(stationary_residual))

    m = gen.a * w[np.newaxis, :]
    np.fill_diagonal(m, 0.)
    scale = np.maximum(m, m.T)
    edges = scale > 0
    residual = float(np.max(np.abs(m - m.T)[edges] / scale[edges])) if np.any(edges) else 0.

    cert = DetailedBalanceCertificate(w, m, residual, stationary_residual)
    if not cert.reversible:
        raise ReversibilityError(cert)
    return cert


def entropic_gs(gen, cert, normalization=None):
    """ Gradient structure of the forward equation generated by the large deviations of the chain

    With ``s = 2`` (``half``) or ``s = 1`` (``unit``),
    ``E(c) = (1/s) sum_i w_i lambda_B(c_i / w_i)`` and
    ``R*(c, xi) = (1/s) sum_{i<j} m_ij sqrt(c_i c_j / (w_i w_j)) C*(s (xi_i - xi_j))``.

    Args:
        gen (:obj:`MarkovGenerator`): generator
        cert (:obj:`DetailedBalanceCertificate`): certificate of `gen`
        normalization (:obj:`str`, optional): ``half`` or ``unit``

    Returns:
        :obj:`GradientSystem`: gradient system on the probability simplex
    """
    scale = _normalization_scale(normalization)
    w = cert.w
    m = cert.m

    def weights(c):
        f = np.asarray(c, dtype=float) / w
        return m * np.sqrt(np.outer(f, f))

    def r_star(c, xi):
        xi = np.asarray(xi, dtype=float)
        forces = scale * (xi[:, np.newaxis] - xi[np.newaxis, :])
        return float(np.sum(weights(c) * cosh_star(forces)) / (2. * scale))

    def d_r_star(c, xi):
        xi = np.asarray(xi, dtype=float)
        forces = scale * (xi[:, np.newaxis] - xi[np.newaxis, :])
        return np.sum(weights(c) * cosh_star_prime(forces), axis=1)

    return GradientSystem(
        dim=gen.size,
        energy=lambda c: float(np.sum(w * boltzmann(np.asarray(c, dtype=float) / w)) / scale),
        d_energy=lambda c: np.log(np.maximum(np.asarray(c, dtype=float), floor) / w) / scale,
        r_star=r_star,
        d_r_star=d_r_star,
        constraint='simplex',
        name='entropic Markov ({})'.format(normalization or config['normalization']))


def h_functional(gen, rho, xi):
    """ ``H(rho, xi) = sum_i rho_i exp(-xi_i) (q exp(xi))_i``

    Args:
        gen (:obj:`MarkovGenerator`): generator
        rho (:obj:`numpy.ndarray`): distribution
        xi (:obj:`numpy.ndarray`): force

    Returns:
        :obj:`float`: value
    """
    rho = np.asarray(rho, dtype=float)
    xi = np.asarray(xi, dtype=float)
    return float(np.sum(rho * np.exp(-xi) * gen.q.dot(np.exp(xi))))


def r_star_via_h(gen, cert, rho, xi, normalization=None):
    """ Dual dissipation ``H(rho, xi + log(f)/2) - H(rho, log(f)/2)`` with ``f = rho / w``

    The value is in the ``half`` normalization; the ``unit`` normalization is ``2 R*_half(rho, xi/2)``.

    Args:
        gen (:obj:`MarkovGenerator`): generator
        cert (:obj:`DetailedBalanceCertificate`): certificate of `gen`
        rho (:obj:`numpy.ndarray`): positive distribution
        xi (:obj:`numpy.ndarray`): force
        normalization (:obj:`str`, optional): ``half`` or ``unit``

    Returns:
        :obj:`float`: dual dissipation
    """
    scale = _normalization_scale(normalization)
    rho = np.asarray(rho, dtype=float)
    xi = np.asarray(xi, dtype=float) * scale / 2.
    tilt = np.log(rho / cert.w) / 2.
    return (h_functional(gen, rho, xi + tilt) - h_functional(gen, rho, tilt)) * 2. / scale


def _check_distribution(c0, size):
    c0 = np.asarray(c0, dtype=float)
    if c0.shape != (size,) or np.any(c0 < 0) or abs(np.sum(c0) - 1.) > 1e-10:
        raise ValueError('The initial distribution must be a probability vector of length {}'.format(size))
    return c0


def forward_solve(gen, c0, T, dt, cert=None, normalization=None):
    """ Solve the forward equation ``dc/dt = a c`` with the propagator ``expm(a dt)``

    Args:
        gen (:obj:`MarkovGenerator`): generator
        c0 (:obj:`numpy.ndarray`): initial distribution
        T (:obj:`float`): duration
        dt (:obj:`float`): time step
        cert (:obj:`DetailedBalanceCertificate`, optional): if given, the entropic energies are recorded
        normalization (:obj:`str`, optional): normalization of the energies

    Returns:
        :obj:`Trajectory`: trajectory
    """
    c = _check_distribution(c0, gen.size)
    n_steps = max(int(round(T / dt)), 1)
    times = np.linspace(0., T, n_steps + 1)
    propagator = linalg.expm(gen.a * (T / n_steps))

    states = np.empty((n_steps + 1, gen.size))
    states[0, :] = c
    for i_step in range(n_steps):
        states[i_step + 1, :] = propagator.dot(states[i_step, :])

    energies = None
    if cert is not None:
        energy = entropic_gs(gen, cert, normalization=normalization).energy
        energies = [energy(np.maximum(state, 0.)) for state in states]
    return Trajectory(times, states, energies)


class EmpiricalTrajectory(object):
    """ Histograms of an ensemble of independent chains on a time grid

    Attributes:
        times (:obj:`numpy.ndarray`): times
        counts (:obj:`numpy.ndarray`): number of particles in each state (columns) at each time (rows)
    """

    def __init__(self, times, counts):
        self.times = times
        self.counts = counts

    @property
    def n_particles(self):
        """ :obj:`int`: number of particles """
        return int(np.sum(self.counts[0, :]))

    @property
    def densities(self):
        """ :obj:`numpy.ndarray`: empirical distributions """
        return self.counts / float(self.n_particles)

    def smoothed(self, window_points, polyorder=2):
        """ Savitzky-Golay smoothing of the empirical distributions in time

        Args:
            window_points (:obj:`int`): odd number of sampled times in each window
            polyorder (:obj:`int`, optional): degree of the local polynomials

        Returns:
            :obj:`numpy.ndarray`: smoothed distributions
        """
        return signal.savgol_filter(self.densities, window_points, polyorder, axis=0, mode='interp')

    def merge(self, other):
        """ Pool the particles of two ensembles on the same time grid

        Args:
            other (:obj:`EmpiricalTrajectory`): ensemble

        Returns:
            :obj:`EmpiricalTrajectory`: pooled ensemble
        """
        return EmpiricalTrajectory(self.times, self.counts + other.counts)


def _simulate_batch(gen, c0, n_particles, times, seed):
    """ Simulate particles jump by jump and histogram their states on the time grid """
    random_state = RandomState(seed=seed)
    size = gen.size
    jump_probs = np.zeros((size, size))
    for i_state, rate in enumerate(gen.exit_rates):
        if rate > 0:
            jump_probs[i_state, :] = gen.q[i_state, :] / rate
            jump_probs[i_state, i_state] = 0.

    state = random_state.categorical(np.tile(c0, (n_particles, 1)))
    time = np.zeros(n_particles)
    diff = np.zeros((times.size + 1, size), dtype=np.int64)
    T = times[-1]

    active = np.arange(n_particles)
    while active.size:
        next_time = time[active] + random_state.holding_times(gen.exit_rates[state[active]])
        start = np.searchsorted(times, time[active], side='left')
        end = np.searchsorted(times, next_time, side='left')
        np.add.at(diff, (start, state[active]), 1)
        np.add.at(diff, (end, state[active]), -1)

        jumping = next_time <= T
        active = active[jumping]
        time[active] = next_time[jumping]
        if active.size:
            state[active] = random_state.categorical(jump_probs[state[active], :])

    return np.cumsum(diff, axis=0)[:-1, :]


def simulate_empirical(gen, c0, n_particles, T, seed, n_points=None, n_batches=1, map_fn=map):
    """ Simulate the empirical process of `n_particles` independent copies of a chain

    Each batch of particles is simulated with its own seed derived from `seed`; the histograms of the
    batches are summed, so the result doesn't depend on `map_fn`.

    Args:
        gen (:obj:`MarkovGenerator`): generator
        c0 (:obj:`numpy.ndarray`): distribution of the initial states
        n_particles (:obj:`int`): number of particles
        T (:obj:`float`): duration
        seed (:obj:`int`): seed
        n_points (:obj:`int`, optional): number of sampled times; default: 1001
        n_batches (:obj:`int`, optional): number of batches
        map_fn (:obj:`callable`, optional): map over the batches, e.g. of an executor

    Returns:
        :obj:`EmpiricalTrajectory`: empirical process
    """
    if n_particles < 1:
        raise ValueError('The number of particles must be positive')
    c0 = _check_distribution(c0, gen.size)
    times = np.linspace(0., T, n_points or 1001)
    n_batches = max(1, min(n_batches, n_particles))
    sizes = [n_particles // n_batches + (1 if i_batch < n_particles % n_batches else 0) for i_batch in range(n_batches)]
    seeds = derive_seeds(seed, n_batches)

    counts = list(map_fn(_simulate_batch, [gen] * n_batches, [c0] * n_batches, sizes, [times] * n_batches, seeds))
    total = EmpiricalTrajectory(times, counts[0])
    for batch in counts[1:]:
        total = total.merge(EmpiricalTrajectory(times, batch))

    log = get_debug_log()
    if log:
        log.debug('Simulated {} particles in {} batches'.format(n_particles, n_batches), sim_time=T)
    return total


def empirical_trajectory_to_csv(emp, path):
    """ Write an empirical process with the columns t, rho_1..rho_I

    Args:
        emp (:obj:`EmpiricalTrajectory`): empirical process
        path (:obj:`str`): path
    """
    size = emp.counts.shape[1]
    header = ['t'] + ['rho_{}'.format(i + 1) for i in range(size)]
    io.write_csv(path, header, ([t] + list(rho) for t, rho in zip(emp.times, emp.densities)))


def three_state_generator(epsilon):
    """ Chain on {1, 2, 3} whose middle state is left at rate ``2 (2 + epsilon) / epsilon``

    Its stationary distribution is ``(1, epsilon, 1) / (2 + epsilon)``.

    Args:
        epsilon (:obj:`float`): scale in (0, 1]

    Returns:
        :obj:`MarkovGenerator`: generator
    """
    if not 0 < epsilon <= 1:
        raise ValueError('epsilon must be in (0, 1]')
    return MarkovGenerator((2. + epsilon) * np.array([
        [-1., 1. / epsilon, 0.],
        [1., -2. / epsilon, 1.],
        [0., 1. / epsilon, -1.],
    ]))


def two_state_generator(k_01, k_10):
    """ Chain on {0, 1} with jump rates `k_01` from 0 to 1 and `k_10` from 1 to 0 """
    return MarkovGenerator([[-k_01, k_10], [k_01, -k_10]])


def random_reversible_generator(size, seed):
    """ Random reversible generator with all edges present

    Args:
        size (:obj:`int`): number of states
        seed (:obj:`int`): seed

    Returns:
        :obj:`MarkovGenerator`: generator
    """
    random_state = RandomState(seed=seed)
    w = random_state.uniform(0.2, 1., size=size)
    w /= np.sum(w)
    m = random_state.uniform(0.1, 1., size=(size, size))
    m = (m + m.T) / 2.
    a = m / w[np.newaxis, :]
    np.fill_diagonal(a, 0.)
    np.fill_diagonal(a, -np.sum(a, axis=0))
    return MarkovGenerator(a)
