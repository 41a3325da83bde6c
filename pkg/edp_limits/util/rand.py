""" Random number generation for the Monte Carlo experiments

:Author: Karr Lab <info@karrlab.org>
:Date: 2026-10-19
:Copyright: 2026, Karr Lab
:License: MIT
"""

import edp_limits
import numpy as np


class RandomStateManager(object):
    """ Manager for a configured singleton of :obj:`RandomState` """

    _random_state = None
    #:obj:`RandomState`: singleton random state

    @classmethod
    def initialize(cls, seed=None):
        """ Construct the singleton random state, if it doesn't already exist, and seed it

        Args:
            seed (:obj:`int`, optional): seed; if :obj:`None`, the seed is read from the
                `edp_limits.random.seed` configuration
        """
        if seed is None:
            seed = edp_limits.config.get_config()['edp_limits']['random']['seed']
        if not cls._random_state:
            cls._random_state = RandomState(seed=seed)
        cls._random_state.seed(seed)

    @classmethod
    def instance(cls):
        """ Get the singleton random state

        Returns:
            :obj:`RandomState`: random state
        """
        if not cls._random_state:
            cls.initialize()
        return cls._random_state


class RandomState(np.random.RandomState):
    """ Random state with the samplers of continuous-time Markov chains """

    def holding_times(self, rates):
        """ Sample exponential holding times

        Args:
            rates (:obj:`numpy.ndarray`): nonnegative exit rates

        Returns:
            :obj:`numpy.ndarray`: holding times; infinite where the rate is 0
        """
        rates = np.asarray(rates, dtype=float)
        times = np.full(rates.shape, np.inf)
        active = rates > 0
        times[active] = self.exponential(1. / rates[active])
        return times

    def categorical(self, weights):
        """ Sample indices with probabilities proportional to the rows of `weights`

        Args:
            weights (:obj:`numpy.ndarray`): nonnegative weights, one row per sample

        Returns:
            :obj:`numpy.ndarray`: sampled column index of each row
        """
        weights = np.atleast_2d(np.asarray(weights, dtype=float))
        cumulative = np.cumsum(weights, axis=1)
        thresholds = self.random_sample(weights.shape[0]) * cumulative[:, -1]
        indices = (cumulative <= thresholds[:, np.newaxis]).sum(axis=1)
        return np.minimum(indices, weights.shape[1] - 1)


def derive_seeds(seed, n):
    """ Derive independent seeds for parallel workers

    The seeds depend only on `seed` and `n`, so results don't depend on how work is scheduled.

    Args:
        seed (:obj:`int`): parent seed
        n (:obj:`int`): number of seeds

    Returns:
        :obj:`list` of :obj:`int`: seeds
    """
    children = np.random.SeedSequence(seed).spawn(n)
    return [int(child.generate_state(1)[0]) for child in children]
