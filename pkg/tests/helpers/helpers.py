import numpy as np
import pytest
from hypothesis import strategies as st

from slackbridge._validate import random_profile, random_test_function


class CodeCollector(object):
    def __init__(self, name="code"):

        self.name = name
        self.collected = []

    def __call__(self, f):

        self.collected.append(f)
        return f

    def __iter__(self):

        return iter(self.collected)

    def parametrize(self, test_func):

        return pytest.mark.parametrize(self.name, self)(test_func)


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def profile(seed, n=64, a=0.0, b=1.0, roughness=0.05):
    """Smooth random profile with some grid noise."""

    return random_profile(np.random.default_rng(seed), n, a, b, roughness)


def vanishing_profile(seed, n=64, a=0.0, b=1.0):
    """Random profile vanishing at both ends."""

    return random_test_function(np.random.default_rng(seed), n, a, b)
