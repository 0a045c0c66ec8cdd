import numpy as np
import pytest

from pvloops import ClosedCurve, realize


def circle(n=64, r=1.0, cw=False):
    sign = -1.0 if cw else 1.0
    return ClosedCurve.from_function(lambda t: np.c_[r * np.cos(t), sign * r * np.sin(t)], n)


def ellipse(n=64, a=2.0, b=1.0):
    return ClosedCurve.from_function(lambda t: np.c_[a * np.cos(t), b * np.sin(t)], n)


@pytest.fixture
def unit_circle():
    return circle()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def canonical_circle_pvl():
    # omega = 2, marks (0, pi), equal circulations
    return realize(circle(64), [1.0, 1.0], [1.0, 1.0])
