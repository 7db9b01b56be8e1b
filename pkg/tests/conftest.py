import numpy as np
import pytest

from convexip import ball, point, polytope_from_points


@pytest.fixture
def unit_square():
    return polytope_from_points([[0, 0], [1, 0], [1, 1], [0, 1]])


@pytest.fixture
def centered_square():
    return polytope_from_points([[-1, -1], [1, -1], [1, 1], [-1, 1]])


@pytest.fixture
def right_triangle():
    return polytope_from_points([[0, 0], [1, 0], [0, 1]])


@pytest.fixture
def unit_ball():
    return ball([0, 0], 1.0)


@pytest.fixture
def origin():
    return point([0, 0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)
