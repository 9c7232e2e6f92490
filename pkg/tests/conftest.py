import numpy as np
import pytest

from btensor import Tensor, load_example


@pytest.fixture(scope="session")
def ex41():
    return load_example("ex41")


@pytest.fixture(scope="session")
def ex42():
    return load_example("ex42")


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def make_diagonal(order, dim, values=1.0):
    return Tensor.diagonal_tensor(order, dim, values)
