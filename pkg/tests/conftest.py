import random

import pytest

from sumrank import Curve, Field, construct_code_at_split, weight_distribution
from sumrank.upoly import parse_poly


@pytest.fixture(scope="session")
def f7():
    return Field(7)


@pytest.fixture(scope="session")
def curve7(f7):
    return Curve(f7, parse_poly(f7, "x^3+3"))


@pytest.fixture(scope="session")
def example2_code(curve7, f7):
    places = [p for p in curve7.finite_base_places() if p.x0 != f7.element(1)]
    return construct_code_at_split(curve7, 6, 3, 1, places)


@pytest.fixture(scope="session")
def example2_distribution(example2_code):
    return weight_distribution(example2_code)


@pytest.fixture()
def rng():
    return random.Random(12345)
