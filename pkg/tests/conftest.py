"""Shared fixtures: working precision, seeded random geodesics in A and sigma elements."""

from fractions import Fraction

import numpy as np
import pytest

from farey_flow.arith.precision import precision
from farey_flow.config import settings
from farey_flow.services.continued_fraction import CFExpansion, evaluate
from farey_flow.services.hyperbolic import Geodesic
from farey_flow.services.section import DigitTail, SigmaElement

MAX_DIGIT = 9
MAX_PERIOD = 6


@pytest.fixture(autouse=True)
def working_precision():
    with precision(settings.PRECISION):
        yield


def random_digits(rng, low, high):
    return tuple(int(d) for d in rng.integers(1, MAX_DIGIT + 1, size=int(rng.integers(low, high))))


def random_surd_above_one(rng):
    """[a0; preperiod | (period)] with a0 >= 1, digits <= 9 and period <= 6."""
    cf = CFExpansion(
        int(rng.integers(1, MAX_DIGIT + 1)),
        random_digits(rng, 0, 4),
        random_digits(rng, 1, MAX_PERIOD + 1),
    )
    return evaluate(cf)


def random_geodesic_in_A(rng, irrational_past=True):
    """Opposite-sign feet with |future| > 1 and 0 < |past| < 1."""
    future = random_surd_above_one(rng)
    if irrational_past:
        past = 1 / random_surd_above_one(rng)
    else:
        q = int(rng.integers(2, 200))
        past = Fraction(int(rng.integers(1, q)), q)
    if rng.random() < 0.5:
        return Geodesic(-past, future)
    return Geodesic(past, -future)


def random_sigma_element(rng):
    """Both tails eventually periodic, digits <= 9 and periods <= 6."""
    past = DigitTail(random_digits(rng, 0, 4), random_digits(rng, 1, MAX_PERIOD + 1))
    future = DigitTail(random_digits(rng, 0, 4), random_digits(rng, 1, MAX_PERIOD + 1))
    return SigmaElement(past, future, int(rng.integers(0, 2)))


@pytest.fixture
def rng():
    return np.random.default_rng(settings.SEED)


@pytest.fixture
def random_geodesics(rng):
    def build(count, irrational_past=True):
        return [random_geodesic_in_A(rng, irrational_past) for _ in range(count)]

    return build


@pytest.fixture
def random_sigma_elements(rng):
    def build(count):
        return [random_sigma_element(rng) for _ in range(count)]

    return build
