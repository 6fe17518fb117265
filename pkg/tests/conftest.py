from fractions import Fraction

import pytest

from helpers import rational_point
from qduality.fields import sample_parameter_point


@pytest.fixture(params=["rational", "fp61"])
def field_name(request):
    return request.param


@pytest.fixture
def point3(field_name):
    return sample_parameter_point(3, 8, 2024, field_name)


@pytest.fixture
def hand_point():
    """q = 1/2, x = (2, 3): the point used for the hand-checked boundary cases."""
    return rational_point(Fraction(1, 2), 2, 3)
