import math

import pytest

from bcsjj import JunctionParams, PlateParams, solve_ness


@pytest.fixture(scope="session")
def plate():
    return PlateParams(epsilon=0.25, beta=4.0)


@pytest.fixture(scope="session")
def symmetric_junction(plate):
    return JunctionParams(
        plate_i=plate, plate_ii=plate, gamma=0.5, phi_i=0.0, phi_ii=math.pi / 2
    )


@pytest.fixture(scope="session")
def symmetric_state(symmetric_junction):
    return solve_ness(symmetric_junction)


@pytest.fixture(scope="session")
def asymmetric_junction():
    return JunctionParams(
        plate_i=PlateParams(epsilon=0.25, beta=4.0),
        plate_ii=PlateParams(epsilon=0.3, beta=6.0),
        gamma=0.5,
        phi_i=0.0,
        phi_ii=math.pi / 2,
    )


@pytest.fixture(scope="session")
def asymmetric_state(asymmetric_junction):
    return solve_ness(asymmetric_junction)
