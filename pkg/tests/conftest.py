import pytest
from hypothesis import HealthCheck, settings

from corings.fixtures import dual_number_data, group_c2_data, upper_triangular
from corings.frobenius import gamma_from_pi, make_reduced_system, sweedler_frobenius_system

# exact arithmetic is slow-ish and timing varies; examples stay deterministic
settings.register_profile("default", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def dual_data():
    return dual_number_data()


@pytest.fixture(scope="session")
def c2_data():
    return group_c2_data()


@pytest.fixture(scope="session")
def t2():
    return upper_triangular()


@pytest.fixture(scope="session")
def dual_system(dual_data):
    """Frobenius system (pi, e) on the Sweedler coring of Q -> Q[x]/(x^2)."""
    return sweedler_frobenius_system(dual_data)


@pytest.fixture(scope="session")
def c2_system(c2_data):
    return sweedler_frobenius_system(c2_data)


@pytest.fixture(scope="session")
def dual_reduced(dual_system):
    C = dual_system.coring
    return make_reduced_system(C, gamma_from_pi(C, dual_system.pi), dual_system.e)


@pytest.fixture(scope="session")
def c2_reduced(c2_system):
    C = c2_system.coring
    return make_reduced_system(C, gamma_from_pi(C, c2_system.pi), c2_system.e)
