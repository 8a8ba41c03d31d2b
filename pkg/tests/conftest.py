import pytest

from switchlab import (SIGMA_STAR, enumerate_promise_sets, gate_set_G,
                       hadamard_m4)


@pytest.fixture(scope="session")
def m4():
    return hadamard_m4()


@pytest.fixture(scope="session")
def sigma_star():
    return SIGMA_STAR


@pytest.fixture(scope="session")
def gate_map():
    return {g.name: g for g in gate_set_G()}


@pytest.fixture(scope="session")
def promise_sets(m4):
    """The full enumeration over the ten-gate library, shared by many tests."""
    census, sets = enumerate_promise_sets(gate_set_G(), SIGMA_STAR, m4)
    return census, sets
