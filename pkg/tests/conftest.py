import pytest

import support


@pytest.fixture(scope="session")
def small_random_pool():
    return support.random_pool(60)


@pytest.fixture(scope="session")
def nested_instances():
    return support.nested_pool()


@pytest.fixture(scope="session")
def mixed_instances():
    return support.mixed_pool()


@pytest.fixture(scope="session")
def separated_instances():
    return support.separated_grid()


@pytest.fixture(scope="session")
def recharge_instances():
    return support.recharge_pool()
