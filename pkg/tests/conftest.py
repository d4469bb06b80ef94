import pytest

from wreathdc.cayley import enumerate_ball
from wreathdc.presets import example15, lamplighter, five_generators


@pytest.fixture(scope="session")
def lamp():
    return lamplighter()


@pytest.fixture(scope="session")
def lamp_ball12(lamp):
    return enumerate_ball(lamp, 12)


@pytest.fixture(scope="session")
def c3_ball11():
    return enumerate_ball(lamplighter(3), 11)


@pytest.fixture(scope="session")
def s5():
    return five_generators()


@pytest.fixture(scope="session")
def ex15():
    return example15()
