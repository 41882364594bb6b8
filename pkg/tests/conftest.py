import pytest

from koenigs.models import make_model


@pytest.fixture(scope="session")
def trig_model():
    return make_model("trig", 0.5, 0.7)


@pytest.fixture(scope="session")
def h0_model():
    return make_model("h0", 0.8, 1.1)


@pytest.fixture(scope="session")
def hplus_model():
    return make_model("hplus", 2.0, 8.0)


@pytest.fixture(scope="session")
def affine_model():
    return make_model("affine", 1.2, 0.9)
