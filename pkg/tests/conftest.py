import random

import pytest

from kernels.presets import get_curve, get_field


@pytest.fixture
def rng():
    return random.Random(2024)


@pytest.fixture
def f17():
    return get_field("f17")


@pytest.fixture
def fr377():
    return get_field("bls12-377-fr")


@pytest.fixture
def fq377():
    return get_field("bls12-377-fq")


@pytest.fixture
def toy():
    return get_curve("toy")


@pytest.fixture
def bls377():
    return get_curve("bls12-377-g1")


@pytest.fixture(params=["native", "limb"])
def backend(request):
    return request.param
