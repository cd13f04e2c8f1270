import pytest

from setmetric import ElementRegistry, EuclideanMetric


@pytest.fixture
def line_registry():
    """Points 0..9 on the real line; the id doubles as the coordinate."""
    return ElementRegistry({i: float(i) for i in range(10)})


@pytest.fixture
def euclid():
    return EuclideanMetric()
