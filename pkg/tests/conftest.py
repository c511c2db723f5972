import pytest
from hypothesis import HealthCheck, settings

import oracle as O

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def as_oracle(L):
    """The same lattice as an oracle.Lat, rebuilt from covers only."""
    return O.Lat(L.elements, L.covers())


def parts(theta):
    return frozenset(frozenset(b) for b in theta.blocks)


@pytest.fixture
def n5():
    from princ import named_lattice
    return named_lattice("N5")
