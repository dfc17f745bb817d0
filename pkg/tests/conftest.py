from fractions import Fraction

import pytest

import moranmaps as mm

WORKED_PAIRS = (((0, 0), (0,)), ((0, 1), (1, 0)), ((1,), (1, 1)))


@pytest.fixture(scope="session")
def cantor():
    return mm.cantor_schedule()


@pytest.fixture(scope="session")
def ends():
    return mm.LayoutRule()


@pytest.fixture(scope="session")
def worked_map(cantor, ends):
    """The three-piece section pairing on the middle-thirds set (E = F)."""
    return mm.SectionPairingMap(WORKED_PAIRS, cantor, ends, cantor, ends)


@pytest.fixture(scope="session")
def worked_ctx(worked_map):
    return mm.build_context(worked_map)


@pytest.fixture(scope="session")
def identity_ctx(cantor, ends):
    return mm.build_context(mm.identity_map(cantor, ends))


def frac(text):
    return Fraction(text)
