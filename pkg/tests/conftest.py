import pytest

from glattice import (
    DivisionRing,
    SemilinearMap,
    SemilinearProjectiveRep,
    VectorSpace,
    cyclic_group,
)
from glattice.linalg import identity_map


@pytest.fixture(scope="session")
def gf2():
    return DivisionRing.gf(2)


@pytest.fixture(scope="session")
def gf3():
    return DivisionRing.gf(3)


@pytest.fixture(scope="session")
def gf4():
    return DivisionRing.gf(2, 2)


@pytest.fixture(scope="session")
def gf5():
    return DivisionRing.gf(5)


@pytest.fixture(scope="session")
def rationals():
    return DivisionRing.rationals()


@pytest.fixture(scope="session")
def quaternions():
    return DivisionRing.quaternions()


def shift_rep(ring):
    """The cyclic-shift representation of C3 on K^3: a(x,y,z) = (z,x,y)."""
    group = cyclic_group(3)
    space = VectorSpace(ring, 3)
    one, zero = ring.one(), ring.zero()
    shift = ((zero, zero, one), (one, zero, zero), (zero, one, zero))
    m = SemilinearMap(space, shift)
    return SemilinearProjectiveRep(
        group, space, {0: identity_map(space), 1: m, 2: m.compose(m)}
    )


@pytest.fixture(scope="session")
def shift_rep_gf2(gf2):
    return shift_rep(gf2)


@pytest.fixture(scope="session")
def shift_rep_gf3(gf3):
    return shift_rep(gf3)


@pytest.fixture(scope="session")
def shift_rep_q(rationals):
    return shift_rep(rationals)
