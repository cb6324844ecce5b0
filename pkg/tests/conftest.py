import random

import pytest

from torcrep.fans import make_cone, make_fan, validate_fan
from torcrep.groups import close_group
from torcrep.lattice import LatticePoint
from torcrep.resolve import resolve


@pytest.fixture(scope="session")
def z6():
    return close_group([LatticePoint((1, 2, 3), 6)])


@pytest.fixture(scope="session")
def z5():
    return close_group([LatticePoint((1, 2, 2), 5)])


@pytest.fixture(scope="session")
def z7():
    return close_group([LatticePoint((1, 1, 2, 3), 7)])


@pytest.fixture(scope="session")
def z2():
    return close_group([LatticePoint((1, 1, 1, 1), 2)])


@pytest.fixture(scope="session")
def trivial3():
    return close_group([], n=3)


@pytest.fixture(scope="session")
def z6_result(z6):
    return resolve(z6, list(z6.juniors))


@pytest.fixture(scope="session")
def z6_result_alt(z6):
    g1, g2, g3, g4 = z6.juniors
    return resolve(z6, [g4, g3, g1, g2])


@pytest.fixture(scope="session")
def z5_result(z5):
    return resolve(z5, list(z5.juniors))


@pytest.fixture(scope="session")
def z7_hilbert_result(z7):
    seq = [
        LatticePoint(c, 7)
        for c in [(1, 1, 2, 3), (3, 3, 6, 2), (4, 4, 1, 5), (5, 5, 3, 1)]
    ]
    return resolve(z7, seq)


@pytest.fixture(scope="session")
def z6_nonstar_fan(z6):
    """Hand-entered crepant model of the order-6 example.

    This triangulation has the edge g3-g4 instead of e1-g1 and cannot be
    produced by any star-subdivision sequence at the four junior points.
    """
    p = {
        "e1": LatticePoint((6, 0, 0), 6),
        "e2": LatticePoint((0, 6, 0), 6),
        "e3": LatticePoint((0, 0, 6), 6),
        "g1": LatticePoint((1, 2, 3), 6),
        "g2": LatticePoint((2, 4, 0), 6),
        "g3": LatticePoint((3, 0, 3), 6),
        "g4": LatticePoint((4, 2, 0), 6),
    }
    triangles = [
        ("e3", "g1", "g3"),
        ("g3", "g1", "g4"),
        ("e1", "g3", "g4"),
        ("g4", "g1", "g2"),
        ("g2", "g1", "e2"),
        ("e2", "g1", "e3"),
    ]
    fan = make_fan(
        z6.lattice, [make_cone([p[a] for a in tri]) for tri in triangles]
    )
    validate_fan(fan)
    return fan


@pytest.fixture()
def rng():
    return random.Random(20240811)


def random_cyclic_group(rng, n, rmax=12):
    r = rng.randrange(1, rmax + 1)
    coords = [rng.randrange(r) for _ in range(n - 1)]
    coords.append((-sum(coords)) % r)
    return close_group([LatticePoint(tuple(coords), r)], n)
