import pytest

from tgkz.cones import PointConfig
from tgkz.lattice import AbelianGroup


def make_config(orders, cols):
    """cols: list of (torsion tuple, free tuple)."""
    group = AbelianGroup(tuple(orders), len(cols[0][1]))
    return PointConfig(group, tuple(group.element(t, f) for t, f in cols))


@pytest.fixture
def split_line():
    # Z/2 + Z with the single column (1 mod 2, 1)
    return make_config([2], [((1,), (1,))])


@pytest.fixture
def mod4_line():
    # Z/4 + Z with columns (1 mod 4, 1) and (1 mod 4, 2)
    return make_config([4], [((1,), (1,)), ((1,), (2,))])


@pytest.fixture
def plane_segment():
    # torsion-free: columns (1,0), (1,1), (1,2)
    return make_config([], [((), (1, 0)), ((), (1, 1)), ((), (1, 2))])


@pytest.fixture
def even_pair():
    # torsion-free: columns (1,0), (1,2); K-interior needs both box layers
    return make_config([], [((), (1, 0)), ((), (1, 2))])


@pytest.fixture
def battery(split_line, mod4_line, plane_segment):
    """Configs satisfying all standing hypotheses (even_pair does not span)."""
    return [split_line, mod4_line, plane_segment]
