import itertools
import random
from fractions import Fraction
from math import gcd

import pytest

from conftest import make_config
from tgkz.cones import (
    Arrangement,
    AffinePiece,
    PointConfig,
    check_hypotheses,
    cone_triangulation,
    epsilon_vector,
    face_by_columns,
    face_lattice,
    facets,
    homogenizing_functional,
    is_pointed,
    membership_in_arrangement,
    normalized_volume,
    positive_grading,
)
from tgkz.errors import NotPointedError
from tgkz.lattice import Functional, IntMatrix


def test_facets_of_plane_segment(plane_segment):
    taus = facets(plane_segment)
    assert sorted(t.free_part for t in taus) == [(0, 1), (2, -1)]


def test_facets_of_line(split_line):
    taus = facets(split_line)
    assert [t.free_part for t in taus] == [(1,)]


def test_volume_examples(split_line, mod4_line, plane_segment):
    assert normalized_volume(split_line) == 1
    assert normalized_volume(mod4_line) == 2
    assert normalized_volume(plane_segment) == 2


def test_volume_translation_of_column_multiset_invariance():
    # repeated columns do not change the underlying polytope
    a = make_config([], [((), (1, 0)), ((), (1, 2))])
    b = make_config([], [((), (1, 0)), ((), (1, 0)), ((), (1, 2))])
    assert normalized_volume(a) == normalized_volume(b) == 2


def test_volume_unimodular_invariance():
    rng = random.Random(5)
    base = [(1, 0), (1, 1), (1, 3)]
    vol = normalized_volume(make_config([], [((), v) for v in base]))
    for _ in range(20):
        # random unimodular map: shear compositions
        m = [[1, 0], [0, 1]]
        for _ in range(4):
            k = rng.randint(-2, 2)
            if rng.random() < 0.5:
                m = [[m[0][0] + k * m[1][0], m[0][1] + k * m[1][1]], m[1]]
            else:
                m = [m[0], [m[1][0] + k * m[0][0], m[1][1] + k * m[0][1]]]
        mapped = [tuple(m[i][0] * v[0] + m[i][1] * v[1] for i in range(2))
                  for v in base]
        cfg = make_config([], [((), v) for v in mapped])
        if is_pointed(cfg):
            assert normalized_volume(cfg) == vol


def test_volume_determinant_oracle_simplices():
    # conv(0, c1..cd) is a simplex of normalized volume |det(c1..cd)|
    rng = random.Random(17)
    checked = 0
    while checked < 40:
        d = rng.randint(1, 3)
        cols = [tuple(rng.randint(0, 3) for _ in range(d))
                for _ in range(d)]
        det = abs(IntMatrix.from_rows(cols).det())
        if not det:
            continue
        cfg = make_config([], [((), c) for c in cols])
        assert normalized_volume(cfg) == det
        checked += 1


def _brute_force_facets(cfg):
    """All primitive tau with entries in [-12, 12], tau >= 0 on the columns,
    vanishing on a rank d-1 subset, nonvanishing somewhere."""
    d = cfg.d
    found = set()
    cols = [c.free for c in cfg.columns]
    from tgkz.fieldlin import rank as frank
    for tau in itertools.product(range(-12, 13), repeat=d):
        if all(x == 0 for x in tau):
            continue
        g = 0
        for x in tau:
            g = gcd(g, x)
        if g != 1:
            continue
        vals = [sum(t * c for t, c in zip(tau, col)) for col in cols]
        if any(v < 0 for v in vals):
            continue
        zero = [cols[j] for j, v in enumerate(vals) if v == 0]
        rows = [[Fraction(x) for x in z] for z in zero]
        if frank(rows) == d - 1:
            found.add(tau)
    return found


def test_facets_brute_force_low_dim():
    rng = random.Random(23)
    checked = 0
    while checked < 12:
        d = rng.randint(1, 3)
        n = rng.randint(d, d + 2)
        cols = [tuple(rng.randint(0, 3) for _ in range(d)) for _ in range(n)]
        if all(all(x == 0 for x in c) for c in cols):
            continue
        cfg = make_config([], [((), c) for c in cols])
        if not is_pointed(cfg):
            continue
        hyp = check_hypotheses(cfg)
        if not hyp.spans:
            continue
        mine = {t.free_part for t in facets(cfg)}
        mine_int = {tuple(int(x) for x in t) for t in mine}
        assert mine_int == _brute_force_facets(cfg)
        checked += 1


def test_is_pointed():
    assert is_pointed(make_config([], [((), (1, 0)), ((), (0, 1))]))
    assert not is_pointed(make_config([], [((), (1,)), ((), (-1,))]))
    assert not is_pointed(make_config([], [((), (1, 0)), ((), (-1, 0)),
                                           ((), (0, 1))]))


def test_cone_triangulation_covers(plane_segment):
    simplices, rk = cone_triangulation(plane_segment)
    assert rk == 2
    assert sorted(tuple(v) for s in simplices for v in s) == \
        [(1, 0), (1, 1), (1, 1), (1, 2)]


def test_face_lattice_of_plane_segment(plane_segment):
    faces = face_lattice(plane_segment)
    dims = sorted(f.dim for f in faces)
    assert dims == [0, 1, 1, 2]
    vertex = [f for f in faces if f.dim == 0][0]
    assert vertex.column_indices == ()
    rays = [f for f in faces if f.dim == 1]
    assert sorted(f.column_indices for f in rays) == [(0,), (2,)]
    assert face_by_columns(plane_segment, (0,)) is not None
    assert face_by_columns(plane_segment, (1,)) is None


def test_face_lattice_requires_pointed():
    cfg = make_config([], [((), (1,)), ((), (-1,))])
    with pytest.raises(NotPointedError):
        face_lattice(cfg)


def test_hypotheses_on_battery(battery):
    for cfg in battery:
        rep = check_hypotheses(cfg)
        assert rep.ok, cfg
    assert check_hypotheses(battery[1]).delta == 1
    assert check_hypotheses(battery[1]).ell == 4


def test_hypotheses_failure_modes():
    not_spanning = make_config([], [((), (2,))])
    rep = check_hypotheses(not_spanning)
    assert not rep.spans and not rep.ok

    not_pointed = make_config([], [((), (1,)), ((), (-1,))])
    assert not check_hypotheses(not_pointed).pointed


def test_positive_grading_and_epsilon(plane_segment, split_line):
    h = positive_grading(plane_segment)
    assert all(h(c) >= 1 for c in plane_segment.columns)
    assert epsilon_vector(plane_segment) == (3, 3)
    assert epsilon_vector(split_line) == (1,)


def test_homogenizing_functional(plane_segment, split_line, mod4_line):
    h = homogenizing_functional(plane_segment)
    assert h is not None
    assert all(h(c) == 1 for c in plane_segment.columns)
    assert homogenizing_functional(split_line).free_part == (Fraction(1),)
    assert homogenizing_functional(mod4_line) is None


def test_membership_in_arrangement():
    arr = Arrangement(2, (AffinePiece((Fraction(0), Fraction(0)),
                                      ((1, 2),), (0,)),))
    one = Fraction(1)
    assert membership_in_arrangement((one, 2 * one), arr)
    assert not membership_in_arrangement((one, one), arr)


def test_face_lattice_closed_under_intersection(battery):
    for config in battery:
        faces = face_lattice(config)
        colsets = {f.column_indices for f in faces}
        dims = sorted(f.dim for f in faces)
        assert dims[0] == 0 and dims[-1] == config.group.free_rank
        for f, g in itertools.combinations_with_replacement(faces, 2):
            meet = tuple(sorted(set(f.column_indices) & set(g.column_indices)))
            assert meet in colsets
