import pytest

from conftest import make_config
from tgkz import cones
from tgkz.binomials import (
    PartialCharacter,
    classify_graded_binomial_prime,
    extend_character,
    face_twisted_ideal,
    free_kernel_rows,
    full_kernel_rows,
    markov_basis,
    minimal_primes,
    power_ideal,
    toric_ideal_free,
    toric_ideal_full,
    twist_automorphism,
    twisted_ideal,
)
from tgkz.cyclotomic import Cyclotomic
from tgkz.errors import LatticeMismatchError, NotSaturatedError
from tgkz.poly import (
    groebner_ideal,
    ideal_equal,
    intersect_many,
    parse_polynomial,
    polynomial_to_text,
)


def texts(ideal):
    return [polynomial_to_text(p) for p in ideal.generators]


def test_toric_ideal_free_line(mod4_line):
    assert texts(toric_ideal_free(mod4_line)) == ["d1^2 - d2"]


def test_toric_ideal_full_mod4(mod4_line):
    assert texts(toric_ideal_full(mod4_line)) == ["d1^8 - d2^4"]


def test_power_ideal_mod4(mod4_line):
    assert texts(power_ideal(mod4_line)) == ["d1^8 - d2^4"]


def test_toric_ideals_plane(plane_segment):
    free = toric_ideal_free(plane_segment)
    expect = groebner_ideal(
        [parse_polynomial("d1*d3 - d2^2", 3)], nvars=3)
    assert ideal_equal(free, expect)


def test_markov_basis_simple(mod4_line):
    assert markov_basis(mod4_line) == [(2, -1)]


def test_twisted_ideal_values(mod4_line):
    rows = free_kernel_rows(mod4_line)
    assert rows == [(2, -1)]
    i = Cyclotomic.zeta(4)
    rho = PartialCharacter.on_rows(rows, (i,), 2)
    tw = twisted_ideal(mod4_line, rho)
    assert texts(tw) == ["d1^2 - zeta(4)*d2"]
    minus = PartialCharacter.on_rows(rows, (Cyclotomic.rational(-1),), 2)
    assert texts(twisted_ideal(mod4_line, minus)) == ["d1^2 + d2"]


def test_twisted_ideal_lattice_mismatch(mod4_line):
    rho = PartialCharacter.on_rows([(1, 0)], (Cyclotomic.rational(-1),), 2)
    with pytest.raises(LatticeMismatchError):
        twisted_ideal(mod4_line, rho)


def test_character_value_membership():
    i = Cyclotomic.zeta(4)
    rho = PartialCharacter.on_rows([(2, -1)], (i,), 2)
    assert rho.value_of((4, -2)) == i * i
    assert rho.contains((4, -2))
    assert not rho.contains((1, 0))
    with pytest.raises(LatticeMismatchError):
        rho.value_of((1, 0))


def test_extend_character_saturation_gate():
    # lattice 2Z inside Z is not saturated: refuse
    rho = PartialCharacter.on_rows([(2,)], (Cyclotomic.rational(-1),), 1)
    with pytest.raises(NotSaturatedError):
        extend_character(rho)


def test_extend_character_full_lattice():
    i = Cyclotomic.zeta(4)
    rho = PartialCharacter.on_rows([(2, -1)], (i,), 2)
    full = extend_character(rho)
    assert full.nvars == 2
    assert len(full.basis) == 2
    # extension restricts back to rho on its lattice
    assert full.value_of((2, -1)) == i
    # values stay in the same cyclotomic field
    assert all(v.order in (1, 2, 4) for v in full.values)


def test_minimal_primes_mod4(mod4_line):
    primes = minimal_primes(mod4_line)
    assert len(primes) == 4
    gen_texts = sorted(texts(ideal)[0] for _, ideal in primes)
    assert gen_texts == ["d1^2 + d2", "d1^2 + zeta(4)*d2",
                         "d1^2 - d2", "d1^2 - zeta(4)*d2"]
    inter = intersect_many([ideal for _, ideal in primes])
    assert ideal_equal(inter, toric_ideal_full(mod4_line))


def test_minimal_primes_workers_agree(mod4_line):
    seq = minimal_primes(mod4_line)
    par = minimal_primes(mod4_line, workers=4)
    assert [texts(i) for _, i in seq] == [texts(i) for _, i in par]


def test_minimal_primes_torsion_free(plane_segment):
    primes = minimal_primes(plane_segment)
    assert len(primes) == 1
    assert ideal_equal(primes[0][1], toric_ideal_free(plane_segment))


def test_face_twisted_ideal_vertex(mod4_line):
    vertex = cones.Face((), (), 0)
    triv = PartialCharacter.trivial_on([], 2)
    ideal = face_twisted_ideal(mod4_line, vertex, triv)
    assert sorted(texts(ideal)) == ["d1", "d2"]


def test_twist_automorphism_carries_twisted_to_untwisted(mod4_line):
    rows = free_kernel_rows(mod4_line)
    i = Cyclotomic.zeta(4)
    rho = PartialCharacter.on_rows(rows, (i,), 2)
    full = extend_character(rho)
    tw = twisted_ideal(mod4_line, rho)
    moved = groebner_ideal([twist_automorphism(p, full)
                            for p in tw.generators], nvars=2)
    assert ideal_equal(moved, groebner_ideal(
        [parse_polynomial("d1^2 - d2", 2)], nvars=2))


def test_classify_round_trip(mod4_line):
    for rho, ideal in minimal_primes(mod4_line):
        out = classify_graded_binomial_prime(ideal, mod4_line)
        assert out is not None
        face, rho2 = out
        assert face.column_indices == (0, 1)
        assert rho2.value_of((2, -1)) == rho.value_of((2, -1))


def test_classify_rejects_ungraded(mod4_line):
    bad = groebner_ideal([parse_polynomial("d1 - d2", 2)], nvars=2)
    assert classify_graded_binomial_prime(bad, mod4_line) is None


def test_classify_rejects_unit_ideal(mod4_line):
    unit = groebner_ideal([parse_polynomial("1", 2)], nvars=2)
    assert classify_graded_binomial_prime(unit, mod4_line) is None
