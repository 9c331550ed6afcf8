import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from gsfock import multilinear as ml
from gsfock.exceptions import ConstructionError, InputError
from gsfock.statistics_ops import BraidOperator, CrossOperator
from gsfock.statistics_zoo import (
    AbelianGroup,
    Grading,
    family_boltzmann,
    family_boson,
    family_color,
    family_fermion,
    family_quon,
    parity_bicharacter,
)
from gsfock.wick_ops import (
    CrossSymmetryLadder,
    annihilation_matrix,
    annihilation_word,
    build_quotient_representation,
    build_representation,
    creation_matrix,
    number_operator_spectrum,
    verify_adjointness,
    verify_brel,
    verify_crel,
    verify_representation_theorem,
)


def mixed_color(N_odd=1, N_even=1):
    G = AbelianGroup((2,))
    degrees = ((0,),) * N_even + ((1,),) * N_odd
    return family_color(G, parity_bicharacter(G), Grading(degrees))


PRESETS = {
    "boltzmann": family_boltzmann(2),
    "boson": family_boson(2),
    "fermion": family_fermion(2),
    "quon": family_quon(2, 0.5),
    "color": mixed_color(),
}


def test_creation_N1_is_one():
    for n in range(1, 5):
        assert_array_equal(creation_matrix(1, 0, n), [[1]])


def test_creation_prepends():
    A = creation_matrix(2, 0, 2)
    assert_array_equal(A @ ml.basis_vector((1,), 2), ml.basis_vector((0, 1), 2))


@pytest.mark.parametrize("N, n", [(2, 1), (2, 3), (3, 2)])
def test_creation_columns_one_hot(N, n):
    for i in range(N):
        A = creation_matrix(N, i, n)
        assert A.shape == (N**n, N ** (n - 1))
        assert_array_equal(A.sum(axis=0), np.ones(N ** (n - 1)))


def test_creation_rejects_bad_arguments():
    with pytest.raises(InputError):
        creation_matrix(2, 2, 1)
    with pytest.raises(InputError):
        creation_matrix(2, 0, 0)


def test_boltzmann_annihilation_is_free_deletion():
    T = family_boltzmann(3).cross
    for n in (1, 2, 3):
        for i in range(3):
            A = annihilation_matrix(T, i, n)
            for J in itertools.product(range(3), repeat=n):
                out = A @ ml.basis_vector(J, 3)
                expected = ml.basis_vector(J[1:], 3) if J[0] == i else np.zeros(3 ** (n - 1))
                assert_array_equal(out, expected)


def test_boson_N1_annihilation_counts():
    T = family_boson(1).cross
    for n in range(1, 6):
        assert annihilation_matrix(T, 0, n)[0, 0] == pytest.approx(n)


def test_quon_N1_level_two():
    T = family_quon(1, 0.3).cross
    assert annihilation_matrix(T, 0, 2)[0, 0] == pytest.approx(1.3)


def test_boltzmann_word_prefix_deletion():
    T = family_boltzmann(2).cross
    word = (1, 0)  # x*^{i_2} (x) x*^{i_1} with i_2 = 1, i_1 = 0
    W = annihilation_word(T, word, 3)
    for J in itertools.product(range(2), repeat=3):
        out = W @ ml.basis_vector(J, 2)
        hit = J[0] == 0 and J[1] == 1
        expected = ml.basis_vector(J[2:], 2) if hit else np.zeros(2)
        assert_array_equal(out, expected)


def test_word_empty_and_full():
    T = family_quon(2, 0.5).cross
    assert_array_equal(annihilation_word(T, (), 2), np.eye(4))
    full = annihilation_word(T, (0, 1), 2)
    assert full.shape == (1, 4)


def test_word_too_long():
    with pytest.raises(InputError):
        annihilation_word(family_boson(2).cross, (0, 0, 0), 2)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_word_is_ordered_composition(name):
    T = PRESETS[name].cross
    word = (1, 0, 1)
    expected = (
        annihilation_matrix(T, 1, 2) @ annihilation_matrix(T, 0, 3) @ annihilation_matrix(T, 1, 4)
    )
    assert_array_equal(annihilation_word(T, word, 4), expected)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_ladder_agrees_with_annihilation(name):
    T = PRESETS[name].cross
    ladder = CrossSymmetryLadder(T)
    for n in range(1, 5):
        for i in range(T.N):
            assert_allclose(ladder.annihilation(i, n), annihilation_matrix(T, i, n), atol=1e-12)


def test_ladder_N3_random_cross(rng):
    A = rng.normal(size=(9, 9))
    T = CrossOperator(A + A.T)
    ladder = CrossSymmetryLadder(T)
    for n in range(1, 4):
        for i in range(3):
            assert_allclose(ladder.annihilation(i, n), annihilation_matrix(T, i, n), atol=1e-12)


def test_ladder_level_one_is_T_plus_pairing():
    T = family_quon(2, 0.5).cross
    ladder = CrossSymmetryLadder(T)
    ladder.build(1)
    assert_array_equal(ladder.transport[1], T.matrix)
    assert_array_equal(ladder.contraction[1], [[1, 0, 0, 1]])


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_adjointness(name):
    assert verify_adjointness(PRESETS[name].cross, 4) <= 1e-10


def test_adjointness_boltzmann_exact():
    assert verify_adjointness(family_boltzmann(3).cross, 4) == 0.0


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_crel(name):
    assert verify_crel(PRESETS[name].cross, 4) <= 1e-10


def test_crel_boltzmann_exact():
    assert verify_crel(family_boltzmann(3).cross, 4) == 0.0


def test_crel_literal_convention_fails_for_bosons():
    assert verify_crel(family_boson(2).cross, 3, convention="literal") > 0.5


def test_crel_unknown_convention():
    with pytest.raises(InputError):
        verify_crel(family_boson(2).cross, 3, convention="transposed")


def test_representation_theorem_records_residual():
    rep = build_representation(family_quon(2, 0.5).cross, 3)
    res = verify_representation_theorem(rep, 3)
    assert res <= 1e-10
    assert rep.residuals["representation_theorem"] == res


@pytest.mark.parametrize("spec", [family_boson(2), family_fermion(3), mixed_color(), mixed_color(2, 1)], ids=["boson", "fermion", "color", "color_2_1"])
def test_brel(spec):
    r = verify_brel(spec.cross, spec.braid, 4)
    assert max(r.aa_residual, r.cc_residual, r.crel_residual) <= 1e-10
    assert r.descent_residual <= 1e-10


def test_brel_ill_defined_quotient_raises():
    with pytest.raises(ConstructionError):
        verify_brel(family_quon(2, 0.5).cross, BraidOperator(ml.flip(2)), 3)


def test_induced_operators_independent_of_complement_basis(rng):
    spec = family_boson(2)
    q = build_quotient_representation(spec.cross, spec.braid, 3)
    # rotate the complement at level 2 and check the induced product a+ a+ is congruent
    lv = q.levels[2]
    U, _ = np.linalg.qr(rng.normal(size=(lv.quotient_dim,) * 2) + 0j)
    C2 = lv.complement_basis @ U
    A = q.rep.creation[0][2]
    rotated = C2.conj().T @ A @ q.levels[1].complement_basis
    assert_allclose(U.conj().T @ q.creation[0][2], rotated, atol=1e-12)


def test_boson_N1_number_operator_and_ccr():
    spec = family_boson(1)
    q = build_quotient_representation(spec.cross, spec.braid, 5)
    for m in range(1, 4):
        a_ad = q.annihilation[0][m + 1] @ q.creation[0][m + 1]
        ad_a = q.creation[0][m] @ q.annihilation[0][m]
        assert_allclose(a_ad - ad_a, np.eye(q.dims[m]), atol=1e-10)
    spectrum = number_operator_spectrum(spec.cross, spec.braid, 5)
    assert_allclose(spectrum.real, [0, 1, 2, 3, 4], atol=1e-10)


def test_boson_N2_number_operator_integer():
    spec = family_boson(2)
    spectrum = number_operator_spectrum(spec.cross, spec.braid, 4)
    assert np.abs(spectrum - np.round(spectrum.real)).max() <= 1e-10
    assert_allclose(np.sort(spectrum.real), [0, 1, 1, 2, 2, 2, 3, 3, 3, 3], atol=1e-10)
