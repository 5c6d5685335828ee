"""Structure matrices, compound minors, and the matrix isomorphism test."""

from __future__ import annotations

import random

import pytest

from nlie import GF, change_basis, iso_criterion, make_algebra, structure_matrix
from nlie.core import basis_vector
from nlie.errors import DimensionMismatch, SingularMatrix, WrongDimension
from nlie.linalg import mat_identity, mat_inv, mat_mul, random_invertible
from nlie.structmat import compound_matrix, pair_order, structure_matrix_to_table

F2 = GF(1)
F4 = GF(2)
F8 = GF(3)


def chain_algebra(field=F2):
    return make_algebra(field, 3, 5, {(2, 3, 4): (1, 0, 0, 0, 0), (3, 4, 5): (0, 1, 0, 0, 0)})


def test_pair_order_frozen():
    assert pair_order(4) == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert len(pair_order(5)) == 10
    assert pair_order(5)[0] == (1, 2)
    assert pair_order(5)[3] == (1, 5)
    assert pair_order(5)[-1] == (4, 5)


def test_structure_matrix_frozen():
    B = structure_matrix(chain_algebra())
    # column (1,2) carries [e3,e4,e5] = e2; column (1,5) carries [e2,e3,e4] = e1
    assert [row[0] for row in B] == [0, 1, 0, 0, 0]
    assert [row[3] for row in B] == [1, 0, 0, 0, 0]
    for col in range(10):
        if col not in (0, 3):
            assert all(row[col] == 0 for row in B)


def test_structure_matrix_needs_codim_two():
    A = make_algebra(F2, 3, 4, {(2, 3, 4): (1, 0, 0, 0)})
    with pytest.raises(WrongDimension):
        structure_matrix(A)


def test_compound_of_identity():
    assert compound_matrix(F4, mat_identity(5)) == mat_identity(10)


def test_compound_is_multiplicative():
    rng = random.Random(19)
    for _ in range(5):
        T = random_invertible(F4, 5, rng)
        U = random_invertible(F4, 5, rng)
        lhs = compound_matrix(F4, mat_mul(F4, T, U))
        rhs = mat_mul(F4, compound_matrix(F4, T), compound_matrix(F4, U))
        assert lhs == rhs


def test_compound_rejects_singular():
    T = tuple(tuple(0 for _ in range(5)) for _ in range(5))
    with pytest.raises(SingularMatrix):
        compound_matrix(F2, T)


def test_iso_criterion_two_paths_agree():
    rng = random.Random(23)
    for F in (F2, F8):
        A = chain_algebra(F)
        B = structure_matrix(A)
        for _ in range(5):
            T = random_invertible(F, 5, rng)
            Bbar = structure_matrix(change_basis(A, T))
            assert iso_criterion(B, Bbar, T, F)


def test_iso_criterion_rejects_wrong_transition():
    A = chain_algebra()
    B = structure_matrix(A)
    T = random_invertible(F2, 5, random.Random(29))
    Bbar = structure_matrix(change_basis(A, T))
    # a basis swap that does not transport the table
    swap = tuple(
        tuple(1 if (i, j) in ((0, 1), (1, 0), (2, 2), (3, 3), (4, 4)) else 0 for j in range(5))
        for i in range(5)
    )
    if iso_criterion(B, Bbar, swap, F2):  # pragma: no cover - guards the fixture
        pytest.fail("swap accidentally transports the table")


def test_iso_criterion_error_paths():
    A = chain_algebra()
    B = structure_matrix(A)
    with pytest.raises(SingularMatrix):
        iso_criterion(B, B, tuple(tuple(0 for _ in range(5)) for _ in range(5)), F2)
    with pytest.raises(DimensionMismatch):
        iso_criterion(B, B, mat_identity(4), F2)
    with pytest.raises(DimensionMismatch):
        iso_criterion(B, tuple(row[:9] for row in B), mat_identity(5), F2)


def test_change_basis_identity_and_inverse():
    A = chain_algebra(F4)
    assert change_basis(A, mat_identity(5)) == A
    T = random_invertible(F4, 5, random.Random(31))
    assert change_basis(change_basis(A, T), mat_inv(F4, T)) == A


def test_change_basis_composes():
    A = chain_algebra(F8)
    rng = random.Random(37)
    T = random_invertible(F8, 5, rng)
    U = random_invertible(F8, 5, rng)
    assert change_basis(change_basis(A, T), U) == change_basis(A, mat_mul(F8, T, U))


def test_change_basis_frozen_swap():
    # swapping e1 and e2 relabels the two brackets
    A = chain_algebra()
    swap = tuple(
        tuple(1 if (i, j) in ((0, 1), (1, 0), (2, 2), (3, 3), (4, 4)) else 0 for j in range(5))
        for i in range(5)
    )
    got = change_basis(A, swap)
    assert got.table == {(1, 3, 4): (0, 1, 0, 0, 0), (3, 4, 5): (1, 0, 0, 0, 0)}


def test_change_basis_error_paths():
    A = chain_algebra()
    with pytest.raises(DimensionMismatch):
        change_basis(A, mat_identity(4))
    singular = tuple(tuple(0 for _ in range(5)) for _ in range(5))
    with pytest.raises(SingularMatrix):
        change_basis(A, singular)


def test_change_basis_works_below_codim_two():
    A = make_algebra(F2, 3, 4, {(2, 3, 4): (1, 0, 0, 0), (1, 3, 4): (0, 1, 0, 0)})
    T = random_invertible(F2, 4, random.Random(41))
    back = change_basis(change_basis(A, T), mat_inv(F2, T))
    assert back == A


def test_structure_matrix_round_trip():
    A = chain_algebra(F8)
    assert structure_matrix_to_table(F8, 3, structure_matrix(A)) == A
    # arbitrary matrix -> table -> matrix is the identity as well
    rng = random.Random(43)
    B = tuple(tuple(rng.choice(F8.elements()) for _ in range(10)) for _ in range(5))
    assert structure_matrix(structure_matrix_to_table(F8, 3, B)) == B
    with pytest.raises(WrongDimension):
        structure_matrix_to_table(F8, 3, B[:4])


def test_transport_preserves_bracket_values():
    # [Tc_i family] evaluated directly equals T applied to the new table entry
    from nlie.core import bracket
    from nlie.linalg import mat_col, mat_vec

    A = chain_algebra(F4)
    T = random_invertible(F4, 5, random.Random(47))
    new = change_basis(A, T)
    for key in new.basis_keys():
        direct = bracket(A, [mat_col(T, i - 1) for i in key])
        via_table = mat_vec(F4, T, bracket(new, [basis_vector(5, i) for i in key]))
        assert direct == via_table
