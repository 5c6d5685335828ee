"""Fingerprints, rank profiles, decomposability, and special subalgebras."""

from __future__ import annotations

import random

import pytest

from nlie import (
    GF,
    Fingerprint,
    Subspace,
    change_basis,
    fingerprint,
    make_algebra,
    mismatch_reason,
)
from nlie.catalog import CaseId, instantiate
from nlie.core import bracket, derived_subspace, is_subalgebra
from nlie.invariants import (
    ToralBound,
    find_codim1_subalgebra,
    find_nonabelian_codim1_containing_derived,
    is_decomposable,
    max_toral_dim,
    rank_profile,
    verify_toral,
)
from nlie.linalg import is_zero, random_invertible

F2 = GF(1)
F4 = GF(2)
F8 = GF(3)


def inst(case, params=None, field=F2, n=3):
    return instantiate(n, case, params or {}, field)


def coord_span(field, d, *indices):
    vecs = [tuple(1 if k == i - 1 else 0 for k in range(d)) for i in indices]
    return Subspace.span(field, d, vecs)


# -- fingerprints ------------------------------------------------------------


def test_fingerprint_frozen():
    got = fingerprint(inst(CaseId.T32_b1), decompose=True)
    assert got == Fingerprint(
        n=3,
        d=5,
        dim_derived=1,
        derived_series_dims=(5, 1, 0),
        dim_center=2,
        is_abelian=False,
        is_nilpotent=True,
        derived_in_center=True,
        inner_deriv_dim=3,
        rank_profile=(2,),
        decomposable="yes",
    )


@pytest.mark.parametrize(
    "case,params,derived,zdim,series,inner,profile",
    [
        (CaseId.T32_a, {}, 0, 5, (5, 0), 0, ()),
        (CaseId.T32_b2, {}, 1, 2, (5, 1, 1), 3, (2,)),
        (CaseId.T32_c5, {}, 2, 1, (5, 2, 1, 0), 5, (2, 2, 2)),
        (CaseId.T32_d1, {}, 3, 1, (5, 3, 3), 6, (2,) * 7),
        (CaseId.T32_d2, {}, 3, 0, (5, 3, 3), 7, (2, 2, 2, 4, 4, 4, 4)),
        (CaseId.T32_d8, {}, 3, 0, (5, 3, 3), 7, (2,) * 7),
        (CaseId.T32_d9, {"s": 1, "t": 0, "u": 0}, 3, 0, (5, 3, 3), 7, (2,) * 7),
    ],
)
def test_fingerprint_values_frozen(case, params, derived, zdim, series, inner, profile):
    fp = fingerprint(inst(case, params))
    assert fp.dim_derived == derived
    assert fp.dim_center == zdim
    assert fp.derived_series_dims == series
    assert fp.inner_deriv_dim == inner
    assert fp.rank_profile == profile


def test_fingerprint_is_cached():
    A = inst(CaseId.T32_b1)
    assert fingerprint(A) is fingerprint(A)


def test_fingerprint_invariant_under_basis_change():
    rng = random.Random(53)
    for case, params, field in (
        (CaseId.T32_c5, {}, F2),
        (CaseId.T32_d2, {}, F4),
        (CaseId.T32_d9, {"s": 0x3, "t": 0x2, "u": 0x5}, F8),
    ):
        A = inst(case, params, field)
        T = random_invertible(field, 5, rng)
        assert fingerprint(change_basis(A, T)) == fingerprint(A)


def test_mismatch_reason_frozen():
    b1 = fingerprint(inst(CaseId.T32_b1))
    b2 = fingerprint(inst(CaseId.T32_b2))
    assert mismatch_reason(b1, b2) == "derived_in_center"
    d2 = fingerprint(inst(CaseId.T32_d2))
    d8 = fingerprint(inst(CaseId.T32_d8))
    assert mismatch_reason(d2, d8) == "rank_profile"
    c1 = fingerprint(inst(CaseId.T32_c1), decompose=True)
    c2 = fingerprint(inst(CaseId.T32_c2), decompose=True)
    assert mismatch_reason(c1, c2) == "dim_center"
    assert mismatch_reason(b1, b1) is None


def test_mismatch_reason_skips_unknown_decomposability():
    with_dec = fingerprint(inst(CaseId.T32_c1), decompose=True)
    without = fingerprint(inst(CaseId.T32_c1))
    assert with_dec.decomposable == "yes" and without.decomposable == "unknown"
    assert mismatch_reason(with_dec, without) is None


# -- rank profiles -----------------------------------------------------------


def test_rank_profile_edge_cases():
    codim1 = make_algebra(F2, 3, 4, {(2, 3, 4): (1, 0, 0, 0)})
    assert rank_profile(codim1) is None
    assert rank_profile(inst(CaseId.T32_a)) == ()


def test_rank_profile_counts_projective_functionals():
    # derived dimension k contributes (q^k - 1)/(q - 1) forms
    assert len(rank_profile(inst(CaseId.T32_c5))) == 3
    assert len(rank_profile(inst(CaseId.T32_d8))) == 7
    assert len(rank_profile(inst(CaseId.T32_c5, field=F4))) == 5


def test_rank_profile_basis_invariant():
    rng = random.Random(59)
    A = inst(CaseId.T32_d2)
    for _ in range(5):
        T = random_invertible(F2, 5, rng)
        assert rank_profile(change_basis(A, T)) == rank_profile(A)


# -- decomposability ---------------------------------------------------------


def test_decomposable_frozen_verdicts():
    assert is_decomposable(inst(CaseId.T32_c1)).status == "yes"
    assert is_decomposable(inst(CaseId.T32_c3, {"alpha": 1})).status == "yes"
    assert is_decomposable(inst(CaseId.T32_c2)).status == "no"


def test_decomposable_witness_is_a_direct_sum():
    A = inst(CaseId.T32_c1)
    dec = is_decomposable(A)
    I1, I2 = dec.ideals
    from nlie.core import is_ideal

    assert is_ideal(A, I1) and is_ideal(A, I2)
    assert I1.intersect(I2).dim == 0
    assert I1.dim + I2.dim == A.d
    assert (I1.dim, I2.dim) == (1, 4)


def test_decomposable_abelian_and_unknown_paths():
    abelian = make_algebra(F8, 3, 5, {})
    assert is_decomposable(abelian).status == "yes"
    # no coordinate split exists and the space is too big to enumerate
    assert is_decomposable(inst(CaseId.T32_c2, field=F8)).status == "unknown"


# -- codimension-1 subalgebras -----------------------------------------------


def test_find_codim1_subalgebra():
    for case, params in (
        (CaseId.T32_b1, {}),
        (CaseId.T32_c5, {}),
        (CaseId.T32_d9, {"s": 1, "t": 1, "u": 0}),
    ):
        A = inst(case, params)
        W = find_codim1_subalgebra(A)
        assert W is not None and W.dim == 4
        assert is_subalgebra(A, W)


def test_find_codim1_subalgebra_other_fields():
    A = inst(CaseId.T32_d9, {"s": 0x2, "t": 0x7, "u": 0x1}, F8)
    W = find_codim1_subalgebra(A)
    assert W is not None and W.dim == 4 and is_subalgebra(A, W)


def test_find_nonabelian_codim1():
    for case in (CaseId.T32_b1, CaseId.T32_c5):
        A = inst(case)
        H = find_nonabelian_codim1_containing_derived(A)
        assert H is not None and H.dim == 4
        assert is_subalgebra(A, H)
        assert derived_subspace(A).is_subspace_of(H)
        from itertools import combinations

        assert any(
            not is_zero(bracket(A, combo)) for combo in combinations(H.rows, 3)
        )


def test_find_nonabelian_codim1_warns_outside_intended_range():
    big_derived = inst(CaseId.T32_d1)
    with pytest.warns(UserWarning):
        find_nonabelian_codim1_containing_derived(big_derived)
    codim1 = inst(CaseId.L21_b1)
    with pytest.warns(UserWarning):
        find_nonabelian_codim1_containing_derived(codim1)


def test_find_nonabelian_codim1_abelian_input():
    with pytest.warns(UserWarning):
        assert find_nonabelian_codim1_containing_derived(inst(CaseId.T32_a)) is None


# -- toral subalgebras -------------------------------------------------------


def test_verify_toral_frozen_witnesses():
    assert verify_toral(inst(CaseId.T32_c6), coord_span(F2, 5, 4, 5))
    c4 = inst(CaseId.T32_c4, {"alpha": 1})
    assert verify_toral(c4, coord_span(F2, 5, 3, 4, 5))
    assert verify_toral(c4, coord_span(F2, 5, 1, 2))
    assert verify_toral(c4, Subspace.span(F2, 5, []))


def test_verify_toral_rejects_nonabelian_span():
    A = inst(CaseId.T32_c5)
    # [e2,e3,e4] = e1 lands outside span{e2,e3,e4}
    assert not verify_toral(A, coord_span(F2, 5, 2, 3, 4))


def test_verify_toral_rejects_nilpotent_action():
    # ad of the chain algebra's tail is nilpotent, not semisimple
    A = make_algebra(F2, 3, 5, {(2, 3, 4): (1, 0, 0, 0, 0), (3, 4, 5): (0, 1, 0, 0, 0)})
    assert not verify_toral(A, coord_span(F2, 5, 3, 4))


@pytest.mark.parametrize(
    "case,params,dim",
    [
        (CaseId.T32_c2, {}, 2),
        (CaseId.T32_c4, {"alpha": 1}, 3),
        (CaseId.T32_c6, {}, 2),
        (CaseId.T32_d2, {}, 2),
        (CaseId.T32_d4, {}, 2),
        (CaseId.T32_d5, {}, 3),
        (CaseId.T32_d6, {"gamma": 1}, 2),
    ],
)
def test_max_toral_dim_frozen(case, params, dim):
    assert max_toral_dim(inst(case, params)) == ToralBound(dim, True)


def test_max_toral_dim_bounded_search():
    got = max_toral_dim(inst(CaseId.T32_c4, {"alpha": 1}, F4), budget=16)
    assert got == ToralBound(3, False)
