"""Basis-independent invariants: fingerprints, decomposability, special subalgebras.

Everything here is recomputable from the table alone and invariant under
any change of basis, which is what makes these quantities usable both as
isomorphism obstructions and as search-pruning data.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator

from .core import (
    Algebra,
    ad_matrix,
    bracket,
    bracket_with_basis,
    center,
    derived_subspace,
    descending_series,
    inner_derivation_dim,
    is_abelian,
    is_ideal,
)
from .gf import GF
from .linalg import (
    Subspace,
    Vec,
    commute,
    enumerate_subspaces,
    is_zero,
    min_poly,
    nullspace,
    poly_is_squarefree,
    rref,
    unit_vector,
)

# tri-state used by decomposability
YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism-invariant summary; unequal fingerprints certify non-isomorphism."""

    n: int
    d: int
    dim_derived: int
    derived_series_dims: tuple[int, ...]
    dim_center: int
    is_abelian: bool
    is_nilpotent: bool
    derived_in_center: bool
    inner_deriv_dim: int
    rank_profile: tuple[int, ...] | None  # only defined when d = n + 2
    decomposable: str  # yes / no / unknown


# comparison order chosen so the most structural discrepancies are named first
_REASON_ORDER = (
    "n",
    "d",
    "dim_derived",
    "dim_center",
    "is_abelian",
    "derived_in_center",
    "is_nilpotent",
    "derived_series_dims",
    "inner_deriv_dim",
    "rank_profile",
    "decomposable",
)


def rank_profile(A: Algebra) -> tuple[int, ...] | None:
    """Sorted ranks of the alternating forms induced by value functionals.

    Only defined when d = n + 2.  There every basis bracket is indexed by
    the pair of omitted basis vectors, so each linear functional on the
    span of the bracket values turns the table into an alternating d x d
    form.  The multiset of form ranks, taken over one functional per
    projective class, does not depend on the choice of basis.
    """
    if A.d != A.n + 2:
        return None
    F, d = A.field, A.d
    der = derived_subspace(A)
    if der.dim == 0:
        return ()
    _, piv = rref(F, der.rows)
    full = tuple(range(1, d + 1))
    coords = {}  # omitted pair -> value coordinates in the derived basis
    for (i, j) in combinations(range(1, d + 1), 2):
        key = tuple(x for x in full if x not in (i, j))
        v = A.table.get(key)
        if v is not None:
            coords[(i, j)] = tuple(v[c] for c in piv)
    profile = []
    for eta in _normalized_functionals(F, der.dim):
        rows = [[0] * d for _ in range(d)]
        for (i, j), c in coords.items():
            val = 0
            for a, b in zip(eta, c):
                if a and b:
                    val ^= F.mul(a, b)
            rows[i - 1][j - 1] = val
            rows[j - 1][i - 1] = val
        _, pivots = rref(F, tuple(tuple(row) for row in rows))
        profile.append(len(pivots))
    return tuple(sorted(profile))


@lru_cache(maxsize=65536)
def fingerprint(A: Algebra, *, decompose: bool = False) -> Fingerprint:
    """Compute the invariant summary; decomposability only when asked for."""
    der = derived_subspace(A)
    Z = center(A)
    series = tuple(descending_series(A))
    dec = UNKNOWN
    if decompose:
        dec = is_decomposable(A).status
    return Fingerprint(
        n=A.n,
        d=A.d,
        dim_derived=der.dim,
        derived_series_dims=series,
        dim_center=Z.dim,
        is_abelian=is_abelian(A),
        is_nilpotent=series[-1] == 0,
        derived_in_center=der.is_subspace_of(Z),
        inner_deriv_dim=inner_derivation_dim(A),
        rank_profile=rank_profile(A),
        decomposable=dec,
    )


def mismatch_reason(a: Fingerprint, b: Fingerprint) -> str | None:
    """Name of the first differing field, skipping unknown tri-states."""
    for name in _REASON_ORDER:
        va, vb = getattr(a, name), getattr(b, name)
        if name == "decomposable" and UNKNOWN in (va, vb):
            continue
        if va != vb:
            return name
    return None


# -- decomposability ---------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    status: str  # yes / no / unknown
    ideals: tuple[Subspace, Subspace] | None = None


def _coordinate_split(A: Algebra) -> tuple[Subspace, Subspace] | None:
    F, d = A.field, A.d
    for size in range(1, d // 2 + 1):
        for picked in combinations(range(d), size):
            rest = tuple(i for i in range(d) if i not in picked)
            I1 = Subspace.span(F, d, [unit_vector(d, i) for i in picked])
            I2 = Subspace.span(F, d, [unit_vector(d, i) for i in rest])
            if is_ideal(A, I1) and is_ideal(A, I2):
                return I1, I2
    return None


def is_decomposable(A: Algebra) -> Decomposition:
    """Split A as a direct sum of two nonzero ideals, if possible.

    Complementary ideals automatically have zero cross brackets (any mixed
    bracket lands in the intersection), so the search is over ideal pairs
    with trivial intersection and complementary dimensions.  Exhaustive for
    q = 2 and d <= 6; larger spaces get a coordinate-split scan and an
    honest ``unknown`` on failure.
    """
    F, d = A.field, A.d
    if d < 2:
        return Decomposition(NO)
    if is_abelian(A):
        one = Subspace.span(F, d, [unit_vector(d, 0)])
        rest = Subspace.span(F, d, [unit_vector(d, i) for i in range(1, d)])
        return Decomposition(YES, (one, rest))
    if F.q == 2 and d <= 6:
        ideals: dict[int, list[Subspace]] = {k: [] for k in range(1, d)}
        for k in range(1, d):
            for W in enumerate_subspaces(F, d, k):
                if is_ideal(A, W):
                    ideals[k].append(W)
        for k in range(1, d // 2 + 1):
            for I1 in ideals[k]:
                for I2 in ideals[d - k]:
                    if I1.intersect(I2).dim == 0:
                        return Decomposition(YES, (I1, I2))
        return Decomposition(NO)
    split = _coordinate_split(A)
    if split is not None:
        return Decomposition(YES, split)
    return Decomposition(UNKNOWN)


# -- codimension-1 subalgebras ----------------------------------------------


def _functional_value(F: GF, phi: Vec, v: Vec) -> int:
    acc = 0
    for a, b in zip(phi, v):
        if a and b:
            acc ^= F.mul(a, b)
    return acc


def _hyperplane_closed(A: Algebra, phi: Vec) -> bool:
    """Is ker(phi) closed under the bracket?

    The n-form x -> phi([x_1..x_n]) vanishes on ker(phi) iff it is divisible
    by phi in the exterior algebra, i.e. iff phi wedge psi = 0, where psi has
    coefficient phi(table[S]) on each key S.  Char 2 drops all shuffle signs.
    """
    F = A.field
    psi = {}
    for S, v in A.entries:
        c = _functional_value(F, phi, v)
        if c:
            psi[S] = c
    if not psi:
        return True
    supersets = set()
    for S in psi:
        s_set = set(S)
        for extra in range(1, A.d + 1):
            if extra not in s_set:
                supersets.add(tuple(sorted(S + (extra,))))
    for U in supersets:
        acc = 0
        for idx, i in enumerate(U):
            c = psi.get(U[:idx] + U[idx + 1:])
            if c and phi[i - 1]:
                acc ^= F.mul(phi[i - 1], c)
        if acc:
            return False
    return True


def _normalized_functionals(F: GF, d: int) -> Iterator[Vec]:
    # one functional per hyperplane: first nonzero coefficient scaled to 1;
    # ascending lex order puts the coordinate functional e_d* first
    for phi in product(F.elements(), repeat=d):
        first = next((c for c in phi if c), None)
        if first == 1:
            yield phi


def _kernel(F: GF, d: int, phi: Vec) -> Subspace:
    return Subspace.span(F, d, nullspace(F, (phi,)))


def find_codim1_subalgebra(A: Algebra) -> Subspace | None:
    """First hyperplane (in the fixed functional order) closed under the bracket."""
    for phi in _normalized_functionals(A.field, A.d):
        if _hyperplane_closed(A, phi):
            return _kernel(A.field, A.d, phi)
    return None


def find_nonabelian_codim1_containing_derived(A: Algebra) -> Subspace | None:
    """Closed hyperplane containing the derived subspace, nonabelian inside.

    Intended for d = n+2 with derived dimension 1 or 2; other inputs are
    scanned anyway after a warning.
    """
    der = derived_subspace(A)
    if A.d != A.n + 2 or not 0 < der.dim <= 2:
        warnings.warn(
            "find_nonabelian_codim1_containing_derived: intended for d = n+2 "
            f"with derived dimension 1..2 (got d={A.d}, n={A.n}, derived={der.dim}); "
            "scanning anyway",
            stacklevel=2,
        )
    if is_abelian(A):
        return None
    F, d = A.field, A.d
    annihilator = nullspace(F, der.rows) if der.rows else tuple(
        unit_vector(d, i) for i in range(d)
    )
    candidates = []
    for coeffs in product(F.elements(), repeat=len(annihilator)):
        phi = [0] * d
        for c, row in zip(coeffs, annihilator):
            if c:
                phi = [a ^ F.mul(c, b) for a, b in zip(phi, row)]
        first = next((c for c in phi if c), None)
        if first == 1:
            candidates.append(tuple(phi))
    candidates.sort()
    for phi in candidates:
        if not _hyperplane_closed(A, phi):
            continue
        H = _kernel(F, d, phi)
        if any(
            not is_zero(bracket(A, combo)) for combo in combinations(H.rows, A.n)
        ):
            return H
    return None


# -- toral subalgebras -------------------------------------------------------


def verify_toral(A: Algebra, H: Subspace) -> bool:
    """Abelian subalgebra acting by commuting semisimple ad maps.

    Semisimplicity is a squarefree minimal polynomial; the eigenvalues may
    live in an extension field, so the weight decomposition is guaranteed
    over the splitting field rather than the base field.
    """
    F = A.field
    for combo in combinations(H.rows, A.n):
        if not is_zero(bracket(A, combo)):
            return False
    ads = []
    for combo in combinations(H.rows, A.n - 1):
        M = ad_matrix(A, combo)
        if any(any(row) for row in M):
            ads.append(M)
    for i in range(len(ads)):
        for j in range(i + 1, len(ads)):
            if not commute(F, ads[i], ads[j]):
                return False
    return all(poly_is_squarefree(F, min_poly(F, M)) for M in ads)


@dataclass(frozen=True)
class ToralBound:
    dim: int
    exact: bool


def max_toral_dim(A: Algebra, budget: int = 512) -> ToralBound:
    """Largest dimension of a toral subalgebra.

    Exhaustive subspace scan for q = 2 and d <= 6 (descending dimension, so
    the first hit is the answer); otherwise a bounded seeded search that
    reports a lower bound with exact=False.
    """
    F, d = A.field, A.d
    if F.q == 2 and d <= 6:
        for k in range(d, -1, -1):
            for H in enumerate_subspaces(F, d, k):
                if verify_toral(A, H):
                    return ToralBound(k, True)
        raise AssertionError("unreachable: the zero subspace is toral")
    import random as _random

    rng = _random.Random(0)
    best = 0
    for k in range(d, 0, -1):
        if k <= best:
            break
        for picked in combinations(range(d), k):
            H = Subspace.span(F, d, [unit_vector(d, i) for i in picked])
            if verify_toral(A, H):
                best = max(best, k)
                break
    trials = 0
    while trials < budget:
        k = rng.randrange(best + 1, d + 1) if best + 1 <= d else d
        vecs = [tuple(rng.randrange(F.q) for _ in range(d)) for _ in range(k)]
        H = Subspace.span(F, d, vecs)
        trials += 1
        if H.dim > best and verify_toral(A, H):
            best = H.dim
    return ToralBound(best, False)
