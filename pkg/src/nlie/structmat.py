"""Structure matrices, compound-minor matrices, and basis transport.

For d = n+2 the whole table fits in one matrix B: column (i,j) holds the
bracket of all basis vectors except e_i and e_j, columns ordered by the lex
pair order (1,2), (1,3), ..., (n+1,n+2).  A basis change T acts on B through
the compound matrix T_* of n x n minors, giving an isomorphism criterion
that is pure matrix arithmetic:

    T . B_new = B_old . T_*

where B_new is the structure matrix after transporting the table through T.
``change_basis`` computes the transport by direct multilinear expansion, so
the two routes check each other.
"""

from __future__ import annotations

from itertools import combinations

from .core import Algebra, bracket, bracket_basis, make_algebra
from .errors import DimensionMismatch, SingularMatrix, WrongDimension
from .gf import GF
from .linalg import Mat, det, mat_col, mat_from_cols, mat_inv, mat_mul, mat_vec


def pair_order(d: int) -> tuple[tuple[int, int], ...]:
    """Lex-ordered pairs (i,j), 1 <= i < j <= d."""
    return tuple(combinations(range(1, d + 1), 2))


def structure_matrix(A: Algebra) -> Mat:
    """d x d(d-1)/2 matrix; column (i,j) = bracket omitting e_i and e_j."""
    if A.d != A.n + 2:
        raise WrongDimension(f"structure matrix needs d = n+2, got d={A.d}, n={A.n}")
    full = range(1, A.d + 1)
    cols = []
    for i, j in pair_order(A.d):
        key = tuple(k for k in full if k != i and k != j)
        cols.append(bracket_basis(A, key))
    return mat_from_cols(cols)


def _minor(F: GF, T: Mat, drop_rows: tuple[int, int], drop_cols: tuple[int, int]) -> int:
    sub = tuple(
        tuple(x for j, x in enumerate(row, start=1) if j not in drop_cols)
        for i, row in enumerate(T, start=1)
        if i not in drop_rows
    )
    return det(F, sub)


def compound_matrix(F: GF, T: Mat) -> Mat:
    """Matrix of n x n minors; entry ((i,j),(k,l)) drops rows i,j and cols k,l."""
    if det(F, T) == 0:
        raise SingularMatrix("compound matrix requires an invertible input")
    pairs = pair_order(len(T))
    return tuple(
        tuple(_minor(F, T, rp, cp) for cp in pairs) for rp in pairs
    )


def iso_criterion(B: Mat, Bbar: Mat, T: Mat, F: GF) -> bool:
    """True iff T transports B onto Bbar: T . Bbar equals B . T_*."""
    if len(B) != len(Bbar) or len(B) != len(T):
        raise DimensionMismatch("structure matrices / transition matrix shapes differ")
    if B and (len(B[0]) != len(Bbar[0]) or len(B[0]) != len(pair_order(len(T)))):
        raise DimensionMismatch("structure matrix column count does not match d")
    if det(F, T) == 0:
        raise SingularMatrix("transition matrix must be invertible")
    return mat_mul(F, T, Bbar) == mat_mul(F, B, compound_matrix(F, T))


def change_basis(A: Algebra, T: Mat) -> Algebra:
    """Transport the table through T (columns of T = new basis vectors).

    Works for any d >= n by direct multilinear expansion; the new table is
    T^{-1} [T c_1, ..., T c_n] over all sorted n-subsets of new basis columns.
    """
    if len(T) != A.d or any(len(row) != A.d for row in T):
        raise DimensionMismatch(f"transition matrix must be {A.d} x {A.d}")
    F = A.field
    if det(F, T) == 0:
        raise SingularMatrix("transition matrix must be invertible")
    tinv = mat_inv(F, T)
    cols = [mat_col(T, j) for j in range(A.d)]
    new_table = {}
    for key in combinations(range(1, A.d + 1), A.n):
        w = bracket(A, [cols[i - 1] for i in key])
        new_table[key] = mat_vec(F, tinv, w)
    return make_algebra(F, A.n, A.d, new_table)


def structure_matrix_to_table(F: GF, n: int, B: Mat) -> Algebra:
    """Inverse of structure_matrix: rebuild the algebra from columns of B."""
    d = n + 2
    if len(B) != d:
        raise WrongDimension(f"expected {d} rows, got {len(B)}")
    full = range(1, d + 1)
    table = {}
    for col, (i, j) in enumerate(pair_order(d)):
        key = tuple(k for k in full if k != i and k != j)
        table[key] = mat_col(B, col)
    return make_algebra(F, n, d, table)
