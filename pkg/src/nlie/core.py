"""Structure-constant representation of n-ary algebras and the basic theory.

An algebra is a sparse table: sorted n-tuple of 1-based basis indices ->
coefficient vector.  In characteristic 2 the bracket is fully symmetric
(no alternating signs), so the sorted key is canonical and every bracket
with a repeated argument is zero by fiat.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .errors import BadIndex, DimensionMismatch
from .gf import GF
from .linalg import (
    Mat,
    Subspace,
    Vec,
    det,
    is_zero,
    mat_from_cols,
    mat_vec,
    nullspace,
    rank,
    unit_vector,
    vec_addmul,
    vec_zero,
)

Key = tuple[int, ...]
Table = dict[Key, Vec]


def basis_vector(d: int, i: int) -> Vec:
    """1-based standard basis vector e_i."""
    if not 1 <= i <= d:
        raise BadIndex(f"basis index {i} out of range 1..{d}")
    return unit_vector(d, i - 1)


@dataclass(frozen=True)
class Algebra:
    """Immutable n-ary algebra given by its nonzero basis brackets.

    ``entries`` is the canonical form: sorted (key, value) pairs, zero
    values dropped.  Use :func:`make_algebra` to build one from a mapping.
    """

    field: GF
    n: int
    d: int
    entries: tuple[tuple[Key, Vec], ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"arity n={self.n} must be at least 2")
        if self.d < self.n:
            raise ValueError(f"dimension d={self.d} must be at least n={self.n}")
        for key, value in self.entries:
            if len(key) != self.n or any(not 1 <= i <= self.d for i in key):
                raise BadIndex(f"bad bracket key {key} for n={self.n}, d={self.d}")
            if any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                raise ValueError(f"bracket key {key} is not strictly increasing")
            if len(value) != self.d:
                raise DimensionMismatch(
                    f"bracket value for {key} has length {len(value)}, expected {self.d}"
                )
            for c in value:
                self.field.require(c)
            if is_zero(value):
                raise ValueError(f"zero value stored for key {key}; drop it instead")

    @property
    def table(self) -> Table:
        cached = self.__dict__.get("_table")
        if cached is None:
            cached = dict(self.entries)
            object.__setattr__(self, "_table", cached)
        return cached

    @property
    def neighbors(self) -> dict[Key, tuple[tuple[int, Key], ...]]:
        """(n-1)-subset J -> ((k, S), ...) with S = sorted(J + {k}) a table key."""
        cached = self.__dict__.get("_neighbors")
        if cached is None:
            nbr: dict[Key, list[tuple[int, Key]]] = {}
            for key in self.table:
                for idx in range(self.n):
                    sub = key[:idx] + key[idx + 1:]
                    nbr.setdefault(sub, []).append((key[idx], key))
            cached = {j: tuple(v) for j, v in nbr.items()}
            object.__setattr__(self, "_neighbors", cached)
        return cached

    def keys(self) -> Iterator[Key]:
        return iter(self.table)

    def basis_keys(self) -> Iterator[Key]:
        """All sorted n-subsets of 1..d (not only the nonzero ones)."""
        return combinations(range(1, self.d + 1), self.n)


def make_algebra(field: GF, n: int, d: int, table: Mapping[Sequence[int], Sequence[int]]) -> Algebra:
    """Canonicalize a table mapping into an Algebra (zero values dropped)."""
    entries = []
    for key, value in table.items():
        value = tuple(value)
        if is_zero(value):
            continue
        entries.append((tuple(key), value))
    entries.sort()
    return Algebra(field, n, d, tuple(entries))


def abelian_algebra(field: GF, n: int, d: int) -> Algebra:
    return Algebra(field, n, d, ())


def is_abelian(A: Algebra) -> bool:
    return not A.entries


# -- bracket evaluation ------------------------------------------------------


def bracket_basis(A: Algebra, indices: Sequence[int]) -> Vec:
    """Bracket of basis vectors; repeated indices give zero."""
    for i in indices:
        if not 1 <= i <= A.d:
            raise BadIndex(f"basis index {i} out of range 1..{A.d}")
    if len(indices) != A.n:
        raise DimensionMismatch(f"expected {A.n} indices, got {len(indices)}")
    key = tuple(sorted(indices))
    if any(key[i] == key[i + 1] for i in range(len(key) - 1)):
        return vec_zero(A.d)
    return A.table.get(key, vec_zero(A.d))


def bracket(A: Algebra, vectors: Sequence[Vec]) -> Vec:
    """Multilinear bracket of n coordinate vectors.

    The coefficient pulled from table key S is the determinant of the
    arguments' coordinates on S (signs are immaterial in char 2).
    """
    if len(vectors) != A.n:
        raise DimensionMismatch(f"expected {A.n} arguments, got {len(vectors)}")
    for v in vectors:
        if len(v) != A.d:
            raise DimensionMismatch(f"vector length {len(v)} != dimension {A.d}")
    F = A.field
    out = vec_zero(A.d)
    for key, value in A.entries:
        minor = tuple(tuple(v[i - 1] for v in vectors) for i in key)
        c = det(F, minor)
        if c:
            out = vec_addmul(F, out, c, value)
    return out


def bracket_with_basis(A: Algebra, w: Vec, J: Key) -> Vec:
    """Bracket of one general vector with n-1 distinct basis vectors e_J."""
    F = A.field
    out = vec_zero(A.d)
    for k, key in A.neighbors.get(J, ()):
        c = w[k - 1]
        if c:
            out = vec_addmul(F, out, c, A.table[key])
    return out


# -- axiom checking ----------------------------------------------------------


@dataclass(frozen=True)
class JacobiViolation:
    """One failed instance of the fundamental identity on basis tuples."""

    x: Key
    y: Key
    left: Vec
    right: Vec

    @property
    def residual(self) -> Vec:
        return tuple(a ^ b for a, b in zip(self.left, self.right))


def jacobi_check(A: Algebra) -> list[JacobiViolation]:
    """All violations of the fundamental identity over sorted basis tuples.

    Multilinearity plus char-2 symmetry make the basis check conclusive
    for the whole space.
    """
    violations = []
    d, n = A.d, A.n
    table = A.table
    zero = vec_zero(d)
    x_tuples = [X for X in combinations(range(1, d + 1), n)]
    for Y in combinations(range(1, d + 1), n - 1):
        y_set = set(Y)
        for X in x_tuples:
            w = table.get(X)
            inners = []
            for idx, xi in enumerate(X):
                if xi in y_set:
                    continue
                inner = table.get(tuple(sorted((xi,) + Y)))
                if inner is not None:
                    inners.append((idx, inner))
            if w is None and not inners:
                continue
            left = bracket_with_basis(A, w, Y) if w is not None else zero
            right = zero
            for idx, inner in inners:
                right = tuple(
                    a ^ b
                    for a, b in zip(right, bracket_with_basis(A, inner, X[:idx] + X[idx + 1:]))
                )
            if left != right:
                violations.append(JacobiViolation(X, Y, left, right))
    return violations


# -- derivations and ad ------------------------------------------------------


def ad_matrix(A: Algebra, xs: Sequence[Vec]) -> Mat:
    """Left multiplication by n-1 fixed vectors, as a d x d matrix."""
    if len(xs) != A.n - 1:
        raise DimensionMismatch(f"expected {A.n - 1} vectors, got {len(xs)}")
    cols = [bracket(A, list(xs) + [basis_vector(A.d, j)]) for j in range(1, A.d + 1)]
    return mat_from_cols(cols)


def ad_matrix_basis(A: Algebra, J: Key) -> Mat:
    """ad of distinct basis vectors e_J (fast table path)."""
    zero = vec_zero(A.d)
    j_set = set(J)
    cols = [
        zero if j in j_set else A.table.get(tuple(sorted((j,) + tuple(J))), zero)
        for j in range(1, A.d + 1)
    ]
    return mat_from_cols(cols)


def is_derivation(A: Algebra, D: Mat) -> bool:
    """Leibniz rule for the n-ary bracket, checked on basis n-subsets."""
    F = A.field
    zero = vec_zero(A.d)
    d_cols = [tuple(row[j] for row in D) for j in range(A.d)]
    for S in A.basis_keys():
        w = A.table.get(S)
        left = mat_vec(F, D, w) if w is not None else zero
        right = zero
        for idx, si in enumerate(S):
            term = bracket_with_basis(A, d_cols[si - 1], S[:idx] + S[idx + 1:])
            right = tuple(a ^ b for a, b in zip(right, term))
        if left != right:
            return False
    return True


# -- derived structure -------------------------------------------------------


def derived_subspace(A: Algebra) -> Subspace:
    return Subspace.span(A.field, A.d, [v for _, v in A.entries])


def descending_series(A: Algebra) -> list[int]:
    """[dim A^0, dim A^1, ...] until the dimension repeats or hits zero."""
    dims = [A.d]
    current = derived_subspace(A)
    js = list(combinations(range(1, A.d + 1), A.n - 1))
    while True:
        dims.append(current.dim)
        if dims[-1] == 0 or dims[-1] == dims[-2]:
            return dims
        spanners = [bracket_with_basis(A, b, J) for b in current.rows for J in js]
        current = Subspace.span(A.field, A.d, spanners)


def is_nilpotent(A: Algebra) -> bool:
    return descending_series(A)[-1] == 0


def center(A: Algebra) -> Subspace:
    """Nullspace of v -> [v, e_J] stacked over all (n-1)-subsets J."""
    F, d = A.field, A.d
    rows = []
    zero = vec_zero(d)
    for J in combinations(range(1, d + 1), A.n - 1):
        cols = [
            A.table.get(tuple(sorted((k,) + J)), zero) if k not in J else zero
            for k in range(1, d + 1)
        ]
        if all(is_zero(c) for c in cols):
            continue
        rows.extend(mat_from_cols(cols))
    if not rows:
        return Subspace.full(F, d)
    return Subspace.span(F, d, nullspace(F, tuple(rows)))


def inner_derivation_dim(A: Algebra) -> int:
    """Dimension of the span of all basis ad matrices inside gl(d)."""
    flat = [
        tuple(x for row in ad_matrix_basis(A, J) for x in row)
        for J in combinations(range(1, A.d + 1), A.n - 1)
    ]
    return rank(A.field, flat)


# -- subalgebras and ideals --------------------------------------------------


def is_subalgebra(A: Algebra, W: Subspace) -> bool:
    if W.d != A.d:
        raise DimensionMismatch("subspace ambient dimension mismatch")
    for combo in combinations(W.rows, A.n):
        if not W.contains(bracket(A, combo)):
            return False
    return True


def is_ideal(A: Algebra, W: Subspace) -> bool:
    if W.d != A.d:
        raise DimensionMismatch("subspace ambient dimension mismatch")
    for w in W.rows:
        for J in combinations(range(1, A.d + 1), A.n - 1):
            if not W.contains(bracket_with_basis(A, w, J)):
                return False
    return True
