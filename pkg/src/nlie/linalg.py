"""Dense exact linear algebra over GF(2**m).

Vectors are int tuples, matrices are tuples of row tuples.  Everything is
immutable and hashable.  Row reduction is the workhorse: determinants,
inverses, nullspaces and the canonical subspace representation all go
through it.  Characteristic 2 kills every sign, so no permutation
bookkeeping appears anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import SingularMatrix
from .gf import GF

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


# -- vectors -----------------------------------------------------------------


def vec_zero(d: int) -> Vec:
    return (0,) * d


def unit_vector(d: int, j: int) -> Vec:
    """Standard basis vector with a 1 in 0-based position j."""
    return tuple(1 if i == j else 0 for i in range(d))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a ^ b for a, b in zip(u, v))


def vec_scale(F: GF, c: int, u: Vec) -> Vec:
    if c == 0:
        return vec_zero(len(u))
    if c == 1:
        return tuple(u)
    return tuple(F.mul(c, a) for a in u)


def vec_addmul(F: GF, u: Vec, c: int, v: Vec) -> Vec:
    """u + c*v in one pass."""
    if c == 0:
        return tuple(u)
    return tuple(a ^ F.mul(c, b) for a, b in zip(u, v))


def is_zero(u: Vec) -> bool:
    return not any(u)


# -- matrices ----------------------------------------------------------------


def mat_identity(d: int) -> Mat:
    return tuple(unit_vector(d, i) for i in range(d))


def mat_transpose(M: Mat) -> Mat:
    return tuple(zip(*M)) if M else ()


def mat_from_cols(cols: Sequence[Vec]) -> Mat:
    return mat_transpose(tuple(cols))


def mat_col(M: Mat, j: int) -> Vec:
    return tuple(row[j] for row in M)


def mat_add(A: Mat, B: Mat) -> Mat:
    return tuple(vec_add(r, s) for r, s in zip(A, B))


def mat_vec(F: GF, M: Mat, v: Vec) -> Vec:
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc ^= F.mul(a, b)
        out.append(acc)
    return tuple(out)


def mat_mul(F: GF, A: Mat, B: Mat) -> Mat:
    Bt = mat_transpose(B)
    out = []
    for row in A:
        orow = []
        for col in Bt:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc ^= F.mul(a, b)
            orow.append(acc)
        out.append(tuple(orow))
    return tuple(out)


def mat_scale(F: GF, c: int, M: Mat) -> Mat:
    return tuple(vec_scale(F, c, row) for row in M)


def det(F: GF, M: Mat) -> int:
    n = len(M)
    rows = [list(r) for r in M]
    result = 1
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return 0
        rows[c], rows[p] = rows[p], rows[c]
        pivot = rows[c][c]
        result = F.mul(result, pivot)
        pinv = F.inv(pivot)
        for i in range(c + 1, n):
            if rows[i][c]:
                coef = F.mul(rows[i][c], pinv)
                rows[i] = [x ^ F.mul(coef, y) for x, y in zip(rows[i], rows[c])]
    return result


def mat_inv(F: GF, M: Mat) -> Mat:
    d = len(M)
    aug = [list(r) + list(unit_vector(d, i)) for i, r in enumerate(M)]
    for c in range(d):
        p = next((i for i in range(c, d) if aug[i][c]), None)
        if p is None:
            raise SingularMatrix(f"matrix of size {d} is singular")
        aug[c], aug[p] = aug[p], aug[c]
        pinv = F.inv(aug[c][c])
        if pinv != 1:
            aug[c] = [F.mul(pinv, x) for x in aug[c]]
        for i in range(d):
            if i != c and aug[i][c]:
                coef = aug[i][c]
                aug[i] = [x ^ F.mul(coef, y) for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[d:]) for row in aug)


def rref(F: GF, rows: Iterable[Vec]) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    nrows = len(work)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if work[i][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        pinv = F.inv(work[r][c])
        if pinv != 1:
            work[r] = [F.mul(pinv, x) for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c]:
                coef = work[i][c]
                work[i] = [x ^ F.mul(coef, y) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def rank(F: GF, rows: Iterable[Vec]) -> int:
    return len(rref(F, rows)[0])


def nullspace(F: GF, M: Mat) -> tuple[Vec, ...]:
    """Canonical basis of {v : Mv = 0}, one vector per free column."""
    if not M:
        return ()
    ncols = len(M[0])
    R, pivots = rref(F, M)
    pivot_set = set(pivots)
    basis = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = [0] * ncols
        v[j] = 1
        # char 2: the pivot entries equal the rref column entries directly
        for i, p in enumerate(pivots):
            v[p] = R[i][j]
        basis.append(tuple(v))
    return tuple(basis)


def solve(F: GF, M: Mat, b: Vec) -> Vec | None:
    """One solution of Mx = b, or None."""
    got = solve_affine(F, M, b)
    return got[0] if got is not None else None


def solve_affine(F: GF, M: Mat, b: Vec) -> tuple[Vec, tuple[Vec, ...]] | None:
    """Full solution set of Mx = b as (particular, nullspace basis), or None."""
    if not M:
        return ((), ()) if is_zero(b) else None
    ncols = len(M[0])
    aug = tuple(row + (bb,) for row, bb in zip(M, b))
    R, pivots = rref(F, aug)
    x = [0] * ncols
    for i, p in enumerate(pivots):
        if p == ncols:
            return None  # 0 = 1 row
        x[p] = R[i][ncols]
    return tuple(x), nullspace(F, M)


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Subspace of F^d, canonically presented by its RREF basis rows.

    Equality is syntactic equality of the canonical rows.
    """

    field: GF
    d: int
    rows: Mat

    @classmethod
    def span(cls, F: GF, d: int, vectors: Iterable[Vec]) -> "Subspace":
        R, _ = rref(F, [v for v in vectors if any(v)])
        return cls(F, d, R)

    @classmethod
    def zero(cls, F: GF, d: int) -> "Subspace":
        return cls(F, d, ())

    @classmethod
    def full(cls, F: GF, d: int) -> "Subspace":
        return cls(F, d, mat_identity(d))

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.rows)

    def contains(self, v: Vec) -> bool:
        r = tuple(v)
        for row, p in zip(self.rows, self.pivots):
            if r[p]:
                r = vec_addmul(self.field, r, r[p], row)
        return is_zero(r)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.rows)

    def sum_with(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.d, self.rows + other.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rref of [U|U] over [W|0]; rows with zero left half
        # carry the intersection in their right half
        F, d = self.field, self.d
        block = [row + row for row in self.rows]
        block += [row + vec_zero(d) for row in other.rows]
        R, _ = rref(F, block)
        inter = [row[d:] for row in R if is_zero(row[:d])]
        return Subspace.span(F, d, inter)

    def membership_matrix(self) -> Mat:
        """Matrix K with Kv = 0 iff v lies in the subspace."""
        F, d = self.field, self.d
        K = [list(unit_vector(d, i)) for i in range(d)]
        for row, p in zip(self.rows, self.pivots):
            for i in range(d):
                K[i][p] ^= row[i]
        return tuple(tuple(r) for r in K)

    def vectors(self) -> Iterator[Vec]:
        """Every vector of the subspace (use only when q**dim is small)."""
        F, d = self.field, self.d
        for coeffs in product(F.elements(), repeat=self.dim):
            v = vec_zero(d)
            for c, row in zip(coeffs, self.rows):
                v = vec_addmul(F, v, c, row)
            yield v


def enumerate_subspaces(F: GF, d: int, dim: int | None = None) -> Iterator[Subspace]:
    """All subspaces of F^d (of one dim if given), via RREF pivot profiles."""
    dims = range(d + 1) if dim is None else (dim,)
    for k in dims:
        if k == 0:
            yield Subspace.zero(F, d)
            continue
        for pivots in combinations(range(d), k):
            pivot_set = set(pivots)
            free = [
                (i, j)
                for i in range(k)
                for j in range(pivots[i] + 1, d)
                if j not in pivot_set
            ]
            for values in product(F.elements(), repeat=len(free)):
                rows = [[0] * d for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, j), v in zip(free, values):
                    rows[i][j] = v
                yield Subspace(F, d, tuple(tuple(r) for r in rows))


def count_subspaces(q: int, d: int, k: int) -> int:
    """Gaussian binomial coefficient [d choose k]_q."""
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def random_matrix(F: GF, d: int, rng) -> Mat:
    return tuple(tuple(rng.randrange(F.q) for _ in range(d)) for _ in range(d))


def random_invertible(F: GF, d: int, rng) -> Mat:
    while True:
        M = random_matrix(F, d, rng)
        if det(F, M):
            return M


# -- polynomials (coefficient tuples, lowest degree first) -------------------


def poly_trim(p: Sequence[int]) -> tuple[int, ...]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(p: Sequence[int], s: Sequence[int]) -> tuple[int, ...]:
    lo, hi = sorted((tuple(p), tuple(s)), key=len)
    return poly_trim(tuple(a ^ b for a, b in zip(lo, hi)) + hi[len(lo):])


def poly_mul(F: GF, p: Sequence[int], s: Sequence[int]) -> tuple[int, ...]:
    if not p or not s:
        return ()
    out = [0] * (len(p) + len(s) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(s):
            if b:
                out[i + j] ^= F.mul(a, b)
    return poly_trim(out)


def poly_divmod(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = list(poly_trim(a))
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(0, len(a) - len(b) + 1)
    binv = F.inv(b[-1])
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = F.mul(a[-1], binv)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] ^= F.mul(c, bc)
        while a and a[-1] == 0:
            a.pop()
    return poly_trim(q), tuple(a)


def poly_monic(F: GF, p: Sequence[int]) -> tuple[int, ...]:
    p = poly_trim(p)
    if not p or p[-1] == 1:
        return p
    c = F.inv(p[-1])
    return tuple(F.mul(c, a) for a in p)


def poly_gcd(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a)


def poly_lcm(F: GF, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    g = poly_gcd(F, a, b)
    q, r = poly_divmod(F, poly_mul(F, a, b), g)
    assert not r
    return poly_monic(F, q)


def poly_derivative(p: Sequence[int]) -> tuple[int, ...]:
    # formal derivative; char 2 keeps only the odd-degree terms
    return poly_trim(tuple(p[k] if k % 2 == 1 else 0 for k in range(1, len(p))))


def poly_is_squarefree(F: GF, p: Sequence[int]) -> bool:
    # over a perfect field: squarefree iff gcd(p, p') is constant
    # (p' = 0 means p is a perfect square, and the gcd is p itself)
    p = poly_trim(p)
    if len(p) <= 1:
        return True
    return len(poly_gcd(F, p, poly_derivative(p))) == 1


def poly_eval(F: GF, p: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(tuple(p)):
        acc = F.mul(acc, x) ^ c
    return acc


def min_poly(F: GF, M: Mat) -> tuple[int, ...]:
    """Monic minimal polynomial of a square matrix (lcm of Krylov annihilators)."""
    d = len(M)
    mp: tuple[int, ...] = (1,)
    for j in range(d):
        seq = [unit_vector(d, j)]
        while True:
            seq.append(mat_vec(F, M, seq[-1]))
            t = len(seq) - 1
            sol = solve(F, mat_from_cols(seq[:t]), seq[t])
            if sol is not None:
                # x^t minus the dependence, which is plus in char 2
                ann = tuple(sol) + (1,)
                break
        mp = poly_lcm(F, mp, ann)
        if len(mp) == d + 1:
            break
    return mp


def eigenvalues(F: GF, M: Mat) -> tuple[int, ...]:
    """Roots in F of the minimal polynomial."""
    p = min_poly(F, M)
    return tuple(x for x in F.elements() if poly_eval(F, p, x) == 0)


def eigenspace(F: GF, M: Mat, lam: int) -> Subspace:
    d = len(M)
    shifted = tuple(
        tuple(M[i][j] ^ (lam if i == j else 0) for j in range(d)) for i in range(d)
    )
    return Subspace.span(F, d, nullspace(F, shifted))


def commute(F: GF, A: Mat, B: Mat) -> bool:
    return mat_mul(F, A, B) == mat_mul(F, B, A)
