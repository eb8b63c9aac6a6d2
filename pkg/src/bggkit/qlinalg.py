"""Exact linear algebra over the rationals.

Matrices are ``flint.fmpq_mat`` values.  They are treated as immutable
throughout the package: no function here mutates its arguments, and callers
never write into a matrix after construction.  Empty shapes (0 x k, k x 0)
are ordinary values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from flint import fmpq, fmpq_mat, fmpz_mat

RatMatrix = fmpq_mat


class ShapeError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


def to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, int):
        return fmpq(x)
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/")
            return fmpq(int(p), int(q))
        return fmpq(int(s))
    raise TypeError(f"cannot convert {x!r} to a rational")


def matrix(rows: Sequence[Sequence], ncols: int | None = None) -> RatMatrix:
    """Build a matrix from nested rows of ints, Fractions, fmpq or "p/q" strings."""
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    flat = []
    for r in rows:
        if len(r) != ncols:
            raise ShapeError("ragged rows")
        flat.extend(to_fmpq(x) for x in r)
    return fmpq_mat(nrows, ncols, flat)


def zeros(r: int, c: int) -> RatMatrix:
    return fmpq_mat(r, c)


def identity(n: int) -> RatMatrix:
    flat = [0] * (n * n)
    for i in range(n):
        flat[i * n + i] = 1
    return fmpq_mat(n, n, flat)


def column(values: Iterable) -> RatMatrix:
    vals = [to_fmpq(v) for v in values]
    return fmpq_mat(len(vals), 1, vals)


def shape(A: RatMatrix) -> tuple[int, int]:
    return A.nrows(), A.ncols()


def is_zero(A: RatMatrix) -> bool:
    return A == fmpq_mat(A.nrows(), A.ncols())


def sparse(nrows: int, ncols: int, entries: Mapping[tuple[int, int], int]) -> RatMatrix:
    """Integer matrix from a dict of nonzero entries."""
    B = fmpz_mat(nrows, ncols)
    for (i, j), v in entries.items():
        B[i, j] = v
    return fmpq_mat(B)


def to_fractions(A: RatMatrix) -> list[list[Fraction]]:
    c = A.ncols()
    ent = A.entries()
    return [[Fraction(int(x.p), int(x.q)) for x in ent[i * c:(i + 1) * c]] for i in range(A.nrows())]


def hstack(mats: Sequence[RatMatrix], nrows: int | None = None) -> RatMatrix:
    if not mats:
        return fmpq_mat(nrows or 0, 0)
    r = mats[0].nrows()
    if any(m.nrows() != r for m in mats):
        raise ShapeError("hstack: row counts differ")
    cols = [m.ncols() for m in mats]
    total = sum(cols)
    flat = [0] * (r * total)
    off = 0
    for m, c in zip(mats, cols):
        ent = m.entries()
        for i in range(r):
            flat[i * total + off:i * total + off + c] = ent[i * c:(i + 1) * c]
        off += c
    return fmpq_mat(r, total, flat)


def vstack(mats: Sequence[RatMatrix], ncols: int | None = None) -> RatMatrix:
    if not mats:
        return fmpq_mat(0, ncols or 0)
    c = mats[0].ncols()
    if any(m.ncols() != c for m in mats):
        raise ShapeError("vstack: column counts differ")
    flat = []
    for m in mats:
        flat.extend(m.entries())
    return fmpq_mat(sum(m.nrows() for m in mats), c, flat)


def block(blocks: dict[tuple[int, int], RatMatrix], row_sizes: Sequence[int],
          col_sizes: Sequence[int]) -> RatMatrix:
    """Assemble a block matrix; absent blocks are zero."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    R, C = roff[-1], coff[-1]
    flat = [0] * (R * C)
    for (bi, bj), m in blocks.items():
        r, c = m.nrows(), m.ncols()
        if (r, c) != (row_sizes[bi], col_sizes[bj]):
            raise ShapeError(f"block {(bi, bj)} has shape {(r, c)}")
        ent = m.entries()
        r0, c0 = roff[bi], coff[bj]
        for i in range(r):
            base = (r0 + i) * C + c0
            flat[base:base + c] = ent[i * c:(i + 1) * c]
    return fmpq_mat(R, C, flat)


def block_diag(mats: Sequence[RatMatrix]) -> RatMatrix:
    return block({(i, i): m for i, m in enumerate(mats)},
                 [m.nrows() for m in mats], [m.ncols() for m in mats])


def kron(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    ra, ca = A.nrows(), A.ncols()
    rb, cb = B.nrows(), B.ncols()
    ea, eb = A.entries(), B.entries()
    C = ca * cb
    flat = [0] * (ra * rb * C)
    for i in range(ra):
        for j in range(ca):
            a = ea[i * ca + j]
            if a == 0:
                continue
            for k in range(rb):
                base = (i * rb + k) * C + j * cb
                for l in range(cb):
                    b = eb[k * cb + l]
                    if b != 0:
                        flat[base + l] = a * b
    return fmpq_mat(ra * rb, C, flat)


def vec(A: RatMatrix) -> RatMatrix:
    """Column-major vectorisation, so that vec(L X R) = kron(R^T, L) vec(X)."""
    return fmpq_mat(A.nrows() * A.ncols(), 1, A.transpose().entries())


def unvec(v: RatMatrix, r: int, c: int) -> RatMatrix:
    return fmpq_mat(c, r, v.entries()).transpose()


def select_rows(A: RatMatrix, rows: Sequence[int]) -> RatMatrix:
    c = A.ncols()
    ent = A.entries()
    flat = []
    for i in rows:
        flat.extend(ent[i * c:(i + 1) * c])
    return fmpq_mat(len(rows), c, flat)


def select_cols(A: RatMatrix, cols: Sequence[int]) -> RatMatrix:
    r, c = A.nrows(), A.ncols()
    ent = A.entries()
    cols = list(cols)
    flat = [ent[i * c + j] for i in range(r) for j in cols]
    return fmpq_mat(r, len(cols), flat)


def rref(A: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    r, c = A.nrows(), A.ncols()
    if r == 0 or c == 0:
        return fmpq_mat(r, c), []
    R, rank = A.rref()
    ent = R.entries()
    pivots = []
    j = 0
    for i in range(rank):
        while ent[i * c + j] == 0:
            j += 1
        pivots.append(j)
        j += 1
    return R, pivots


def rank(A: RatMatrix) -> int:
    if A.nrows() == 0 or A.ncols() == 0:
        return 0
    return A.rank()


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim given by independent basis columns.

    When ``pivots`` is set, the basis restricted to those rows is the
    identity, so coordinates of a member vector are just its pivot entries.
    """

    ambient_dim: int
    basis: RatMatrix
    pivots: tuple[int, ...] | None = None

    @property
    def dim(self) -> int:
        return self.basis.ncols()

    def coords(self, v: RatMatrix) -> RatMatrix:
        """Coordinates of the columns of v (assumed to lie in the subspace)."""
        if self.pivots is not None:
            return select_rows(v, self.pivots)
        x = solve(self.basis, v)
        if x is None:
            raise ContainmentError("vector not in subspace")
        return x

    def contains(self, v: RatMatrix) -> bool:
        return solve(self.basis, v) is not None


def echelon_subspace(ambient_dim: int, spanning: RatMatrix) -> Subspace:
    """Column space of ``spanning`` with a basis that is the identity on its pivot rows."""
    if spanning.ncols() == 0 or ambient_dim == 0:
        return Subspace(ambient_dim, fmpq_mat(ambient_dim, 0), ())
    R, piv = rref(spanning.transpose())
    k = len(piv)
    basis = select_rows(R, range(k)).transpose()
    return Subspace(ambient_dim, basis, tuple(piv))


def full_space(n: int) -> Subspace:
    return Subspace(n, identity(n), tuple(range(n)))


def rank_kernel(A: RatMatrix) -> tuple[int, Subspace]:
    """Rank of A and a kernel basis that is the identity on the free columns."""
    r, c = A.nrows(), A.ncols()
    if c == 0:
        return 0, Subspace(0, fmpq_mat(0, 0), ())
    R, piv = rref(A)
    k = len(piv)
    pivset = set(piv)
    free = [j for j in range(c) if j not in pivset]
    ent = R.entries()
    nf = len(free)
    flat = [0] * (c * nf)
    for t, f in enumerate(free):
        flat[f * nf + t] = 1
        for i, p in enumerate(piv):
            x = ent[i * c + f]
            if x != 0:
                flat[p * nf + t] = -x
    return k, Subspace(c, fmpq_mat(c, nf, flat), tuple(free))


def kernel(A: RatMatrix) -> Subspace:
    return rank_kernel(A)[1]


def solve(A: RatMatrix, b: RatMatrix) -> RatMatrix | None:
    """Some X with A X = b, or None when the system is inconsistent.

    ``b`` may have several columns; all are solved simultaneously.
    """
    r, c = A.nrows(), A.ncols()
    if b.nrows() != r:
        raise ShapeError(f"solve: A has {r} rows but b has {b.nrows()}")
    k = b.ncols()
    if r == 0:
        return fmpq_mat(c, k)
    aug = hstack([A, b])
    R, piv = rref(aug)
    if piv and piv[-1] >= c:
        return None
    ent = R.entries()
    w = c + k
    flat = [0] * (c * k)
    for i, p in enumerate(piv):
        for t in range(k):
            flat[p * k + t] = ent[i * w + c + t]
    return fmpq_mat(c, k, flat)


def solve_affine(A: RatMatrix, b: RatMatrix) -> tuple[RatMatrix, Subspace] | None:
    """Particular solution and homogeneous solution space of A x = b."""
    x = solve(A, b)
    if x is None:
        return None
    return x, kernel(A)


def column_space(A: RatMatrix) -> Subspace:
    return echelon_subspace(A.nrows(), A)


def quotient_dim(U: Subspace, W: Subspace) -> int:
    if U.ambient_dim != W.ambient_dim:
        raise ShapeError("subspaces live in different ambient spaces")
    if W.dim and solve(U.basis, W.basis) is None:
        raise ContainmentError("W is not contained in U")
    return U.dim - W.dim


def complement_indices(S: Subspace) -> list[int]:
    """Standard basis indices whose vectors complete S to the whole space."""
    if S.pivots is not None:
        piv = set(S.pivots)
    else:
        piv = set(echelon_subspace(S.ambient_dim, S.basis).pivots)
    return [i for i in range(S.ambient_dim) if i not in piv]


def extend_basis(W: RatMatrix, U: RatMatrix) -> list[int]:
    """Indices of columns of U that, added to the columns of W, give a basis of span(W, U)."""
    w = W.ncols()
    if U.ncols() == 0:
        return []
    _, piv = rref(hstack([W, U]) if w else U)
    return [p - w for p in piv if p >= w]


def trace(A: RatMatrix) -> fmpq:
    n = min(A.nrows(), A.ncols())
    ent = A.entries()
    c = A.ncols()
    s = fmpq(0)
    for i in range(n):
        s += ent[i * c + i]
    return s


def det(A: RatMatrix) -> fmpq:
    if A.nrows() == 0:
        return fmpq(1)
    return A.det()
