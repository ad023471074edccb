"""Dense exact linear algebra over a :class:`~matbetti.fields.Field`.

Everything is Gaussian elimination on small row-major grids; the
matrices met in practice have at most a few hundred columns.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

from .fields import QQ, Field


class Matrix:
    """Immutable row-major matrix with entries in ``field``."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Iterable], field: Field = QQ, ncols: int | None = None):
        conv = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not conv:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(conv[0])
        for row in conv:
            if len(row) != ncols:
                raise ValueError("ragged rows")
        self.field = field
        self.nrows = len(conv)
        self.ncols = ncols
        self.rows = conv

    @classmethod
    def _raw(cls, rows, field, ncols):
        # trusted constructor: rows are already tuples of field elements
        m = cls.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m.rows = rows
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        z = field.zero
        return cls._raw(tuple((z,) * ncols for _ in range(nrows)), field, ncols)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(
            tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), field, n
        )

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int, field: Field = QQ) -> "Matrix":
        cols = [tuple(field(x) for x in c) for c in cols]
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column length mismatch")
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls._raw(rows, field, len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        idx = list(idx)
        return Matrix._raw(tuple(tuple(row[j] for j in idx) for row in self.rows), self.field, len(idx))

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(self.rows[i] for i in idx), self.field, self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(row[j] for row in self.rows) for j in range(self.ncols)), self.field, self.nrows
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = self.field.zero
        # row combinations skipping zeros; boundary matrices are sparse
        sparse = [[(j, b) for j, b in enumerate(orow) if b] for orow in other.rows]
        out = []
        for row in self.rows:
            acc = [z] * other.ncols
            for a, nz in zip(row, sparse):
                if a:
                    for j, b in nz:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return Matrix._raw(tuple(out), self.field, other.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(tuple(tuple(c * x for x in row) for row in self.rows), self.field, self.ncols)

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.shape, self.rows))

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols}>[{body}]"


def block_diagonal(blocks: Sequence[Matrix], field: Field = QQ) -> Matrix:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    grid = [[field.zero] * nc for _ in range(nr)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            grid[r0 + i][c0 : c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix._raw(tuple(tuple(r) for r in grid), field, nc)


def kron_identity(M: Matrix, d: int) -> Matrix:
    """``M ⊗ I_d`` with the identity factor varying fastest."""
    f = M.field
    z = f.zero
    rows = []
    for row in M.rows:
        for a in range(d):
            out = []
            for x in row:
                out.extend(x if b == a else z for b in range(d))
            rows.append(tuple(out))
    return Matrix._raw(tuple(rows), f, M.ncols * d)


def rref(M: Matrix, pivot_limit: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form.

    Pivots are only searched among the first ``pivot_limit`` columns;
    row operations still act on the full width (augmented systems).
    Returns the reduced rows (as lists) and the pivot column indices.
    """
    R = [list(r) for r in M.rows]
    m, n = M.nrows, M.ncols
    limit = n if pivot_limit is None else pivot_limit
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == m:
            break
        piv = next((i for i in range(r, m) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                Ri, Rr = R[i], R[r]
                R[i] = [a - f * b for a, b in zip(Ri, Rr)]
        pivots.append(c)
        r += 1
    return R, pivots


def _int_rank(A: list[list[int]]) -> int:
    # fraction-free elimination; rows are kept primitive to bound growth
    m = len(A)
    r = 0
    for c in range(len(A[0]) if A else 0):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p, prow = A[r][c], A[r]
        for i in range(r + 1, m):
            a = A[i][c]
            if a:
                row = [p * x - a * y for x, y in zip(A[i], prow)]
                g = 0
                for x in row:
                    if x:
                        g = gcd(g, x)
                        if g == 1:
                            break
                A[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == m:
            break
    return r


def _mod_rank(A: list[list[int]], p: int) -> int:
    m = len(A)
    r = 0
    for c in range(len(A[0]) if A else 0):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], p - 2, p)
        prow = [x * inv % p for x in A[r]]
        A[r] = prow
        for i in range(r + 1, m):
            a = A[i][c]
            if a:
                A[i] = [(x - a * y) % p for x, y in zip(A[i], prow)]
        r += 1
        if r == m:
            break
    return r


def rank(M: Matrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    # eliminate along the shorter side
    if M.ncols > M.nrows:
        M = M.T
    p = M.field.characteristic
    if p:
        return _mod_rank([[x.v for x in row] for row in M.rows], p)
    A = []
    for row in M.rows:
        den = 1
        for x in row:
            if x.denominator != 1:
                den = den * x.denominator // gcd(den, x.denominator)
        A.append([x.numerator * (den // x.denominator) for x in row])
    return _int_rank(A)


def column_space_dim(M: Matrix, selected: Iterable[int]) -> int:
    sel = sorted(set(selected))
    if not sel:
        return 0
    return rank(M.select_columns(sel))


def pivot_columns(M: Matrix, order: Sequence[int] | None = None) -> list[int]:
    """Greedy basis of the column space: scanning columns in ``order``,
    keep each column not in the span of those already kept."""
    order = list(range(M.ncols)) if order is None else list(order)
    if not order:
        return []
    _, piv = rref(M.select_columns(order))
    return [order[p] for p in piv]


class SubspaceReducer:
    """Normal forms modulo a subspace ``U`` of ``field^n``.

    The complement basis is the set of standard coordinates that are not
    pivots of the reduced echelon form of ``U``; reducing a vector means
    clearing its pivot coordinates against that echelon form.
    """

    def __init__(self, spanning: Sequence[Sequence], n: int, field: Field = QQ):
        self.n = n
        self.field = field
        if spanning:
            R, piv = rref(Matrix(spanning, field, ncols=n))
            self.basis_rows = [R[i] for i in range(len(piv))]
            self.pivots = piv
        else:
            self.basis_rows = []
            self.pivots = []
        pset = set(self.pivots)
        self.free = [j for j in range(n) if j not in pset]

    @property
    def quotient_dim(self) -> int:
        return len(self.free)

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for row, p in zip(self.basis_rows, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of the class of ``v`` in the quotient basis."""
        w = self.reduce(v)
        return tuple(w[j] for j in self.free)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))


def quotient_map(M: Matrix, mod_cols: Iterable[int], through_cols: Sequence[int]) -> Matrix:
    """Images of ``through_cols`` in ``W / span(mod_cols)``.

    Rows of the result are the non-pivot ambient coordinates of the
    echelon form of the ``mod_cols`` block.
    """
    mod_cols = sorted(set(mod_cols))
    through_cols = list(through_cols)
    if set(mod_cols) & set(through_cols):
        raise ValueError("mod_cols and through_cols must be disjoint")
    red = SubspaceReducer([M.col(j) for j in mod_cols], M.nrows, M.field)
    images = [red.coordinates(M.col(j)) for j in through_cols]
    return Matrix.from_columns(images, red.quotient_dim, M.field)


def kernel_basis(M: Matrix) -> Matrix:
    """Columns form a basis of the right kernel of ``M``."""
    f = M.field
    n = M.ncols
    if M.nrows == 0:
        return Matrix.identity(n, f)
    R, piv = rref(M)
    pset = set(piv)
    free = [j for j in range(n) if j not in pset]
    vecs = []
    for fj in free:
        v = [f.zero] * n
        v[fj] = f.one
        for i, p in enumerate(piv):
            v[p] = -R[i][fj]
        vecs.append(v)
    return Matrix.from_columns(vecs, n, f)


def solve(M: Matrix, b: Sequence) -> tuple | None:
    """Some ``x`` with ``M x = b``, or ``None`` when ``b`` is not in the image."""
    f = M.field
    if len(b) != M.nrows:
        raise ValueError("right-hand side has the wrong length")
    n = M.ncols
    aug = Matrix._raw(tuple(row + (f(x),) for row, x in zip(M.rows, b)), f, n + 1)
    R, piv = rref(aug, pivot_limit=n)
    for i in range(len(piv), M.nrows):
        if R[i][n]:
            return None
    x = [f.zero] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return tuple(x)


class CoordinateSolver:
    """Express vectors in a fixed basis (the columns of an injective ``B``)."""

    def __init__(self, B: Matrix):
        self.B = B
        f = B.field
        n, k = B.nrows, B.ncols
        # rref of [B | I] yields a left inverse on the pivot rows
        aug = Matrix._raw(
            tuple(row + tuple(f.one if i == j else f.zero for j in range(n)) for i, row in enumerate(B.rows)),
            f,
            k + n,
        )
        R, piv = rref(aug, pivot_limit=k)
        if len(piv) != k:
            raise ValueError("basis columns are dependent")
        self._left = [R[i][k:] for i in range(k)]
        self._check = [R[i][k:] for i in range(k, n)]

    def coordinates(self, v: Sequence) -> tuple:
        f = self.B.field
        for row in self._check:
            s = f.zero
            for a, b in zip(row, v):
                if a and b:
                    s = s + a * b
            if s:
                raise ValueError("vector is not in the span of the basis")
        out = []
        for row in self._left:
            s = f.zero
            for a, b in zip(row, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)
