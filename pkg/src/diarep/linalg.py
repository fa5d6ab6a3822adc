"""Dense exact matrices over an ExactField.

Matrices are immutable (rows stored as a tuple of tuples) and hashable so
derived constructions can be cached. Reduction uses one deterministic pivot
rule everywhere: leftmost column first, then smallest row index. Every basis
this package produces (kernels, images, quotient coordinates, hom bases)
inherits its ordering from that rule, which is what makes runs reproducible.

The convention throughout is that matrices act on column vectors: a linear
map V -> W with dim V = n, dim W = m is an m x n matrix, and composition is
matrix multiplication in the same order.
"""

from __future__ import annotations

from .errors import DimensionMismatch, Inconsistent
from .field import ExactField


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: ExactField, rows, ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionMismatch("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionMismatch(f"ncols={ncols} but rows have width {width}")
            ncols = width
        elif ncols is None:
            ncols = 0
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    # ---- constructors ----

    @staticmethod
    def zeros(field, nrows, ncols):
        z = field.zero
        return Matrix(field, [[z] * ncols for _ in range(nrows)], ncols)

    @staticmethod
    def identity(field, n):
        z, o = field.zero, field.one
        return Matrix(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @staticmethod
    def from_cols(field, nrows, cols):
        """Build an nrows x len(cols) matrix from column vectors (sequences)."""
        cols = [list(c) for c in cols]
        for c in cols:
            if len(c) != nrows:
                raise DimensionMismatch("column of wrong height")
        if not cols:
            return Matrix.zeros(field, nrows, 0)
        return Matrix(field, zip(*cols), len(cols))

    @staticmethod
    def col_vector(field, entries):
        return Matrix(field, [[e] for e in entries], 1)

    # ---- basics ----

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def to_lists(self):
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.ncols == self.ncols
            and other.rows == self.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in r) for r in self.rows)
        return f"<{self.nrows}x{self.ncols} [{body}]>"

    def is_zero(self):
        z = self.field.zero
        return all(x == z for r in self.rows for x in r)

    # ---- arithmetic ----

    def __add__(self, other):
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, [[f.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        self._check_same_shape(other)
        f = self.field
        return Matrix(f, [[f.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self):
        f = self.field
        return Matrix(f, [[f.neg(a) for a in r] for r in self.rows], self.ncols)

    def scale(self, c):
        f = self.field
        return Matrix(f, [f.scale_row(r, c) for r in self.rows], self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"({self.nrows}x{self.ncols}) @ ({other.nrows}x{other.ncols})")
        f = self.field
        if self.nrows == 0 or other.ncols == 0:
            return Matrix.zeros(f, self.nrows, other.ncols)
        if self.ncols == 0:
            return Matrix.zeros(f, self.nrows, other.ncols)
        bcols = list(zip(*other.rows))
        dot = f.dot
        return Matrix(f, [[dot(r, c) for c in bcols] for r in self.rows], other.ncols)

    def transpose(self):
        if self.nrows == 0 or self.ncols == 0:
            return Matrix.zeros(self.field, self.ncols, self.nrows)
        return Matrix(self.field, zip(*self.rows), self.nrows)

    def _check_same_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch(
                f"({self.nrows}x{self.ncols}) vs ({other.nrows}x{other.ncols})"
            )

    # ---- block operations ----

    @staticmethod
    def hstack(field, blocks):
        blocks = [b for b in blocks]
        if not blocks:
            return Matrix.zeros(field, 0, 0)
        nrows = blocks[0].nrows
        if any(b.nrows != nrows for b in blocks):
            raise DimensionMismatch("hstack: row counts differ")
        rows = [sum((list(b.rows[i]) for b in blocks), []) for i in range(nrows)]
        return Matrix(field, rows, sum(b.ncols for b in blocks))

    @staticmethod
    def vstack(field, blocks):
        blocks = [b for b in blocks]
        if not blocks:
            return Matrix.zeros(field, 0, 0)
        ncols = blocks[0].ncols
        if any(b.ncols != ncols for b in blocks):
            raise DimensionMismatch("vstack: column counts differ")
        rows = []
        for b in blocks:
            rows.extend(b.rows)
        return Matrix(field, rows, ncols)

    @staticmethod
    def block_diag(field, blocks):
        blocks = [b for b in blocks]
        total_r = sum(b.nrows for b in blocks)
        total_c = sum(b.ncols for b in blocks)
        z = field.zero
        rows = [[z] * total_c for _ in range(total_r)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                rows[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return Matrix(field, rows, total_c)

    @staticmethod
    def kron(a: "Matrix", b: "Matrix"):
        """Kronecker product; row index of the first factor is major."""
        f = a.field
        mul = f.mul
        rows = []
        for ra in a.rows:
            for rb in b.rows:
                rows.append([mul(x, y) for x in ra for y in rb])
        return Matrix(f, rows, a.ncols * b.ncols)

    def submatrix(self, row_idx, col_idx):
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        return Matrix(self.field, [[self.rows[i][j] for j in col_idx] for i in row_idx], len(col_idx))

    def select_cols(self, col_idx):
        col_idx = list(col_idx)
        return Matrix(self.field, [[r[j] for j in col_idx] for r in self.rows], len(col_idx))

    # ---- reduction ----

    def rref(self):
        """Reduced row echelon form.

        Returns (R, pivots) where pivots is the tuple of pivot column
        indices in increasing order. Pivot choice: leftmost column, then
        smallest row index.
        """
        f = self.field
        z = f.zero
        rows = [list(r) for r in self.rows]
        pivots = []
        rank = 0
        for col in range(self.ncols):
            sel = None
            for i in range(rank, self.nrows):
                if rows[i][col] != z:
                    sel = i
                    break
            if sel is None:
                continue
            rows[rank], rows[sel] = rows[sel], rows[rank]
            inv = f.inv(rows[rank][col])
            if inv != f.one:
                rows[rank] = f.scale_row(rows[rank], inv)
            prow = rows[rank]
            for i in range(self.nrows):
                if i != rank and rows[i][col] != z:
                    rows[i] = f.axpy(rows[i], prow, f.neg(rows[i][col]))
            pivots.append(col)
            rank += 1
            if rank == self.nrows:
                break
        return Matrix(f, rows, self.ncols), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Basis of the right null space, as the columns of an n x k matrix.

        Free columns are taken in increasing order, each contributing one
        basis vector with a 1 in its own coordinate.
        """
        f = self.field
        R, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivset]
        cols = []
        for fc in free:
            v = [f.zero] * self.ncols
            v[fc] = f.one
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(R.rows[r][fc])
            cols.append(v)
        return Matrix.from_cols(f, self.ncols, cols)

    def image(self):
        """Basis of the column space: the pivot columns of self, in order."""
        _, pivots = self.rref()
        return self.select_cols(pivots)

    def solve(self, rhs: "Matrix"):
        """One X with self @ X = rhs (free coordinates set to zero), or None."""
        if rhs.nrows != self.nrows:
            raise DimensionMismatch("solve: row counts differ")
        f = self.field
        aug = Matrix.hstack(f, [self, rhs])
        R, pivots = aug.rref()
        for p in pivots:
            if p >= self.ncols:
                return None
        z = f.zero
        xcols = []
        for j in range(rhs.ncols):
            v = [z] * self.ncols
            for r, pc in enumerate(pivots):
                v[pc] = R.rows[r][self.ncols + j]
            xcols.append(v)
        return Matrix.from_cols(f, self.ncols, xcols)

    def solve_left(self, rhs: "Matrix"):
        """One X with X @ self = rhs, or None."""
        xt = self.transpose().solve(rhs.transpose())
        return None if xt is None else xt.transpose()

    def solve_exact(self, rhs: "Matrix") -> "Matrix":
        x = self.solve(rhs)
        if x is None:
            raise Inconsistent("required linear system has no solution")
        return x

    def inverse(self):
        if self.nrows != self.ncols:
            return None
        x = self.solve(Matrix.identity(self.field, self.nrows))
        if x is None:
            return None
        if (x @ self) != Matrix.identity(self.field, self.nrows):
            return None
        return x

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows


def quotient_by_columns(u: Matrix):
    """Quotient of the ambient column space k^n by the span of u's columns.

    Returns (proj, sect): proj is q x n with kernel exactly span(u), sect is
    n x q with proj @ sect = identity. The quotient coordinates are the
    non-pivot coordinates of the echelonized span, so they are deterministic.
    """
    f = u.field
    n = u.nrows
    R, pivots = u.transpose().rref()
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    z = f.zero
    proj_rows = []
    for c in free:
        row = [z] * n
        row[c] = f.one
        for r, pc in enumerate(pivots):
            row[pc] = f.neg(R.rows[r][c])
        proj_rows.append(row)
    proj = Matrix(f, proj_rows, n)
    sect = Matrix.from_cols(f, n, [[f.one if i == c else z for i in range(n)] for c in free])
    return proj, sect


def vec(m: Matrix):
    """Column-major vectorization, as a flat tuple."""
    return tuple(m.rows[i][j] for j in range(m.ncols) for i in range(m.nrows))


def unvec(field, entries, nrows, ncols):
    entries = list(entries)
    if len(entries) != nrows * ncols:
        raise DimensionMismatch("unvec: wrong length")
    return Matrix(field, [[entries[j * nrows + i] for j in range(ncols)] for i in range(nrows)], ncols)


def vec_operator(a: Matrix, b: Matrix):
    """The matrix of X |-> A @ X @ B on column-major vec coordinates."""
    return Matrix.kron(b.transpose(), a)


def kron_embedding_operator(field, m: int, nrows: int, ncols: int):
    """Matrix of f |-> kron(I_m, f) on column-major vec coordinates.

    f ranges over nrows x ncols matrices; the output lives in the vec space
    of (m*nrows) x (m*ncols) matrices.
    """
    out_r, out_c = m * nrows, m * ncols
    z, o = field.zero, field.one
    rows = [[z] * (nrows * ncols) for _ in range(out_r * out_c)]
    for blk in range(m):
        for i in range(nrows):
            for j in range(ncols):
                big_i = blk * nrows + i
                big_j = blk * ncols + j
                rows[big_j * out_r + big_i][j * nrows + i] = o
    return Matrix(field, rows, nrows * ncols)
