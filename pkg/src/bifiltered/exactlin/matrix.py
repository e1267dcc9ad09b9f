"""Dense exact matrices and canonical subspaces."""

from __future__ import annotations

import numpy as np

from .fields import Field, Rationals
from .kernels import rref_array


class DimensionMismatch(ValueError):
    pass


class Matrix:
    """Immutable dense matrix over an exact field.  Maps act on column vectors."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, data, shape=None):
        a = field.asarray(data)
        if shape is not None:
            a = a.reshape(shape)
        elif a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        elif a.ndim == 1:
            a = a.reshape(1, -1)
        if a.ndim != 2:
            raise DimensionMismatch(f"matrix data must be 2-dimensional, got shape {a.shape}")
        a.setflags(write=False)
        self.field = field
        self.a = a

    @classmethod
    def wrap(cls, field, a):
        out = object.__new__(cls)
        a.setflags(write=False)
        out.field = field
        out.a = a
        return out

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls.wrap(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field, n):
        return cls.wrap(field, field.identity(n))

    @classmethod
    def vstack(cls, field, mats, cols=None):
        mats = [m for m in mats]
        if not mats:
            return cls.zeros(field, 0, cols or 0)
        widths = {m.cols for m in mats}
        if len(widths) > 1:
            raise DimensionMismatch(f"vstack of widths {sorted(widths)}")
        return cls.wrap(field, np.vstack([m.a for m in mats]))

    @classmethod
    def hstack(cls, field, mats, rows=None):
        mats = [m for m in mats]
        if not mats:
            return cls.zeros(field, rows or 0, 0)
        heights = {m.rows for m in mats}
        if len(heights) > 1:
            raise DimensionMismatch(f"hstack of heights {sorted(heights)}")
        return cls.wrap(field, np.hstack([m.a for m in mats]))

    @classmethod
    def block_diag(cls, field, mats):
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = field.zeros((rows, cols))
        r = c = 0
        for m in mats:
            out[r:r + m.rows, c:c + m.cols] = m.a
            r += m.rows
            c += m.cols
        return cls.wrap(field, out)

    @classmethod
    def blocks(cls, field, row_dims, col_dims, entries):
        """Assemble from a dict {(i, j): Matrix} of blocks; missing blocks are zero."""
        out = field.zeros((sum(row_dims), sum(col_dims)))
        roff = np.concatenate([[0], np.cumsum(row_dims)]).astype(int)
        coff = np.concatenate([[0], np.cumsum(col_dims)]).astype(int)
        for (i, j), m in entries.items():
            if m.shape != (row_dims[i], col_dims[j]):
                raise DimensionMismatch(f"block ({i},{j}) has shape {m.shape}")
            out[roff[i]:roff[i + 1], coff[j]:coff[j + 1]] = m.a
        return cls.wrap(field, out)

    @property
    def shape(self):
        return self.a.shape

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def T(self):
        return Matrix.wrap(self.field, np.ascontiguousarray(self.a.T))

    def _check(self, other):
        if self.field != other.field:
            raise DimensionMismatch(f"field mismatch {self.field} vs {other.field}")

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix.wrap(self.field, self.field.matmul(self.a, other.a))

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix.wrap(self.field, self.field.add(self.a, other.a))

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix.wrap(self.field, self.field.sub(self.a, other.a))

    def __neg__(self):
        return Matrix.wrap(self.field, self.field.neg(self.a))

    def scale(self, c):
        return Matrix.wrap(self.field, self.field.scale(c, self.a))

    def sign(self, s: int):
        return self if s > 0 else -self

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self.a == other.a))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.a.reshape(-1).tolist())))

    def __getitem__(self, idx):
        sub = self.a[idx]
        if sub.ndim != 2:
            raise IndexError("matrix slicing must keep two dimensions")
        return Matrix.wrap(self.field, np.ascontiguousarray(sub))

    def columns(self, idx):
        return Matrix.wrap(self.field, np.ascontiguousarray(self.a[:, list(idx)]))

    def row_slice(self, idx):
        return Matrix.wrap(self.field, np.ascontiguousarray(self.a[list(idx), :]))

    def is_zero(self):
        return self.a.size == 0 or self.field.is_zero_array(self.a)

    def tolist(self):
        return [[self.field.format(x) for x in row] for row in self.a]

    def __repr__(self):
        return f"Matrix({self.field}, {self.tolist()})"

    def kron(self, other):
        self._check(other)
        f = self.field
        m, n = self.shape
        r, s = other.shape
        out = f.zeros((m * r, n * s))
        if isinstance(f, Rationals):
            for i in range(m):
                for j in range(n):
                    x = self.a[i, j]
                    if x != 0:
                        out[i * r:(i + 1) * r, j * s:(j + 1) * s] = f.scale(x, other.a)
            return Matrix.wrap(f, out)
        if m * n * r * s == 0:
            return Matrix.wrap(f, out)
        if hasattr(f, "mul_table"):
            prod = f.mul_table[self.a[:, None, :, None], other.a[None, :, None, :]]
        else:
            prod = (self.a[:, None, :, None] * other.a[None, :, None, :]) % f.p
        return Matrix.wrap(f, np.ascontiguousarray(prod.reshape(m * r, n * s)))

    def rref(self, backend=None):
        reduced, pivots = rref_array(self.field, self.a, backend)
        return len(pivots), Matrix.wrap(self.field, reduced), tuple(pivots)

    def rank(self):
        if self.a.size == 0:
            return 0
        return self.rref()[0]

    def kernel(self) -> "Subspace":
        """{x : self @ x = 0} as a subspace of the source."""
        f = self.field
        n = self.cols
        rank, red, pivots = self.rref()
        free = [c for c in range(n) if c not in set(pivots)]
        basis = f.zeros((len(free), n))
        for t, c in enumerate(free):
            basis[t, c] = f.one()
            for i, pc in enumerate(pivots):
                basis[t, pc] = f.neg(red.a[i, c])
        return Subspace.span(f, n, Matrix.wrap(f, basis))

    def row_space(self) -> "Subspace":
        return Subspace.span(self.field, self.cols, self)

    def column_space(self) -> "Subspace":
        return Subspace.span(self.field, self.rows, self.T)

    def inverse(self):
        n = self.rows
        if self.cols != n:
            raise DimensionMismatch("inverse of a non-square matrix")
        f = self.field
        rank, red, pivots = Matrix.hstack(f, [self, Matrix.identity(f, n)]).rref()
        if tuple(pivots[:n]) != tuple(range(n)) or rank < n or (n and pivots[n - 1] >= n):
            raise ValueError("matrix is singular")
        return red[:, n:]


def rref(m: Matrix):
    """(rank, reduced row echelon form) of m."""
    rank, red, _ = m.rref()
    return rank, red


def solve(a: Matrix, b: Matrix):
    """Some x with a @ x = b, or None.  b may have several columns."""
    if a.rows != b.rows:
        raise DimensionMismatch(f"solve with {a.shape} and {b.shape}")
    f = a.field
    n = a.cols
    if b.cols == 0:
        return Matrix.zeros(f, n, 0)
    rank, red, pivots = Matrix.hstack(f, [a, b]).rref()
    if any(p >= n for p in pivots):
        return None
    x = f.zeros((n, b.cols))
    for i, pc in enumerate(pivots):
        x[pc] = red.a[i, n:]
    return Matrix.wrap(f, x)


class Subspace:
    """A subspace of field**ambient_dim, stored by its reduced row echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, field, ambient_dim, vectors) -> "Subspace":
        if not isinstance(vectors, Matrix):
            vectors = Matrix(field, vectors, shape=(-1, ambient_dim) if ambient_dim else (0, 0))
        if vectors.cols != ambient_dim:
            if vectors.rows == 0:
                return cls.zero(field, ambient_dim)
            raise DimensionMismatch(f"vectors of length {vectors.cols} in ambient {ambient_dim}")
        if vectors.rows == 0:
            return cls.zero(field, ambient_dim)
        rank, red, pivots = vectors.rref()
        return cls(field, ambient_dim, red[:rank, :], pivots)

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, Matrix.zeros(field, 0, n), ())

    @classmethod
    def full(cls, field, n):
        return cls(field, n, Matrix.identity(field, n), tuple(range(n)))

    @property
    def dim(self):
        return self.basis.rows

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.field}^{self.ambient_dim}, basis={self.basis.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def _check(self, other):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"subspaces of {self.field}^{self.ambient_dim} and {other.field}^{other.ambient_dim}")

    def is_full(self):
        return self.dim == self.ambient_dim

    def is_zero(self):
        return self.dim == 0

    def reduce(self, vectors: Matrix) -> Matrix:
        """Remainders of the rows of `vectors` after clearing this subspace's pivots."""
        if self.dim == 0 or vectors.rows == 0:
            return vectors
        coeffs = vectors.columns(self.pivots)
        return vectors - coeffs @ self.basis

    def contains_vectors(self, vectors: Matrix) -> bool:
        return self.reduce(vectors).is_zero()

    def __le__(self, other):
        self._check(other)
        if self.dim > other.dim:
            return False
        return other.contains_vectors(self.basis)

    def coordinates(self, vectors: Matrix) -> Matrix:
        """Coordinates (rows) of vectors lying in this subspace w.r.t. the RREF basis."""
        return vectors.columns(self.pivots)

    def __add__(self, other):
        self._check(other)
        if self.dim == 0:
            return other
        if other.dim == 0:
            return self
        return Subspace.span(self.field, self.ambient_dim,
                             Matrix.vstack(self.field, [self.basis, other.basis]))

    def intersect(self, other):
        self._check(other)
        if self.dim == 0 or other.is_full():
            return self
        if other.dim == 0 or self.is_full():
            return other
        # Zassenhaus: rows (u | u) and (v | 0); rows of the reduced form with a
        # vanishing left half span the intersection in the right half.
        f, n = self.field, self.ambient_dim
        top = Matrix.hstack(f, [self.basis, self.basis])
        bottom = Matrix.hstack(f, [other.basis, Matrix.zeros(f, other.dim, n)])
        rank, red, pivots = Matrix.vstack(f, [top, bottom]).rref()
        rows = [i for i, p in enumerate(pivots) if p >= n]
        return Subspace.span(f, n, red.row_slice(rows)[:, n:])

    def image(self, m: Matrix):
        if m.cols != self.ambient_dim:
            raise DimensionMismatch(f"map {m.shape} applied in ambient {self.ambient_dim}")
        return Subspace.span(self.field, m.rows, self.basis @ m.T)

    def annihilator(self) -> Matrix:
        """Matrix a with kernel exactly this subspace."""
        return self.basis.kernel().basis

    def preimage(self, m: Matrix):
        if m.rows != self.ambient_dim:
            raise DimensionMismatch(f"map {m.shape} pulled back from ambient {self.ambient_dim}")
        if self.is_full():
            return Subspace.full(self.field, m.cols)
        return (self.annihilator() @ m).kernel()

    def quotient_basis(self, sub: "Subspace"):
        """Coset representatives for self/sub and the projection onto their coordinates.

        Representatives are the earliest rows of this subspace's RREF basis that are
        independent modulo `sub` (standard vectors when self is the whole space).  The
        projection matrix sends x in self to the coefficients of its class.
        """
        self._check(sub)
        if not sub <= self:
            raise ValueError("quotient_basis requires the subspace to be contained in the space")
        f, n = self.field, self.ambient_dim
        current = sub
        reps = []
        for i in range(self.dim):
            row = self.basis[i:i + 1, :]
            if not current.contains_vectors(row):
                reps.append(i)
                current = current + Subspace.span(f, n, row)
            if len(reps) == self.dim - sub.dim:
                break
        rep_mat = self.basis.row_slice(reps) if reps else Matrix.zeros(f, 0, n)
        q = len(reps)
        full = Matrix.vstack(f, [rep_mat, sub.basis])
        proj = f.zeros((q, n))
        if q:
            _, _, pivots = full.rref()
            inv_t = full.columns(pivots).inverse().T
            proj[:, list(pivots)] = inv_t.a[:q, :]
        return rep_mat, Matrix.wrap(f, proj)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u + v


def image(m: Matrix, u: Subspace) -> Subspace:
    return u.image(m)


def preimage(m: Matrix, w: Subspace) -> Subspace:
    return w.preimage(m)


def quotient_basis(v: Subspace, u: Subspace):
    return v.quotient_basis(u)


def intersect_all(field, n, subspaces):
    out = Subspace.full(field, n)
    for s in subspaces:
        out = out.intersect(s)
    return out


def sum_all(field, n, subspaces):
    subspaces = [s for s in subspaces if s.dim]
    if not subspaces:
        return Subspace.zero(field, n)
    return Subspace.span(field, n, Matrix.vstack(field, [s.basis for s in subspaces]))
