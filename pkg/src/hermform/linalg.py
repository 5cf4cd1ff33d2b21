"""Exact linear algebra over Gaussian rationals.

Matrices are stored as sparse rows (dict col -> scalar); the structure
matrices showing up downstream have only a handful of nonzero entries
per row, so elimination stays cheap even at ambient dimension ~1000.

Hermitian inner products are diagonal with positive rational weights and
conjugate-linear in the second argument throughout.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussianRational, ZERO, ONE


class DimensionMismatch(ValueError):
    """Ambient dimensions of two operands disagree."""


def _as_scalar(x):
    return GaussianRational.of(x)


class Matrix:
    """Sparse rows x cols matrix over GaussianRational."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        # data: list of dicts col -> nonzero GaussianRational
        self.data = [dict() for _ in range(rows)] if data is None else data

    @classmethod
    def from_rows(cls, rows_list, cols=None):
        """Build from dense row lists (or dicts)."""
        rows = len(rows_list)
        if cols is None:
            cols = max((len(r) for r in rows_list), default=0)
        m = cls(rows, cols)
        for i, row in enumerate(rows_list):
            if isinstance(row, dict):
                items = row.items()
            else:
                items = enumerate(row)
            for j, v in items:
                v = _as_scalar(v)
                if v:
                    m.data[i][j] = v
        return m

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = ONE
        return m

    def set(self, i, j, value):
        value = _as_scalar(value)
        if value:
            self.data[i][j] = value
        else:
            self.data[i].pop(j, None)

    def get(self, i, j):
        return self.data[i].get(j, ZERO)

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise DimensionMismatch("matrix has %d cols, vector has %d entries"
                                    % (self.cols, len(v)))
        out = []
        for row in self.data:
            acc = ZERO
            for j, a in row.items():
                if v[j]:
                    acc = acc + a * v[j]
            out.append(acc)
        return out

    def conj_transpose(self):
        m = Matrix(self.cols, self.rows)
        for i, row in enumerate(self.data):
            for j, a in row.items():
                m.data[j][i] = a.conjugate()
        return m

    def stack(self, other):
        """Vertical stack: rows of self above rows of other."""
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return Matrix(self.rows + other.rows, self.cols,
                      [dict(r) for r in self.data] + [dict(r) for r in other.data])

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ")
        m = Matrix(self.rows, self.cols + other.cols)
        for i in range(self.rows):
            m.data[i].update(self.data[i])
            for j, a in other.data[i].items():
                m.data[i][self.cols + j] = a
        return m

    def matmul(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        out = Matrix(self.rows, other.cols)
        for i, row in enumerate(self.data):
            acc = {}
            for k, a in row.items():
                for j, b in other.data[k].items():
                    v = acc.get(j, ZERO) + a * b
                    if v:
                        acc[j] = v
                    else:
                        acc.pop(j, None)
            out.data[i] = acc
        return out

    def is_zero(self):
        return all(not row for row in self.data)

    def rank(self):
        return len(_row_echelon([dict(r) for r in self.data], self.cols)[0])

    def __repr__(self):
        return "Matrix(%dx%d, %d nonzero)" % (
            self.rows, self.cols, sum(len(r) for r in self.data))


def _row_echelon(rows, cols):
    """In-place reduced row echelon on sparse row dicts.

    Returns (pivot_cols, reduced_rows) with unit pivots, pivot columns
    cleared above and below.
    """
    pivots = []
    reduced = []
    for col in range(cols):
        best = None
        for idx, row in enumerate(rows):
            if col in row:
                if best is None or len(rows[best]) > len(row):
                    best = idx
        if best is None:
            continue
        piv = rows.pop(best)
        inv = ONE / piv[col]
        piv = {j: a * inv for j, a in piv.items()}
        for row in rows:
            a = row.get(col)
            if a is not None:
                for j, b in piv.items():
                    v = row.get(j, ZERO) - a * b
                    if v:
                        row[j] = v
                    else:
                        row.pop(j, None)
        for row in reduced:
            a = row.get(col)
            if a is not None:
                for j, b in piv.items():
                    v = row.get(j, ZERO) - a * b
                    if v:
                        row[j] = v
                    else:
                        row.pop(j, None)
        reduced.append(piv)
        pivots.append(col)
        rows = [r for r in rows if r]
    return pivots, reduced


def kernel_basis(m):
    """Basis of {v : M v = 0} as a Subspace of dimension m.cols."""
    pivots, reduced = _row_echelon([dict(r) for r in m.data], m.cols)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    pivot_row = {c: row for c, row in zip(pivots, reduced)}
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for c in pivots:
            a = pivot_row[c].get(f)
            if a is not None:
                v[c] = -a
        basis.append(v)
    return Subspace(m.cols, basis)


def solve(m, b):
    """Some x with M x = b, or None when b is outside the column span."""
    if len(b) != m.rows:
        raise DimensionMismatch("rhs length %d != %d rows" % (len(b), m.rows))
    aug = []
    for i, row in enumerate(m.data):
        r = dict(row)
        bi = _as_scalar(b[i])
        if bi:
            r[m.cols] = bi
        aug.append(r)
    pivots, reduced = _row_echelon(aug, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for c, row in zip(pivots, reduced):
        x[c] = row.get(m.cols, ZERO)
    return x


class Subspace:
    """A linear subspace of a coordinate space, given by a spanning set.

    Internally keeps a reduced row echelon basis so membership tests and
    dimension counts are canonical.
    """

    __slots__ = ("ambient", "basis", "_rref", "_pivots")

    def __init__(self, ambient, vectors=()):
        self.ambient = ambient
        rows = []
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch("vector length %d != ambient %d"
                                        % (len(v), ambient))
            row = {j: _as_scalar(a) for j, a in enumerate(v) if _as_scalar(a)}
            if row:
                rows.append(row)
        self._pivots, self._rref = _row_echelon(rows, ambient)
        self.basis = [self._row_to_vec(r) for r in self._rref]

    def _row_to_vec(self, row):
        v = [ZERO] * self.ambient
        for j, a in row.items():
            v[j] = a
        return v

    @property
    def dim(self):
        return len(self._rref)

    def _reduce(self, v):
        row = {j: _as_scalar(a) for j, a in enumerate(v) if _as_scalar(a)}
        for c, piv in zip(self._pivots, self._rref):
            a = row.get(c)
            if a is not None:
                for j, b in piv.items():
                    val = row.get(j, ZERO) - a * b
                    if val:
                        row[j] = val
                    else:
                        row.pop(j, None)
        return row

    def contains(self, v):
        if len(v) != self.ambient:
            raise DimensionMismatch("vector length %d != ambient %d"
                                    % (len(v), self.ambient))
        return not self._reduce(v)

    def coordinates(self, v):
        """Coefficients of v on self.basis, or None if v is outside."""
        if not self.contains(v):
            return None
        coords = [ZERO] * self.dim
        row = {j: _as_scalar(a) for j, a in enumerate(v) if _as_scalar(a)}
        for k, (c, piv) in enumerate(zip(self._pivots, self._rref)):
            a = row.get(c)
            if a is not None:
                coords[k] = a
                for j, b in piv.items():
                    val = row.get(j, ZERO) - a * b
                    if val:
                        row[j] = val
                    else:
                        row.pop(j, None)
        return coords

    def sum(self, other):
        self._check(other)
        return Subspace(self.ambient, self.basis + other.basis)

    def intersection(self, other):
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace(self.ambient)
        # columns: coefficients on self.basis then on other.basis;
        # kernel of [A | -B] (stacked as columns) gives pairs with A x = B y.
        m = Matrix(self.ambient, self.dim + other.dim)
        for k, v in enumerate(self.basis):
            for i, a in enumerate(v):
                if a:
                    m.data[i][k] = a
        for k, v in enumerate(other.basis):
            for i, a in enumerate(v):
                if a:
                    m.data[i][self.dim + k] = -a
        ker = kernel_basis(m)
        vectors = []
        for w in ker.basis:
            v = [ZERO] * self.ambient
            for k, b in enumerate(self.basis):
                if w[k]:
                    for i, a in enumerate(b):
                        if a:
                            v[i] = v[i] + w[k] * a
            vectors.append(v)
        return Subspace(self.ambient, vectors)

    def equals(self, other):
        self._check(other)
        return (self.dim == other.dim
                and all(other.contains(v) for v in self.basis))

    def _check(self, other):
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ: %d vs %d"
                                    % (self.ambient, other.ambient))

    def __repr__(self):
        return "Subspace(ambient=%d, dim=%d)" % (self.ambient, self.dim)


def inner(u, v, weights=None):
    """Hermitian inner product, conjugate-linear in v.

    weights: per-coordinate positive rationals (default all 1).
    """
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    acc = ZERO
    for k in range(len(u)):
        if u[k] and v[k]:
            term = u[k] * v[k].conjugate()
            if weights is not None:
                term = term * GaussianRational(weights[k])
            acc = acc + term
    return acc


def orthogonal_project(space, v, weights=None):
    """Orthogonal projection of v onto the subspace.

    Solves the normal equations exactly; the residual v - p is orthogonal
    to every basis vector of the subspace.
    """
    if len(v) != space.ambient:
        raise DimensionMismatch("vector length %d != ambient %d"
                                % (len(v), space.ambient))
    basis = space.basis
    if not basis:
        return [ZERO] * space.ambient
    k = len(basis)
    gram = Matrix(k, k)
    for i in range(k):
        for j in range(k):
            gram.set(i, j, inner(basis[j], basis[i], weights))
    rhs = [inner(v, basis[i], weights) for i in range(k)]
    coeffs = solve(gram, rhs)
    assert coeffs is not None  # Gram matrix of independent vectors
    p = [ZERO] * space.ambient
    for c, b in zip(coeffs, basis):
        if c:
            for idx, a in enumerate(b):
                if a:
                    p[idx] = p[idx] + c * a
    return p


def min_norm_solve(m, b, weights=None):
    """Minimum-norm solution of M x = b in the weighted inner product.

    Returns None when the system is inconsistent.  Deterministic: the
    particular solution from row reduction is projected off the kernel.
    """
    x0 = solve(m, b)
    if x0 is None:
        return None
    ker = kernel_basis(m)
    if ker.dim == 0:
        return x0
    p = orthogonal_project(ker, x0, weights)
    return [a - c for a, c in zip(x0, p)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_is_zero(v):
    return all(not a for a in v)
