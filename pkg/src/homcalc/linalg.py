"""
Exact linear algebra over the rationals.

Matrices and vectors are numpy object arrays holding ``Fraction`` (or
``int``) entries; nothing here ever touches a float.  Elimination runs on
plain Python lists, which is faster than object-array slicing for the
small dense systems this package produces.
"""

from fractions import Fraction

import numpy as np


def q(x):
    """Parse ``x`` (int, Fraction, or a "p/q" / "p" string) as a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError("not an exact scalar: %r" % (x,))


def qstr(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def matrix(rows, cols=None):
    """Build an object matrix from nested rows (entries parsed with `q`)."""
    rows = [[q(x) for x in row] for row in rows]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    m = np.empty((len(rows), cols), dtype=object)
    for i, row in enumerate(rows):
        assert len(row) == cols, "ragged matrix"
        m[i, :] = row
    return m


def vector(entries):
    v = np.empty(len(entries), dtype=object)
    v[:] = [q(x) for x in entries]
    return v


def zeros(*shape):
    z = np.empty(shape, dtype=object)
    z.fill(Fraction(0))
    return z


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = Fraction(1)
    return m


def is_zero(a):
    return all(x == 0 for x in np.asarray(a).flat)


def _rows(m):
    m = np.asarray(m, dtype=object)
    assert m.ndim == 2
    return [[Fraction(x) for x in row] for row in m.tolist()], m.shape[1]


def _eliminate(rows, ncols, extra=None):
    """In-place Gauss-Jordan elimination; returns pivot columns.

    ``extra`` rows (same count as ``rows``) receive the same row operations.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c] != 0:
                break
        else:
            continue
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
            if extra is not None:
                extra[r], extra[i] = extra[i], extra[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [x * inv for x in rows[r]]
            if extra is not None:
                extra[r] = [x * inv for x in extra[r]]
        prow = rows[r]
        nz = [j for j in range(c, ncols) if prow[j] != 0]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f == 0:
                continue
            row = rows[i]
            for j in nz:
                row[j] -= f * prow[j]
            if extra is not None:
                erow, eprow = extra[i], extra[r]
                for j, x in enumerate(eprow):
                    if x != 0:
                        erow[j] -= f * x
        pivots.append(c)
        r += 1
    return pivots


def rref(m):
    """Reduced row-echelon form of ``m`` and its pivot columns."""
    rows, ncols = _rows(m)
    pivots = _eliminate(rows, ncols)
    out = zeros(len(rows), ncols)
    for i, row in enumerate(rows):
        out[i, :] = row
    return out, pivots


def rank(m):
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m):
    """Basis of the right null space, one vector per free column."""
    m = np.asarray(m, dtype=object)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return [_unit(ncols, j) for j in range(ncols)]
    rows, _ = _rows(m)
    pivots = _eliminate(rows, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for j in free:
        v = zeros(ncols)
        v[j] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][j]
        basis.append(v)
    return basis


def _unit(n, j):
    v = zeros(n)
    v[j] = Fraction(1)
    return v


def solve(m, b):
    """Some ``v`` with ``m @ v == b``, or None when the system is inconsistent."""
    m = np.asarray(m, dtype=object)
    b = np.asarray(b, dtype=object)
    if b.shape != (m.shape[0],):
        raise ValueError("right-hand side has length %d, expected %d"
                         % (len(b), m.shape[0]))
    nrows, ncols = m.shape
    rows, _ = _rows(m) if nrows else ([], ncols)
    for row, x in zip(rows, b):
        row.append(Fraction(x))
    pivots = _eliminate(rows, ncols + 1)
    if ncols in pivots:
        return None
    v = zeros(ncols)
    for r, c in enumerate(pivots):
        v[c] = rows[r][ncols]
    return v


def column_matrix(vectors, length):
    """Stack vectors as the columns of a ``length x len(vectors)`` matrix."""
    m = zeros(length, len(vectors))
    for j, v in enumerate(vectors):
        m[:, j] = np.asarray(v, dtype=object).reshape(-1)
    return m


def span_basis(vectors, length):
    """A basis for the span of ``vectors`` (the nonzero rows of an rref)."""
    if not vectors:
        return []
    r, pivots = rref(column_matrix(vectors, length).T)
    return [r[i, :].copy() for i in range(len(pivots))]


def independent_subset(vectors, length):
    """Indices of a maximal independent subset, greedy in the given order."""
    if not vectors:
        return []
    _, pivots = rref(column_matrix(vectors, length))
    return pivots


class Reducer:
    """Precomputed elimination for repeated span tests and coordinates.

    Given independent columns ``c_1..c_r`` in ``k^N``, ``coords(v)`` returns
    the unique ``x`` with ``sum x_i c_i == v`` or None when ``v`` lies
    outside the span.  One elimination at construction; each query is a
    matrix-vector product.
    """

    def __init__(self, columns, length):
        self.length = length
        self.r = len(columns)
        m = column_matrix(columns, length)
        rows, _ = _rows(m) if length else ([], self.r)
        extra = [[Fraction(int(i == j)) for j in range(length)]
                 for i in range(length)]
        pivots = _eliminate(rows, self.r, extra)
        if len(pivots) != self.r:
            raise ValueError("columns are linearly dependent")
        self._left = np.array(extra[:self.r], dtype=object).reshape(self.r, length)
        self._check = np.array(extra[self.r:], dtype=object).reshape(length - self.r, length)

    def contains(self, v):
        v = np.asarray(v, dtype=object).reshape(-1)
        return is_zero(self._check.dot(v)) if len(self._check) else True

    def coords(self, v):
        v = np.asarray(v, dtype=object).reshape(-1)
        if not self.contains(v):
            return None
        if self.r == 0:
            return zeros(0)
        return self._left.dot(v)


def quotient_representatives(sub, ambient, length=None):
    """Vectors whose classes form a basis of span(ambient) / span(sub).

    Representatives are taken greedily from ``ambient`` in order, after the
    ``sub`` vectors, so the choice is deterministic.
    """
    if length is None:
        allv = list(sub) + list(ambient)
        if not allv:
            return []
        length = len(np.asarray(allv[0]).reshape(-1))
    sub = [np.asarray(v, dtype=object).reshape(-1) for v in sub]
    ambient = [np.asarray(v, dtype=object).reshape(-1) for v in ambient]
    amb_rank = len(independent_subset(ambient, length))
    if sub and len(independent_subset(ambient + sub, length)) != amb_rank:
        raise ValueError("subspace is not contained in the ambient span")
    base = span_basis(sub, length)
    picks = independent_subset(base + ambient, length)
    return [ambient[i - len(base)] for i in picks if i >= len(base)]


def diagonal(m):
    """Diagonal of a square matrix, or None if some off-diagonal entry is nonzero."""
    n = m.shape[0]
    for i in range(n):
        for j in range(n):
            if i != j and m[i, j] != 0:
                return None
    return np.array([m[i, i] for i in range(n)], dtype=object)


def act_on_axis(t, m, axis, contract=1):
    """Contract axis ``axis`` of ``t`` with index ``contract`` of ``m``; result keeps the axis.

    contract=1 applies m to vectors sitting in that slot, contract=0 precomposes.
    Diagonal matrices are applied by broadcasting.
    """
    d = diagonal(m)
    if d is not None:
        shape = [1] * t.ndim
        shape[axis] = len(d)
        return t * d.reshape(shape)
    return np.moveaxis(np.tensordot(t, m, axes=([axis], [contract])), -1, axis)


def tensor_json(t):
    """Nested lists of "p/q" strings."""
    t = np.asarray(t, dtype=object)
    if t.ndim == 0:
        return qstr(t.item())
    return [tensor_json(x) for x in t]

