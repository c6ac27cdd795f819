"""Core multidimensional-array types and multilinear operations.

A dense K-mode tensor is a plain ``numpy.ndarray``; its vectorization
``vec(T) = T.ravel()`` follows C order, i.e. the last mode varies fastest.
In 1-based math notation the entry at ``(i_1, ..., i_K)`` lands at position

    j = i_K + sum_{k<K} (i_k - 1) * prod_{k'>k} m_{k'}

which is exactly what :func:`linear_index` computes.  With this ordering the
vectorized multi-way product satisfies

    vec(tucker_apply(W, [U1, ..., UK])) == kron(U1, ..., UK) @ vec(W)

All in-memory indices in this package are 0-based numpy indices; the 1-based
convention appears only in :func:`linear_index` (which mirrors the math) and
in the text file formats (see :mod:`tensorgp.io`).
"""

import numpy as np

from .errors import IndexRangeError, ShapeError, DataError

__all__ = [
    "check_shape",
    "linear_index",
    "mode_k_multiply",
    "tucker_apply",
    "mode_k_unfold",
    "mode_k_fold",
    "SparseTensorCOO",
    "IndexSets",
    "extract_subarray",
]


def check_shape(dims):
    """Validate a tensor shape and return it as a tuple of ints.

    Requires at least one mode, every extent >= 1, and a total size that
    fits the platform's addressable range.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) < 1:
        raise ShapeError("a tensor needs at least one mode")
    if any(d < 1 for d in dims):
        raise ShapeError("every mode extent must be >= 1, got %r" % (dims,))
    total = 1
    for d in dims:
        total *= d
    if total > np.iinfo(np.intp).max:
        raise ShapeError("total size %d overflows the addressable range" % total)
    return dims


def linear_index(index, shape):
    """Map a 1-based multi-index to its 1-based position in vec(T).

    ``index`` and ``shape`` are sequences of equal length K.  The mapping is
    a bijection from the index box onto 1..prod(shape), with the last mode
    varying fastest.

    >>> linear_index((2, 1), (2, 3))
    4
    """
    shape = check_shape(shape)
    if len(index) != len(shape):
        raise ShapeError("index has %d modes, shape has %d" % (len(index), len(shape)))
    pos = 1
    stride = 1
    for i, m in zip(reversed(index), reversed(shape)):
        i = int(i)
        if not 1 <= i <= m:
            raise IndexRangeError("index %d out of range [1, %d]" % (i, m))
        pos += (i - 1) * stride
        stride *= m
    return pos


def mode_k_multiply(W, U, k):
    """Contract mode ``k`` (0-based) of tensor ``W`` with the matrix ``U``.

    ``U`` has shape (s, r_k) with ``r_k == W.shape[k]``; the result replaces
    mode k's extent with s:

        (W x_k U)[..., j, ...] = sum_i W[..., i, ...] * U[j, i]
    """
    W = np.asarray(W, dtype=float)
    U = np.asarray(U, dtype=float)
    if not 0 <= k < W.ndim:
        raise ShapeError("mode %d out of range for a %d-mode tensor" % (k, W.ndim))
    if U.ndim != 2 or U.shape[1] != W.shape[k]:
        raise ShapeError(
            "matrix of shape %r cannot contract mode %d of extent %d"
            % (U.shape, k, W.shape[k])
        )
    out = np.tensordot(W, U, axes=([k], [1]))
    return np.moveaxis(out, -1, k)


def tucker_apply(W, factors):
    """Apply one matrix per mode: ``W x_1 U1 x_2 U2 ... x_K UK``.

    Equivalent to multiplying vec(W) by the Kronecker product of the
    factors (see module docstring).  Mode order does not matter.
    """
    W = np.asarray(W, dtype=float)
    if len(factors) != W.ndim:
        raise ShapeError("need %d factor matrices, got %d" % (W.ndim, len(factors)))
    out = W
    for k, U in enumerate(factors):
        out = mode_k_multiply(out, U, k)
    return out


def mode_k_unfold(T, k):
    """Unfold tensor ``T`` along mode ``k`` into an (m_k, m/m_k) matrix.

    Row i holds every entry whose mode-k index is i; columns are ordered by
    the vectorization of the remaining modes.  Inverse of :func:`mode_k_fold`.
    """
    T = np.asarray(T, dtype=float)
    if not 0 <= k < T.ndim:
        raise ShapeError("mode %d out of range for a %d-mode tensor" % (k, T.ndim))
    return np.moveaxis(T, k, 0).reshape(T.shape[k], -1)


def mode_k_fold(M, k, shape):
    """Refold a mode-``k`` unfolding back into a tensor of ``shape``."""
    shape = tuple(shape)
    moved = (shape[k],) + shape[:k] + shape[k + 1:]
    return np.moveaxis(np.asarray(M, dtype=float).reshape(moved), 0, k)


class SparseTensorCOO:
    """Binary sparse tensor in coordinate form.

    Parameters
    ----------
    shape : sequence of int
        Mode extents (m_1, ..., m_K).
    coords : (nnz, K) integer array
        0-based coordinates of the listed entries.  Coordinates not listed
        are implicit zeros.
    values : (nnz,) array, optional
        Entry values; defaults to all ones.  Binary tensors only list ones.

    Raises
    ------
    IndexRangeError
        If any coordinate falls outside ``shape``.
    DataError
        If coordinates repeat or values are not in {0, 1}.
    """

    def __init__(self, shape, coords, values=None):
        self.shape = check_shape(shape)
        coords = np.asarray(coords, dtype=np.intp)
        if coords.size == 0:
            coords = coords.reshape(0, len(self.shape))
        if coords.ndim != 2 or coords.shape[1] != len(self.shape):
            raise ShapeError(
                "coords must be (nnz, %d), got %r" % (len(self.shape), coords.shape)
            )
        if values is None:
            values = np.ones(len(coords))
        values = np.asarray(values, dtype=float)
        if values.shape != (len(coords),):
            raise ShapeError("values must align with coords")
        if len(coords):
            upper = np.asarray(self.shape, dtype=np.intp)
            if (coords < 0).any() or (coords >= upper).any():
                raise IndexRangeError("coordinate out of range for shape %r" % (self.shape,))
            if not np.isin(values, (0.0, 1.0)).all():
                raise DataError("binary tensor values must be 0 or 1")
            flat = np.ravel_multi_index(coords.T, self.shape)
            if len(np.unique(flat)) != len(flat):
                raise DataError("duplicate coordinates in sparse tensor")
        self.coords = coords
        self.values = values

    @property
    def ndim(self):
        return len(self.shape)

    @property
    def nnz(self):
        return int(np.count_nonzero(self.values))

    @property
    def size(self):
        return int(np.prod(self.shape, dtype=np.int64))

    def to_dense(self):
        """Materialize the full dense array (small tensors only)."""
        out = np.zeros(self.shape)
        if len(self.coords):
            out[tuple(self.coords.T)] = self.values
        return out

    def nonzero_coords(self):
        """Coordinates of the entries equal to one, as an (n, K) array."""
        return self.coords[self.values != 0]


class IndexSets:
    """Per-mode selections of distinct indices defining a subarray.

    ``sets[k]`` is a 1-D array of distinct 0-based indices into mode k; the
    selection order is preserved (subarray axes follow it, so factor rows
    and block entries stay aligned by position).
    """

    def __init__(self, sets):
        self.sets = tuple(np.asarray(s, dtype=np.intp).ravel() for s in sets)
        for k, s in enumerate(self.sets):
            if len(s) == 0:
                raise ShapeError("mode %d selection is empty" % k)
            if len(np.unique(s)) != len(s):
                raise DataError("mode %d selection has repeated indices" % k)

    @property
    def ndim(self):
        return len(self.sets)

    @property
    def sub_shape(self):
        return tuple(len(s) for s in self.sets)

    def validate(self, shape):
        """Check every selected index lies inside ``shape``."""
        if len(shape) != self.ndim:
            raise ShapeError(
                "selection has %d modes, tensor has %d" % (self.ndim, len(shape))
            )
        for k, (s, m) in enumerate(zip(self.sets, shape)):
            if (s < 0).any() or (s >= m).any():
                raise IndexRangeError(
                    "mode %d selection exceeds extent %d" % (k, m)
                )


def extract_subarray(Y, sel):
    """Extract the dense binary block of ``Y`` selected by ``sel``.

    The block has shape ``sel.sub_shape``; entry at local position p equals
    Y at the mapped global coordinate, with unlisted coordinates read as 0.
    """
    sel.validate(Y.shape)
    block = np.zeros(sel.sub_shape)
    if len(Y.coords) == 0:
        return block
    # Vectorized: map each global coordinate to its local position (or -1).
    local = np.empty_like(Y.coords)
    for k, s in enumerate(sel.sets):
        lut = np.full(Y.shape[k], -1, dtype=np.intp)
        lut[s] = np.arange(len(s))
        local[:, k] = lut[Y.coords[:, k]]
    inside = (local >= 0).all(axis=1)
    if inside.any():
        block[tuple(local[inside].T)] = Y.values[inside]
    return block
