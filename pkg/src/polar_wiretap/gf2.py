"""Dense linear algebra over GF(2).

Matrices are plain ``numpy.uint8`` arrays holding 0/1 entries.  Internally the
elimination routines pack each row into 64-bit words so that ranks of
matrices with a few thousand columns stay cheap.
"""

from __future__ import annotations

import numpy as np

_ONE = np.uint64(1)


def as_bits(v, length: int | None = None) -> np.ndarray:
    """Validate a binary word and return it as a 1-D ``uint8`` array."""
    arr = np.asarray(v)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D bit vector, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("bit vector entries must be 0 or 1")
    if length is not None and arr.size != length:
        raise ValueError(f"expected {length} bits, got {arr.size}")
    return arr.astype(np.uint8)


def as_matrix(m) -> np.ndarray:
    """Validate a binary matrix and return it as a 2-D ``uint8`` array."""
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D binary matrix, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("matrix entries must be 0 or 1")
    return arr.astype(np.uint8)


def pack_rows(m: np.ndarray) -> np.ndarray:
    """Pack the rows of a 0/1 matrix into ``uint64`` words, bit ``c`` of row
    ``r`` landing in word ``c // 64`` at position ``c % 64``."""
    rows, cols = m.shape
    words = max(1, -(-cols // 64))
    padded = np.zeros((rows, words * 64), dtype=np.uint8)
    padded[:, :cols] = m
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(rows, words)


def unpack_rows(p: np.ndarray, cols: int) -> np.ndarray:
    rows = p.shape[0]
    if rows == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    bits = np.unpackbits(np.ascontiguousarray(p).view(np.uint8).reshape(rows, -1),
                         axis=1, bitorder="little")
    return bits[:, :cols].astype(np.uint8)


def _eliminate(p: np.ndarray, cols: int, reduce_above: bool = False) -> list[int]:
    """Gaussian elimination in place on packed rows; returns pivot columns.

    Pivots are taken left to right, so the number of pivots below column ``j``
    is the rank of the first ``j`` columns.
    """
    m = p.shape[0]
    r = 0
    pivots = []
    for c in range(cols):
        if r == m:
            break
        w, b = divmod(c, 64)
        col = (p[:, w] >> np.uint64(b)) & _ONE
        below = np.flatnonzero(col[r:]) + r
        if below.size == 0:
            continue
        piv = below[0]
        if piv != r:
            p[[r, piv]] = p[[piv, r]]
        targets = below[1:]
        if reduce_above:
            targets = np.concatenate([np.flatnonzero(col[:r]), targets])
        if targets.size:
            p[targets, w:] ^= p[r, w:]
        pivots.append(c)
        r += 1
    return pivots


def rank(m) -> int:
    """Row rank of ``m`` over GF(2).  Empty matrices have rank 0.

    >>> rank([[1, 1], [1, 1]])
    1
    """
    m = as_matrix(m)
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return len(_eliminate(pack_rows(m), m.shape[1]))


def prefix_ranks(p: np.ndarray, cols: int, split: int) -> tuple[int, int]:
    """Ranks of the first ``split`` columns and of all ``cols`` columns of a
    packed matrix.  ``p`` is modified in place."""
    if p.shape[0] == 0 or cols == 0:
        return 0, 0
    pivots = _eliminate(p, cols)
    head = sum(1 for c in pivots if c < split)
    return head, len(pivots)


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2) and the list of pivot columns.

    The returned matrix has the same shape as ``m``; zero rows sink to the
    bottom.
    """
    m = as_matrix(m)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return m.copy(), []
    p = pack_rows(m)
    pivots = _eliminate(p, cols, reduce_above=True)
    return unpack_rows(p, cols), pivots


def parity_check_from_generator(g) -> np.ndarray:
    """Basis of the dual code of the row space of ``g``, one check per row.

    ``g`` need not have full rank.  The result has ``cols - rank(g)`` rows,
    each orthogonal to every row of ``g``.
    """
    g = as_matrix(g)
    n = g.shape[1]
    reduced, pivots = rref(g)
    k = len(pivots)
    free = np.setdiff1d(np.arange(n), pivots)
    h = np.zeros((n - k, n), dtype=np.uint8)
    h[np.arange(n - k), free] = 1
    if k:
        h[:, pivots] = reduced[:k][:, free].T
    return h


def column_submatrix(m, index_set) -> np.ndarray:
    """Columns of ``m`` at ``index_set``, in ascending index order."""
    m = as_matrix(m)
    idx = np.unique(np.asarray(index_set, dtype=np.int64))
    if idx.size and (idx[0] < 0 or idx[-1] >= m.shape[1]):
        raise ValueError(f"column index out of range for {m.shape[1]} columns")
    return m[:, idx]


def complete_basis(base, extra) -> np.ndarray:
    """Rows ``e`` such that ``[base; e]`` spans ``rowspace(base) + rowspace(extra)``
    and no row of ``e`` lies in the span of the others or of ``base``."""
    base = as_matrix(base)
    extra = as_matrix(extra)
    cols = extra.shape[1]
    if extra.shape[0] == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    rem = pack_rows(extra)
    if base.shape[0]:
        basis, pivots = rref(base)
        packed_basis = pack_rows(basis[:len(pivots)])
        for i, c in enumerate(pivots):
            w, b = divmod(c, 64)
            hit = np.flatnonzero((rem[:, w] >> np.uint64(b)) & _ONE)
            if hit.size:
                rem[hit] ^= packed_basis[i]
    pivots = _eliminate(rem, cols)
    return unpack_rows(rem[:len(pivots)], cols)
