"""Pure numpy versions of the F_p elimination kernels.

Used when the compiled extension is unavailable (or ``OCTODER_PURE=1``).
"""
from __future__ import annotations

import numpy as np


def rref_modp(a: np.ndarray, p: int):
    """In-place reduced row echelon form of ``a`` modulo ``p``.

    ``a`` is a C-contiguous int64 array with entries in ``[0, p)``.
    Returns ``(rank, pivots)``; rows ``0..rank-1`` hold the reduced basis.
    """
    m, n = a.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return r, pivots


def reduce_modp(basis: np.ndarray, pivots: np.ndarray, v: np.ndarray, p: int):
    """Reduce every row of ``v`` in place against an RREF ``basis``.

    Returns a boolean array: True where the row reduced to zero.
    """
    k = basis.shape[0]
    if k:
        coeff = v[:, pivots].copy()
        # each partial product is below p^2; sum in chunks that fit in int64
        step = max(1, (2**62) // ((p - 1) ** 2 or 1))
        acc = v.copy()
        for s in range(0, k, step):
            acc = (acc - coeff[:, s:s + step] @ basis[s:s + step]) % p
        v[:] = acc
    return ~v.any(axis=1)
