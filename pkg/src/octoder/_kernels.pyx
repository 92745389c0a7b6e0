# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels over F_p.

Same contract as :mod:`octoder._kernels_py`; see that module for docs.
"""
import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p) nogil:
    # extended Euclid, a in (0, p)
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(i64[:, ::1] a not None, i64 p):
    """In-place reduced row echelon form of ``a`` modulo ``p``.

    Entries must already lie in ``[0, p)``.  Returns ``(rank, pivots)``;
    afterwards rows ``0..rank-1`` hold the reduced basis and the rest are zero.
    """
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, piv, nnz
    cdef i64 inv, f, t
    cdef i64[::1] support = np.empty(n, dtype=np.int64)
    pivots = []
    with nogil:
        for c in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, n):
                    t = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = t
            inv = _inv(a[r, c], p)
            nnz = 0
            for j in range(c, n):
                if a[r, j] != 0:
                    a[r, j] = (a[r, j] * inv) % p
                    support[nnz] = j
                    nnz += 1
            for i in range(m):
                if i == r:
                    continue
                f = a[i, c]
                if f == 0:
                    continue
                f = p - f
                for k in range(nnz):
                    j = support[k]
                    a[i, j] = (a[i, j] + f * a[r, j]) % p
            with gil:
                pivots.append(c)
            r += 1
    return r, pivots


def reduce_modp(i64[:, ::1] basis not None, i64[::1] pivots not None,
                i64[:, ::1] v not None, i64 p):
    """Reduce every row of ``v`` in place against an RREF ``basis``.

    Returns a boolean array: True where the row reduced to zero.
    """
    cdef Py_ssize_t nb = basis.shape[0], n = basis.shape[1], nv = v.shape[0]
    cdef Py_ssize_t i, r, j, c
    cdef i64 f
    out = np.ones(nv, dtype=bool)
    cdef cnp.npy_bool[::1] zero = out
    with nogil:
        for i in range(nv):
            for r in range(nb):
                c = pivots[r]
                f = v[i, c]
                if f == 0:
                    continue
                f = p - f
                for j in range(n):
                    if basis[r, j] != 0:
                        v[i, j] = (v[i, j] + f * basis[r, j]) % p
            for j in range(n):
                if v[i, j] != 0:
                    zero[i] = 0
                    break
    return out
