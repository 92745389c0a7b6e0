"""Exact sparse linear algebra over Q and F_p.

Row reduction splits the system into the connected components of its
row/column incidence graph and reduces each block on its own.  Blocks over
F_p go through the dense kernels in :mod:`octoder.kernels`; blocks over Q use
fraction-free integer elimination with content stripping, followed by one
normalisation pass into reduced row echelon form.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .scalar import Field, parse_field

__all__ = [
    "SparseMatrix",
    "EchelonBasis",
    "LinalgError",
    "rref",
    "null_space",
    "echelon",
    "span_equal",
    "in_span",
]

log = logging.getLogger(__name__)

Row = Mapping[int, object]


class LinalgError(ValueError):
    pass


class SparseMatrix:
    """Row-compressed matrix of raw field values; no explicit zeros."""

    def __init__(self, nrows: int, ncols: int, field: Field, rows: Iterable[Row] = ()):
        self.field = field
        self.ncols = ncols
        indptr = [0]
        indices: list[int] = []
        data: list = []
        F = field
        for row in rows:
            for c in sorted(row):
                v = row[c]
                if F.modulus is not None:
                    v = v % F.modulus
                if not v:
                    continue
                if not 0 <= c < ncols:
                    raise LinalgError(f"column {c} out of range")
                indices.append(c)
                data.append(v)
            indptr.append(len(indices))
        if len(indptr) - 1 > nrows:
            raise LinalgError(f"{len(indptr) - 1} rows supplied for a {nrows}-row matrix")
        indptr.extend([len(indices)] * (nrows - (len(indptr) - 1)))
        self.nrows = nrows
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        if F.modulus is not None:
            self.data = np.asarray(data, dtype=np.int64)
        else:
            self.data = data

    @classmethod
    def from_rows(cls, ncols: int, field: Field, rows: Iterable[Row]) -> "SparseMatrix":
        rows = list(rows) if not isinstance(rows, list) else rows
        return cls(len(rows), ncols, field, rows)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, field: Field,
                     entries: Iterable[tuple[int, int, object]]) -> "SparseMatrix":
        rows: list[dict] = [{} for _ in range(nrows)]
        for r, c, v in entries:
            if not 0 <= r < nrows:
                raise LinalgError(f"row {r} out of range")
            if c in rows[r]:
                raise LinalgError(f"duplicate entry at {(r, c)}")
            rows[r][c] = field(v)
        return cls(nrows, ncols, field, rows)

    @classmethod
    def from_dense(cls, field: Field, matrix: Sequence[Sequence]) -> "SparseMatrix":
        ncols = len(matrix[0]) if len(matrix) else 0
        rows = [{j: field(v) for j, v in enumerate(r) if v} for r in matrix]
        return cls(len(rows), ncols, field, rows)

    @property
    def nnz(self) -> int:
        return len(self.indices)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> dict[int, object]:
        a, b = self.indptr[i], self.indptr[i + 1]
        cols = self.indices[a:b].tolist()
        vals = self.data[a:b]
        if isinstance(vals, np.ndarray):
            vals = vals.tolist()
        return dict(zip(cols, vals))

    def rows(self) -> Iterator[dict[int, object]]:
        for i in range(self.nrows):
            yield self.row(i)

    def entries(self) -> Iterator[tuple[int, int, object]]:
        for i in range(self.nrows):
            for c, v in self.row(i).items():
                yield i, c, v

    def to_dense(self) -> list[list]:
        out = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for i, c, v in self.entries():
            out[i][c] = self.field(v)
        return out

    # -- text format ------------------------------------------------------
    def to_text(self) -> str:
        F = self.field
        lines = [f"{self.nrows} {self.ncols} {F}"]
        lines += [f"{i} {c} {F.format(v)}" for i, c, v in self.entries()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise LinalgError("empty matrix file")
        try:
            r, c, fld = lines[0].split()
            F = parse_field(fld)
            entries = []
            for ln in lines[1:]:
                i, j, v = ln.split()
                entries.append((int(i), int(j), F.parse(v)))
            return cls.from_entries(int(r), int(c), F, entries)
        except ValueError as exc:
            raise LinalgError(f"malformed matrix text: {exc}") from None

    # -- products ---------------------------------------------------------
    def _integer_csr(self) -> csr_matrix:
        """Integer matrix whose rows are positive multiples of this one's."""
        if self.field.modulus is not None:
            data = self.data
        else:
            data = []
            for i in range(self.nrows):
                a, b = self.indptr[i], self.indptr[i + 1]
                data.extend(_as_ints(dict(enumerate(self.data[a:b]))).values())
            big = max((abs(v) for v in data), default=0) >= 2**40
            data = np.array(data, dtype=object if big else np.int64)
        return csr_matrix((data, self.indices, self.indptr), shape=self.shape)

    def annihilates(self, vectors: "EchelonBasis | Sequence[Row]") -> bool:
        """True iff ``M v = 0`` exactly for every given vector."""
        vecs = vectors.rows if isinstance(vectors, EchelonBasis) else list(vectors)
        if not vecs or self.nrows == 0:
            return True
        V, _ = _integer_columns(self.field, vecs, self.ncols)
        M = self._integer_csr()
        p = self.field.modulus
        if V.dtype == object or M.dtype == object:
            return _object_annihilates(M, V, p)
        # per-entry bound on |sum_k M_ik V_kj|
        row_nnz = np.diff(self.indptr).max(initial=0)
        bound = int(row_nnz) * int(np.abs(M.data).max(initial=0)) * int(np.abs(V).max(initial=0))
        if bound >= 2**62:
            return _object_annihilates(M, V, p)
        R = M @ V
        if p is not None:
            R %= p
        return not np.any(R)


def _object_annihilates(M: csr_matrix, V: np.ndarray, p) -> bool:
    Mi = M.tocsr()
    for i in range(Mi.shape[0]):
        a, b = Mi.indptr[i], Mi.indptr[i + 1]
        cols = Mi.indices[a:b]
        vals = [int(x) for x in Mi.data[a:b]]
        for j in range(V.shape[1]):
            s = sum(v * int(V[c, j]) for v, c in zip(vals, cols))
            if (s % p if p else s) != 0:
                return False
    return True


def _integer_columns(field: Field, vecs: Sequence[Row], n: int) -> tuple[np.ndarray, list[int]]:
    """Stack vectors as integer columns, each scaled by its denominator lcm."""
    scales = []
    cols = []
    for v in vecs:
        if field.modulus is not None:
            scales.append(1)
            cols.append({c: int(x) for c, x in v.items()})
        else:
            fr = {c: Fraction(x) for c, x in v.items()}
            s = lcm(*(x.denominator for x in fr.values())) if fr else 1
            scales.append(s)
            cols.append({c: int(x * s) for c, x in fr.items()})
    big = max((abs(x) for col in cols for x in col.values()), default=0) >= 2**40
    V = np.zeros((n, len(vecs)), dtype=object if big else np.int64)
    for j, col in enumerate(cols):
        for c, x in col.items():
            V[c, j] = x
    return V, scales


@dataclass(frozen=True, eq=False)
class EchelonBasis:
    """Rows in reduced row echelon form: unit pivots, strictly increasing.

    Two spans are equal exactly when their echelon bases are identical.
    """

    field: Field
    ncols: int
    rows: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, EchelonBasis):
            return NotImplemented
        return (self.field == other.field and self.ncols == other.ncols
                and self.pivots == other.pivots and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.ncols, self.pivots))

    def dense(self) -> list[list]:
        zero = self.field.zero
        return [[r.get(c, zero) for c in range(self.ncols)] for r in self.rows]

    def to_list(self) -> list[list[str]]:
        F = self.field
        return [[F.format(x) for x in row] for row in self.dense()]

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_list(), **kw)

    @classmethod
    def from_json(cls, text: str, field: Field, ncols: int | None = None) -> "EchelonBasis":
        data = json.loads(text)
        n = ncols if ncols is not None else (len(data[0]) if data else 0)
        return echelon([[field.parse(x) for x in row] for row in data], field, n)

    def __contains__(self, v) -> bool:
        return in_span(v, self)

    def __repr__(self):
        return f"EchelonBasis(dim={self.dim}, ncols={self.ncols}, field={self.field})"


# --------------------------------------------------------------------------
# block elimination

def _normalize_fp(row: dict, p: int) -> dict:
    lead = row[min(row)]
    if lead == 1:
        return row
    inv = pow(lead, -1, p)
    return {c: v * inv % p for c, v in row.items()}


def _as_ints(row: Mapping) -> dict:
    """Integer multiple of a rational row (the row itself if already integral)."""
    if all(type(v) is int for v in row.values()):
        return dict(row)
    fr = {c: Fraction(v) for c, v in row.items()}
    s = lcm(*(v.denominator for v in fr.values()))
    return {c: int(v * s) for c, v in fr.items()}


def _primitive_int(row: dict) -> dict:
    ints = _as_ints(row)
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if ints[min(ints)] < 0:
        g = -g
    return {c: v // g for c, v in ints.items()}


def _components(M: SparseMatrix) -> tuple[int, np.ndarray]:
    """Connected components of columns linked by shared rows."""
    n = M.ncols
    if M.nnz == 0:
        return n, np.arange(n)
    counts = np.diff(M.indptr)
    firsts = M.indices[M.indptr[:-1][counts > 0]]
    src = np.repeat(firsts, counts[counts > 0])
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, M.indices)), shape=(n, n))
    return connected_components(graph, directed=False)


def _reduce_block_fp(rows: list[dict], cols: np.ndarray, p: int) -> list[dict]:
    c = len(cols)
    local = {int(g): k for k, g in enumerate(cols)}
    chunk = max(256, 2 * c)
    E = np.zeros((0, c), dtype=np.int64)
    pivots: list[int] = []
    for start in range(0, len(rows), chunk):
        part = rows[start:start + chunk]
        A = np.zeros((E.shape[0] + len(part), c), dtype=np.int64)
        A[:E.shape[0]] = E
        for i, row in enumerate(part, start=E.shape[0]):
            for g, v in row.items():
                A[i, local[g]] = v
        rank, pivots = kernels.rref_modp(A, p)
        E = np.ascontiguousarray(A[:rank])
        if rank == c:
            break
    out = []
    for r, pc in enumerate(pivots):
        nz = np.flatnonzero(E[r])
        out.append({int(cols[k]): int(E[r, k]) for k in nz})
    return out


def _reduce_block_q(rows: list[dict], cols: np.ndarray) -> list[dict]:
    c = len(cols)
    local = {int(g): k for k, g in enumerate(cols)}
    piv: dict[int, list[int]] = {}
    order: list[int] = []
    for row in rows:
        v = [0] * c
        for g, x in row.items():
            v[local[g]] = x
        for pc in order:
            f = v[pc]
            if not f:
                continue
            prow = piv[pc]
            pv = prow[pc]
            g0 = gcd(pv, f)
            a, b = pv // g0, f // g0
            v = [a * x - b * y for x, y in zip(v, prow)]
            g = 0
            for x in v:
                if x:
                    g = gcd(g, x)
                    if g == 1:
                        break
            if g > 1:
                v = [x // g for x in v]
        lead = next((k for k, x in enumerate(v) if x), None)
        if lead is None:
            continue
        if v[lead] < 0:
            v = [-x for x in v]
        piv[lead] = v
        order = sorted(piv)
        if len(piv) == c:
            break
    # back substitution into reduced form over Q
    reduced: dict[int, list[Fraction]] = {}
    for pc in reversed(order):
        pv = piv[pc][pc]
        fr = [Fraction(x, pv) if x else 0 for x in piv[pc]]
        for qc in order:
            if qc <= pc or not fr[qc]:
                continue
            f = fr[qc]
            qrow = reduced[qc]
            fr = [x - f * y if y else x for x, y in zip(fr, qrow)]
        reduced[pc] = fr
    out = []
    for pc in order:
        out.append({int(cols[k]): Fraction(x) for k, x in enumerate(reduced[pc]) if x})
    return out


def _reduce(M: SparseMatrix) -> list[dict]:
    """RREF rows (sparse dicts over global columns), sorted by pivot."""
    F = M.field
    p = F.modulus
    ncomp, labels = _components(M)
    blocks: dict[int, list[dict]] = {}
    seen: set = set()
    for i in range(M.nrows):
        row = M.row(i)
        if not row:
            continue
        row = _normalize_fp(row, p) if p is not None else _primitive_int(row)
        key = tuple(sorted(row.items()))
        if key in seen:
            continue
        seen.add(key)
        blocks.setdefault(int(labels[min(row)]), []).append(row)
    del seen
    cols_of = _group_columns(labels, ncomp)
    out: list[dict] = []
    for comp in sorted(blocks, key=lambda k: int(cols_of[k][0])):
        cols = cols_of[comp]
        rows = blocks[comp]
        if p is not None:
            out.extend(_reduce_block_fp(rows, cols, p))
        else:
            out.extend(_reduce_block_q(rows, cols))
    if log.isEnabledFor(logging.DEBUG):
        sizes = sorted((len(cols_of[k]) for k in blocks), reverse=True)
        log.debug("%d blocks, largest %s", len(blocks), sizes[:5])
    out.sort(key=min)
    return out


def _group_columns(labels: np.ndarray, ncomp: int) -> list[np.ndarray]:
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(ncomp + 1))
    return [order[bounds[k]:bounds[k + 1]] for k in range(ncomp)]


def _basis(field: Field, ncols: int, rows: list[dict]) -> EchelonBasis:
    if field.modulus is None:
        rows = [{c: Fraction(v) for c, v in r.items()} for r in rows]
    return EchelonBasis(field, ncols, tuple(rows), tuple(min(r) for r in rows))


def rref(M: SparseMatrix) -> tuple[int, EchelonBasis]:
    """Rank and reduced echelon basis of the row space of ``M``."""
    rows = _reduce(M)
    return len(rows), _basis(M.field, M.ncols, rows)


def echelon(vectors: Iterable, field: Field, ncols: int) -> EchelonBasis:
    """Echelon basis of the span of the given vectors (dense lists or dicts)."""
    rows = []
    for v in vectors:
        if isinstance(v, Mapping):
            rows.append({c: field(x) for c, x in v.items()})
        else:
            if len(v) != ncols:
                raise LinalgError(f"vector of length {len(v)} in {ncols}-space")
            rows.append({c: field(x) for c, x in enumerate(v) if x})
    M = SparseMatrix(len(rows), ncols, field, rows)
    return rref(M)[1]


def null_space(M: SparseMatrix, check: bool = True) -> EchelonBasis:
    """Echelon basis of ``{v : M v = 0}``.

    Rank-nullity and the residual ``M v = 0`` are verified for every basis
    vector unless ``check`` is false.
    """
    F = M.field
    n = M.ncols
    rows = _reduce(M)
    pivots = {min(r): r for r in rows}
    by_col: dict[int, list[tuple[int, object]]] = {}
    for pc, r in pivots.items():
        for c, v in r.items():
            if c != pc:
                by_col.setdefault(c, []).append((pc, v))
    kernel = []
    for f in range(n):
        if f in pivots:
            continue
        v = {f: F.one}
        for pc, x in by_col.get(f, ()):
            v[pc] = F.neg(x)
        kernel.append(v)
    K = echelon(kernel, F, n) if kernel else EchelonBasis(F, n, (), ())
    if K.dim + len(rows) != n:
        raise LinalgError(f"rank-nullity violated: {len(rows)} + {K.dim} != {n}")
    if check and not M.annihilates(K):
        raise LinalgError("null-space residual check failed")
    return K


def _check_compatible(a: EchelonBasis, b: EchelonBasis) -> None:
    if a.field != b.field:
        raise LinalgError(f"field mismatch: {a.field} vs {b.field}")
    if a.ncols != b.ncols:
        raise LinalgError(f"dimension mismatch: {a.ncols} vs {b.ncols}")


def span_equal(a: EchelonBasis, b: EchelonBasis) -> bool:
    _check_compatible(a, b)
    return a == b


def reduce_vector(v, basis: EchelonBasis) -> dict:
    """Remainder of ``v`` after eliminating the pivots of ``basis``."""
    F = basis.field
    if isinstance(v, Mapping):
        w = {c: F(x) for c, x in v.items() if x}
        if any(not 0 <= c < basis.ncols for c in w):
            raise LinalgError("vector index out of range")
    else:
        if len(v) != basis.ncols:
            raise LinalgError(f"vector of length {len(v)} in {basis.ncols}-space")
        w = {c: F(x) for c, x in enumerate(v) if x}
    w = {c: x for c, x in w.items() if x}
    for pc, row in zip(basis.pivots, basis.rows):
        f = w.get(pc)
        if not f:
            continue
        for c, x in row.items():
            y = F.sub(w.get(c, F.zero), F.mul(f, x))
            if y:
                w[c] = y
            else:
                w.pop(c, None)
    return w


def in_span(v, basis: EchelonBasis) -> bool:
    return not reduce_vector(v, basis)


def contains(big: EchelonBasis, small: EchelonBasis) -> bool:
    """True iff span(small) is a subspace of span(big)."""
    _check_compatible(big, small)
    return all(in_span(r, big) for r in small.rows)
