"""Derivation algebras as null spaces of the Leibniz system.

A linear map ``D`` is stored as a ``d x d`` matrix whose column ``k`` holds the
coordinates of ``D(b_k)``.  Flattened vectors are row-major: index
``m * d + k`` carries ``D[m, k]``, the ``b_m``-coordinate of ``D(b_k)``.
"""
from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

import numpy as np

from .linalg import EchelonBasis, LinalgError, SparseMatrix, echelon, null_space, rref
from .scalar import Field
from .structure import StructureAlgebra, Symmetry

__all__ = [
    "LinearMap",
    "DerivationSpace",
    "LieReport",
    "leibniz_rows",
    "leibniz_system",
    "leibniz_residual",
    "is_derivation",
    "solve_derivations",
    "bracket",
    "lie_checks",
    "FLATTENING",
]

log = logging.getLogger(__name__)

FLATTENING = "row-major: entry m*d+k is the b_m-coordinate of D(b_k)"


class LinearMap:
    """Endomorphism of a ``d``-dimensional space over ``field``."""

    __slots__ = ("field", "mat")

    def __init__(self, field: Field, mat):
        self.field = field
        if field.modulus is None:
            arr = np.array([[Fraction(x) for x in row] for row in mat], dtype=object)
        else:
            arr = np.asarray(mat, dtype=np.int64) % field.modulus
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"linear map must be square, got shape {arr.shape}")
        self.mat = arr

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def zero(cls, field: Field, d: int) -> "LinearMap":
        return cls(field, [[0] * d for _ in range(d)])

    @classmethod
    def identity(cls, field: Field, d: int) -> "LinearMap":
        return cls(field, [[int(i == j) for j in range(d)] for i in range(d)])

    @classmethod
    def from_flat(cls, field: Field, flat, d: int) -> "LinearMap":
        if isinstance(flat, dict):
            rows = [[0] * d for _ in range(d)]
            for idx, v in flat.items():
                rows[idx // d][idx % d] = v
            return cls(field, rows)
        if len(flat) != d * d:
            raise ValueError(f"expected {d * d} entries, got {len(flat)}")
        return cls(field, [list(flat[m * d:(m + 1) * d]) for m in range(d)])

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[dict], d: int) -> "LinearMap":
        """Column ``k`` given as a sparse coordinate dict of ``D(b_k)``."""
        rows = [[0] * d for _ in range(d)]
        for k, col in enumerate(columns):
            for m, v in col.items():
                rows[m][k] = v
        return cls(field, rows)

    def flat(self) -> dict[int, object]:
        d = self.dim
        return {m * d + k: self.field(self.mat[m, k])
                for m, k in zip(*np.nonzero(self.mat))}

    def column(self, k: int) -> dict[int, object]:
        return {int(m): self.field(self.mat[m, k]) for m in np.flatnonzero(self.mat[:, k])}

    def apply(self, x: Sequence) -> list:
        v = self.mat.dot(np.array(list(x), dtype=self.mat.dtype))
        return self._canon(v).tolist()

    def _canon(self, arr):
        return arr % self.field.modulus if self.field.modulus is not None else arr

    def _check(self, other: "LinearMap") -> None:
        if self.field != other.field or self.dim != other.dim:
            raise ValueError("linear maps over different spaces")

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        self._check(other)
        return LinearMap(self.field, self._canon(_exact_matmul(self.mat, other.mat)))

    def __add__(self, other):
        self._check(other)
        return LinearMap(self.field, self._canon(self.mat + other.mat))

    def __sub__(self, other):
        self._check(other)
        return LinearMap(self.field, self._canon(self.mat - other.mat))

    def scale(self, c) -> "LinearMap":
        return LinearMap(self.field, self._canon(self.mat * self.field(c)))

    def is_zero(self) -> bool:
        return not np.any(self.mat != 0)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.field == other.field and self.mat.shape == other.mat.shape
                and bool(np.all(self.mat == other.mat)))

    def __repr__(self):
        return f"LinearMap(dim={self.dim}, field={self.field})"


def bracket(D1: LinearMap, D2: LinearMap) -> LinearMap:
    """Commutator ``D1 D2 - D2 D1``."""
    D1._check(D2)
    return D1 @ D2 - D2 @ D1


def all_commute(field: Field, left: Sequence, right: Sequence) -> bool:
    """True iff every map in ``left`` commutes with every map in ``right``.

    Maps are LinearMaps or flattened dicts; the test runs on integer
    rescalings, which does not change whether a bracket vanishes.
    """
    if not left or not right:
        return True
    flats = [m.flat() if isinstance(m, LinearMap) else m for m in (*left, *right)]
    d = _side(left[0]) if isinstance(left[0], LinearMap) else None
    if d is None:
        raise ValueError("pass LinearMaps so the dimension is known")
    ints = _integer_maps(field, flats, d)
    L, R = ints[:len(left)], ints[len(left):]
    p = field.modulus
    for a in L:
        for b in R:
            br = _exact_matmul(a, b) - _exact_matmul(b, a)
            if p is not None:
                br %= p
            if np.any(br != 0):
                return False
    return True


def _side(m: LinearMap) -> int:
    return m.dim


# --------------------------------------------------------------------------
# exact dense products

_FLOAT_SAFE = 2**52


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def _exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of integer (or Fraction) arrays.

    Uses float64 BLAS when every partial sum provably fits in the mantissa,
    int64 when it fits in a machine word, Python objects otherwise.
    """
    if a.dtype == object or b.dtype == object:
        if _is_integral(a) and _is_integral(b):
            a = _to_int(a)
            b = _to_int(b)
        else:
            return np.dot(a, b)
    if a.dtype == object or b.dtype == object:
        return np.dot(a.astype(object), b.astype(object))
    inner = a.shape[-1]
    bound = _max_abs(a) * _max_abs(b) * max(inner, 1)
    if bound < _FLOAT_SAFE:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    if bound < 2**62:
        return a @ b
    return np.dot(a.astype(object), b.astype(object))


def _is_integral(a: np.ndarray) -> bool:
    return all(Fraction(x).denominator == 1 for x in a.flat)


def _to_int(a: np.ndarray) -> np.ndarray:
    vals = [int(Fraction(x)) for x in a.flat]
    big = max((abs(v) for v in vals), default=0) >= 2**62
    return np.array(vals, dtype=object if big else np.int64).reshape(a.shape)


def _integer_maps(field: Field, vectors: Sequence[dict], d: int) -> np.ndarray:
    """Stack flattened maps as ``(k, d, d)`` integers, each scaled to clear denominators."""
    ints = []
    for v in vectors:
        if field.modulus is None:
            fr = {i: Fraction(x) for i, x in v.items()}
            s = lcm(*(x.denominator for x in fr.values())) if fr else 1
            ints.append({i: int(x * s) for i, x in fr.items()})
        else:
            ints.append({i: int(x) for i, x in v.items()})
    big = max((abs(x) for v in ints for x in v.values()), default=0) >= 2**62
    out = np.zeros((len(ints), d, d), dtype=object if big else np.int64)
    for a, v in enumerate(ints):
        for i, x in v.items():
            out[a, i // d, i % d] = x
    return out


# --------------------------------------------------------------------------
# the Leibniz system

def _pairs(A: StructureAlgebra, restrict: bool) -> Iterator[tuple[int, int]]:
    d = A.dim
    sym = A.symmetry if restrict else Symmetry.NONE
    for i in range(d):
        if sym is Symmetry.COMMUTATIVE:
            js = range(i, d)
        elif sym is Symmetry.ANTICOMMUTATIVE:
            js = range(i + 1, d)
        else:
            js = range(d)
        for j in js:
            yield i, j


def leibniz_rows(A: StructureAlgebra, restrict: bool = True) -> Iterator[dict[int, object]]:
    """Yield the equations of ``D(b_i b_j) = D(b_i) b_j + b_i D(b_j)`` lazily.

    One row per basis pair ``(i, j)`` and output coordinate ``m``, in that
    order; rows that vanish identically are skipped.  With ``restrict`` the
    pair range uses the algebra's (anti)commutativity.
    """
    d = A.dim
    F = A.field
    p = F.modulus
    C = A.constants
    if p is None:
        C = {ij: {k: _plain(v) for k, v in prod.items()} for ij, prod in C.items()}
    # right[j]: (l, b_l b_j) and left[i]: (l, b_i b_l) for nonzero products
    right: list[list] = [[] for _ in range(d)]
    left: list[list] = [[] for _ in range(d)]
    for (i, j), prod in sorted(C.items()):
        if prod:
            right[j].append((i, prod))
            left[i].append((j, prod))
    for i, j in _pairs(A, restrict):
        rows: dict[int, dict[int, object]] = {}
        prod = C.get((i, j))
        if prod:
            for k, c in prod.items():
                for m in range(d):
                    rows.setdefault(m, {})[m * d + k] = c
        for l, pl in right[j]:
            col = l * d + i
            for m, c in pl.items():
                r = rows.setdefault(m, {})
                r[col] = r.get(col, 0) - c
        for l, pl in left[i]:
            col = l * d + j
            for m, c in pl.items():
                r = rows.setdefault(m, {})
                r[col] = r.get(col, 0) - c
        for m in sorted(rows):
            r = rows[m]
            if p is None:
                r = {c: v for c, v in r.items() if v}
            else:
                r = {c: v % p for c, v in r.items() if v % p}
            if r:
                yield r


def _plain(v):
    """Integral Fractions become ints, which keeps row arithmetic cheap."""
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def leibniz_system(A: StructureAlgebra, restrict: bool = True) -> SparseMatrix:
    """The Leibniz equations as a sparse matrix with ``d*d`` unknowns."""
    rows = list(leibniz_rows(A, restrict))
    return SparseMatrix(len(rows), A.dim * A.dim, A.field, rows)


def leibniz_residual(A: StructureAlgebra, maps: Sequence) -> list[bool]:
    """For each map, True iff the Leibniz rule holds on every basis pair.

    ``maps`` holds LinearMaps or flattened sparse dicts.  The check is exact
    and covers all ``d*d`` ordered pairs regardless of symmetry.
    """
    d = A.dim
    F = A.field
    if not maps:
        return []
    vecs = [m.flat() if isinstance(m, LinearMap) else m for m in maps]
    Ds = _integer_maps(F, vecs, d)
    T, _ = A.integer_tensor()
    Tl = T.reshape(d * d, d)     # [(i,j), k]
    Tr = T.reshape(d, d * d)     # [l, (j,m)]
    Tm = T.transpose(1, 0, 2).reshape(d, d * d)   # [l, (i,m)]
    out = []
    for D in Ds:
        lhs = _exact_matmul(Tl, D.T).reshape(d, d, d)              # [i,j,m]
        r1 = _exact_matmul(D.T, Tr).reshape(d, d, d)               # [i,j,m]
        r2 = _exact_matmul(D.T, Tm).reshape(d, d, d).transpose(1, 0, 2)  # [i,j,m]
        res = lhs - r1 - r2
        if F.modulus is not None:
            res = res % F.modulus
        out.append(not np.any(res != 0))
    return out


def is_derivation(A: StructureAlgebra, D: LinearMap) -> bool:
    if D.dim != A.dim or D.field != A.field:
        raise ValueError("map and algebra disagree on dimension or field")
    return leibniz_residual(A, [D])[0]


# --------------------------------------------------------------------------
# solving

@dataclass
class DerivationSpace:
    algebra: StructureAlgebra
    basis: EchelonBasis
    timings: dict = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def field(self) -> Field:
        return self.algebra.field

    def maps(self) -> list[LinearMap]:
        d = self.algebra.dim
        return [LinearMap.from_flat(self.field, row, d) for row in self.basis.rows]

    def to_dict(self, emit_basis: bool = True) -> dict:
        out = {"algebra": self.algebra.name, "field": str(self.field),
               "algebra_dim": self.algebra.dim, "dim": self.dim, "flattening": FLATTENING}
        if emit_basis:
            out["basis"] = self.basis.to_list()
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


class ResidualError(LinalgError):
    """A computed derivation failed the Leibniz check."""


def solve_derivations(A: StructureAlgebra, restrict: bool = True) -> DerivationSpace:
    """``der(A)`` as the null space of the Leibniz system, residual-checked."""
    t0 = time.perf_counter()
    M = leibniz_system(A, restrict)
    t1 = time.perf_counter()
    K = null_space(M)
    t2 = time.perf_counter()
    ok = leibniz_residual(A, list(K.rows))
    if not all(ok):
        raise ResidualError(f"{ok.count(False)} basis maps of der({A.name}) fail the Leibniz rule")
    t3 = time.perf_counter()
    log.info("der(%s) over %s: %d equations, %d unknowns, dim %d",
             A.name, A.field, M.nrows, M.ncols, K.dim)
    return DerivationSpace(A, K, {"system": t1 - t0, "eliminate": t2 - t1, "verify": t3 - t2})


# --------------------------------------------------------------------------
# Lie structure

@dataclass
class LieReport:
    closed: bool
    center_dim: int
    derived_dim: int
    dim: int

    def to_dict(self) -> dict:
        return {"closed": self.closed, "center_dim": self.center_dim,
                "derived_dim": self.derived_dim, "dim": self.dim}


def _rank(field: Field, rows: list[dict], ncols: int) -> int:
    return rref(SparseMatrix(len(rows), ncols, field, rows))[0]


def lie_checks(S: DerivationSpace) -> LieReport:
    """Closure under brackets, centre dimension and derived-algebra dimension."""
    F = S.field
    k = S.dim
    d = S.algebra.dim
    if k == 0:
        return LieReport(True, 0, 0, 0)
    Ds = _integer_maps(F, S.basis.rows, d)
    p = F.modulus
    pivots = np.array(S.basis.pivots)
    # basis rows as integers; over Q all share one common denominator
    if p is None:
        den = lcm(*(Fraction(x).denominator for r in S.basis.rows for x in r.values()))
        B = np.zeros((k, d * d), dtype=object)
        for a, r in enumerate(S.basis.rows):
            for i, x in r.items():
                B[a, i] = int(Fraction(x) * den)
        B = _to_int(B)
    else:
        den = 1
        B = np.zeros((k, d * d), dtype=np.int64)
        for a, r in enumerate(S.basis.rows):
            for i, x in r.items():
                B[a, i] = x
    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    brackets = []
    for a, b in pairs:
        br = _exact_matmul(Ds[a], Ds[b]) - _exact_matmul(Ds[b], Ds[a])
        brackets.append(br.reshape(-1))
    V = np.array(brackets, dtype=brackets[0].dtype) if brackets else np.zeros((0, d * d), np.int64)
    if p is not None:
        V %= p
    coords = V[:, pivots] if len(V) else np.zeros((0, k), dtype=V.dtype)
    recon = _exact_matmul(coords, B) if len(V) else V
    lhs = V * den if p is None else V
    diff = lhs - recon
    if p is not None:
        diff %= p
    closed = not np.any(diff != 0)

    if closed:
        # structure constants in this basis (up to a nonzero scale per pair)
        f = {}
        for (a, b), row in zip(pairs, coords):
            f[(a, b)] = {c: int(x) for c, x in enumerate(row) if x}
        derived_rows = [dict(v) for v in f.values() if v]
        derived_dim = _rank(F, derived_rows, k)
        center_rows = []
        for a in range(k):
            row = {}
            for b in range(k):
                if a == b:
                    continue
                src = f[(a, b)] if a < b else {c: -x for c, x in f[(b, a)].items()}
                for c, x in src.items():
                    row[b * k + c] = x
            center_rows.append(row)
        # the centre is the left kernel of this k x k^2 matrix
        center_dim = k - _rank(F, [r for r in center_rows if r], k * k)
    else:
        vec_rows = [{i: int(x) for i, x in enumerate(v) if x} for v in V]
        derived_dim = _rank(F, [r for r in vec_rows if r], d * d)
        center_rows = []
        for a in range(k):
            row = {}
            for b in range(k):
                if a == b:
                    continue
                lo, hi = min(a, b), max(a, b)
                v = vec_rows[pairs.index((lo, hi))]
                sign = 1 if a < b else -1
                for i, x in v.items():
                    row[b * d * d + i] = sign * x
            center_rows.append(row)
        center_dim = k - _rank(F, [r for r in center_rows if r], k * d * d)
    return LieReport(bool(closed), int(center_dim), int(derived_dim), k)
