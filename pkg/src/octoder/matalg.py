"""Matrix algebras over the octonions: h_n(O), a_n(O) and M_n(O).

Structure constants come from generic octonionic matrix multiplication; the
closed-form product families in :func:`crosscheck_products` are evaluated
separately and compared against them.

Basis order (fixed, so exported tensors are reproducible):

* ``h`` -- ``E(i,i)`` for i = 1..n, then ``z*E(i,j)+conj`` for i < j
  lexicographic, z running over 1, e1, ..., e7.
* ``a`` -- ``e_k*E(t,t)`` for t = 1..n and k = 1..7, then ``z*E(t,r)-conj``
  for t < r as above.
* ``m`` -- ``z*E(i,j)`` for all (i, j) lexicographic, diagonal entries first.

Indices in labels are 1-based; everything in code is 0-based.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .octonion import OctonionAlgebra, OctType, Octonion, build_octonion
from .scalar import Field, QQ, FieldError
from .structure import StructureAlgebra, Symmetry

__all__ = [
    "Kind",
    "MatrixSpaceSpec",
    "OctMatrix",
    "ConstructionError",
    "matmul_oct",
    "basis_enumerate",
    "coordinates",
    "build_algebra",
    "crosscheck_products",
    "expected_dimension",
]


class ConstructionError(RuntimeError):
    """A product left the span of the enumerated basis."""


class Kind(Enum):
    HERMITIAN = "HermitianAnticommutator"
    ANTIHERMITIAN = "AntihermitianCommutator"
    FULL_STANDARD = "FullStandard"
    FULL_COMMUTATOR = "FullCommutator"
    FULL_ANTICOMMUTATOR = "FullAnticommutator"

    @property
    def is_full(self) -> bool:
        return self.name.startswith("FULL")

    @property
    def short(self) -> str:
        return _SHORT[self]


_SHORT = {
    Kind.HERMITIAN: "h",
    Kind.ANTIHERMITIAN: "a",
    Kind.FULL_STANDARD: "m_std",
    Kind.FULL_COMMUTATOR: "m_comm",
    Kind.FULL_ANTICOMMUTATOR: "m_anticomm",
}


def kind_from_cli(space: str, product: str | None = None) -> Kind:
    if space == "h":
        return Kind.HERMITIAN
    if space == "a":
        return Kind.ANTIHERMITIAN
    if space == "m":
        return {"std": Kind.FULL_STANDARD, "comm": Kind.FULL_COMMUTATOR,
                "anticomm": Kind.FULL_ANTICOMMUTATOR}[product or "std"]
    raise ValueError(f"unknown space {space!r}")


@dataclass(frozen=True)
class MatrixSpaceSpec:
    kind: Kind
    n: int
    oct_type: OctType = OctType.I
    field: Field = QQ

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"matrix size must be a positive integer, got {self.n!r}")
        if self.field.characteristic == 2:
            raise FieldError("characteristic two excluded")
        object.__setattr__(self, "oct_type", OctType.coerce(self.oct_type))

    @property
    def label(self) -> str:
        return f"{self.kind.short}_{self.n}"

    @property
    def key(self) -> str:
        return f"{self.kind.short}_{self.n}_{self.oct_type.value}_{self.field}"

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "n": self.n, "oct_type": self.oct_type.value,
                "field": str(self.field)}

    @classmethod
    def from_dict(cls, data: dict) -> "MatrixSpaceSpec":
        from .scalar import parse_field
        return cls(Kind(data["kind"]), int(data["n"]), OctType.coerce(data["oct_type"]),
                   parse_field(data["field"]))

    def octonions(self) -> OctonionAlgebra:
        return build_octonion(self.field, self.oct_type)


def expected_dimension(kind: Kind, n: int) -> int:
    if kind is Kind.HERMITIAN:
        return 4 * n * n - 3 * n
    if kind is Kind.ANTIHERMITIAN:
        return 4 * n * n + 3 * n
    return 8 * n * n


class OctMatrix:
    """Sparse ``n x n`` matrix with octonion entries.

    ``entries`` maps ``(i, j)`` to a coordinate tuple of raw field values;
    zero entries are never stored.
    """

    __slots__ = ("algebra", "n", "entries")

    def __init__(self, algebra: OctonionAlgebra, n: int,
                 entries: Mapping[tuple[int, int], tuple] | None = None):
        self.algebra = algebra
        self.n = n
        self.entries = {k: tuple(v) for k, v in (entries or {}).items() if any(v)}

    @classmethod
    def unit(cls, algebra: OctonionAlgebra, n: int, i: int, j: int, z=None) -> "OctMatrix":
        """``z E_ij`` (``z`` defaults to 1)."""
        coords = algebra.one.coords if z is None else _coords(algebra, z)
        return cls(algebra, n, {(i, j): coords})

    @classmethod
    def identity(cls, algebra: OctonionAlgebra, n: int) -> "OctMatrix":
        return cls(algebra, n, {(i, i): algebra.one.coords for i in range(n)})

    @classmethod
    def from_rows(cls, algebra: OctonionAlgebra, rows) -> "OctMatrix":
        n = len(rows)
        return cls(algebra, n, {(i, j): _coords(algebra, z)
                                for i, row in enumerate(rows) for j, z in enumerate(row)})

    @classmethod
    def scalar_matrix(cls, algebra: OctonionAlgebra, A) -> "OctMatrix":
        """Embed an ``n x n`` matrix of field scalars."""
        F = algebra.field
        n = len(A)
        return cls(algebra, n, {(i, j): (F(A[i][j]),) + (F.zero,) * 7
                                for i in range(n) for j in range(n) if F(A[i][j])})

    def __getitem__(self, ij) -> Octonion:
        return Octonion(self.algebra, self.entries.get(ij, self.algebra.zero.coords))

    def _combine(self, other: "OctMatrix", sign: int) -> "OctMatrix":
        _check_pair(self, other)
        F = self.algebra.field
        out = dict(self.entries)
        for k, v in other.entries.items():
            base = out.get(k)
            if base is None:
                out[k] = v if sign > 0 else tuple(F.neg(x) for x in v)
            else:
                out[k] = tuple(F.add(a, b) if sign > 0 else F.sub(a, b) for a, b in zip(base, v))
        return OctMatrix(self.algebra, self.n, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "OctMatrix":
        F = self.algebra.field
        c = F(c)
        return OctMatrix(self.algebra, self.n,
                         {k: tuple(F.mul(c, x) for x in v) for k, v in self.entries.items()})

    def __matmul__(self, other):
        return matmul_oct(self, other)

    def map_entries(self, f) -> "OctMatrix":
        return OctMatrix(self.algebra, self.n, {k: f(v) for k, v in self.entries.items()})

    def star(self) -> "OctMatrix":
        """Conjugate transpose."""
        conj = self.algebra.conj_coords
        return OctMatrix(self.algebra, self.n, {(j, i): conj(v) for (i, j), v in self.entries.items()})

    def is_hermitian(self) -> bool:
        return self.star() == self

    def is_antihermitian(self) -> bool:
        return self.star() == -self

    def __eq__(self, other):
        if not isinstance(other, OctMatrix):
            return NotImplemented
        return self.algebra == other.algebra and self.n == other.n and self.entries == other.entries

    def __repr__(self):
        body = ", ".join(f"({i + 1},{j + 1}): {Octonion(self.algebra, v)}"
                         for (i, j), v in sorted(self.entries.items()))
        return f"OctMatrix(n={self.n}, {{{body}}})"


def _coords(algebra: OctonionAlgebra, z) -> tuple:
    if isinstance(z, Octonion):
        if z.algebra != algebra:
            raise ValueError("octonion from a different algebra")
        return z.coords
    return algebra.scalar(z).coords


def _check_pair(x: OctMatrix, y: OctMatrix) -> None:
    if x.n != y.n:
        raise ValueError(f"size mismatch: {x.n} vs {y.n}")
    if x.algebra != y.algebra:
        raise ValueError("matrices over different octonion algebras")


def matmul_oct(x: OctMatrix, y: OctMatrix) -> OctMatrix:
    """Row-by-column product; each entry is ``sum_k x_ik y_kj`` (no reassociation)."""
    _check_pair(x, y)
    A = x.algebra
    F = A.field
    by_row: dict[int, list] = {}
    for (k, j), v in y.entries.items():
        by_row.setdefault(k, []).append((j, v))
    out: dict[tuple[int, int], list] = {}
    for (i, k), u in x.entries.items():
        for j, v in by_row.get(k, ()):
            prod = A.mul_coords(u, v)
            acc = out.get((i, j))
            out[(i, j)] = prod if acc is None else tuple(F.add(a, b) for a, b in zip(acc, prod))
    return OctMatrix(A, x.n, out)


# -- bases ------------------------------------------------------------------

def _off_diagonal_pairs(n: int):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def basis_enumerate(spec: MatrixSpaceSpec, algebra: OctonionAlgebra | None = None
                    ) -> list[tuple[str, OctMatrix]]:
    """Labelled basis in the documented order."""
    A = algebra or spec.octonions()
    n = spec.n
    e = [A.basis(k) for k in range(8)]
    out: list[tuple[str, OctMatrix]] = []
    if spec.kind is Kind.HERMITIAN:
        for i in range(n):
            out.append((f"E({i + 1},{i + 1})", OctMatrix.unit(A, n, i, i)))
        for i, j in _off_diagonal_pairs(n):
            for k in range(8):
                m = OctMatrix(A, n, {(i, j): e[k].coords, (j, i): e[k].conj().coords})
                out.append((f"{A.labels[k]}*E({i + 1},{j + 1})+conj", m))
    elif spec.kind is Kind.ANTIHERMITIAN:
        for t in range(n):
            for k in range(1, 8):
                out.append((f"{A.labels[k]}*E({t + 1},{t + 1})", OctMatrix.unit(A, n, t, t, e[k])))
        for t, r in _off_diagonal_pairs(n):
            for k in range(8):
                m = OctMatrix(A, n, {(t, r): e[k].coords, (r, t): (-e[k].conj()).coords})
                out.append((f"{A.labels[k]}*E({t + 1},{r + 1})-conj", m))
    else:
        positions = [(i, i) for i in range(n)] + [(i, j) for i in range(n)
                                                  for j in range(n) if i != j]
        for i, j in positions:
            for k in range(8):
                out.append((f"{A.labels[k]}*E({i + 1},{j + 1})", OctMatrix.unit(A, n, i, j, e[k])))
    return out


class _Coordinatizer:
    """Expresses matrices of a given space in its enumerated basis, exactly."""

    def __init__(self, spec: MatrixSpaceSpec):
        self.spec = spec
        n = spec.n
        self.offset: dict[tuple[int, int], int] = {}
        if spec.kind is Kind.HERMITIAN:
            for i in range(n):
                self.offset[(i, i)] = i
            base = n
        elif spec.kind is Kind.ANTIHERMITIAN:
            for t in range(n):
                # coordinate k (1..7) of the diagonal entry sits at 7t + k - 1
                self.offset[(t, t)] = 7 * t - 1
            base = 7 * n
        else:
            base = 0
            positions = [(i, i) for i in range(n)] + [(i, j) for i in range(n)
                                                      for j in range(n) if i != j]
            for idx, pos in enumerate(positions):
                self.offset[pos] = 8 * idx
        if not spec.kind.is_full:
            for idx, pos in enumerate(_off_diagonal_pairs(n)):
                self.offset[pos] = base + 8 * idx
        self.dim = expected_dimension(spec.kind, n)

    def __call__(self, x: OctMatrix) -> dict[int, object]:
        kind = self.spec.kind
        F = x.algebra.field
        out: dict[int, object] = {}
        if kind.is_full:
            for pos, v in x.entries.items():
                off = self.offset[pos]
                for k, c in enumerate(v):
                    if c:
                        out[off + k] = c
            return out
        conj = x.algebra.conj_coords
        zero = (F.zero,) * 8
        for (i, j), v in x.entries.items():
            if i == j:
                off = self.offset[(i, i)]
                if kind is Kind.HERMITIAN:
                    if any(v[1:]):
                        raise ConstructionError(f"non-real diagonal entry at {(i + 1, j + 1)}")
                    out[off] = v[0]
                else:
                    if v[0]:
                        raise ConstructionError(f"non-pure diagonal entry at {(i + 1, j + 1)}")
                    for k in range(1, 8):
                        if v[k]:
                            out[off + k] = v[k]
                continue
            if i > j:
                continue
            off = self.offset[(i, j)]
            for k, c in enumerate(v):
                if c:
                    out[off + k] = c
        # the lower triangle must mirror the upper one
        for (i, j), v in x.entries.items():
            if i > j:
                upper = conj(x.entries.get((j, i), zero))
                if kind is Kind.ANTIHERMITIAN:
                    upper = tuple(F.neg(c) for c in upper)
                if tuple(v) != tuple(upper):
                    raise ConstructionError(f"entry {(i + 1, j + 1)} breaks the symmetry of {kind.value}")
        for (i, j) in x.entries:
            if i < j and (j, i) not in x.entries:
                raise ConstructionError(f"entry {(j + 1, i + 1)} missing its mirror")
        return out


def coordinates(spec: MatrixSpaceSpec, x: OctMatrix) -> dict[int, object]:
    """Sparse coordinates of ``x`` in the enumerated basis of ``spec``.

    Raises :class:`ConstructionError` if ``x`` is not in the space.
    """
    return _Coordinatizer(spec)(x)


def _product(kind: Kind, x: OctMatrix, y: OctMatrix) -> OctMatrix:
    xy = matmul_oct(x, y)
    if kind is Kind.FULL_STANDARD:
        return xy
    yx = matmul_oct(y, x)
    if kind in (Kind.HERMITIAN, Kind.FULL_ANTICOMMUTATOR):
        return xy + yx
    return xy - yx


def space_product(spec: MatrixSpaceSpec, x: OctMatrix, y: OctMatrix) -> OctMatrix:
    """The algebra product of ``spec`` (anticommutator, commutator or plain)."""
    return _product(spec.kind, x, y)


_SYMMETRY = {
    Kind.HERMITIAN: Symmetry.COMMUTATIVE,
    Kind.FULL_ANTICOMMUTATOR: Symmetry.COMMUTATIVE,
    Kind.ANTIHERMITIAN: Symmetry.ANTICOMMUTATIVE,
    Kind.FULL_COMMUTATOR: Symmetry.ANTICOMMUTATIVE,
    Kind.FULL_STANDARD: Symmetry.NONE,
}


def build_algebra(spec: MatrixSpaceSpec) -> StructureAlgebra:
    """Structure constants of the matrix space under its product."""
    A = spec.octonions()
    basis = basis_enumerate(spec, A)
    coord = _Coordinatizer(spec)
    d = len(basis)
    if d != coord.dim:
        raise ConstructionError(f"enumerated {d} basis elements, expected {coord.dim}")
    constants: dict[tuple[int, int], dict[int, object]] = {}
    mats = [m for _, m in basis]
    for i in range(d):
        for j in range(d):
            prod = _product(spec.kind, mats[i], mats[j])
            c = coord(prod)
            if c:
                constants[(i, j)] = c
    return StructureAlgebra(spec.field, d, [lab for lab, _ in basis], constants,
                            _SYMMETRY[spec.kind], name=spec.label,
                            meta={"spec": {**spec.to_dict(), "name": spec.label,
                                           "symmetry": _SYMMETRY[spec.kind].value}})


# -- closed-form cross-checks ----------------------------------------------

@dataclass
class FamilyResult:
    family: str
    formula: str
    cases: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {"family": self.family, "formula": self.formula, "cases": self.cases,
                "failures": self.failures, "passed": self.passed}


class _Checker:
    def __init__(self, spec: MatrixSpaceSpec, alg: StructureAlgebra):
        self.spec = spec
        self.alg = alg
        self.A = spec.octonions()
        self.coord = _Coordinatizer(spec)
        self.covered: set[tuple[int, int]] = set()
        self.results: list[FamilyResult] = []

    def vec(self, m: OctMatrix) -> dict:
        return self.coord(m)

    def run(self, family: str, formula: str, cases: Iterable[tuple[OctMatrix, OctMatrix, OctMatrix]]):
        total = bad = 0
        for x, y, rhs in cases:
            u, v = self.vec(x), self.vec(y)
            got = self.alg.mul(u, v)
            want = {k: c for k, c in self.vec(rhs).items() if c}
            total += 1
            if got != want:
                bad += 1
            # record which basis pairs this family accounts for
            if len(u) == 1 and len(v) == 1:
                self.covered.add((next(iter(u)), next(iter(v))))
        self.results.append(FamilyResult(family, formula, total, bad))

    def coverage(self):
        missing = [ij for ij, c in self.alg.constants.items() if c and ij not in self.covered]
        self.results.append(FamilyResult(
            "coverage", "every nonzero basis product matches one family",
            len(self.alg.constants), len(missing)))


def crosscheck_products(spec: MatrixSpaceSpec, alg: StructureAlgebra | None = None
                        ) -> list[FamilyResult]:
    """Compare the structure constants against the closed-form product families."""
    if spec.kind not in (Kind.HERMITIAN, Kind.ANTIHERMITIAN):
        raise ValueError("closed forms exist only for hermitian and antihermitian spaces")
    alg = alg or build_algebra(spec)
    ck = _Checker(spec, alg)
    if spec.kind is Kind.HERMITIAN:
        _hermitian_families(ck)
    else:
        _antihermitian_families(ck)
    ck.coverage()
    return ck.results


def _hermitian_families(ck: _Checker) -> None:
    A, n = ck.A, ck.spec.n
    E = lambda i, j, z=None: OctMatrix.unit(A, n, i, j, z)  # noqa: E731
    basis = A.basis_elements()
    two = A.field(2)

    def X(z: Octonion, i: int, j: int) -> OctMatrix:
        return E(i, j, z) + E(j, i, z.conj())

    ordered = [(i, j) for i in range(n) for j in range(n) if i != j]
    ck.run("3", "E_ii o E_ii = 2 E_ii",
           ((E(i, i), E(i, i), E(i, i).scale(two)) for i in range(n)))
    ck.run("4", "E_ii o (z E_ij + z* E_ji) = z E_ij + z* E_ji",
           ((E(i, i), X(z, i, j), X(z, i, j)) for i, j in ordered for z in basis))
    ck.run("4'", "(z E_ij + z* E_ji) o E_ii = z E_ij + z* E_ji",
           ((X(z, i, j), E(i, i), X(z, i, j)) for i, j in ordered for z in basis))
    ck.run("5", "E_jj o (z E_ij + z* E_ji) = z E_ij + z* E_ji",
           ((E(j, j), X(z, i, j), X(z, i, j)) for i, j in ordered for z in basis))
    ck.run("5'", "(z E_ij + z* E_ji) o E_jj = z E_ij + z* E_ji",
           ((X(z, i, j), E(j, j), X(z, i, j)) for i, j in ordered for z in basis))
    ck.run("6", "(z E_ij + z* E_ji) o (w E_ij + w* E_ji) = 2 Re(z w*) (E_ii + E_jj)",
           ((X(z, i, j), X(w, i, j),
             (E(i, i) + E(j, j)).scale(two * (z * w.conj()).real_part().value))
            for i, j in ordered for z in basis for w in basis))
    triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)
               if len({i, j, k}) == 3]
    ck.run("7", "(z E_ij + z* E_ji) o (w E_jk + w* E_kj) = zw E_ik + w* z* E_ki",
           ((X(z, i, j), X(w, j, k), E(i, k, z * w) + E(k, i, w.conj() * z.conj()))
            for i, j, k in triples for z in basis for w in basis))


def _antihermitian_families(ck: _Checker) -> None:
    A, n = ck.A, ck.spec.n
    E = lambda i, j, z=None: OctMatrix.unit(A, n, i, j, z)  # noqa: E731
    basis = A.basis_elements()
    pure = basis[1:]
    two = A.field(2)

    def Y(z: Octonion, t: int, r: int) -> OctMatrix:
        return E(t, r, z) - E(r, t, z.conj())

    ordered = [(t, r) for t in range(n) for r in range(n) if t != r]
    ck.run("14", "[e_i E_tt, e_j E_tt] = 2 e_i e_j E_tt",
           ((E(t, t, ei), E(t, t, ej), E(t, t, ei * ej).scale(two))
            for t in range(n) for ei in pure for ej in pure if ei != ej))
    ck.run("15", "[e_i E_tt, z E_tr - z* E_rt] = e_i z E_tr + z* e_i E_rt",
           ((E(t, t, ei), Y(z, t, r), E(t, r, ei * z) + E(r, t, z.conj() * ei))
            for t, r in ordered for ei in pure for z in basis))
    ck.run("16", "[e_i E_rr, z E_tr - z* E_rt] = -z e_i E_tr - e_i z* E_rt",
           ((E(r, r, ei), Y(z, t, r), -(E(t, r, z * ei) + E(r, t, ei * z.conj())))
            for t, r in ordered for ei in pure for z in basis))
    ck.run("17", "[z E_tr - z* E_rt, w E_tr - w* E_rt] = 2 Im(w z*) E_tt + 2 Im(w* z) E_rr",
           ((Y(z, t, r), Y(w, t, r),
             E(t, t, (w * z.conj()).imag_part().scale(two))
             + E(r, r, (w.conj() * z).imag_part().scale(two)))
            for t, r in ordered for z in basis for w in basis))
    triples = [(t, r, s) for t in range(n) for r in range(n) for s in range(n)
               if len({t, r, s}) == 3]
    ck.run("fifth", "[z E_tr - z* E_rt, w E_rs - w* E_sr] = zw E_ts - w* z* E_st",
           ((Y(z, t, r), Y(w, r, s), E(t, s, z * w) - E(s, t, w.conj() * z.conj()))
            for t, r, s in triples for z in basis for w in basis))
    # the families above are stated with the diagonal element on the left
    ck.run("15'", "[z E_tr - z* E_rt, e_i E_tt] = -(e_i z E_tr + z* e_i E_rt)",
           ((Y(z, t, r), E(t, t, ei), -(E(t, r, ei * z) + E(r, t, z.conj() * ei)))
            for t, r in ordered for ei in pure for z in basis))
    ck.run("16'", "[z E_tr - z* E_rt, e_i E_rr] = z e_i E_tr + e_i z* E_rt",
           ((Y(z, t, r), E(r, r, ei), E(t, r, z * ei) + E(r, t, ei * z.conj()))
            for t, r in ordered for ei in pure for z in basis))


def structure_to_json(alg: StructureAlgebra, spec: MatrixSpaceSpec | None = None, **kw) -> str:
    data = alg.to_dict()
    if spec is not None:
        data["spec"] = {**spec.to_dict(), "name": spec.label, "symmetry": alg.symmetry.value}
    return json.dumps(data, **kw)
