"""The explicit subalgebra g2 + so_n inside der(h_n(O)) and der(a_n(O)).

g2 = der(O) acts on a matrix entry by entry; an antisymmetric scalar matrix
``A`` acts by ``x -> Ax - xA``.  :func:`verify_theorem` compares the span of
these maps with the solver's derivation space.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .derivations import (DerivationSpace, LinearMap, all_commute, leibniz_residual,
                          solve_derivations)
from .linalg import contains, echelon
from .matalg import (Kind, MatrixSpaceSpec, OctMatrix, _Coordinatizer, basis_enumerate,
                     build_algebra)
from .octonion import OctonionAlgebra
from .scalar import FieldError

__all__ = [
    "EmbeddingReport",
    "PreconditionError",
    "g2_basis",
    "so_generators",
    "embed_entrywise",
    "embed_adjoint",
    "expected_derivation_dim",
    "verify_theorem",
]


class PreconditionError(ValueError):
    pass


def g2_basis(oct: OctonionAlgebra) -> DerivationSpace:
    """der(O), solved from the multiplication table; must be 14-dimensional."""
    S = solve_derivations(oct.as_structure())
    if S.dim != 14:
        raise RuntimeError(f"der(O) has dimension {S.dim} over {oct.field}, expected 14")
    return S


def so_generators(field, n: int) -> list[list[list]]:
    """``E_ij - E_ji`` for i < j, lexicographic."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            A = [[0] * n for _ in range(n)]
            A[i][j] = 1
            A[j][i] = -1
            out.append(A)
    return out


def _octonion_map(alpha: LinearMap, oct: OctonionAlgebra):
    F = oct.field
    mat = [[alpha.mat[m, k] for k in range(8)] for m in range(8)]

    def apply(coords):
        return tuple(F(sum(mat[m][k] * coords[k] for k in range(8) if coords[k]))
                     for m in range(8))
    return apply


def embed_entrywise(alpha: LinearMap, spec: MatrixSpaceSpec, *, check: bool = True,
                    _cache=None) -> LinearMap:
    """The map induced on the matrix space by applying ``alpha`` to every entry."""
    oct = spec.octonions()
    if alpha.dim != 8 or alpha.field != spec.field:
        raise ValueError("alpha must be an 8x8 map over the matrix space's field")
    if check and not leibniz_residual(oct.as_structure(), [alpha])[0]:
        raise ValueError("alpha is not a derivation of the octonions")
    basis, coord = _cache or (basis_enumerate(spec, oct), _Coordinatizer(spec))
    f = _octonion_map(alpha, oct)
    cols = [coord(m.map_entries(f)) for _, m in basis]
    return LinearMap.from_columns(spec.field, cols, len(basis))


def embed_adjoint(A: Sequence[Sequence], spec: MatrixSpaceSpec, *, _cache=None) -> LinearMap:
    """``x -> Ax - xA`` for an antisymmetric scalar matrix ``A``."""
    F = spec.field
    n = spec.n
    if len(A) != n or any(len(r) != n for r in A):
        raise ValueError(f"A must be {n}x{n}")
    if any(F(A[i][j]) != F.neg(F(A[j][i])) for i in range(n) for j in range(n)):
        raise ValueError("A is not antisymmetric")
    oct = spec.octonions()
    basis, coord = _cache or (basis_enumerate(spec, oct), _Coordinatizer(spec))
    S = OctMatrix.scalar_matrix(oct, A)
    cols = [coord(S @ m - m @ S) for _, m in basis]
    return LinearMap.from_columns(F, cols, len(basis))


def expected_derivation_dim(kind: Kind, n: int) -> int | None:
    """Dimension predicted by the known theorems (None where nothing is claimed)."""
    so = n * (n - 1) // 2
    if kind is Kind.HERMITIAN:
        return {1: 0, 2: 36, 3: 52}.get(n, 14 + so)
    if kind is Kind.ANTIHERMITIAN:
        return 14 + so
    if n < 2:
        return None
    # g2 + gl_n, plus a one-dimensional summand for the commutator product
    return 14 + n * n + (1 if kind is Kind.FULL_COMMUTATOR else 0)


@dataclass
class EmbeddingReport:
    spec: MatrixSpaceSpec
    expected_dim: int | None
    computed_dim: int
    embedded_dim: int
    contained: bool
    span_match: bool
    commuting: bool
    generators_derive: bool
    relation: str
    timings: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if not (self.contained and self.commuting and self.generators_derive):
            return False
        if self.expected_dim is not None and self.computed_dim != self.expected_dim:
            return False
        if self.relation == "equal":
            return self.span_match
        return not self.span_match and self.embedded_dim < self.computed_dim

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "spec": self.spec.to_dict(),
            "expected_dim": self.expected_dim,
            "computed_dim": self.computed_dim,
            "embedded_dim": self.embedded_dim,
            "contained": self.contained,
            "span_match": self.span_match,
            "commuting": self.commuting,
            "generators_derive": self.generators_derive,
            "expected_relation": self.relation,
            "passed": self.passed,
        }
        if timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def check_preconditions(spec: MatrixSpaceSpec) -> None:
    char = spec.field.characteristic
    if char == 2:
        raise FieldError("characteristic two excluded")
    if spec.kind is Kind.HERMITIAN and spec.n in (2, 3) and char == 3:
        raise PreconditionError("h_2 and h_3 are only checked away from characteristic three")


def verify_theorem(spec: MatrixSpaceSpec, derivations: DerivationSpace | None = None
                   ) -> EmbeddingReport:
    """Solve der(spec) and compare it with the embedded g2 + so_n."""
    check_preconditions(spec)
    t0 = time.perf_counter()
    S = derivations or solve_derivations(build_algebra(spec))
    t1 = time.perf_counter()
    oct = spec.octonions()
    g2 = g2_basis(oct)
    cache = (basis_enumerate(spec, oct), _Coordinatizer(spec))
    g2_maps = [embed_entrywise(a, spec, check=False, _cache=cache) for a in g2.maps()]
    so_maps = [embed_adjoint(A, spec, _cache=cache) for A in so_generators(spec.field, spec.n)]
    gens = g2_maps + so_maps
    t2 = time.perf_counter()
    derive = all(leibniz_residual(S.algebra, gens))
    commuting = all_commute(spec.field, g2_maps, so_maps)
    d = S.algebra.dim
    E = echelon([g.flat() for g in gens], spec.field, d * d)
    contained = contains(S.basis, E)
    span_match = E == S.basis
    t3 = time.perf_counter()
    if spec.kind.is_full or (spec.kind is Kind.HERMITIAN and spec.n in (2, 3)):
        relation = "strict"
    else:
        relation = "equal"
    return EmbeddingReport(
        spec=spec,
        expected_dim=expected_derivation_dim(spec.kind, spec.n),
        computed_dim=S.dim,
        embedded_dim=E.dim,
        contained=contained,
        span_match=span_match,
        commuting=commuting,
        generators_derive=derive,
        relation=relation,
        timings={"solve": t1 - t0, "embed": t2 - t1, "compare": t3 - t2},
    )
