import pytest

from octoder.derivations import LinearMap, leibniz_residual, solve_derivations
from octoder.known import (PreconditionError, embed_adjoint, embed_entrywise,
                           expected_derivation_dim, g2_basis, so_generators, verify_theorem)
from octoder.linalg import echelon, in_span
from octoder.matalg import Kind, MatrixSpaceSpec, build_algebra
from octoder.octonion import build_octonion
from octoder.scalar import QQ, Field

F101 = Field(101)


def test_g2_basis(field, oct_type):
    assert g2_basis(build_octonion(field, oct_type)).dim == 14


def test_expected_dims():
    assert [expected_derivation_dim(Kind.HERMITIAN, n) for n in range(1, 7)] == \
        [0, 36, 52, 20, 24, 29]
    assert [expected_derivation_dim(Kind.ANTIHERMITIAN, n) for n in range(1, 5)] == \
        [14, 15, 17, 20]
    assert expected_derivation_dim(Kind.FULL_COMMUTATOR, 2) == 19
    assert expected_derivation_dim(Kind.FULL_STANDARD, 1) is None


def test_so_generators():
    assert so_generators(QQ, 3) == [
        [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [-1, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, -1, 0]],
    ]


def test_embed_zero():
    spec = MatrixSpaceSpec(Kind.HERMITIAN, 2, 1, F101)
    assert embed_entrywise(LinearMap.zero(F101, 8), spec).is_zero()
    assert embed_adjoint([[0, 0], [0, 0]], spec).is_zero()


def test_embed_a1_is_restriction(field):
    spec = MatrixSpaceSpec(Kind.ANTIHERMITIAN, 1, 2, field)
    for alpha in g2_basis(spec.octonions()).maps()[:4]:
        D = embed_entrywise(alpha, spec)
        assert (D.mat == alpha.mat[1:, 1:]).all()


def test_embedded_generators_derive():
    spec = MatrixSpaceSpec(Kind.HERMITIAN, 3, 1, F101)
    A = build_algebra(spec)
    gens = [embed_entrywise(a, spec) for a in g2_basis(spec.octonions()).maps()]
    gens += [embed_adjoint(X, spec) for X in so_generators(F101, 3)]
    assert all(leibniz_residual(A, gens))


def test_embed_errors():
    spec = MatrixSpaceSpec(Kind.HERMITIAN, 2, 1, F101)
    with pytest.raises(ValueError, match="antisymmetric"):
        embed_adjoint([[1, 0], [0, 0]], spec)
    with pytest.raises(ValueError, match="not a derivation"):
        embed_entrywise(LinearMap.identity(F101, 8), spec)


def test_adjoint_h2_example():
    spec = MatrixSpaceSpec(Kind.HERMITIAN, 2, 1, QQ)
    D = embed_adjoint([[0, 1], [-1, 0]], spec)
    # basis: E11, E22, then e_k*E(1,2)+conj; [A, E11] = -(E12 + E21)
    assert D.column(0) == {2: -1}
    assert leibniz_residual(build_algebra(spec), [D]) == [True]


def test_so_brackets_close():
    spec = MatrixSpaceSpec(Kind.ANTIHERMITIAN, 3, 1, F101)
    maps = [embed_adjoint(X, spec) for X in so_generators(F101, 3)]
    span = echelon([m.flat() for m in maps], F101, spec_dim(spec) ** 2)
    for a in maps:
        for b in maps:
            assert in_span((a @ b - b @ a).flat(), span)


def spec_dim(spec):
    return build_algebra(spec).dim


@pytest.mark.parametrize("kind,n,dim,match", [
    (Kind.ANTIHERMITIAN, 2, 15, True),
    (Kind.HERMITIAN, 3, 52, False),
    (Kind.HERMITIAN, 4, 20, True),
])
def test_verify_theorem(kind, n, dim, match, oct_type):
    rep = verify_theorem(MatrixSpaceSpec(kind, n, oct_type, F101))
    assert rep.computed_dim == dim
    assert rep.span_match is match
    assert rep.contained and rep.commuting and rep.generators_derive
    assert rep.passed
    if not match:
        assert rep.embedded_dim == 17


def test_verify_h2_over_q():
    rep = verify_theorem(MatrixSpaceSpec(Kind.HERMITIAN, 2, 1, QQ))
    assert rep.computed_dim == 36 and rep.embedded_dim == 15
    assert rep.passed and not rep.span_match


def test_preconditions():
    with pytest.raises(PreconditionError):
        verify_theorem(MatrixSpaceSpec(Kind.HERMITIAN, 3, 1, Field(3)))


def test_report_json_stable():
    spec = MatrixSpaceSpec(Kind.ANTIHERMITIAN, 1, 1, F101)
    a, b = verify_theorem(spec), verify_theorem(spec)
    assert a.to_json(sort_keys=True) == b.to_json(sort_keys=True)
    assert "timings" not in a.to_dict() and "timings" in a.to_dict(timings=True)


def test_reuses_given_derivations():
    spec = MatrixSpaceSpec(Kind.ANTIHERMITIAN, 2, 2, F101)
    S = solve_derivations(build_algebra(spec))
    assert verify_theorem(spec, S).computed_dim == S.dim
