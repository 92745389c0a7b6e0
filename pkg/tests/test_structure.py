from fractions import Fraction

import pytest

from octoder.octonion import build_octonion
from octoder.scalar import QQ, Field
from octoder.structure import StructureAlgebra, StructureError, Symmetry


def test_json_roundtrip(field):
    A = build_octonion(field, 2).as_structure()
    B = StructureAlgebra.from_json(A.to_json())
    assert B.dim == 8 and B.field == field
    assert B.constants == A.constants


def test_symmetry_enforced():
    with pytest.raises(StructureError):
        StructureAlgebra(QQ, 2, ["a", "b"], {(0, 1): {0: QQ(1)}}, Symmetry.COMMUTATIVE)
    with pytest.raises(StructureError):
        StructureAlgebra(QQ, 1, ["a"], {(0, 0): {0: QQ(1)}}, Symmetry.ANTICOMMUTATIVE)


def test_out_of_range():
    with pytest.raises(StructureError):
        StructureAlgebra(QQ, 1, ["a"], {(0, 1): {0: QQ(1)}})
    with pytest.raises(StructureError):
        StructureAlgebra(QQ, 1, ["a"], {(0, 0): {3: QQ(1)}})


def test_mul_bilinear():
    # dual numbers: 1, x with x^2 = 0
    A = StructureAlgebra.from_table(QQ, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], ["1", "x"])
    assert A.mul({0: QQ(2), 1: QQ(3)}, {0: QQ(1), 1: QQ(-1)}) == {0: 2, 1: 1}
    assert A.mul_dense([0, 1], [0, 1]) == [0, 0]
    assert not A.is_zero_algebra()


def test_integer_tensor_scale():
    A = StructureAlgebra(QQ, 1, ["a"], {(0, 0): {0: QQ(Fraction(1, 3))}})
    T, s = A.integer_tensor()
    assert s == 3 and T[0, 0, 0] == 1
