from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from octoder.identities import (check_alternative, check_flexible_signs, check_moufang,
                                check_norm_multiplicative)
from octoder.octonion import (OctType, associator, build_octonion, conj, imag_part, norm,
                              nucleus, quaternion_algebra, real_part)
from octoder.scalar import QQ, Field
from octoder.structure import Symmetry

coords = st.lists(st.integers(-20, 20), min_size=8, max_size=8)


def test_basis_squares(octonions):
    E = octonions.basis_elements()
    split = octonions.type_tag is OctType.II
    for i in range(1, 8):
        want = 1 if (split and i > 3) else -1
        assert E[i] * E[i] == want


def test_unit_and_anticommutation(octonions):
    E = octonions.basis_elements()
    for i in range(8):
        assert E[0] * E[i] == E[i] == E[i] * E[0]
    for i in range(1, 8):
        for j in range(1, 8):
            if i != j:
                assert E[i] * E[j] == -(E[j] * E[i])
    assert E[2] * E[7] == -(E[7] * E[2])


def test_doubling_by_hand(oct_type):
    # (a,b)(c,d) = (ac + g d* b, da + b c*) with e4 = (0,1)
    A = build_octonion(QQ, oct_type)
    E = A.basis_elements()
    gamma = -1 if oct_type is OctType.I else 1
    assert E[1] * E[2] == E[3]
    assert E[1] * E[4] == E[5]
    assert E[4] * E[1] == -E[5]
    assert E[4] * E[4] == gamma
    assert E[5] * E[5] == gamma
    assert A.sign(1, 2) == 1 and A.index(1, 2) == 3


def test_basis_products_closed(octonions):
    for i in range(8):
        for j in range(8):
            prod = octonions.table[i][j]
            assert sum(1 for v in prod if v) == 1
    k = octonions.index(1, 2)
    assert k not in (0, 1, 2)


def test_bilinearity_example(octonions):
    E = octonions.basis_elements()
    assert (E[1] + E[2]) * E[1] == -1 + E[2] * E[1]


def test_conjugation(octonions):
    E = octonions.basis_elements()
    assert conj(E[0]) == E[0]
    assert conj(E[3]) == -E[3]
    z = octonions.element([3, 1, -2, 0, 5, 0, 0, 7])
    assert conj(conj(z)) == z
    assert real_part(z) == 3
    assert imag_part(z) + real_part(z).value == z
    assert z + conj(z) == 2 * real_part(z).value


def test_norm_examples(octonions):
    E = octonions.basis_elements()
    assert norm(E[0]) == 1
    if octonions.type_tag is OctType.II:
        assert norm(E[5]) == -1
    else:
        assert norm(E[5]) == 1


@given(coords, coords)
def test_norm_multiplicative_property(a, b):
    for t in OctType:
        A = build_octonion(QQ, t)
        z, w = A.element(a), A.element(b)
        assert norm(z * w) == norm(z) * norm(w)


@given(coords, coords)
def test_alternative_property(a, b):
    A = build_octonion(Field(101), OctType.II)
    z, w = A.element(a), A.element(b)
    assert associator(z, z, w).is_zero()
    assert associator(w, z, z).is_zero()
    assert associator(z, w, z).is_zero()


def test_not_associative(octonions):
    E = octonions.basis_elements()
    assert not associator(E[1], E[2], E[4]).is_zero()


def test_identity_sweeps(octonions):
    assert check_alternative(octonions) == (512, 0)
    cases, bad = check_moufang(octonions)
    assert cases >= 512 and bad == 0
    assert check_flexible_signs(octonions) == (42, 0)
    assert check_norm_multiplicative(octonions, pairs=50) == (50, 0)


def test_quaternion_subalgebra_closed(octonions):
    H = octonions.quaternion_subalgebra()
    assert H.dim == 4
    for (i, j), prod in H.constants.items():
        assert set(prod) <= {0, 1, 2, 3}


def test_nucleus(octonions):
    N = nucleus(octonions.as_structure())
    assert N.dim == 1
    assert N.rows[0] == {0: 1}


def test_nucleus_quaternions(field):
    assert nucleus(quaternion_algebra(field)).dim == 4


def test_structure_view(octonions):
    S = octonions.as_structure()
    assert S.dim == 8 and S.symmetry is Symmetry.NONE
    assert S.product(1, 1) == {0: octonions.field(-1)}


def test_char_two_rejected():
    from octoder.scalar import FieldError
    with pytest.raises(FieldError):
        Field(2)


def test_to_json_stable(octonions):
    assert octonions.to_json() == build_octonion(octonions.field, octonions.type_tag).to_json()


def test_random_elements_over_q():
    A = build_octonion(QQ, 1)
    z = A.element([Fraction(1, 2)] + [0] * 7)
    assert z * z == A.scalar(Fraction(1, 4))
    assert np.random.default_rng(0) is not None
