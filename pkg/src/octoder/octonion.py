"""Octonion algebras over an exact field.

The algebra is built by Cayley-Dickson doubling of the quaternions,
``(a, b)(c, d) = (ac + g * conj(d) b,  d a + b conj(c))``, with doubling
parameter ``g = -1`` (Type I) or ``g = +1`` (Type II).  The basis is
``1, i, j, k, l, il, jl, kl`` so that ``e_a e_b = +-e_{a XOR b}``; basis
elements 1..3 span the quaternion subalgebra and 4..7 square to ``g``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .scalar import Field, QQ, FieldError, Scalar
from .structure import StructureAlgebra, Symmetry

__all__ = [
    "OctType",
    "OctonionAlgebra",
    "Octonion",
    "build_octonion",
    "quaternion_algebra",
    "nucleus",
    "associator",
]

LABELS = ["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"]


class OctType(Enum):
    I = "I"
    II = "II"

    @classmethod
    def coerce(cls, value) -> "OctType":
        if isinstance(value, OctType):
            return value
        text = str(value).strip().upper()
        if text in ("1", "I", "TYPEI"):
            return cls.I
        if text in ("2", "II", "TYPEII"):
            return cls.II
        raise ValueError(f"unknown octonion type {value!r}")


# quaternion basis 1, i, j, k with i^2 = j^2 = -1, ij = k = -ji
def _quat_mul(x: Sequence[int], y: Sequence[int]) -> list[int]:
    a0, a1, a2, a3 = x
    b0, b1, b2, b3 = y
    return [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]


def _quat_conj(x: Sequence[int]) -> list[int]:
    return [x[0], -x[1], -x[2], -x[3]]


def _cd_mul(x: Sequence[int], y: Sequence[int], gamma: int) -> list[int]:
    a, b = x[:4], x[4:]
    c, d = y[:4], y[4:]
    left = [s + gamma * t for s, t in zip(_quat_mul(a, c), _quat_mul(_quat_conj(d), b))]
    right = [s + t for s, t in zip(_quat_mul(d, a), _quat_mul(b, _quat_conj(c)))]
    return left + right


def _sign_table(gamma: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Flattened 8x8 (sign, index) tables: ``e_i e_j = sign * e_index``."""
    signs, index = [], []
    for i in range(8):
        for j in range(8):
            ei = [int(t == i) for t in range(8)]
            ej = [int(t == j) for t in range(8)]
            prod = _cd_mul(ei, ej, gamma)
            nz = [(k, v) for k, v in enumerate(prod) if v]
            if len(nz) != 1 or abs(nz[0][1]) != 1:
                raise AssertionError(f"basis product e{i} e{j} = {prod}")
            index.append(nz[0][0])
            signs.append(nz[0][1])
    return tuple(signs), tuple(index)


class OctonionAlgebra:
    """An 8-dimensional octonion algebra with a fixed sign table.

    ``table[i][j]`` is the coordinate vector of ``e_i e_j`` (as raw field
    values); ``sign``/``index`` hold the same data in compact form.
    """

    dim = 8
    labels = LABELS
    conj_signs = (1, -1, -1, -1, -1, -1, -1, -1)

    def __init__(self, field: Field = QQ, type_tag: OctType | str = OctType.I):
        if field.characteristic == 2:
            raise FieldError("characteristic two excluded")
        self.field = field
        self.type_tag = OctType.coerce(type_tag)
        self.gamma = -1 if self.type_tag is OctType.I else 1
        self._sign, self._index = _sign_table(self.gamma)
        F = field
        self.table = tuple(
            tuple(
                tuple(F(self._sign[8 * i + j]) if k == self._index[8 * i + j] else F.zero
                      for k in range(8))
                for j in range(8))
            for i in range(8))

    def __repr__(self):
        return f"OctonionAlgebra({self.field}, type {self.type_tag.value})"

    def __eq__(self, other):
        return (isinstance(other, OctonionAlgebra) and self.field == other.field
                and self.type_tag is other.type_tag)

    def __hash__(self):
        return hash((self.field, self.type_tag))

    def sign(self, i: int, j: int) -> int:
        return self._sign[8 * i + j]

    def index(self, i: int, j: int) -> int:
        return self._index[8 * i + j]

    # -- raw coordinate arithmetic (tuples of field values) ---------------
    def mul_coords(self, x: Sequence, y: Sequence) -> tuple:
        F = self.field
        p = F.modulus
        out = [0] * 8
        sg, ix = self._sign, self._index
        for i in range(8):
            a = x[i]
            if not a:
                continue
            row = 8 * i
            for j in range(8):
                b = y[j]
                if not b:
                    continue
                ab = a * b
                if sg[row + j] > 0:
                    out[ix[row + j]] += ab
                else:
                    out[ix[row + j]] -= ab
        if p is None:
            return tuple(F(v) for v in out)
        return tuple(v % p for v in out)

    def conj_coords(self, x: Sequence) -> tuple:
        F = self.field
        return (x[0],) + tuple(F.neg(v) for v in x[1:])

    # -- elements ---------------------------------------------------------
    def element(self, coords: Iterable) -> "Octonion":
        vals = tuple(self.field(c) for c in coords)
        if len(vals) != 8:
            raise ValueError("an octonion has 8 coordinates")
        return Octonion(self, vals)

    def basis(self, i: int) -> "Octonion":
        return self.element([int(k == i) for k in range(8)])

    def scalar(self, c) -> "Octonion":
        return self.element([c] + [0] * 7)

    @property
    def one(self) -> "Octonion":
        return self.basis(0)

    @property
    def zero(self) -> "Octonion":
        return self.element([0] * 8)

    def basis_elements(self) -> list["Octonion"]:
        return [self.basis(i) for i in range(8)]

    # -- views ------------------------------------------------------------
    def as_structure(self) -> StructureAlgebra:
        consts = {}
        for i in range(8):
            for j in range(8):
                consts[(i, j)] = {self.index(i, j): self.field(self.sign(i, j))}
        return StructureAlgebra(self.field, 8, list(LABELS), consts, Symmetry.NONE,
                                name=f"O_{self.type_tag.value}",
                                meta={"spec": {"name": f"O_{self.type_tag.value}",
                                               "type": self.type_tag.value,
                                               "field": str(self.field),
                                               "symmetry": "None"}})

    def quaternion_subalgebra(self) -> StructureAlgebra:
        """Span of 1, e1, e2, e3 as a standalone 4-dimensional algebra."""
        consts = {}
        for i in range(4):
            for j in range(4):
                k = self.index(i, j)
                if k >= 4:
                    raise AssertionError("quaternion span not closed")
                consts[(i, j)] = {k: self.field(self.sign(i, j))}
        return StructureAlgebra(self.field, 4, LABELS[:4], consts, name="H")

    def to_dict(self) -> dict:
        F = self.field
        return {
            "type": self.type_tag.value,
            "field": str(F),
            "products": [[[F.format(v) for v in self.table[i][j]] for j in range(8)]
                         for i in range(8)],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


@dataclass(frozen=True)
class Octonion:
    """Element of an :class:`OctonionAlgebra`; ``coords`` are raw field values."""

    algebra: OctonionAlgebra
    coords: tuple

    def _check(self, other: "Octonion") -> None:
        if not isinstance(other, Octonion):
            raise TypeError(f"expected Octonion, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise ValueError("octonions from different algebras")

    def _lift(self, other):
        if isinstance(other, Octonion):
            self._check(other)
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        F = self.algebra.field
        return Octonion(self.algebra, tuple(F.add(a, b) for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        F = self.algebra.field
        return Octonion(self.algebra, tuple(F.neg(a) for a in self.coords))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Octonion):
            self._check(other)
            return Octonion(self.algebra, self.algebra.mul_coords(self.coords, other.coords))
        return self.scale(other)

    def __rmul__(self, other):
        # scalars are central
        return self.scale(other)

    def scale(self, c) -> "Octonion":
        F = self.algebra.field
        c = c.value if isinstance(c, Scalar) else F(c)
        return Octonion(self.algebra, tuple(F.mul(c, a) for a in self.coords))

    def conj(self) -> "Octonion":
        return Octonion(self.algebra, self.algebra.conj_coords(self.coords))

    def real_part(self) -> Scalar:
        return Scalar(self.algebra.field, self.coords[0])

    def imag_part(self) -> "Octonion":
        F = self.algebra.field
        return Octonion(self.algebra, (F.zero,) + self.coords[1:])

    def norm(self) -> Scalar:
        """``real(z conj(z))``."""
        return (self * self.conj()).real_part()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if isinstance(other, Octonion):
            return self.algebra == other.algebra and self.coords == other.coords
        if isinstance(other, (int, Fraction, Scalar)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra, self.coords))

    def __str__(self):
        F = self.algebra.field
        terms = [(F.format(c), LABELS[i]) for i, c in enumerate(self.coords) if c]
        if not terms:
            return "0"
        return " + ".join(c if lab == "1" else f"{c}*{lab}" for c, lab in terms)

    def __repr__(self):
        return f"Octonion({self})"


def build_octonion(field: Field = QQ, type_tag: OctType | str = OctType.I) -> OctonionAlgebra:
    return OctonionAlgebra(field, type_tag)


def conj(z: Octonion) -> Octonion:
    return z.conj()


def real_part(z: Octonion) -> Scalar:
    return z.real_part()


def imag_part(z: Octonion) -> Octonion:
    return z.imag_part()


def norm(z: Octonion) -> Scalar:
    return z.norm()


def associator(x: Octonion, y: Octonion, z: Octonion) -> Octonion:
    return (x * y) * z - x * (y * z)


def quaternion_algebra(field: Field = QQ) -> StructureAlgebra:
    """The quaternions (i^2 = j^2 = -1, ij = k) as a StructureAlgebra."""
    consts = {}
    for i in range(4):
        for j in range(4):
            ei = [int(t == i) for t in range(4)]
            ej = [int(t == j) for t in range(4)]
            prod = _quat_mul(ei, ej)
            consts[(i, j)] = {k: field(v) for k, v in enumerate(prod) if v}
    return StructureAlgebra(field, 4, ["1", "i", "j", "k"], consts, name="H")


def nucleus(A: StructureAlgebra):
    """Elements associating with everything, as an echelon basis.

    Solves ``[a, x, y] = [x, a, y] = [x, y, a] = 0`` over all basis pairs.
    """
    from .linalg import SparseMatrix, null_space

    F = A.field
    d = A.dim

    def assoc(i, j, k):
        left = A.mul(A.product(i, j), {k: F.one})
        right = A.mul({i: F.one}, A.product(j, k))
        out = dict(left)
        for m, v in right.items():
            out[m] = F.sub(out.get(m, F.zero), v)
        return {m: v for m, v in out.items() if v}

    rows = []
    for i in range(d):
        for j in range(d):
            for pos in range(3):
                eqs: dict[int, dict[int, object]] = {}
                for l in range(d):
                    triple = [(l, i, j), (i, l, j), (i, j, l)][pos]
                    for m, v in assoc(*triple).items():
                        eqs.setdefault(m, {})[l] = v
                rows.extend(eqs[m] for m in sorted(eqs))
    return null_space(SparseMatrix(len(rows), d, F, rows))
