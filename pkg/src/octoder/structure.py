"""Finite-dimensional algebras given by structure constants."""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

from .scalar import Field, parse_field

__all__ = ["Symmetry", "StructureAlgebra", "StructureError"]


class StructureError(ValueError):
    """Inconsistent structure-constant data."""


class Symmetry(Enum):
    NONE = "None"
    COMMUTATIVE = "Commutative"
    ANTICOMMUTATIVE = "Anticommutative"


@dataclass(eq=False)
class StructureAlgebra:
    """Algebra with basis ``b_0..b_{d-1}`` and ``b_i b_j = sum_k c[i,j][k] b_k``.

    ``constants`` maps ``(i, j)`` to a dict ``{k: value}`` holding only nonzero
    raw field values; missing pairs multiply to zero.
    """

    field: Field
    dim: int
    labels: list[str]
    constants: dict[tuple[int, int], dict[int, object]]
    symmetry: Symmetry = Symmetry.NONE
    name: str = "algebra"
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if len(self.labels) != self.dim:
            raise StructureError(f"{len(self.labels)} labels for dimension {self.dim}")
        for (i, j), prod in self.constants.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise StructureError(f"pair {(i, j)} out of range")
            if any(not 0 <= k < self.dim for k in prod):
                raise StructureError(f"output index out of range in {(i, j)}")
        self.check_symmetry()

    def check_symmetry(self) -> None:
        """Raise unless the flagged (anti)commutativity holds exactly."""
        if self.symmetry is Symmetry.NONE:
            return
        F = self.field
        for (i, j), prod in self.constants.items():
            other = self.constants.get((j, i), {})
            if self.symmetry is Symmetry.COMMUTATIVE:
                expected = prod
            else:
                expected = {k: F.neg(v) for k, v in prod.items()}
                if i == j and prod:
                    raise StructureError(f"anticommutative algebra has b_{i}^2 != 0")
            if other != expected:
                raise StructureError(
                    f"{self.symmetry.value} flag violated at pair {(i, j)}")

    # -- products -------------------------------------------------------
    def product(self, i: int, j: int) -> dict[int, object]:
        return self.constants.get((i, j), {})

    def mul(self, x: Mapping[int, object], y: Mapping[int, object]) -> dict[int, object]:
        """Product of two sparse coordinate dicts."""
        F = self.field
        out: dict[int, object] = {}
        for i, a in x.items():
            if not a:
                continue
            for j, b in y.items():
                if not b:
                    continue
                prod = self.constants.get((i, j))
                if not prod:
                    continue
                ab = F.mul(a, b)
                for k, c in prod.items():
                    out[k] = F.add(out.get(k, F.zero), F.mul(ab, c))
        return {k: v for k, v in out.items() if v}

    def mul_dense(self, x: Sequence, y: Sequence) -> list:
        d = self.mul(_sparse(x), _sparse(y))
        zero = self.field.zero
        return [d.get(k, zero) for k in range(self.dim)]

    def is_zero_algebra(self) -> bool:
        return not any(self.constants.values())

    def integer_tensor(self) -> tuple[np.ndarray, int]:
        """Dense ``(d, d, d)`` array of integers proportional to the constants.

        Over F_p these are the residues themselves (scale 1).  Over Q the
        constants are multiplied by the lcm of their denominators.
        """
        d = self.dim
        scale = 1
        if self.field.is_rational:
            for prod in self.constants.values():
                for v in prod.values():
                    scale = lcm(scale, Fraction(v).denominator)
        vals = [int(Fraction(v) * scale) if self.field.is_rational else int(v)
                for prod in self.constants.values() for v in prod.values()]
        big = max((abs(v) for v in vals), default=0) >= 2**62
        t = np.zeros((d, d, d), dtype=object if big else np.int64)
        for (i, j), prod in self.constants.items():
            for k, v in prod.items():
                t[i, j, k] = int(Fraction(v) * scale) if self.field.is_rational else int(v)
        return t, scale

    # -- serialization --------------------------------------------------
    def to_dict(self) -> dict:
        F = self.field
        constants = [
            {"i": i, "j": j, "k": k, "value": F.format(v)}
            for (i, j) in sorted(self.constants)
            for k, v in sorted(self.constants[(i, j)].items())
        ]
        spec = dict(self.meta.get("spec", {}))
        spec.setdefault("name", self.name)
        spec.setdefault("field", str(F))
        spec.setdefault("symmetry", self.symmetry.value)
        return {"spec": spec, "dim": self.dim, "labels": list(self.labels),
                "constants": constants}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "StructureAlgebra":
        spec = data.get("spec", {})
        F = parse_field(spec.get("field", "Q"))
        dim = int(data["dim"])
        labels = list(data.get("labels") or [f"b{i}" for i in range(dim)])
        constants: dict[tuple[int, int], dict[int, object]] = {}
        for entry in data["constants"]:
            v = F.parse(str(entry["value"]))
            if not v:
                continue
            key = (int(entry["i"]), int(entry["j"]))
            prod = constants.setdefault(key, {})
            k = int(entry["k"])
            if k in prod:
                raise StructureError(f"duplicate constant {key} -> {k}")
            prod[k] = v
        sym = Symmetry(spec.get("symmetry", "None"))
        return cls(F, dim, labels, constants, sym, name=spec.get("name", "algebra"),
                   meta={"spec": spec})

    @classmethod
    def from_json(cls, text: str) -> "StructureAlgebra":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_table(cls, field: Field, table: Sequence[Sequence[Sequence]],
                   labels: Iterable[str] | None = None,
                   symmetry: Symmetry = Symmetry.NONE, name: str = "algebra") -> "StructureAlgebra":
        """Build from a dense ``d x d`` table of coordinate vectors."""
        d = len(table)
        constants = {}
        for i in range(d):
            for j in range(d):
                prod = {k: field(v) for k, v in enumerate(table[i][j]) if v}
                prod = {k: v for k, v in prod.items() if v}
                if prod:
                    constants[(i, j)] = prod
        labels = list(labels) if labels is not None else [f"b{i}" for i in range(d)]
        return cls(field, d, labels, constants, symmetry, name=name)


def _sparse(x: Sequence) -> dict[int, object]:
    return {i: v for i, v in enumerate(x) if v}
