"""Exhaustive and randomized identity checks for an octonion algebra.

Each check returns ``(cases, failures)``.  Basis sweeps cover every tuple of
basis elements; the randomized checks use a seeded generator so repeated runs
see the same elements.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from .octonion import Octonion, OctonionAlgebra, associator

__all__ = [
    "check_alternative",
    "check_moufang",
    "check_flexible_signs",
    "check_norm_multiplicative",
    "random_octonion",
    "run_identities",
]


def random_octonion(A: OctonionAlgebra, rng: np.random.Generator, bound: int = 9) -> Octonion:
    return A.element(int(c) for c in rng.integers(-bound, bound + 1, size=8))


def check_alternative(A: OctonionAlgebra) -> tuple[int, int]:
    """The associator changes sign under swapping either adjacent pair.

    Over a field of characteristic not two this is equivalent to
    ``[x,x,y] = [x,y,y] = 0`` for all x, y, and it is linear, so basis
    triples suffice.
    """
    E = A.basis_elements()
    bad = 0
    for i, j, k in product(range(8), repeat=3):
        a = associator(E[i], E[j], E[k])
        if not (a + associator(E[j], E[i], E[k])).is_zero():
            bad += 1
        elif not (a + associator(E[i], E[k], E[j])).is_zero():
            bad += 1
    return 512, bad


def _moufang(z: Octonion, w: Octonion, u: Octonion) -> bool:
    return z * (w * (z * u)) == ((z * w) * z) * u


def check_moufang(A: OctonionAlgebra, random_triples: int = 64, seed: int = 1) -> tuple[int, int]:
    """Left Moufang law ``z(w(zu)) = (zwz)u``.

    The law is quadratic in ``z``, so the 512 basis triples are followed by
    seeded random triples of general elements.
    """
    E = A.basis_elements()
    bad = sum(not _moufang(E[i], E[j], E[k]) for i, j, k in product(range(8), repeat=3))
    rng = np.random.default_rng(seed)
    for _ in range(random_triples):
        z, w, u = (random_octonion(A, rng) for _ in range(3))
        bad += not _moufang(z, w, u)
    return 512 + random_triples, bad


def check_flexible_signs(A: OctonionAlgebra) -> tuple[int, int]:
    """For distinct imaginary units: ``e_i e_j e_i = -(e_i e_i) e_j = +-e_j``.

    Both bracketings of the left side are compared.
    """
    E = A.basis_elements()
    cases = bad = 0
    for i in range(1, 8):
        for j in range(1, 8):
            if i == j:
                continue
            cases += 1
            left = (E[i] * E[j]) * E[i]
            right = E[i] * (E[j] * E[i])
            target = -((E[i] * E[i]) * E[j])
            if not (left == right == target and (left == E[j] or left == -E[j])):
                bad += 1
    return cases, bad


def check_norm_multiplicative(A: OctonionAlgebra, pairs: int = 200,
                              seed: int = 0) -> tuple[int, int]:
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(pairs):
        x, y = random_octonion(A, rng), random_octonion(A, rng)
        if (x * y).norm() != x.norm() * y.norm():
            bad += 1
    return pairs, bad


def run_identities(A: OctonionAlgebra) -> dict[str, tuple[int, int]]:
    return {
        "alternative": check_alternative(A),
        "moufang": check_moufang(A),
        "flexible_signs": check_flexible_signs(A),
        "norm_multiplicative": check_norm_multiplicative(A),
    }
