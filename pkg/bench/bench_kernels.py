"""Compare the compiled and numpy F_p elimination kernels.

Blocks are taken from real Leibniz systems (the largest connected blocks of
der(h_n) and der(a_n) mod p) plus a few dense random matrices.

    python bench/bench_kernels.py [--repeat 5] [--p 101]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from octoder import _kernels_py
from octoder.derivations import leibniz_system
from octoder.linalg import _components, _group_columns
from octoder.matalg import Kind, MatrixSpaceSpec, build_algebra
from octoder.scalar import Field

try:
    from octoder import _kernels as compiled
except ImportError:
    compiled = None


def leibniz_block(kind: Kind, n: int, p: int) -> np.ndarray:
    M = leibniz_system(build_algebra(MatrixSpaceSpec(kind, n, 1, Field(p))))
    ncomp, labels = _components(M)
    cols = max(_group_columns(labels, ncomp), key=len)
    local = {int(g): k for k, g in enumerate(cols)}
    rows = []
    for i in range(M.nrows):
        r = M.row(i)
        if r and labels[next(iter(r))] == labels[cols[0]]:
            rows.append(r)
    A = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, r in enumerate(rows):
        for g, v in r.items():
            A[i, local[g]] = v
    return A


def time_kernel(fn, A: np.ndarray, p: int, repeat: int) -> tuple[float, int]:
    best = float("inf")
    rank = -1
    for _ in range(repeat):
        work = np.ascontiguousarray(A.copy())
        t0 = time.perf_counter()
        rank, _ = fn(work, p)
        best = min(best, time.perf_counter() - t0)
    return best, rank


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--p", type=int, default=101)
    args = ap.parse_args()
    p = args.p
    rng = np.random.default_rng(0)
    cases = [
        ("h_3 block", leibniz_block(Kind.HERMITIAN, 3, p)),
        ("h_4 block", leibniz_block(Kind.HERMITIAN, 4, p)),
        ("a_3 block", leibniz_block(Kind.ANTIHERMITIAN, 3, p)),
        ("random 200x200", rng.integers(0, p, size=(200, 200))),
        ("random 600x400", rng.integers(0, p, size=(600, 400))),
    ]
    if compiled is None:
        print("compiled kernels unavailable; timing the numpy fallback only")
    print(f"{'case':<16} {'shape':>11} {'rank':>5} {'numpy ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, A in cases:
        A = np.ascontiguousarray(A.astype(np.int64) % p)
        t_py, r_py = time_kernel(_kernels_py.rref_modp, A, p, args.repeat)
        if compiled is not None:
            t_cy, r_cy = time_kernel(compiled.rref_modp, A, p, args.repeat)
            if r_cy != r_py:
                raise SystemExit(f"{name}: rank mismatch {r_cy} vs {r_py}")
            tail = f"{t_cy * 1e3:>10.2f} {t_py / t_cy:>7.1f}x"
        else:
            tail = f"{'-':>10} {'-':>8}"
        shape = f"{A.shape[0]}x{A.shape[1]}"
        print(f"{name:<16} {shape:>11} {r_py:>5} {t_py * 1e3:>10.2f} {tail}")


if __name__ == "__main__":
    main()
