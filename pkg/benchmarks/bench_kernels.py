#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

Run:  python benchmarks/bench_kernels.py
Force a backend globally with MORITA_KERNELS=numpy|numba.
"""

import time

import numpy as np

from morita import _kernels
from morita.semigroups import symmetric_inverse_monoid

REPEATS = 5


def bench(label, fn, *args, backend):
    fn(*args, backend=backend)  # warm-up (jit compile, cache)
    times = []
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        out = fn(*args, backend=backend)
        times.append(time.perf_counter() - t0)
    print(f"{label:32s} {backend:6s} min={min(times)*1e3:9.2f} ms  -> {out}")
    return min(times)


def main():
    backends = ["numpy"]
    if _kernels._HAVE_NUMBA:
        backends.append("numba")
    else:
        print("numba not importable; numpy only")

    S = symmetric_inverse_monoid(4)   # 209 elements, 9.1M triples
    table = S.table
    print(f"associativity scan over n={len(S)} ({len(S) ** 3:,} triples)")
    for b in backends:
        bench("assoc_witness", _kernels.assoc_witness, table, backend=b)

    # three copies of the right-regular action: a real action on 627 points
    act = np.vstack([S.table] * 3)
    print(f"action law scan over {act.shape[0]} points")
    rng = np.random.default_rng(0)
    for b in backends:
        bench("action_witness", _kernels.action_witness, act, table, backend=b)

    comp = np.full((600, 600), -1, dtype=np.int64)
    idx = rng.integers(0, 600, size=(600, 600))
    mask = rng.random((600, 600)) < 0.3
    comp[mask] = idx[mask]
    print("cancellation scan over a 600x600 composition table")
    for b in backends:
        bench("left_cancellation_witness", _kernels.left_cancellation_witness,
              comp, backend=b)


if __name__ == "__main__":
    main()
