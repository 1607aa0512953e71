"""Benchmark the compiled best-cosine-match kernel against the numpy fallback.

Run: python3 benchmarks/bench_similarity.py [--queries N] [--refs M] [--dim D]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from charforge.similarity.fallback import best_match_matrix as numpy_backend

try:
    from charforge._simcore import best_match_matrix as cython_backend
except ImportError:
    cython_backend = None


def bench(fn, queries, refs, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(queries, refs)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--queries", type=int, default=2000)
    parser.add_argument("--refs", type=int, default=20000)
    parser.add_argument("--dim", type=int, default=256)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    queries = np.ascontiguousarray(rng.normal(size=(args.queries, args.dim)))
    refs = np.ascontiguousarray(rng.normal(size=(args.refs, args.dim)))
    pairs = args.queries * args.refs

    print(f"{args.queries} queries x {args.refs} refs, dim {args.dim} "
          f"({pairs / 1e6:.1f}M pairs)\n")
    print(f"{'backend':<10}{'seconds':>10}{'pairs/s':>14}")

    t_np = bench(numpy_backend, queries, refs, args.repeats)
    print(f"{'numpy':<10}{t_np:>10.3f}{pairs / t_np:>14.2e}")

    if cython_backend is None:
        print(f"{'cython':<10}{'not built':>10}")
        return

    t_cy = bench(cython_backend, queries, refs, args.repeats)
    print(f"{'cython':<10}{t_cy:>10.3f}{pairs / t_cy:>14.2e}")

    i_np, s_np = numpy_backend(queries, refs)
    i_cy, s_cy = cython_backend(queries, refs)
    agree = np.array_equal(i_np, i_cy) and np.allclose(s_np, s_cy, atol=1e-12)
    print(f"\nbackends agree on argmax and scores (1e-12): {agree}")
    ratio = t_np / t_cy
    faster = "cython" if ratio > 1 else "numpy"
    print(f"{faster} is {max(ratio, 1 / ratio):.2f}x faster here. BLAS wins "
          "throughput on dense batches; the compiled kernel keeps a fixed "
          "summation order (bit-stable scores across BLAS builds and thread "
          "counts) and O(refs) memory.")


if __name__ == "__main__":
    main()
