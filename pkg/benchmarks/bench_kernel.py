#!/usr/bin/env python3
"""Compare the compiled and pure-Python integer-matrix kernels.

Three workloads mirror the hot paths: canonicalization (HNF of stacked
generator rows), lattice intersection (8x4 kernel solves), and the
idealizer-shaped 20x16 kernel.  A fourth, end-to-end workload runs the
worked-example intersection through whichever backend is active.
"""

import random
import time

from daggerorders._kernel import _hnf_py

try:
    from daggerorders._kernel import _hnf_c
except ImportError:
    _hnf_c = None


def make_hnf_cases(rng, n):
    return [
        [[rng.randint(-90, 90) for _ in range(4)] for _ in range(6)] for _ in range(n)
    ]


def make_intersection_cases(rng, n):
    return [
        [[rng.randint(-90, 90) for _ in range(4)] for _ in range(8)] for _ in range(n)
    ]


def make_idealizer_cases(rng, n):
    out = []
    for _ in range(n):
        mat = [[rng.randint(-400, 400) for _ in range(16)] for _ in range(4)]
        mat += [[120 if r == c else 0 for c in range(16)] for r in range(16)]
        out.append(mat)
    return out


def bench(label, backend, fn, cases):
    t0 = time.perf_counter()
    for case in cases:
        fn(backend, case)
    dt = time.perf_counter() - t0
    print(f"  {label:<28} {dt * 1e6 / len(cases):>9.1f} us/op  ({dt:.3f} s total)")
    return dt


def run_backend(name, backend):
    rng = random.Random(99)
    print(f"{name} backend:")
    bench("hnf 6x4", backend, lambda b, m: b.hnf(m, 4), make_hnf_cases(rng, 4000))
    bench(
        "kernel 8x4 (intersection)",
        backend,
        lambda b, m: b.kernel(m, 4),
        make_intersection_cases(rng, 2000),
    )
    bench(
        "kernel 20x16 (idealizer)",
        backend,
        lambda b, m: b.kernel(m, 16),
        make_idealizer_cases(rng, 300),
    )


def run_end_to_end():
    import importlib
    import os

    from fractions import Fraction

    import daggerorders
    from daggerorders import (
        OrthogonalInvolution,
        QuaternionAlgebra,
        canonicalize,
        intersect,
        involution_image,
        standard_order,
    )
    from daggerorders.maximality import enlarge_to_maximal_dagger

    print(f"end-to-end ({daggerorders.KERNEL_BACKEND} backend):")
    H = QuaternionAlgebra(-1, -5)
    dag = OrthogonalInvolution(H.gen_ij())
    t0 = time.perf_counter()
    for _ in range(40):
        base = standard_order(H)
        enlarge_to_maximal_dagger(base, dag)
    dt = time.perf_counter() - t0
    print(f"  enlarge worked example x40   {dt * 1e3 / 40:>9.2f} ms/op")


def main():
    run_backend("pure-python", _hnf_py)
    if _hnf_c is None:
        print("compiled backend not built (pip install -e . with Cython)")
    else:
        run_backend("compiled", _hnf_c)
    run_end_to_end()


if __name__ == "__main__":
    main()
