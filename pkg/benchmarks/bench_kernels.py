"""Benchmark the compiled kernels against the numpy fallback.

Runs the two backends on the workloads that dominate the pipeline: mod-p
elimination (Hom systems, cohomology ranks) and table-driven batched matrix
products (oracle enumeration).  Also times one end-to-end oracle enumeration
per backend.

Usage: python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from defring.kernels import _fallback

try:
    from defring.kernels import _speedups
except ImportError:
    _speedups = None


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_pair(name, make_args, call, repeat=3):
    args = make_args()
    t_fb = timeit(lambda: call(_fallback, *args), repeat)
    if _speedups is not None:
        t_sp = timeit(lambda: call(_speedups, *args), repeat)
        ratio = t_fb / t_sp if t_sp > 0 else float("inf")
        print(
            f"{name:<42} fallback {t_fb * 1e3:9.2f} ms   compiled {t_sp * 1e3:9.2f} ms   x{ratio:5.1f}",
            flush=True,
        )
    else:
        print(f"{name:<42} fallback {t_fb * 1e3:9.2f} ms   compiled       n/a", flush=True)


def main():
    rng = np.random.default_rng(0)

    print("== mod-p elimination ==", flush=True)
    for rows, cols, p, repeat in [
        (20000, 64, 2, 3),
        (20000, 64, 3, 3),
        (2000, 400, 5, 3),
        (5000, 600, 3, 1),
    ]:
        a = rng.integers(0, p, (rows, cols), dtype=np.int64)
        bench_pair(
            f"rank_modp {rows}x{cols} mod {p}",
            lambda a=a, p=p: (a, p),
            lambda impl, a, p: impl.rank_modp(a, p),
            repeat=repeat,
        )

    print("== table-driven batched matmul ==")
    from defring.localalg import nilpotent_socle_ring, truncated_polynomials

    for ring in (nilpotent_socle_ring(2), truncated_polynomials(2, 3)):
        add, mul, _, _ = ring.tables()
        a = rng.integers(0, ring.size, (65536, 2, 2), dtype=np.int64)
        b = rng.integers(0, ring.size, (65536, 2, 2), dtype=np.int64)
        bench_pair(
            f"table_matmul 65536x(2x2) over {ring.name}",
            lambda a=a, b=b, add=add, mul=mul: (a, b, add, mul),
            lambda impl, a, b, add, mul: impl.table_matmul(a, b, add, mul),
        )

    print("== end-to-end oracle enumeration (S4, F2[t]/t^3) ==")
    import defring.kernels as kernels
    from defring.certify import InstanceSpec, assemble
    from defring.localalg import standard_rings
    from defring.oracle import enumerate_lifts

    asm = assemble(InstanceSpec("twisted", 2, 1))
    ring = standard_rings(2)["F2t3"]
    for impl, label in [(_fallback, "fallback"), (_speedups, "compiled")]:
        if impl is None:
            continue
        saved = kernels.table_matmul
        kernels.table_matmul = impl.table_matmul
        try:
            t = timeit(lambda: enumerate_lifts(asm.rho_bar, ring), repeat=2)
        finally:
            kernels.table_matmul = saved
        print(f"enumerate_lifts[{label}]                      {t * 1e3:9.2f} ms")


if __name__ == "__main__":
    main()
