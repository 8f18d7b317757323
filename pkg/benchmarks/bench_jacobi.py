"""Compare the compiled and pure-Python Jacobi backends.

    python benchmarks/bench_jacobi.py [--dims 16 64 128 256] [--repeat 3]

Two workloads: dense random Hermitian matrices of growing size, and the
ten-cell critical-depolarization table, which is dominated by 16x16
partial-transpose spectra inside bisection loops.
"""
import argparse
import time

import numpy as np

from entrobust import linalg
from entrobust.robustness import table1


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def with_backend(name, fn):
    saved = linalg.BACKEND
    linalg.BACKEND = name
    try:
        return fn()
    finally:
        linalg.BACKEND = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[16, 64, 128, 256])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["python"] + (["cython"] if linalg.BACKEND == "cython" else [])
    if len(backends) == 1:
        print("compiled kernel not built; timing the fallback only")

    rng = np.random.default_rng(0)
    print(f"{'workload':>14} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for dim in args.dims:
        x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        a = (x + x.conj().T) / 2
        row = [
            best_of(lambda b=b: linalg.hermitian_eigen(a, want_vectors=True, backend=b), args.repeat)
            for b in backends
        ]
        print(_line(f"dense {dim}", row))

    row = [best_of(lambda b=b: with_backend(b, table1), 1) for b in backends]
    print(_line("table1", row))


def _line(label, row):
    cells = " ".join(f"{t:>9.4f}s" for t in row)
    speedup = f"{row[0] / row[-1]:8.1f}x" if len(row) > 1 else ""
    return f"{label:>14} {cells} {speedup}"


if __name__ == "__main__":
    main()
