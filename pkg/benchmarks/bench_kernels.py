"""Compare the compiled and pure-Python kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from toeplitz_spurious import kernels
from toeplitz_spurious.eig import householder_tridiagonal
from toeplitz_spurious.matrices import b_exact_array
from toeplitz_spurious.symbol import make_rational_angle, pm1_symbol


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the fallback is timed")
    angle = make_rational_angle(2, 1)
    sym = pm1_symbol(angle)
    phases = angle.phase_table()

    cases = []
    for n, tail in [(16, 2000), (32, 5000)]:
        cases.append((f"series n={n} M={tail}",
                      lambda b, n=n, tail=tail: kernels.series_partial_sums(n, tail, phases, backend=b)))
    for n in (64, 128, 256):
        d, e = householder_tridiagonal(b_exact_array(sym, n))
        cases.append((f"tridiagonal QL n={n}",
                      lambda b, d=d, e=e: kernels.tridiagonal_eigenvalues(d, e, backend=b)))

    print(f"{'kernel':<26}" + "".join(f"{b:>12}" for b in backends) + ("    speedup" if len(backends) == 2 else ""))
    for label, fn in cases:
        times = [best_of(lambda: fn(b), args.repeat) for b in backends]
        line = f"{label:<26}" + "".join(f"{t:>11.4f}s" for t in times)
        if len(times) == 2:
            line += f"  {times[1] / times[0]:>8.1f}x"
        print(line)

    # both backends must agree before the timings mean anything
    if len(backends) == 2:
        a = kernels.series_partial_sums(16, 500, phases, backend="cython")
        b = kernels.series_partial_sums(16, 500, phases, backend="python")
        print(f"max series difference between backends: {np.max(np.abs(a - b)):.2e}")


if __name__ == "__main__":
    main()
