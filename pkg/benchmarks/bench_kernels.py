"""Compare the compiled and pure-Python kernels.

Usage: python benchmarks/bench_kernels.py [--repeat 5]

Reports the dense convolution kernel at a few (length, modulus) points, then
the end-to-end psi_F pipeline with each backend swapped in.
"""

import argparse
import random
import timeit

from powop import _kernels_py, kernels, series

CASES = [
    # (label, length, p, N)
    ("p=3 N=16, 40 terms", 40, 3, 16),
    ("p=13 N=16, 40 terms", 40, 13, 16),
    ("p=2 N=60, 120 terms", 120, 2, 60),
    ("p=11 N=32, 64 terms", 64, 11, 32),
    ("p=13 N=64, 128 terms", 128, 13, 64),
]


def bench_convolution(backends, repeat):
    rng = random.Random(0)
    print(f"{'case':<24}" + "".join(f"{name:>14}" for name in backends))
    for label, n, p, N in CASES:
        m = p**N
        a = [rng.randrange(m) for _ in range(n)]
        b = [rng.randrange(m) for _ in range(n)]
        row = f"{label:<24}"
        for impl in backends.values():
            t = min(timeit.repeat(lambda: impl.convolve_mod(a, b, m), number=20, repeat=repeat)) / 20
            row += f"{t * 1e6:>12.1f}us"
        print(row)
    a = [rng.randrange(3**16) for _ in range(40)]
    t = min(timeit.repeat(lambda: _kernels_py.convolve_mod_schoolbook(a, a, 3**16), number=20, repeat=repeat)) / 20
    print(f"{'(schoolbook p=3 N=16)':<24}{t * 1e6:>12.1f}us")


def bench_pipeline(backends, repeat):
    from powop.power_operation import psi_E, specialize_alpha
    from powop.solver import solve_alpha_fixed_point

    def job(p, N):
        specialize_alpha(psi_E(p), solve_alpha_fixed_point(p, N).alpha_star)

    for p in (2, 3, 5, 7, 11):
        psi_E(p)  # composition enumeration is backend independent
    print()
    print(f"{'psi_F pipeline':<24}" + "".join(f"{name:>14}" for name in backends))
    for p, N in [(3, 16), (13, 16), (5, 64), (11, 32)]:
        row = f"{f'p={p} N={N}':<24}"
        for impl in backends.values():
            series.convolve_mod = impl.convolve_mod
            t = min(timeit.repeat(lambda: job(p, N), number=3, repeat=repeat)) / 3
            row += f"{t * 1e3:>12.2f}ms"
        print(row)
    series.convolve_mod = kernels.convolve_mod


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled extension not built; only the fallback is timed")
    bench_convolution(backends, args.repeat)
    bench_pipeline(backends, args.repeat)


if __name__ == "__main__":
    main()
