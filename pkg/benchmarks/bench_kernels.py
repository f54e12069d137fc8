"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel and backend with the best wall time, and checks
that both backends return identical arrays.
"""

import argparse
import time

import numpy as np

from asmoments.kernels import available_backends, get_backend


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def workloads():
    rng = np.random.default_rng(12345)
    # F_3^9 as F_3[y]/(y^9 + 2y^4 + 1) style modulus: walk 3^9 - 1 powers of y
    mod = [1, 0, 0, 0, 2, 0, 0, 0, 0, 1]
    gen = [0, 1] + [0] * 7
    A = rng.integers(0, 3, (200, 12))
    T = rng.integers(0, 3, (20000, 12))
    w = rng.integers(1, 4, 20000)
    return [
        ("walk_powers(3^9)", lambda k: k.walk_powers(mod, gen, 3, 3 ** 9 - 1)),
        ("residue_histogram(200x20000)", lambda k: k.residue_histogram(A, T, w, 3)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    for name, job in workloads():
        results = {}
        for b in backends:
            t, out = _best(lambda: job(get_backend(b)), args.repeat)
            results[b] = out
            print(f"{name:32s} {b:8s} {t * 1e3:10.2f} ms")
        outs = list(results.values())
        same = all(np.array_equal(outs[0], o) for o in outs[1:])
        print(f"{name:32s} backends agree: {same}")


if __name__ == "__main__":
    main()
