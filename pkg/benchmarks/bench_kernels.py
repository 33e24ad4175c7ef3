"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--draws 100000] [--repeat 3]

Both backends must produce identical outputs for the same state; the script
checks that before reporting times.
"""

import argparse
import sys
import timeit

import numpy as np

from qboost import _backend


def cases(draws):
    rng = np.random.default_rng(0)
    g = np.sin(np.pi * rng.uniform(size=286) / 2) ** 2
    half = rng.integers(0, 2, size=(143, 272))
    acc = np.empty((286, 272), dtype=np.uint8)
    acc[0::2], acc[1::2] = half, 1 - half
    return {
        "fill_uniform": lambda k: k.fill_uniform(draws, 1),
        "permutation": lambda k: k.permutation(draws, 2),
        "rejection_draws": lambda k: k.rejection_draws(g, draws, 3, 10**6),
        "constant_draws": lambda k: k.constant_draws(acc, draws, 4, 10**6),
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b) if isinstance(a, np.ndarray) else a == b


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--draws", type=int, default=100_000)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)

    py = _backend.get_kernels("python")
    try:
        cy = _backend.get_kernels("cython")
    except ImportError:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")
        return 1

    print(f"{'kernel':<18}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name, fn in cases(args.draws).items():
        if not same(fn(py), fn(cy)):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:<18}{t_py:11.4f}{t_cy:11.4f}{t_py / t_cy:9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
