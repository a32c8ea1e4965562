"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both modules are imported directly, so the backend chosen at package import
does not matter here.  Inputs mimic what the library feeds the kernels:
small matrices of multi-digit integers over p = 5.
"""

import argparse
import random
import timeit

from padic_spectral import _kernels_py

try:
    from padic_spectral import _kernels
except ImportError:  # extension not built
    _kernels = None


def _matrix(rng, n, digits):
    hi = 5 ** digits
    return tuple(tuple(rng.choice((0, rng.randrange(-hi, hi))) for _ in range(n)) for _ in range(n))


def workloads(rng):
    p = 5
    a8, b8 = _matrix(rng, 8, 6), _matrix(rng, 8, 6)
    a16 = _matrix(rng, 16, 4)
    shift = tuple(rng.randint(-3, 3) for _ in range(8))
    vals = [rng.randrange(1, 10 ** 12) * 5 ** rng.randint(0, 20) for _ in range(200)]
    return {
        "mat_mul 8x8": lambda k: k.mat_mul(a8, b8),
        "mat_vec 8": lambda k: k.mat_vec(a8, a8[0]),
        "valuation x200": lambda k: [k.valuation(v, p) for v in vals],
        "min_weighted_valuation 8x8": lambda k: k.min_weighted_valuation(a8, p, shift, shift),
        "content 16x16": lambda k: k.content(a16, 5 ** 10),
        "mat_rank 16x16": lambda k: k.mat_rank(a16),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=200)
    args = ap.parse_args()
    rng = random.Random(0)
    print(f"{'kernel':30s} {'python us':>11s} {'cython us':>11s} {'speedup':>8s}")
    for name, fn in workloads(rng).items():
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=args.number,
                                 repeat=args.repeat)) / args.number * 1e6
        if _kernels is None:
            print(f"{name:30s} {t_py:11.1f} {'n/a':>11s}")
            continue
        assert fn(_kernels) == fn(_kernels_py), name
        t_cy = min(timeit.repeat(lambda: fn(_kernels), number=args.number,
                                 repeat=args.repeat)) / args.number * 1e6
        print(f"{name:30s} {t_py:11.1f} {t_cy:11.1f} {t_py / t_cy:7.2f}x")


if __name__ == "__main__":
    main()
