"""Time the compiled kernels against the pure-Python reference kernels.

Usage: ``python benchmarks/bench_kernels.py [--repeat N]``.  Each row shows
the best of N runs for both backends and checks that they agree.
"""
import argparse
import random
import timeit
from fractions import Fraction
from itertools import product

from qspecies import _kernels_py

try:
    from qspecies import _kernels
except ImportError:
    _kernels = None


def _dense(dim, deg, seed):
    rng = random.Random(seed)
    return {e: Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            for e in product(range(deg + 1), repeat=dim) if sum(e) <= deg}


def _words(dim, length, seed):
    rng = random.Random(seed)
    out = {}
    for n in range(length + 1):
        for w in product(range(1, dim + 1), repeat=n):
            out[w] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return out


def cases():
    a, b = _dense(2, 14, 1), _dense(2, 14, 2)
    c, d = _dense(3, 8, 3), _dense(3, 8, 4)
    u, v = _words(2, 8, 5), _words(2, 8, 6)
    return [
        ("graded_mul dim 2 deg 14", "graded_mul", (a, b, 14)),
        ("graded_mul dim 3 deg 8", "graded_mul", (c, d, 8)),
        ("word_mul dim 2 len 8", "word_mul", (u, v, 8)),
        ("perfect_matchings 12", "perfect_matchings", (12,)),
        ("set_partitions 9", "set_partitions", (9,)),
        ("inversions 400", "inversions", (tuple(range(0, 800, 2)), tuple(range(1, 800, 2)))),
    ]


def best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    print(f"{'kernel':28} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, name, fargs in cases():
        py = best(getattr(_kernels_py, name), fargs, args.repeat)
        if _kernels is None:
            print(f"{label:28} {py:10.4f} {'n/a':>10} {'n/a':>8}")
            continue
        cy_fn = getattr(_kernels, name)
        assert cy_fn(*fargs) == getattr(_kernels_py, name)(*fargs), label
        cy = best(cy_fn, fargs, args.repeat)
        print(f"{label:28} {py:10.4f} {cy:10.4f} {py / cy:7.2f}x")


if __name__ == "__main__":
    main()
