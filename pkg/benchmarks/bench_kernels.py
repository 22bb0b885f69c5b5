#!/usr/bin/env python
"""Time the numba and numpy oracle kernels on the same inputs.

    python benchmarks/bench_kernels.py --depth 20 --words 16 --rows 100000
"""
import argparse
import time

import numpy as np

from cantor_repr import _kernels
from cantor_repr.compiler import partition_words


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--depth", type=int, default=20)
    parser.add_argument("--words", type=int, default=16, help="partition size r")
    parser.add_argument("--rows", type=int, default=100_000, help="sequences for the Horner kernel")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    words = partition_words(args.words)
    values = np.array([int(w, 2) if w else 0 for w in words], dtype=np.int64)
    lengths = np.array([len(w) for w in words], dtype=np.int64)
    digits = np.random.default_rng(0).integers(0, 2, size=(args.rows, args.depth)).astype(np.int64)
    hi = 2**args.depth

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    nb_prefix, nb_horner = _kernels.numba_kernels()
    start = time.perf_counter()
    nb_prefix(args.depth, values, lengths, 0, 8)
    nb_horner(digits[:2], 2)
    print(f"numba compile/load: {time.perf_counter() - start:.3f}s")

    cases = [
        (
            f"prefix_counts  2^{args.depth} codes x {len(words)} words",
            lambda: _kernels.prefix_counts_numpy(args.depth, values, lengths, 0, hi),
            lambda: nb_prefix(args.depth, values, lengths, 0, hi),
        ),
        (
            f"horner         {args.rows} x {args.depth} digits",
            lambda: _kernels.horner_numpy(digits, 3),
            lambda: nb_horner(digits, 3),
        ),
    ]
    print(f"{'kernel':48} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for name, np_fn, nb_fn in cases:
        t_np, a = best_of(np_fn, args.repeat)
        t_nb, b = best_of(nb_fn, args.repeat)
        assert np.array_equal(a, b), name
        print(f"{name:48} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms {t_np / t_nb:7.2f}x")


if __name__ == "__main__":
    main()
