"""Integer kernels behind the truncation oracle.

Each kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
version.  The dispatching functions use numba unless it is missing or
``CANTOR_REPR_NUMBA=0`` is set in the environment.  numba is imported on
first use so that commands which never touch the oracle start quickly.
All arithmetic is on int64, so results are exact as long as the caller
keeps ``base**depth`` below 2**62 (see :func:`horner_limit`).
"""
import functools
import importlib.util
import os

import numpy as np

HAVE_NUMBA = importlib.util.find_spec("numba") is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("CANTOR_REPR_NUMBA", "1") not in ("0", "false", "no")


def horner_limit(base: int) -> int:
    """Largest depth whose weights ``(base-1) * base**depth`` stay below 2**62."""
    depth = 0
    while (base - 1) * base ** (depth + 1) < 2**62:
        depth += 1
    return depth


# ---------------------------------------------------------------- numpy path


def prefix_counts_numpy(depth, values, lengths, lo, hi):
    codes = np.arange(lo, hi, dtype=np.int64)
    counts = np.zeros(hi - lo, dtype=np.int64)
    for v, n in zip(values.tolist(), lengths.tolist()):
        counts += (codes >> (depth - n)) == v
    return counts


def horner_numpy(digits, base):
    acc = np.zeros(digits.shape[0], dtype=np.int64)
    for j in range(digits.shape[1]):
        acc = acc * base + digits[:, j]
    return acc


# ---------------------------------------------------------------- numba path


def _prefix_counts_loop(depth, values, lengths, lo, hi):
    counts = np.zeros(hi - lo, dtype=np.int64)
    for c in range(lo, hi):
        k = 0
        for w in range(values.shape[0]):
            if (c >> (depth - lengths[w])) == values[w]:
                k += 1
        counts[c - lo] = k
    return counts


def _horner_loop(digits, base):
    n, m = digits.shape
    acc = np.zeros(n, dtype=np.int64)
    for i in range(n):
        a = 0
        for j in range(m):
            a = a * base + digits[i, j]
        acc[i] = a
    return acc


@functools.lru_cache(maxsize=None)
def numba_kernels():
    """Compiled ``(prefix_counts, horner)``; raises ImportError without numba."""
    import numba

    jit = numba.njit(cache=True)
    return jit(_prefix_counts_loop), jit(_horner_loop)


# ---------------------------------------------------------------- dispatch


def prefix_counts(depth, values, lengths, lo, hi):
    """For each depth-``depth`` code in ``[lo, hi)``, how many of the words
    (given as integer ``values`` with bit ``lengths``) are a prefix of it."""
    values = np.asarray(values, dtype=np.int64)
    lengths = np.asarray(lengths, dtype=np.int64)
    fn = numba_kernels()[0] if USE_NUMBA else prefix_counts_numpy
    return fn(np.int64(depth), values, lengths, np.int64(lo), np.int64(hi))


def horner(digits, base):
    """Row-wise ``sum_j digits[:, j] * base**(m-1-j)``."""
    digits = np.ascontiguousarray(digits, dtype=np.int64)
    fn = numba_kernels()[1] if USE_NUMBA else horner_numpy
    return fn(digits, np.int64(base))
