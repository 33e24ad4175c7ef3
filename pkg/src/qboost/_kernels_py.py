"""Pure-Python kernels. Reference for, and fallback to, ``_ckernels``.

Every function takes the SplitMix64 state as an int and returns the advanced
state; both backends consume the stream in the same order and return
identical results.
"""

import numpy as np

from .rng import splitmix64_next

_INV_2_53 = 1.0 / (1 << 53)


def fill_uniform(n, state):
    out = np.empty(n, dtype=np.float64)
    for k in range(n):
        state, z = splitmix64_next(state)
        out[k] = (z >> 11) * _INV_2_53
    return out, state


def permutation(n, state):
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        state, z = splitmix64_next(state)
        j = int((z >> 11) * _INV_2_53 * (i + 1))
        perm[i], perm[j] = perm[j], perm[i]
    return np.array(perm, dtype=np.int64), state


def rejection_draws(gvals, size, state, max_rounds):
    g = [float(v) for v in gvals]
    W = len(g)
    idx = np.zeros(size, dtype=np.int64)
    rounds = np.zeros(size, dtype=np.int64)
    for k in range(size):
        for r in range(1, max_rounds + 1):
            state, z = splitmix64_next(state)
            theta = int((z >> 11) * _INV_2_53 * W)
            state, z = splitmix64_next(state)
            if (z >> 11) * _INV_2_53 <= g[theta]:
                idx[k] = theta
                rounds[k] = r
                break
        else:
            return idx, rounds, state, k
    return idx, rounds, state, size


def constant_draws(acc, size, state, max_rounds):
    W, N = acc.shape
    rows = [bytes(row) for row in np.ascontiguousarray(acc, dtype=np.uint8)]
    idx = np.zeros(size, dtype=np.int64)
    rounds = np.zeros(size, dtype=np.int64)
    for k in range(size):
        for r in range(1, max_rounds + 1):
            state, z = splitmix64_next(state)
            i = int((z >> 11) * _INV_2_53 * N)
            state, z = splitmix64_next(state)
            theta = int((z >> 11) * _INV_2_53 * W)
            if rows[theta][i]:
                idx[k] = theta
                rounds[k] = r
                break
        else:
            return idx, rounds, state, k
    return idx, rounds, state, size
