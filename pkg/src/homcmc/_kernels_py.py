"""Reference (non-compiled) kernels.

Both routines accept int64 arrays or object arrays of Python ints; the
latter is the overflow-safe path used when scaled weights exceed int64.
"""

from __future__ import annotations

import numpy as np


def subset_values_into(const, linear, quad, out) -> None:
    """Fill ``out[mask] = const + sum a_i + sum_{i<j} q_ij`` over bits of mask.

    Built by doubling: adding bit ``k`` to every mask over bits ``< k``
    costs ``a_k`` plus the pair terms, which themselves double up.
    """
    n = len(linear)
    dtype = out.dtype
    out[0] = const
    pair = np.zeros(1 << max(n - 1, 0), dtype=dtype)
    for k in range(n):
        size = 1 << k
        pair[0] = 0
        for j in range(k):
            s = 1 << j
            pair[s:2 * s] = pair[:s] + quad[j][k]
        out[size:2 * size] = out[:size] + linear[k] + pair[:size]


def chain_dp(values):
    """``W(X) = max(values[X], min_{c in X} W(X - c))``, ``W(0) = values[0]``."""
    size = len(values)
    n = size.bit_length() - 1
    masks = np.arange(size, dtype=np.int64)
    pop = np.zeros(size, dtype=np.int64)
    for b in range(n):
        pop += (masks >> b) & 1
    order = np.argsort(pop, kind="stable")
    bounds = np.searchsorted(pop[order], np.arange(n + 2))
    W = values.copy()
    for k in range(1, n + 1):
        layer = order[bounds[k]:bounds[k + 1]]
        best = None
        for b in range(n):
            has = ((layer >> b) & 1).astype(bool)
            cand = np.where(has, W[layer ^ (1 << b)], W[layer] * 0 + _big(W))
            best = cand if best is None else np.minimum(best, cand)
        W[layer] = np.maximum(best, values[layer])
    return W


def _big(W):
    if W.dtype == object:
        return max(abs(int(W.max())), abs(int(W.min()))) * 4 + 1
    return np.iinfo(np.int64).max
