"""Hot-loop dispatch: compiled core when available, numpy fallback otherwise.

Set ``HOMCMC_PURE=1`` to force the fallback.  Values that do not fit in
int64 always take the fallback with Python-int object arrays.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels_py

try:
    if os.environ.get("HOMCMC_PURE"):
        raise ImportError("forced pure mode")
    from . import _ckernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_INT64_SAFE = 1 << 62


def _impl(name: str, use_compiled: bool):
    if use_compiled and _compiled is not None:
        return getattr(_compiled, name)
    return getattr(_kernels_py, name)


def subset_values(const: int, linear, quad, *, threads: int = 1, backend: str | None = None):
    """Evaluate ``const + sum_{i in X} a_i + sum_{i<j in X} q_ij`` for every X.

    Mask bit ``i`` stands for element ``i``.  With ``threads > 1`` the top bits
    are fixed per chunk and chunks are evaluated concurrently; the result is
    identical for any thread count.
    """
    n = len(linear)
    quad = [list(map(int, row)) for row in quad] if n else []
    linear = [int(a) for a in linear]
    bound = abs(int(const)) + sum(abs(a) for a in linear) + sum(
        abs(quad[i][j]) for i in range(n) for j in range(i + 1, n)
    )
    safe = bound < _INT64_SAFE
    use_compiled = safe and (backend or BACKEND) == "cython"
    dtype = np.int64 if safe else object
    out = np.zeros(1 << n, dtype=dtype)
    fill = _impl("subset_values_into", use_compiled)

    top = 0
    if threads > 1 and n >= 8:
        top = min(n - 4, max(1, (threads - 1).bit_length() + 1))
    low = n - top
    lin_low = linear[:low]
    q_low = np.array([row[:low] for row in quad[:low]], dtype=dtype).reshape(low, low)

    def chunk(hi: int) -> None:
        hbits = [low + b for b in range(top) if hi >> b & 1]
        c = int(const) + sum(linear[h] for h in hbits)
        c += sum(quad[a][b] for ai, a in enumerate(hbits) for b in hbits[ai + 1:])
        lin = [lin_low[i] + sum(quad[i][h] for h in hbits) for i in range(low)]
        seg = out[hi << low:(hi + 1) << low]
        if use_compiled:
            fill(c, np.array(lin, dtype=np.int64), q_low, seg)
        else:
            fill(c, np.array(lin, dtype=dtype), q_low, seg)

    if top == 0:
        chunk(0)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(chunk, range(1 << top)))
    return out


def chain_dp(values, *, backend: str | None = None):
    use_compiled = values.dtype == np.int64 and (backend or BACKEND) == "cython"
    return _impl("chain_dp", use_compiled)(values)


def lexmin_mask(masks) -> int:
    """Mask whose sorted bit-index tuple is lexicographically smallest."""
    rem = [int(m) for m in masks]
    chosen = rem[0] if len(rem) == 1 else None
    if chosen is not None:
        return chosen
    pool = list(zip(rem, rem))
    while True:
        for full, r in pool:
            if r == 0:
                return full
        lowest = min(r & -r for _, r in pool)
        pool = [(full, r ^ lowest) for full, r in pool if r & -r == lowest]


def popcount(masks, n: int):
    pop = np.zeros(len(masks), dtype=np.int64)
    for b in range(n):
        pop += (masks >> b) & 1
    return pop
