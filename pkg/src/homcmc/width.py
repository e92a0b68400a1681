"""Discrete sweepout width and the girth-by-cardinality floor.

A sweepout adds one cell at a time, from the empty region (the plus copy of
the cut surface) to every cell (the minus copy).  Its cost is the largest cut
value along the way; the width is the least cost over all orderings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .cut import CutComplex
from .subsets import check_cap, cut_table

DEFAULT_CAP = 20


@dataclass(frozen=True)
class SweepoutResult:
    width: Fraction
    ordering: tuple[str, ...]
    slices: tuple[Fraction, ...]
    g_card: Fraction
    chat: Fraction


def _g_card(values, n: int):
    pop = kernels.popcount(np.arange(len(values), dtype=np.int64), n)
    order = np.argsort(pop, kind="stable")
    starts = np.searchsorted(pop[order], np.arange(n + 1))
    return max(values[order[starts[c]:(starts[c + 1] if c < n else len(values))]].min() for c in range(n + 1))


def width_dp(C: CutComplex, *, cap: int = DEFAULT_CAP, threads: int = 1) -> SweepoutResult:
    """Subset DP over prefixes: ``W(X) = max(cut(X), min_c W(X - c))``.

    The reported ordering is the lexicographically smallest optimal one: a
    second DP from the full set tells, for every prefix, whether it can still
    be completed within the width.
    """
    n = len(C.cells)
    check_cap(n, cap, "width_dp")
    denom, values = cut_table(C, threads)
    full = (1 << n) - 1
    forward = kernels.chain_dp(values)
    backward = kernels.chain_dp(values[::-1].copy())  # backward[Y] covers chains from full down to full ^ Y
    best = forward[full]
    order = C.sorted_cells
    X = 0
    ordering = []
    slices = [values[0]]
    for _ in range(n):
        for c in range(n):
            if X >> c & 1:
                continue
            Y = X | (1 << c)
            if backward[full ^ Y] <= best:
                X = Y
                ordering.append(order[c])
                slices.append(values[X])
                break
        else:  # pragma: no cover - the DP guarantees a completion
            raise AssertionError("no completion within the width")
    width = Fraction(int(best), denom)
    assert max(slices) == best
    sigma0 = Fraction(int(values[0]), denom)
    return SweepoutResult(
        width=width,
        ordering=tuple(ordering),
        slices=tuple(Fraction(int(v), denom) for v in slices),
        g_card=Fraction(int(_g_card(values, n)), denom),
        chat=(width - sigma0) / C.total_volume,
    )


def g_card(C: CutComplex, *, cap: int = DEFAULT_CAP, threads: int = 1) -> Fraction:
    """``max_c min_{|X| = c} cut(X)``: every sweepout passes each cardinality."""
    n = len(C.cells)
    check_cap(n, cap, "g_card")
    denom, values = cut_table(C, threads)
    return Fraction(int(_g_card(values, n)), denom)
