"""Exhaustive subset tables for small networks, backed by :mod:`homcmc.kernels`.

Mask bit ``i`` always refers to ``C.sorted_cells[i]`` so that bit order equals
lexicographic id order; lexicographic tie-breaks reduce to bit tricks.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import kernels
from .cut import CutComplex
from .errors import CapExceededError
from .exact import common_denominator, scale


def check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceededError(
            f"{what}: {n} cells exceeds the exact-enumeration cap of {cap}; "
            "use local search or raise the cap"
        )


def cut_table(C: CutComplex, threads: int = 1):
    """``(denom, values)`` with ``values[mask] = cut_value(mask) * denom``."""
    denom, const, linear, quad = C.quadratic_form()
    return denom, kernels.subset_values(const, linear, quad, threads=threads)


def volume_table(C: CutComplex, threads: int = 1):
    order = C.sorted_cells
    vols = [C.volume_of[c] for c in order]
    denom = common_denominator(vols)
    linear = scale(vols, denom)
    n = len(order)
    quad = [[0] * n for _ in range(n)]
    return denom, kernels.subset_values(0, linear, quad, threads=threads)


def cells_of(C: CutComplex, mask: int) -> frozenset:
    order = C.sorted_cells
    return frozenset(order[i] for i in range(len(order)) if mask >> i & 1)


def mask_of(C: CutComplex, cells) -> int:
    pos = {c: i for i, c in enumerate(C.sorted_cells)}
    m = 0
    for c in cells:
        m |= 1 << pos[c]
    return m


def as_fraction(v, denom: int) -> Fraction:
    return Fraction(int(v), denom)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def masks(n: int):
    return np.arange(1 << n, dtype=np.int64)
