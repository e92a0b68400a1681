"""Area-minimizing representatives of a GF(2) homology class.

The class of ``S`` is ``{S ^ boundary(x)}`` over all cell sets ``x``; the
exact minimizer enumerates flip-sets ``x`` with the first cell pinned
outside, the heuristic one runs single-cell-flip descent from random starts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import kernels
from .complex import Region, SurfaceChain, WeightedComplex, boundary, complement_connected, is_null_homologous
from .cut import build_cut
from .errors import SeparatingSurfaceError
from .exact import common_denominator, scale
from .flow import mincut
from .subsets import check_cap

DEFAULT_CAP = 22


@dataclass(frozen=True)
class MinimizerResult:
    surface: SurfaceChain
    witness: Region
    method: str  # "exact-enumeration" | "local-search"
    certified: bool
    trivial: bool = False
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def area(self) -> Fraction:
        return self.surface.area


def _flip(cx: WeightedComplex, S: frozenset, x: frozenset) -> frozenset:
    return S ^ boundary(cx, x).faces


def _trivial_result(cx, S, witness, method, certified):
    return MinimizerResult(
        surface=cx.surface(()),
        witness=witness,
        method=method,
        certified=certified,
        trivial=True,
        diagnostics=("[S] = 0: the surface bounds a region; class operations are refused",),
    )


def minimize_exact(cx: WeightedComplex, S: Iterable[str], *, cap: int = DEFAULT_CAP,
                   threads: int = 1) -> MinimizerResult:
    """Exhaustive minimum over all ``2**(n-1)`` flip-sets.

    Ties go to the lexicographically smallest sorted face-id list.
    """
    S = cx.surface(S).faces
    n = len(cx.cells)
    check_cap(n, cap, "minimize_exact")
    bounds, witness = is_null_homologous(cx, S)
    if bounds:
        return _trivial_result(cx, S, witness, "exact-enumeration", True)

    ref = cx.cells[0].id
    order = sorted(c.id for c in cx.cells[1:])
    pos = {c: i for i, c in enumerate(order)}
    m = len(order)
    denom = common_denominator([f.area for f in cx.faces])
    const = scale([cx.surface(S).area], denom)[0]
    linear = [0] * m
    quad = [[0] * m for _ in range(m)]
    for f in cx.faces:
        if f.self_adjacent:
            continue
        w = scale([f.area], denom)[0]
        s = -w if f.id in S else w
        u, v = f.cells
        ends = [pos[c] for c in (u, v) if c != ref]
        for i in ends:
            linear[i] += s
        if len(ends) == 2:
            i, j = ends
            quad[i][j] -= 2 * s
            quad[j][i] -= 2 * s
    values = kernels.subset_values(const, linear, quad, threads=threads)
    best = values.min()
    candidates = np.flatnonzero(values == best)

    def cells(mask):
        return frozenset(order[i] for i in range(m) if int(mask) >> i & 1)

    chosen = min(candidates, key=lambda mk: sorted(_flip(cx, S, cells(mk))))
    x = cells(chosen)
    surface = cx.surface(_flip(cx, S, x))
    assert surface.area == Fraction(int(best), denom)
    return MinimizerResult(surface, cx.region(x), "exact-enumeration", True)


def minimize_local(cx: WeightedComplex, S: Iterable[str], seed: int = 0,
                   restarts: int = 0) -> MinimizerResult:
    """Best-improvement single-cell-flip descent.

    One run starts from ``x = {}``; each of ``restarts`` further runs starts
    from a random flip-set drawn with seed ``seed + i``.  Never worse than
    ``S`` itself; never certified.
    """
    S = cx.surface(S).faces
    bounds, witness = is_null_homologous(cx, S)
    if bounds:
        return _trivial_result(cx, S, witness, "local-search", False)
    ref = cx.cells[0].id
    movable = [c.id for c in cx.cells[1:]]
    incident = cx.incident

    def descend(x: set) -> frozenset:
        surf = set(_flip(cx, S, frozenset(x)))
        while True:
            best_delta, best_cell = Fraction(0), None
            for c in movable:
                delta = Fraction(0)
                for f in incident[c]:
                    if f.self_adjacent:
                        continue
                    delta += -f.area if f.id in surf else f.area
                if delta < best_delta:
                    best_delta, best_cell = delta, c
            if best_cell is None:
                return frozenset(x)
            x ^= {best_cell}
            for f in incident[best_cell]:
                if not f.self_adjacent:
                    surf ^= {f.id}

    starts = [set()]
    for i in range(restarts):
        rng = random.Random(seed + i)
        starts.append({c for c in movable if rng.random() < 0.5})
    results = []
    for x0 in starts:
        x = descend(set(x0))
        surface = cx.surface(_flip(cx, S, x))
        results.append((surface.area, sorted(surface.faces), x, surface))
    area, _, x, surface = min(results, key=lambda r: (r[0], r[1]))
    assert ref not in x
    return MinimizerResult(surface, cx.region(x), "local-search", False)


def certify_minimal_in_cut(cx: WeightedComplex, candidate: Iterable[str],
                           side_seed: str | None = None) -> bool:
    """Min-cut certificate: cutting along ``candidate`` admits no cheaper
    separating surface.  Necessary for minimality in the class."""
    chain = cx.surface(candidate)
    if not complement_connected(cx, chain.faces):
        raise SeparatingSurfaceError("candidate is separating; class machinery is undefined")
    if side_seed is None:
        first = min(chain.faces, key=cx.face_index.__getitem__)
        side_seed = cx.face(first).cells[0]
    C = build_cut(cx, chain.faces, side_seed)
    return mincut(C).value == chain.area
