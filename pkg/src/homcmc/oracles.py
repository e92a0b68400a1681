"""Brute-force oracles.

Deliberately naive: every routine walks ``itertools`` subsets or permutations
and evaluates cut values with :meth:`CutComplex.cut_value` directly, sharing
no code with the kernels, the flow solver or the envelope recursion.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations, permutations

from .complex import WeightedComplex, boundary
from .cut import CutComplex


def all_regions(cells):
    cells = list(cells)
    return (frozenset(s) for s in chain.from_iterable(combinations(cells, k) for k in range(len(cells) + 1)))


def cut_values(C: CutComplex) -> dict[frozenset, Fraction]:
    return {r: C.cut_value(r) for r in all_regions(C.cell_ids)}


def volume(C: CutComplex, region) -> Fraction:
    return sum((C.volume_of[c] for c in region), Fraction(0))


def brute_mincut(C: CutComplex, objective=None):
    """``(value, intersection, union)`` of all minimizers.

    ``objective(region, cut_value)`` overrides the plain cut value.
    """
    vals = cut_values(C)
    if objective is not None:
        vals = {r: objective(r, v) for r, v in vals.items()}
    best = min(vals.values())
    opt = [r for r, v in vals.items() if v == best]
    return best, frozenset.intersection(*opt), frozenset.union(*opt)


def brute_AH(C: CutComplex, H):
    H = Fraction(H)
    return brute_mincut(C, lambda r, v: v - 2 * H * volume(C, r))


def brute_profile(C: CutComplex) -> dict[Fraction, Fraction]:
    out: dict[Fraction, Fraction] = {}
    for r, v in cut_values(C).items():
        K = volume(C, r)
        if K not in out or v < out[K]:
            out[K] = v
    return dict(sorted(out.items()))


def envelope_vertices(C: CutComplex, H_lo, H_hi):
    """Vertices of ``min_R (cut(R) - 2 H vol(R))`` on ``[H_lo, H_hi]`` by a
    kinetic scan over every region line."""
    H_lo, H_hi = Fraction(H_lo), Fraction(H_hi)
    lines = {}
    for r, a in cut_values(C).items():
        K = volume(C, r)
        if K not in lines or a < lines[K]:
            lines[K] = a
    lines = [(a, K) for K, a in lines.items()]

    def value(line, H):
        return line[0] - 2 * H * line[1]

    out = []
    env = min(value(ln, H_lo) for ln in lines)
    opt = [ln for ln in lines if value(ln, H_lo) == env]
    cur = max(opt, key=lambda ln: ln[1])
    if len(opt) > 1:
        low = min(opt, key=lambda ln: ln[1])
        out.append((H_lo, low[1], cur[1], low[0], cur[0]))
    while True:
        cross = [((a - cur[0]) / (2 * (K - cur[1])), (a, K)) for a, K in lines if K > cur[1]]
        if not cross:
            break
        H = min(h for h, _ in cross)
        if H > H_hi:
            break
        nxt = max((ln for h, ln in cross if h == H), key=lambda ln: ln[1])
        out.append((H, cur[1], nxt[1], cur[0], nxt[0]))
        cur = nxt
    return out


def brute_width(C: CutComplex) -> Fraction:
    """Minimax over every ordering; cut values are tabulated per subset first."""
    ids = list(C.cell_ids)
    bit = {c: 1 << i for i, c in enumerate(ids)}
    table = {sum(bit[c] for c in r): v for r, v in cut_values(C).items()}
    best = None
    for perm in permutations(ids):
        mask = 0
        worst = table[0]
        for c in perm:
            mask |= bit[c]
            worst = max(worst, table[mask])
        if best is None or worst < best:
            best = worst
    return best


def brute_g_card(C: CutComplex) -> Fraction:
    by_size: dict[int, Fraction] = {}
    for r, v in cut_values(C).items():
        if len(r) not in by_size or v < by_size[len(r)]:
            by_size[len(r)] = v
    return max(by_size.values())


def brute_class_min(cx: WeightedComplex, S) -> Fraction:
    S = frozenset(S)
    return min(cx.surface(S ^ boundary(cx, x).faces).area for x in all_regions(c.id for c in cx.cells))
