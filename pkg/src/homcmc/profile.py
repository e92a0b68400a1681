"""Exact discrete isoperimetric profile of a homology class.

``I(K)`` is the least cut value over regions of volume exactly ``K``, taken
over every achieved volume.  From it come the one-sided slopes (twice the
mean curvature of the isoperimetric surfaces), the girth, the lower bound
``C_S = (girth - I(0)) / total volume`` and a point whose slope certifies it.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import kernels
from .complex import Region
from .cut import CutComplex
from .errors import UnknownIdError
from .subsets import check_cap, cut_table, volume_table

DEFAULT_CAP = 22


@dataclass(frozen=True)
class ProfilePoint:
    K: Fraction
    area: Fraction
    witness: Region
    left_slope: Fraction | None
    right_slope: Fraction | None
    on_envelope: bool


class Profile:
    """Profile points in increasing volume.

    Stored as scaled integer arrays; :attr:`points` materializes Fractions.
    """

    def __init__(self, cells, k_num, k_den, a_num, a_den, witness_masks, class_mode):
        self.cells = tuple(cells)
        self.k_num = list(map(int, k_num))
        self.k_den = k_den
        self.a_num = list(map(int, a_num))
        self.a_den = a_den
        self.witness_masks = list(map(int, witness_masks))
        self.class_mode = class_mode
        self.on_envelope = _lower_hull_members(self.k_num, self.a_num)

    def __len__(self):
        return len(self.k_num)

    @cached_property
    def Ks(self) -> list[Fraction]:
        return [Fraction(k, self.k_den) for k in self.k_num]

    @cached_property
    def areas(self) -> list[Fraction]:
        return [Fraction(a, self.a_den) for a in self.a_num]

    @property
    def total_volume(self) -> Fraction:
        return self.Ks[-1]

    @property
    def sigma0_area(self) -> Fraction:
        return self.areas[0]

    def slope(self, i: int, j: int) -> Fraction:
        return (self.areas[j] - self.areas[i]) / (self.Ks[j] - self.Ks[i])

    def left_slope(self, i: int):
        return self.slope(i - 1, i) if i > 0 else None

    def right_slope(self, i: int):
        return self.slope(i, i + 1) if i + 1 < len(self) else None

    def witness(self, i: int) -> Region:
        m = self.witness_masks[i]
        cells = frozenset(c for b, c in enumerate(self.cells) if m >> b & 1)
        return Region(cells, self.Ks[i])

    def index_of(self, K) -> int:
        K = Fraction(K)
        num = K * self.k_den
        if num.denominator == 1:
            lo = bisect_left(self.k_num, num.numerator)
            if lo < len(self) and self.k_num[lo] == num.numerator:
                return int(lo)
        raise UnknownIdError(f"volume {K} is not achieved by any region")

    def area_at(self, K) -> Fraction:
        return self.areas[self.index_of(K)]

    @cached_property
    def points(self) -> list[ProfilePoint]:
        return [
            ProfilePoint(self.Ks[i], self.areas[i], self.witness(i), self.left_slope(i),
                         self.right_slope(i), self.on_envelope[i])
            for i in range(len(self))
        ]


def _lower_hull_members(xs, ys) -> list[bool]:
    """Membership in the lower convex hull, collinear points included."""
    hull: list[int] = []
    for i in range(len(xs)):
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (xs[a] - xs[o]) * (ys[i] - ys[o]) - (ys[a] - ys[o]) * (xs[i] - xs[o])
            if cross < 0:
                hull.pop()
            else:
                break
        hull.append(i)
    member = [False] * len(xs)
    for i in hull:
        member[i] = True
    return member


def profile_exact(C: CutComplex, *, cap: int = DEFAULT_CAP, threads: int = 1) -> Profile:
    """Enumerate every region and keep, per exact volume, the least cut value
    and the lexicographically smallest cell set achieving it."""
    n = len(C.cells)
    check_cap(n, cap, "profile_exact")
    da, vals = cut_table(C, threads)
    dv, vols = volume_table(C, threads)
    order = np.lexsort((vals, vols)) if vals.dtype != object else _object_lexsort(vals, vols)
    sv = vols[order]
    sa = vals[order]
    new_group = np.ones(len(order), dtype=bool)
    new_group[1:] = sv[1:] != sv[:-1]
    starts = np.flatnonzero(new_group)
    witness = order[starts].astype(np.int64)
    # groups whose minimum is attained more than once need the lexicographic tie-break
    nxt = starts + 1
    has_next = nxt < len(order)
    tied = np.zeros(len(starts), dtype=bool)
    tied[has_next] = (~new_group[nxt[has_next]]) & (sa[nxt[has_next]] == sa[starts[has_next]])
    for g in np.flatnonzero(tied):
        s = int(starts[g])
        e = s + 1
        while e < len(order) and not new_group[e] and sa[e] == sa[s]:
            e += 1
        witness[g] = kernels.lexmin_mask(order[s:e])
    return Profile(
        cells=C.sorted_cells,
        k_num=sv[starts],
        k_den=dv,
        a_num=sa[starts],
        a_den=da,
        witness_masks=witness,
        class_mode=not C.slab_mode,
    )


def _object_lexsort(vals, vols):
    return np.array(sorted(range(len(vals)), key=lambda i: (vols[i], vals[i])), dtype=np.int64)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GirthReport:
    girth: Fraction
    argmax_K: Fraction
    C_S: Fraction
    witness_K1: Fraction
    witness_slope: Fraction
    witness_side: str  # "left" | "right"
    witness_region: Region


def witness_candidates(P: Profile) -> list[tuple[Fraction, int, str]]:
    """Every ``(slope, index, side)`` with ``|slope| >= 2 * C_S``, best first.

    Candidates are consecutive differences rising into the first maximum or
    falling out of it, restricted to interior points.  Order: steepest
    magnitude, then earlier volume, then the left side.
    """
    if len(P) < 2:
        raise ValueError("profile has fewer than 2 points")
    if P.areas[0] != P.areas[-1]:
        raise ValueError(
            f"profile is not in class mode: endpoint areas {P.areas[0]} and {P.areas[-1]} differ"
        )
    areas = P.areas
    a = areas.index(max(areas))
    C_S = (areas[a] - P.sigma0_area) / P.total_volume
    last = len(P) - 1
    out = []
    for j in range(1, min(a, last - 1) + 1):
        out.append((P.slope(j - 1, j), j, "left"))
    for j in range(max(a, 1), last):
        out.append((P.slope(j, j + 1), j, "right"))
    if not out:
        raise ValueError("profile has no interior point")
    out = [c for c in out if abs(c[0]) >= 2 * C_S]
    out.sort(key=lambda c: (-abs(c[0]), c[1], c[2] != "left"))
    return out


def girth_and_bound(P: Profile) -> GirthReport:
    """Girth, ``C_S`` and a mean-value witness.

    The witness is the steepest consecutive difference rising into the first
    maximum or falling out of it.  The shorter of the two sides spans at most
    half the volume while climbing ``girth - I(0)``, so some difference on it
    is at least ``2 * C_S`` in magnitude.
    """
    candidates = witness_candidates(P)
    girth = max(P.areas)
    C_S = (girth - P.sigma0_area) / P.total_volume
    argmax = P.Ks[P.areas.index(girth)]
    if not candidates:  # pragma: no cover - excluded by the telescoping argument
        raise AssertionError("no mean-value witness")
    slope, j, side = candidates[0]
    return GirthReport(girth, argmax, C_S, P.Ks[j], slope, side, P.witness(j))


def h_of(P: Profile, K) -> tuple[Fraction | None, Fraction | None]:
    """Mean curvatures ``(left, right)`` of the isoperimetric surfaces at ``K``."""
    i = P.index_of(K)
    left, right = P.left_slope(i), P.right_slope(i)
    return (None if left is None else left / 2, None if right is None else right / 2)


def classify_envelope(P: Profile) -> dict[str, list[Fraction]]:
    """Split points into those some ``H`` makes unconstrained optima (on the
    lower convex hull) and those only reachable with the volume constraint."""
    out: dict[str, list[Fraction]] = {"lagrangian": [], "constrained": []}
    for K, on in zip(P.Ks, P.on_envelope):
        out["lagrangian" if on else "constrained"].append(K)
    return out
