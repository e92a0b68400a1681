"""Minimizing H-surfaces and the parametric breakpoint structure.

For a signed rational ``H`` the functional ``cut_value(R) - 2 H vol(R)`` is
minimized exactly as a min-cut with per-cell bonus arcs.  Sweeping ``H``, the
optimal value is the lower envelope of the lines ``area - 2 H vol`` and its
vertices are the breakpoints where the optimal region jumps.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import Region, SurfaceChain
from .cut import CutComplex
from .exact import fmt
from .flow import mincut
from .profile import Profile


@dataclass(frozen=True)
class HSolve:
    H: Fraction
    value: Fraction
    region_minus: Region
    region_plus: Region
    surface_minus: SurfaceChain
    surface_plus: SurfaceChain
    hugs: frozenset = field(default=frozenset())

    @property
    def unique(self) -> bool:
        return self.region_minus.cells == self.region_plus.cells

    @property
    def line_minus(self) -> tuple[Fraction, Fraction]:
        return self.surface_minus.area, self.region_minus.volume

    @property
    def line_plus(self) -> tuple[Fraction, Fraction]:
        return self.surface_plus.area, self.region_plus.volume


def solve_AH(C: CutComplex, H) -> HSolve:
    """Minimize ``cut_value(R) - 2 H vol(R)`` over regions ``R``.

    ``H > 0`` adds SOURCE capacity ``2 H vol(c)`` per cell (leaving a cell out
    of R forfeits its volume reward), ``H < 0`` adds SINK capacity
    ``2 |H| vol(c)``; the constant offset is subtracted back out.
    """
    H = Fraction(H)
    if H > 0:
        bonus = {c.id: 2 * H * c.volume for c in C.cells}
        res = mincut(C, source_bonus=bonus)
        value = res.value - 2 * H * C.total_volume
    elif H < 0:
        bonus = {c.id: -2 * H * c.volume for c in C.cells}
        res = mincut(C, sink_bonus=bonus)
        value = res.value
    else:
        res = mincut(C)
        value = res.value
    lo, hi = res.min_region, res.max_region
    hugs = set()
    if not lo.cells:
        hugs.add("source-hug")
    if len(hi.cells) == len(C.cells):
        hugs.add("barrier-hug" if C.kind == "restricted" else "sink-hug")
    sol = HSolve(H, value, lo, hi, C.surface_of(lo.cells), C.surface_of(hi.cells), frozenset(hugs))
    assert sol.surface_minus.area - 2 * H * lo.volume == value
    assert sol.surface_plus.area - 2 * H * hi.volume == value
    return sol


@dataclass(frozen=True)
class Breakpoint:
    H: Fraction
    vol_before: Fraction
    vol_after: Fraction
    area_before: Fraction
    area_after: Fraction

    @property
    def jump(self) -> Fraction:
        return self.vol_after - self.vol_before


@dataclass(frozen=True)
class Spectrum:
    breakpoints: tuple[Breakpoint, ...]
    H_lo: Fraction
    H_hi: Fraction
    lo_volume: Fraction
    lo_area: Fraction
    hi_volume: Fraction
    total_volume: Fraction
    probes: tuple[HSolve, ...] = field(default=(), repr=False, compare=False)

    @property
    def thickness(self) -> Fraction:
        return sum((b.jump for b in self.breakpoints), Fraction(0))

    @property
    def covers_envelope(self) -> bool:
        """True when the sweep starts at the empty region and ends at all cells."""
        return self.lo_volume == 0 and self.hi_volume == self.total_volume

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["H_star", "vol_before", "vol_after", "area_before", "area_after"])
        for b in self.breakpoints:
            w.writerow([fmt(b.H), fmt(b.vol_before), fmt(b.vol_after), fmt(b.area_before), fmt(b.area_after)])
        return buf.getvalue()


def breakpoints(C: CutComplex, H_lo, H_hi) -> Spectrum:
    """All breakpoints of the optimal value on ``[H_lo, H_hi]``.

    Recursive envelope search: with the largest optimum at the left end and
    the smallest at the right end, either they are the same line (no
    breakpoint between) or their intersection ``H'`` is probed.  If the
    optimum at ``H'`` lies on both lines, ``H'`` is the only breakpoint in
    between; otherwise both halves are searched.  ``H_lo == H_hi`` is allowed
    and probes the single point.
    """
    H_lo, H_hi = Fraction(H_lo), Fraction(H_hi)
    if H_lo > H_hi:
        raise ValueError(f"empty H range [{H_lo}, {H_hi}]")
    probes: dict[Fraction, HSolve] = {}

    def solve(H):
        if H not in probes:
            probes[H] = solve_AH(C, H)
        return probes[H]

    stack = [(H_lo, H_hi)]
    solve(H_lo)
    solve(H_hi)
    while stack:
        a, b = stack.pop()
        if a == b:
            continue
        area_a, vol_a = solve(a).line_plus
        area_b, vol_b = solve(b).line_minus
        if (area_a, vol_a) == (area_b, vol_b):
            continue
        if vol_b <= vol_a:
            raise AssertionError(f"optima not nested between H={a} and H={b}")
        mid = (area_b - area_a) / (2 * (vol_b - vol_a))
        assert a < mid < b, (a, mid, b)
        s = solve(mid)
        if s.value == area_a - 2 * mid * vol_a:
            continue
        stack.append((mid, b))
        stack.append((a, mid))

    bps = []
    for H in sorted(probes):
        s = probes[H]
        if s.line_minus != s.line_plus:
            bps.append(Breakpoint(H, s.region_minus.volume, s.region_plus.volume,
                                  s.surface_minus.area, s.surface_plus.area))
    first = probes[H_lo]
    return Spectrum(
        breakpoints=tuple(bps),
        H_lo=H_lo,
        H_hi=H_hi,
        lo_volume=first.region_minus.volume,
        lo_area=first.surface_minus.area,
        hi_volume=probes[H_hi].region_plus.volume,
        total_volume=C.total_volume,
        probes=tuple(probes[H] for H in sorted(probes)),
    )


def full_range(C: CutComplex) -> tuple[Fraction, Fraction]:
    """An ``H`` range whose ends force the empty region and the full region.

    Every cut value lies in ``[0, total capacity]``, so once ``2 |H|`` times
    the smallest cell volume exceeds the total capacity no other region can
    compete at either end.
    """
    total = (sum((a.capacity for a in C.arcs), Fraction(0)) + C.source_area + C.sink_area)
    B = total / (2 * min(c.volume for c in C.cells)) + 1
    return -B, B


def k_of(spec: Spectrum, H):
    """Volume of the optimal region at ``H``; a ``(before, after)`` pair at a
    breakpoint."""
    H = Fraction(H)
    if not spec.H_lo <= H <= spec.H_hi:
        raise ValueError(f"H={H} outside swept domain [{spec.H_lo}, {spec.H_hi}]")
    vol = spec.lo_volume
    for b in spec.breakpoints:
        if b.H == H:
            return (b.vol_before, b.vol_after)
        if b.H < H:
            vol = b.vol_after
    return vol


def hhat(P: Profile) -> Fraction:
    """Largest mean curvature carried by a discrete isoperimetric surface:
    half the steepest one-sided profile slope."""
    if len(P) < 2:
        raise ValueError("profile has fewer than 2 points")
    return max(abs(P.slope(i, i + 1)) for i in range(len(P) - 1)) / 2
