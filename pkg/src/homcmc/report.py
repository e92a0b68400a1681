"""End-to-end class report and its check suite.

Pipeline: minimal representative, cut complex, exact profile, girth and the
mean-value witness, a barrier-restricted parametric sweep up to the witness
curvature, and the sweepout width.  Every stage feeds checks that compare the
computed objects with each other; conjectural comparisons are recorded as
diagnostics and never fail a report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import min_surface, profile as profile_mod, width as width_mod
from .complex import WeightedComplex, complement_connected
from .cut import CutComplex, build_cut, make_barrier, restrict
from .errors import BarrierError, CapExceededError, SeparatingSurfaceError, TrivialClassError
from .exact import decimal15, fmt
from .profile import GirthReport, Profile, girth_and_bound, profile_exact, witness_candidates
from .spectrum import Spectrum, breakpoints, hhat, solve_AH

REPORT_FORMAT = "homcmc-report/1"

PASS, FAIL, DIAGNOSTIC, SKIPPED = "pass", "fail", "diagnostic", "skipped"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    details: dict = field(default_factory=dict)


@dataclass
class ClassReport:
    surface_name: str | None
    seed_cell: str
    sigma0: min_surface.MinimizerResult
    total_volume: Fraction
    profile: Profile | None = None
    girth_report: GirthReport | None = None
    hhat: Fraction | None = None
    sweep: "BarrierSweep | None" = None
    sweepout: width_mod.SweepoutResult | None = None
    checks: list[Check] = field(default_factory=list)

    @property
    def sigma0_area(self) -> Fraction:
        return self.sigma0.area

    @property
    def heuristic(self) -> bool:
        return not self.sigma0.certified

    @property
    def girth(self):
        return self.girth_report and self.girth_report.girth

    @property
    def C_S(self):
        return self.girth_report and self.girth_report.C_S

    @property
    def witness_K1(self):
        return self.girth_report and self.girth_report.witness_K1

    @property
    def spectrum(self) -> Spectrum | None:
        return self.sweep and self.sweep.spectrum

    @property
    def width(self):
        return self.sweepout and self.sweepout.width

    @property
    def g_card(self):
        return self.sweepout and self.sweepout.g_card

    @property
    def chat(self):
        return self.sweepout and self.sweepout.chat

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        g = self.girth_report
        doc = {
            "format": REPORT_FORMAT,
            "surface": self.surface_name,
            "seed_cell": self.seed_cell,
            "sigma0": {
                "faces": self.sigma0.surface.sorted(),
                "area": _num(self.sigma0_area),
                "method": self.sigma0.method,
                "certified": self.sigma0.certified,
                "heuristic": self.heuristic,
            },
            "total_volume": _num(self.total_volume),
            "girth": _num(self.girth),
            "C_S": _num(self.C_S),
            "witness_K1": _num(self.witness_K1),
            "witness_slope": _num(g.witness_slope if g else None),
            "witness_side": g.witness_side if g else None,
            "hhat": _num(self.hhat),
            "width": _num(self.width),
            "g_card": _num(self.g_card),
            "chat": _num(self.chat),
            "ordering": list(self.sweepout.ordering) if self.sweepout else None,
            "spectrum": self.sweep.to_dict() if self.sweep else None,
            "checks": [{"name": c.name, "status": c.status, "details": _jsonable(c.details)} for c in self.checks],
        }
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _num(q):
    if q is None:
        return None
    return {"exact": fmt(q), "decimal": decimal15(q)}


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(v) for v in obj)
    return obj


# ---------------------------------------------------------------------------
# barrier-restricted sweep


@dataclass(frozen=True)
class BarrierSweep:
    """A parametric sweep inside a barrier.

    ``orientation`` is ``"plus"`` when the barrier region is measured from the
    SOURCE copy of the cut surface and ``"minus"`` when the complex was
    reversed so that a falling profile slope becomes a rising one.
    """

    parent: CutComplex
    restricted: CutComplex
    barrier_cells: frozenset
    orientation: str
    spectrum: Spectrum
    K1: Fraction | None = None
    slope: Fraction | None = None

    def to_dict(self) -> dict:
        s = self.spectrum
        return {
            "orientation": self.orientation,
            "K1": _num(self.K1),
            "slope": _num(self.slope),
            "barrier": sorted(self.barrier_cells),
            "barrier_volume": _num(self.restricted.total_volume),
            "H_lo": _num(s.H_lo),
            "H_hi": _num(s.H_hi),
            "thickness": _num(s.thickness),
            "breakpoints": [
                {
                    "H_star": _num(b.H),
                    "vol_before": _num(b.vol_before),
                    "vol_after": _num(b.vol_after),
                    "area_before": _num(b.area_before),
                    "area_after": _num(b.area_after),
                }
                for b in s.breakpoints
            ],
        }


def orient_witness(C: CutComplex, P: Profile, slope: Fraction, j: int):
    """Orient ``C`` so a witness slope is rising.

    Returns ``(complex, barrier cells, orientation, H_hi)`` with
    ``H_hi = |slope| / 2``.  A falling slope is handled on the reversed
    complex, where the barrier is the complement of the witness region.
    """
    cells = P.witness(j).cells
    if slope < 0:
        return C.reversed(), frozenset(C.cell_ids) - cells, "minus", -slope / 2
    return C, cells, "plus", slope / 2


def witness_sweep(C: CutComplex, P: Profile):
    """Restricted sweep inside the first admissible witness that forms a
    barrier; ``(sweep, K1, slope, rejected)`` or ``(None, ..., rejected)``.

    The steepest witness region can touch both copies of the cut surface, in
    which case it separates nothing; the next admissible witness is tried.
    """
    rejected = []
    for slope, j, side in witness_candidates(P):
        oriented, cells, orientation, H_hi = orient_witness(C, P, slope, j)
        try:
            sweep = barrier_sweep(oriented, cells, Fraction(0), H_hi, orientation, K1=P.Ks[j], slope=slope)
            return sweep, P.Ks[j], slope, rejected
        except BarrierError as exc:
            rejected.append({"K1": P.Ks[j], "slope": slope, "side": side, "reason": str(exc)})
    return None, None, None, rejected


def barrier_sweep(C: CutComplex, cells, H_lo, H_hi, orientation: str = "plus", *, K1=None,
                  slope=None) -> BarrierSweep:
    R = restrict(C, make_barrier(C, cells))
    return BarrierSweep(C, R, frozenset(cells), orientation, breakpoints(R, H_lo, H_hi), K1, slope)


# ---------------------------------------------------------------------------
# checks


def _sample_points(sp: Spectrum) -> list[Fraction]:
    """Probe values plus the midpoints between them: every envelope segment
    and every breakpoint is represented."""
    Hs = sorted(p.H for p in sp.probes)
    mids = [(a + b) / 2 for a, b in zip(Hs, Hs[1:])]
    return sorted(set(Hs) | set(mids))


def check_nesting(C: CutComplex, Hs) -> Check:
    sols = [solve_AH(C, H) for H in sorted(set(Hs))]
    bad = []
    for s1, s2 in zip(sols, sols[1:]):
        if not s1.region_plus.cells <= s2.region_minus.cells:
            bad.append({"H1": s1.H, "H2": s2.H, "region_plus_H1": s1.region_plus.cells,
                        "region_minus_H2": s2.region_minus.cells})
    return Check("nesting", FAIL if bad else PASS, {"samples": len(sols), "violations": bad})


def check_k_monotone(sp: Spectrum) -> Check:
    bad = []
    bps = sp.breakpoints
    for b in bps:
        if not b.vol_after > b.vol_before:
            bad.append({"H": b.H, "reason": "volume does not increase across the breakpoint"})
    for a, b in zip(bps, bps[1:]):
        if not (a.H < b.H and a.vol_after == b.vol_before):
            bad.append({"H": [a.H, b.H], "reason": "breakpoints out of order or volumes not chained"})
    if bps and bps[0].vol_before != sp.lo_volume:
        bad.append({"H": bps[0].H, "reason": "first breakpoint does not start at the initial volume"})
    return Check("k-monotone", FAIL if bad else PASS, {"breakpoints": len(bps), "violations": bad})


def check_thickness(sp: Spectrum, name: str = "thickness-budget") -> Check:
    t, V = sp.thickness, sp.total_volume
    ok = t <= V and (not sp.covers_envelope or t == V)
    return Check(name, PASS if ok else FAIL,
                 {"thickness": t, "total_volume": V, "covers_envelope": sp.covers_envelope})


def check_on_profile(sp: Spectrum, P: Profile, name: str, hull: bool = False) -> Check:
    """Every extremal optimum's ``(vol, area)`` is a profile point (and on the
    lower hull when ``hull``)."""
    bad = []
    for s in sp.probes:
        for area, vol in {s.line_minus, s.line_plus}:
            try:
                i = P.index_of(vol)
            except KeyError:
                bad.append({"H": s.H, "volume": vol, "reason": "volume not achieved"})
                continue
            if P.areas[i] != area:
                bad.append({"H": s.H, "volume": vol, "area": area, "profile_area": P.areas[i]})
            elif hull and not P.on_envelope[i]:
                bad.append({"H": s.H, "volume": vol, "reason": "optimum off the lower hull"})
    return Check(name, FAIL if bad else PASS, {"probes": len(sp.probes), "violations": bad})


def _skip(name: str, why: str) -> Check:
    return Check(name, SKIPPED, {"reason": why})


CHECK_NAMES = (
    "endpoint-identity",
    "mean-value-witness",
    "hhat>=C_S",
    "nesting",
    "k-monotone",
    "minimizing=>isoperimetric",
    "minimizing=>isoperimetric-restricted",
    "width>=g-card",
    "thickness-budget",
)


# ---------------------------------------------------------------------------


def default_seed_cell(M: WeightedComplex, faces) -> str:
    first = min(faces, key=M.face_index.__getitem__)
    return M.face(first).cells[0]


def full_report(M: WeightedComplex, S, seed_cell: str | None = None, *, surface_name: str | None = None,
                threads: int = 1, seed: int = 0, restarts: int = 4,
                exact_cap: int = min_surface.DEFAULT_CAP,
                profile_cap: int = profile_mod.DEFAULT_CAP,
                width_cap: int = width_mod.DEFAULT_CAP) -> ClassReport:
    """Run the whole pipeline on ``(M, S)``.

    Exceeded caps degrade instead of failing: a local-search minimizer is
    used (and flagged heuristic), and stages needing enumeration are skipped
    with their checks marked ``skipped``.
    """
    S = M.surface(S).faces
    try:
        sigma0 = min_surface.minimize_exact(M, S, cap=exact_cap, threads=threads)
    except CapExceededError:
        sigma0 = min_surface.minimize_local(M, S, seed=seed, restarts=restarts)
    if sigma0.trivial:
        raise TrivialClassError("[S] = 0: the surface bounds a region; no class report")
    faces = sigma0.surface.faces
    if not complement_connected(M, faces):
        raise SeparatingSurfaceError("minimal representative is separating; class machinery is undefined")
    if seed_cell is None:
        seed_cell = default_seed_cell(M, faces)
    C = build_cut(M, faces, seed_cell)
    rep = ClassReport(surface_name, seed_cell, sigma0, C.total_volume)
    checks = rep.checks
    if rep.heuristic:
        checks.append(Check("heuristic-sigma0", DIAGNOSTIC,
                            {"method": sigma0.method, "note": "exact enumeration cap exceeded"}))

    n = len(C.cells)
    if n > profile_cap:
        why = f"{n} cells exceed the profile cap {profile_cap}"
        for name in CHECK_NAMES[:7] + CHECK_NAMES[8:]:
            checks.append(_skip(name, why))
    else:
        P = profile_exact(C, cap=profile_cap, threads=threads)
        G = girth_and_bound(P)
        rep.profile, rep.girth_report, rep.hhat = P, G, hhat(P)
        _profile_checks(rep, C, P, G)

    if n > width_cap:
        checks.append(_skip("width>=g-card", f"{n} cells exceed the width cap {width_cap}"))
    else:
        sw = width_mod.width_dp(C, cap=width_cap, threads=threads)
        rep.sweepout = sw
        checks.append(Check("width>=g-card", PASS if sw.width >= sw.g_card else FAIL,
                            {"width": sw.width, "g_card": sw.g_card, "ordering": sw.ordering}))
        if rep.girth_report is not None:
            _width_diagnostics(rep, C)

    order = {name: i for i, name in enumerate(CHECK_NAMES)}
    checks.sort(key=lambda c: (order.get(c.name, len(order)), c.name))
    return rep


def _profile_checks(rep: ClassReport, C: CutComplex, P: Profile, G: GirthReport) -> None:
    checks = rep.checks
    a0 = rep.sigma0_area
    ends = {"I(0)": P.areas[0], "I(V)": P.areas[-1], "sigma0": a0}
    checks.append(Check("endpoint-identity", PASS if P.areas[0] == P.areas[-1] == a0 else FAIL, ends))
    checks.append(Check(
        "mean-value-witness",
        PASS if abs(G.witness_slope) >= 2 * G.C_S else FAIL,
        {"K1": G.witness_K1, "slope": G.witness_slope, "side": G.witness_side, "C_S": G.C_S,
         "region": G.witness_region.cells},
    ))
    checks.append(Check("hhat>=C_S", PASS if rep.hhat >= G.C_S else FAIL, {"hhat": rep.hhat, "C_S": G.C_S}))

    # the unconstrained sweep is flat by construction; its optima must still be profile points on the hull
    lo, hi = -(rep.hhat + 1), rep.hhat + 1
    free = breakpoints(C, lo, hi)
    checks.append(check_on_profile(free, P, "minimizing=>isoperimetric", hull=True))

    sweep, K1, slope, rejected = witness_sweep(C, P)
    if sweep is None:
        why = "no admissible witness region separates the two copies of the cut surface"
        for name in ("nesting", "k-monotone", "minimizing=>isoperimetric-restricted", "thickness-budget"):
            checks.append(Check(name, SKIPPED, {"reason": why, "rejected": rejected}))
        return
    if rejected:
        checks.append(Check("barrier-choice", DIAGNOSTIC, {"K1": K1, "slope": slope, "rejected": rejected}))
    rep.sweep = sweep
    sp = sweep.spectrum
    checks.append(check_nesting(sweep.restricted, _sample_points(sp)))
    checks.append(check_k_monotone(sp))
    RP = profile_exact(sweep.restricted)
    checks.append(check_on_profile(sp, RP, "minimizing=>isoperimetric-restricted"))
    checks.append(check_thickness(sp))
    top = max((b.H for b in sp.breakpoints), default=None)
    checks.append(Check("barrier-breakpoint<=hhat", DIAGNOSTIC,
                        {"largest_breakpoint": top, "hhat": rep.hhat,
                         "holds": top is None or top <= rep.hhat}))


def _width_diagnostics(rep: ClassReport, C: CutComplex) -> None:
    sw, G = rep.sweepout, rep.girth_report
    unit = len({c.volume for c in C.cells}) == 1
    holds = sw.width >= G.girth
    if unit:
        rep.checks.append(Check("width>=girth", PASS if holds else FAIL, {"width": sw.width, "girth": G.girth}))
    else:
        rep.checks.append(Check("width>=girth", DIAGNOSTIC,
                                {"width": sw.width, "girth": G.girth, "holds": holds,
                                 "note": "unequal cell volumes; not forced"}))
    rep.checks.append(Check("chat>=C_S", DIAGNOSTIC,
                            {"chat": sw.chat, "C_S": G.C_S, "holds": sw.chat >= G.C_S}))
