"""Command-line interface: ``homcmc <command> ...``.

Exit status: 0 on success, 1 when ``verify`` finds a failed check, 2 on bad
input or a refused computation.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path

from . import min_surface
from .complex import load
from .cut import barrier_from_surface, build_cut, dumps_cut, make_barrier, restrict
from .errors import CapExceededError, HomCMCError, TrivialClassError
from .exact import decimal15, fmt, parse_weight
from .generators import KINDS, GenSpec, generate_text
from .profile import girth_and_bound, profile_exact
from .report import barrier_sweep, default_seed_cell, full_report, witness_sweep
from .spectrum import full_range
from .width import width_dp


def _q(x) -> str:
    return f"{fmt(x)} ({decimal15(x)})"


def _read_complex(path: str):
    return load(Path(path).read_bytes())


def _surface(M, name: str):
    return M.named_surface(name).faces


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="")


def _class_cut(args):
    """Minimal representative and cut complex for ``--surface``; falls back to
    local search (flagged heuristic) when the exact cap is exceeded."""
    M = _read_complex(args.file)
    S = _surface(M, args.surface)
    try:
        res = min_surface.minimize_exact(M, S, threads=args.threads)
    except CapExceededError:
        res = min_surface.minimize_local(M, S, seed=0, restarts=4)
        print("warning: exact cap exceeded; using a heuristic minimal surface", file=sys.stderr)
    if res.trivial:
        raise TrivialClassError("[S] = 0: the surface bounds a region; class operations are refused")
    seed = getattr(args, "seed_cell", None) or default_seed_cell(M, res.surface.faces)
    return M, res, build_cut(M, res.surface.faces, seed)


def _h_range(text: str):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("expected LO:HI")
    return parse_weight(lo.strip(), "--h-range"), parse_weight(hi.strip(), "--h-range")


# ---------------------------------------------------------------------------


def cmd_minimize(args) -> int:
    M = _read_complex(args.file)
    S = _surface(M, args.surface)
    if args.local_search:
        res = min_surface.minimize_local(M, S, seed=args.seed, restarts=args.restarts)
    else:
        try:
            res = min_surface.minimize_exact(M, S, threads=args.threads)
        except CapExceededError as exc:
            raise CapExceededError(f"{exc}; rerun with --local-search") from None
    print(f"area: {_q(res.area)}")
    print(f"faces: {' '.join(res.surface.sorted())}")
    print(f"witness: {' '.join(res.witness.sorted())}")
    print(f"method: {res.method}")
    print(f"certified: {str(res.certified).lower()}")
    for d in res.diagnostics:
        print(f"note: {d}")
    return 0


def cmd_cut(args) -> int:
    M = _read_complex(args.file)
    S = _surface(M, args.surface)
    _write(args.out, dumps_cut(build_cut(M, S, args.seed_cell)))
    return 0


def cmd_spectrum(args) -> int:
    M, _, C = _class_cut(args)
    if args.barrier is not None:
        B = barrier_from_surface(C, _surface(M, args.barrier))
        H_lo, H_hi = args.h_range or (Fraction(0), None)
        sweep = _explicit_sweep(C, B.region.cells, H_lo, H_hi)
    elif args.barrier_volume is not None:
        P = profile_exact(C, threads=args.threads)
        cells = P.witness(P.index_of(args.barrier_volume)).cells
        H_lo, H_hi = args.h_range or (Fraction(0), None)
        sweep = _explicit_sweep(C, cells, H_lo, H_hi)
    else:
        P = profile_exact(C, threads=args.threads)
        girth_and_bound(P)
        sweep, _, _, rejected = witness_sweep(C, P)
        if sweep is None:
            raise HomCMCError("no admissible witness region separates the cut surface copies; pass --barrier")
        if args.h_range:
            sweep = barrier_sweep(sweep.parent, sweep.barrier_cells, *args.h_range, sweep.orientation,
                                  K1=sweep.K1, slope=sweep.slope)
    _write(args.out, sweep.spectrum.to_csv())
    return 0


def _explicit_sweep(C, cells, H_lo, H_hi):
    if H_hi is None:
        H_hi = full_range(restrict(C, make_barrier(C, cells)))[1]
    return barrier_sweep(C, cells, H_lo, H_hi)


def cmd_profile(args) -> int:
    _, _, C = _class_cut(args)
    P = profile_exact(C, threads=args.threads)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["K", "area", "left_slope", "right_slope", "on_envelope", "witness"])
    for p in P.points:
        w.writerow([
            fmt(p.K),
            fmt(p.area),
            "" if p.left_slope is None else fmt(p.left_slope),
            "" if p.right_slope is None else fmt(p.right_slope),
            "true" if p.on_envelope else "false",
            ";".join(p.witness.sorted()),
        ])
    _write(args.out, buf.getvalue())
    return 0


def cmd_width(args) -> int:
    _, _, C = _class_cut(args)
    sw = width_dp(C, threads=args.threads)
    print(f"width: {_q(sw.width)}")
    print(f"g_card: {_q(sw.g_card)}")
    print(f"chat: {_q(sw.chat)}")
    print(f"ordering: {' '.join(sw.ordering)}")
    return 0


def cmd_gen(args) -> int:
    params = {}
    for item in args.params:
        key, sep, value = item.partition("=")
        if not sep:
            raise HomCMCError(f"parameter {item!r} is not key=value")
        params[key] = value
    if args.kind == "random":
        params.setdefault("seed", args.seed)
    if args.kind == "stack":
        if "base" not in params:
            raise HomCMCError("stack needs base=FILE (a complex with a nonseparating surface)")
        M = _read_complex(params.pop("base"))
        name = params.pop("surface", "S")
        res = min_surface.minimize_exact(M, _surface(M, name))
        seed = params.pop("seed_cell", None) or default_seed_cell(M, res.surface.faces)
        params["base"] = build_cut(M, res.surface.faces, seed)
        if "cap_volume" in params:
            params["cap_volume"] = parse_weight(params["cap_volume"], "cap_volume")
    _write(args.out, generate_text(GenSpec(args.kind, params)))
    return 0


def _print_report(rep) -> None:
    print(f"sigma0: {_q(rep.sigma0_area)}{' (heuristic)' if rep.heuristic else ''}")
    for label, value in (("total_volume", rep.total_volume), ("girth", rep.girth), ("C_S", rep.C_S),
                         ("witness_K1", rep.witness_K1), ("hhat", rep.hhat), ("width", rep.width),
                         ("g_card", rep.g_card), ("chat", rep.chat)):
        print(f"{label}: {'-' if value is None else _q(value)}")
    if rep.spectrum is not None:
        for b in rep.spectrum.breakpoints:
            print(f"breakpoint: H*={fmt(b.H)} vol {fmt(b.vol_before)} -> {fmt(b.vol_after)}")
    for c in rep.checks:
        print(f"check {c.name}: {c.status}")


def cmd_report(args) -> int:
    M = _read_complex(args.file)
    rep = full_report(M, _surface(M, args.surface), args.seed_cell, surface_name=args.surface,
                      threads=args.threads)
    _write(args.json, rep.to_json())
    if args.json not in (None, "-"):
        _print_report(rep)
    return 0


def cmd_verify(args) -> int:
    M = _read_complex(args.file)
    rep = full_report(M, _surface(M, args.surface), args.seed_cell, surface_name=args.surface,
                      threads=args.threads)
    _print_report(rep)
    if rep.failed:
        print(f"FAILED: {', '.join(c.name for c in rep.failed)}", file=sys.stderr)
        return 1
    print("all checks passed")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homcmc", description="Discrete isoperimetry and CMC spectra of homology classes.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed_cell=False):
        sp.add_argument("file", help="homcmc-complex/1 file")
        sp.add_argument("--surface", required=True, help="named surface in the file")
        sp.add_argument("--threads", type=int, default=1)
        if seed_cell:
            sp.add_argument("--seed-cell", help="cell on the plus side of the cut surface")

    sp = sub.add_parser("minimize", help="area-minimizing representative of the class")
    common(sp)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exhaustive enumeration (default)")
    mode.add_argument("--local-search", action="store_true", help="single-flip descent with restarts")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--restarts", type=int, default=0)
    sp.set_defaults(func=cmd_minimize)

    sp = sub.add_parser("cut", help="emit the cut complex as homcmc-cut/1")
    common(sp)
    sp.add_argument("--seed-cell", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_cut)

    sp = sub.add_parser("spectrum", help="barrier-restricted breakpoints as CSV")
    common(sp, seed_cell=True)
    bar = sp.add_mutually_exclusive_group()
    bar.add_argument("--barrier", help="named surface bounding the barrier region")
    bar.add_argument("--barrier-volume", type=lambda s: parse_weight(s, "--barrier-volume"),
                     help="use the profile witness region at this volume")
    sp.add_argument("--h-range", type=_h_range, help="LO:HI (exact rationals)")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("profile", help="exact isoperimetric profile as CSV")
    common(sp, seed_cell=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("width", help="sweepout width and g-card")
    common(sp, seed_cell=True)
    sp.set_defaults(func=cmd_width)

    sp = sub.add_parser("gen", help="generate an instance file")
    sp.add_argument("kind", choices=KINDS)
    sp.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE",
                    help="generator parameters; lists are comma-separated")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("report", help="full pipeline report as JSON")
    common(sp, seed_cell=True)
    sp.add_argument("--json", required=True, help="output path, or - for stdout")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("verify", help="run the check suite; nonzero exit on failure")
    common(sp, seed_cell=True)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HomCMCError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"homcmc: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
