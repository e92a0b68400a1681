"""The cut manifold as a terminal flow network.

Cutting a closed complex along a nonseparating surface leaves a complex with
two boundary copies of the surface.  Here that is encoded as a network whose
nodes are the cells plus two terminals: SOURCE stands behind the plus copy,
SINK behind the minus copy.  A region is a set of cells on the SOURCE side,
and its cut value is the area of the separating surface it bounds.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .complex import Cell, Region, SurfaceChain, WeightedComplex, complement_connected
from .errors import (
    BarrierError,
    FormatError,
    NonCoherentError,
    SeparatingSurfaceError,
    TrivialClassError,
    UnknownIdError,
)
from .exact import common_denominator, fmt, parse_weight, scale

SOURCE = "SOURCE"
SINK = "SINK"
CUT_FORMAT = "homcmc-cut/1"


@dataclass(frozen=True)
class Arc:
    id: str
    u: str
    v: str
    capacity: Fraction


@dataclass(frozen=True)
class TerminalArc:
    id: str
    cell: str
    capacity: Fraction


@dataclass(frozen=True)
class CutComplex:
    """Immutable terminal network.

    ``kind`` is ``"class"`` for a complex cut along a surface, ``"slab"`` for a
    standalone two-boundary complex and ``"restricted"`` for the part of a
    complex on the SOURCE side of a barrier.  ``fixed_arcs`` are always cut:
    they record where a barrier coincides with the plus boundary.
    """

    cells: tuple[Cell, ...]
    arcs: tuple[Arc, ...]
    source_arcs: tuple[TerminalArc, ...]
    sink_arcs: tuple[TerminalArc, ...]
    kind: str = "slab"
    fixed_arcs: tuple[TerminalArc, ...] = ()
    base: WeightedComplex | None = field(default=None, compare=False, repr=False)
    cut_surface: SurfaceChain | None = None
    sides: tuple[tuple[str, str, str], ...] = ()

    @property
    def slab_mode(self) -> bool:
        return self.kind != "class"

    @cached_property
    def cell_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.cells)

    @cached_property
    def volume_of(self) -> dict[str, Fraction]:
        return {c.id: c.volume for c in self.cells}

    @cached_property
    def total_volume(self) -> Fraction:
        return sum((c.volume for c in self.cells), Fraction(0))

    @cached_property
    def offset(self) -> Fraction:
        return sum((a.capacity for a in self.fixed_arcs), Fraction(0))

    @cached_property
    def source_area(self) -> Fraction:
        return sum((a.capacity for a in self.source_arcs), Fraction(0))

    @cached_property
    def sink_area(self) -> Fraction:
        return sum((a.capacity for a in self.sink_arcs), Fraction(0))

    @cached_property
    def sorted_cells(self) -> tuple[str, ...]:
        """Cells in lexicographic id order; bit ``i`` of enumeration masks."""
        return tuple(sorted(self.cell_ids))

    def region(self, cells: Iterable[str]) -> Region:
        cs = frozenset(cells)
        vol = self.volume_of
        for c in cs:
            if c not in vol:
                raise UnknownIdError(f"unknown cell {c}")
        return Region(cs, sum((vol[c] for c in cs), Fraction(0)))

    def cut_value(self, cells: Iterable[str]) -> Fraction:
        r = frozenset(cells)
        total = self.offset
        for a in self.source_arcs:
            if a.cell not in r:
                total += a.capacity
        for a in self.sink_arcs:
            if a.cell in r:
                total += a.capacity
        for a in self.arcs:
            if (a.u in r) != (a.v in r):
                total += a.capacity
        return total

    def surface_of(self, cells: Iterable[str]) -> SurfaceChain:
        """The separating surface bounding a region, as a set of arc ids."""
        r = frozenset(cells)
        ids = [a.id for a in self.fixed_arcs]
        ids += [a.id for a in self.source_arcs if a.cell not in r]
        ids += [a.id for a in self.sink_arcs if a.cell in r]
        ids += [a.id for a in self.arcs if (a.u in r) != (a.v in r)]
        return SurfaceChain(frozenset(ids), self.cut_value(r))

    def quadratic_form(self, order=None):
        """Integer data ``(denom, const, linear, quad)`` for subset enumeration.

        ``cut_value(X) * denom = const + sum_{i in X} linear[i]
        + sum_{i<j in X} quad[i][j]`` with cells indexed by ``order``.
        """
        order = list(order or self.sorted_cells)
        idx = {c: i for i, c in enumerate(order)}
        caps = [a.capacity for a in self.arcs + self.source_arcs + self.sink_arcs + self.fixed_arcs]
        denom = common_denominator(caps)
        n = len(order)
        const = scale([self.offset + self.source_area], denom)[0]
        linear = [0] * n
        quad = [[0] * n for _ in range(n)]
        for a in self.source_arcs:
            linear[idx[a.cell]] -= scale([a.capacity], denom)[0]
        for a in self.sink_arcs:
            linear[idx[a.cell]] += scale([a.capacity], denom)[0]
        for a in self.arcs:
            w = scale([a.capacity], denom)[0]
            i, j = idx[a.u], idx[a.v]
            linear[i] += w
            linear[j] += w
            quad[i][j] -= 2 * w
            quad[j][i] -= 2 * w
        return denom, const, linear, quad

    def reversed(self) -> "CutComplex":
        """Swap the roles of the two boundary copies."""
        return CutComplex(
            cells=self.cells,
            arcs=self.arcs,
            source_arcs=self.sink_arcs,
            sink_arcs=self.source_arcs,
            kind=self.kind,
            fixed_arcs=self.fixed_arcs,
            base=self.base,
            cut_surface=self.cut_surface,
            sides=tuple((f, m, p) for f, p, m in self.sides),
        )


@dataclass(frozen=True)
class Barrier:
    region: Region
    surface: SurfaceChain


def build_cut(M: WeightedComplex, sigma0: Iterable[str], side_seed: str) -> CutComplex:
    """Cut ``M`` along ``sigma0``; ``side_seed`` lies on the plus side.

    Cells are labeled by breadth-first distance from the seed in the dual
    graph with the cut faces removed.  Each cut face's nearer cell is its plus
    side; equal distances (including self-adjacent cut faces) mean no
    coherent side can be read off and the construction fails.
    """
    chain = M.surface(sigma0)
    if side_seed not in M.cell_index:
        raise UnknownIdError(f"unknown cell {side_seed}")
    if not chain.faces:
        raise TrivialClassError("cannot cut along the empty surface")
    if not complement_connected(M, chain.faces):
        raise SeparatingSurfaceError(
            "surface is separating: its complement is disconnected, so the class machinery is undefined"
        )

    adj: dict[str, list[str]] = {c.id: [] for c in M.cells}
    for f in M.faces:
        if f.id in chain.faces or f.self_adjacent:
            continue
        adj[f.cells[0]].append(f.cells[1])
        adj[f.cells[1]].append(f.cells[0])
    dist = {side_seed: 0}
    queue = deque([side_seed])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)

    arcs, src, snk, sides = [], [], [], []
    for f in M.faces:
        u, v = f.cells
        if f.id not in chain.faces:
            if not f.self_adjacent:
                arcs.append(Arc(f.id, u, v, f.area))
            continue
        if dist[u] == dist[v]:
            raise NonCoherentError(
                f"non-coherent side assignment at face {f.id}: both incident cells "
                f"{u}, {v} get the same label from seed {side_seed}"
            )
        plus, minus = (u, v) if dist[u] < dist[v] else (v, u)
        src.append(TerminalArc(f.id + "+", plus, f.area))
        snk.append(TerminalArc(f.id + "-", minus, f.area))
        sides.append((f.id, plus, minus))
    return CutComplex(
        cells=M.cells,
        arcs=tuple(arcs),
        source_arcs=tuple(src),
        sink_arcs=tuple(snk),
        kind="class",
        base=M,
        cut_surface=chain,
        sides=tuple(sides),
    )


def make_slab(cells, interior_faces=(), source_faces=(), sink_faces=(), *, fixed=(), kind="slab") -> CutComplex:
    """Standalone network from explicit data.

    ``cells``: ``(id, volume)`` pairs; ``interior_faces``: ``(id, u, v, cap)``;
    ``source_faces`` / ``sink_faces``: ``(id, cell, cap)``.  Weights may be
    anything :func:`~homcmc.exact.parse_weight` accepts or Fractions.
    """
    def w(x, locus):
        return x if isinstance(x, Fraction) else parse_weight(x, locus)

    cs = []
    seen = set()
    for cid, vol in cells:
        if cid in seen:
            raise FormatError(f"duplicate id {cid}", "cells")
        if cid in (SOURCE, SINK):
            raise FormatError(f"reserved id {cid}", "cells")
        seen.add(cid)
        v = w(vol, f"cells.{cid}")
        if v <= 0:
            raise FormatError("non-positive weight", f"cells.{cid}")
        cs.append(Cell(cid, v))
    ids = set()

    def check_id(aid):
        if aid in ids:
            raise FormatError(f"duplicate id {aid}", "arcs")
        ids.add(aid)

    def check_cell(c, aid):
        if c not in seen:
            raise FormatError(f"dangling id {c}", f"arcs.{aid}")

    def check_cap(cap, aid):
        if cap <= 0:
            raise FormatError("non-positive weight", f"arcs.{aid}")

    arcs = []
    for aid, u, v, cap in interior_faces:
        check_id(aid)
        check_cell(u, aid)
        check_cell(v, aid)
        if u == v:
            raise FormatError("self-adjacent arc", f"arcs.{aid}")
        c = w(cap, f"arcs.{aid}")
        check_cap(c, aid)
        arcs.append(Arc(aid, u, v, c))
    terms = []
    for group in (source_faces, sink_faces, fixed):
        out = []
        for aid, cell, cap in group:
            check_id(aid)
            if group is not fixed:
                check_cell(cell, aid)
            c = w(cap, f"arcs.{aid}")
            check_cap(c, aid)
            out.append(TerminalArc(aid, cell, c))
        terms.append(tuple(out))
    cx = CutComplex(
        cells=tuple(cs), arcs=tuple(arcs), source_arcs=terms[0], sink_arcs=terms[1],
        kind=kind, fixed_arcs=terms[2],
    )
    _check_terminals(cx)
    return cx


def _check_terminals(cx: CutComplex) -> None:
    if not cx.cells:
        raise FormatError("slab has no cells")
    if not cx.source_arcs:
        raise FormatError("terminals not separated: SOURCE has no arcs")
    if not cx.sink_arcs:
        raise FormatError("terminals not separated: no SINK arcs, SINK unreachable")
    adj: dict[str, list[str]] = {c.id: [] for c in cx.cells}
    for a in cx.arcs:
        adj[a.u].append(a.v)
        adj[a.v].append(a.u)
    seen = {a.cell for a in cx.source_arcs}
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    if not any(a.cell in seen for a in cx.sink_arcs):
        raise FormatError("terminals not separated: SINK unreachable from SOURCE")


def make_barrier(C: CutComplex, cells: Iterable[str]) -> Barrier:
    region = C.region(cells)
    return Barrier(region, C.surface_of(region.cells))


def barrier_from_surface(C: CutComplex, faces: Iterable[str]) -> Barrier:
    """Barrier cut out by a surface: the cells reachable from SOURCE without
    crossing any of ``faces`` (arc ids or the face ids they come from)."""
    blocked = frozenset(faces)

    def is_blocked(arc_id):
        return arc_id in blocked or (arc_id[-1:] in ("+", "-") and arc_id[:-1] in blocked)

    adj: dict[str, list[str]] = {c.id: [] for c in C.cells}
    for a in C.arcs:
        if not is_blocked(a.id):
            adj[a.u].append(a.v)
            adj[a.v].append(a.u)
    seen = {a.cell for a in C.source_arcs if not is_blocked(a.id)}
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    if any(a.cell in seen and not is_blocked(a.id) for a in C.sink_arcs):
        raise BarrierError("barrier does not separate terminals")
    if not seen:
        raise BarrierError("barrier region is empty")
    return make_barrier(C, seen)


def restrict(C: CutComplex, B: Barrier) -> CutComplex:
    """Sub-network on the SOURCE side of a barrier.

    Arcs crossing the barrier become SINK arcs with unchanged capacity; SOURCE
    arcs of cells outside the barrier region become fixed (always cut), so
    every cut value of a region inside the barrier is preserved exactly.
    """
    inside = B.region.cells
    if not inside:
        raise BarrierError("barrier region is empty")
    if len(inside) >= len(C.cells):
        raise BarrierError("barrier region is not proper (contains every cell)")
    arcs, sink = [], []
    for a in C.arcs:
        iu, iv = a.u in inside, a.v in inside
        if iu and iv:
            arcs.append(a)
        elif iu or iv:
            sink.append(TerminalArc(a.id, a.u if iu else a.v, a.capacity))
    src = [a for a in C.source_arcs if a.cell in inside]
    fixed = list(C.fixed_arcs) + [a for a in C.source_arcs if a.cell not in inside]
    sink = [a for a in C.sink_arcs if a.cell in inside] + sink
    if not src:
        raise BarrierError("barrier does not separate terminals: no SOURCE arc inside the barrier")
    if not sink:
        raise BarrierError("barrier does not separate terminals: barrier surface is empty")
    return CutComplex(
        cells=tuple(c for c in C.cells if c.id in inside),
        arcs=tuple(arcs),
        source_arcs=tuple(src),
        sink_arcs=tuple(sink),
        kind="restricted",
        fixed_arcs=tuple(fixed),
        base=C.base,
        cut_surface=C.cut_surface,
        sides=C.sides,
    )


# ---------------------------------------------------------------------------
# homcmc-cut/1


def cut_to_dict(C: CutComplex) -> dict:
    arcs = [{"id": a.id, "tail": a.u, "head": a.v, "capacity": fmt(a.capacity)} for a in C.arcs]
    arcs += [{"id": a.id, "tail": SOURCE, "head": a.cell, "capacity": fmt(a.capacity)} for a in C.source_arcs]
    arcs += [{"id": a.id, "tail": a.cell, "head": SINK, "capacity": fmt(a.capacity)} for a in C.sink_arcs]
    return {
        "format": CUT_FORMAT,
        "kind": C.kind,
        "nodes": [{"id": c.id, "volume": fmt(c.volume)} for c in C.cells]
        + [{"id": SOURCE, "terminal": True}, {"id": SINK, "terminal": True}],
        "arcs": arcs,
        "fixed": [{"id": a.id, "capacity": fmt(a.capacity)} for a in C.fixed_arcs],
        "sides": [{"face": f, "plus": p, "minus": m} for f, p, m in C.sides],
    }


def dumps_cut(C: CutComplex) -> str:
    return json.dumps(cut_to_dict(C), indent=1) + "\n"


def load_cut(text) -> CutComplex:
    """Reload a ``homcmc-cut/1`` document as a slab-mode network."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"parse error: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict) or doc.get("format") != CUT_FORMAT:
        raise FormatError(f"expected format {CUT_FORMAT!r}", "format")
    unknown = set(doc) - {"format", "kind", "nodes", "arcs", "fixed", "sides"}
    if unknown:
        raise FormatError(f"unknown top-level key {sorted(unknown)[0]}")
    cells, interior, src, snk = [], [], [], []
    for i, n in enumerate(doc.get("nodes", [])):
        if n.get("terminal"):
            continue
        cells.append((n["id"], parse_weight(n.get("volume"), f"nodes[{i}].volume")))
    for i, a in enumerate(doc.get("arcs", [])):
        cap = parse_weight(a.get("capacity"), f"arcs[{i}].capacity")
        tail, head = a.get("tail"), a.get("head")
        if tail == SOURCE:
            src.append((a["id"], head, cap))
        elif head == SINK:
            snk.append((a["id"], tail, cap))
        else:
            interior.append((a["id"], tail, head, cap))
    fixed = [(a["id"], None, parse_weight(a.get("capacity"), f"fixed[{i}].capacity"))
             for i, a in enumerate(doc.get("fixed", []))]
    return make_slab(cells, interior, src, snk, fixed=fixed)
