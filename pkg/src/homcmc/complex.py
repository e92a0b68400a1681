"""Weighted cellulations of closed 3-manifolds and their GF(2) homology.

A complex is purely combinatorial: cells carry volumes, faces carry areas
and name the two cells they separate.  Surfaces are face sets (2-chains over
GF(2)) and regions are cell sets (3-chains).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .errors import FormatError, UnknownIdError
from .exact import fmt, parse_weight

FORMAT = "homcmc-complex/1"
RESERVED_IDS = frozenset({"SOURCE", "SINK"})


@dataclass(frozen=True)
class Cell:
    id: str
    volume: Fraction


@dataclass(frozen=True)
class Face:
    id: str
    area: Fraction
    cells: tuple[str, str]

    @property
    def self_adjacent(self) -> bool:
        return self.cells[0] == self.cells[1]


@dataclass(frozen=True)
class SurfaceChain:
    faces: frozenset
    area: Fraction

    def __len__(self):
        return len(self.faces)

    def sorted(self) -> list[str]:
        return sorted(self.faces)


@dataclass(frozen=True)
class Region:
    cells: frozenset
    volume: Fraction

    def __len__(self):
        return len(self.cells)

    def sorted(self) -> list[str]:
        return sorted(self.cells)


@dataclass(frozen=True)
class WeightedComplex:
    cells: tuple[Cell, ...]
    faces: tuple[Face, ...]
    surfaces: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        _validate(self)

    # Lookup tables; the dataclass is frozen so these are computed once.
    @cached_property
    def cell_index(self) -> dict[str, int]:
        return {c.id: i for i, c in enumerate(self.cells)}

    @cached_property
    def face_index(self) -> dict[str, int]:
        return {f.id: i for i, f in enumerate(self.faces)}

    @cached_property
    def volume_of(self) -> dict[str, Fraction]:
        return {c.id: c.volume for c in self.cells}

    @cached_property
    def area_of(self) -> dict[str, Fraction]:
        return {f.id: f.area for f in self.faces}

    @cached_property
    def incident(self) -> dict[str, list[Face]]:
        out: dict[str, list[Face]] = {c.id: [] for c in self.cells}
        for f in self.faces:
            out[f.cells[0]].append(f)
            if not f.self_adjacent:
                out[f.cells[1]].append(f)
        return out

    @property
    def total_volume(self) -> Fraction:
        return sum((c.volume for c in self.cells), Fraction(0))

    def face(self, face_id: str) -> Face:
        try:
            return self.faces[self.face_index[face_id]]
        except KeyError:
            raise UnknownIdError(f"unknown face {face_id}") from None

    def surface(self, faces: Iterable[str]) -> SurfaceChain:
        fs = frozenset(faces)
        for f in fs:
            if f not in self.face_index:
                raise UnknownIdError(f"unknown face {f}")
        return SurfaceChain(fs, sum((self.area_of[f] for f in fs), Fraction(0)))

    def named_surface(self, name: str) -> SurfaceChain:
        if name not in self.surfaces:
            raise UnknownIdError(f"unknown surface {name}")
        return self.surface(self.surfaces[name])

    def region(self, cells: Iterable[str]) -> Region:
        cs = frozenset(cells)
        for c in cs:
            if c not in self.cell_index:
                raise UnknownIdError(f"unknown cell {c}")
        return Region(cs, sum((self.volume_of[c] for c in cs), Fraction(0)))


def _validate(cx: WeightedComplex) -> None:
    seen: set[str] = set()
    for i, c in enumerate(cx.cells):
        if c.id in seen:
            raise FormatError(f"duplicate id {c.id}", f"cells[{i}].id")
        if c.id in RESERVED_IDS:
            raise FormatError(f"reserved id {c.id}", f"cells[{i}].id")
        seen.add(c.id)
        if c.volume <= 0:
            raise FormatError("non-positive weight", f"cells[{i}].volume")
    if not cx.cells:
        raise FormatError("complex has no cells", "cells")
    fseen: set[str] = set()
    for i, f in enumerate(cx.faces):
        if f.id in fseen:
            raise FormatError(f"duplicate id {f.id}", f"faces[{i}].id")
        fseen.add(f.id)
        if f.area <= 0:
            raise FormatError("non-positive weight", f"faces[{i}].area")
        for c in f.cells:
            if c not in seen:
                raise FormatError(f"dangling id {c}", f"faces[{i}].cells")
    for name, fs in cx.surfaces.items():
        for f in fs:
            if f not in fseen:
                raise FormatError(f"dangling id {f}", f"surfaces.{name}")
    if not _connected([c.id for c in cx.cells], cx.faces, frozenset()):
        raise FormatError("disconnected dual graph", "faces")


def _connected(cells, faces, removed) -> bool:
    adj: dict[str, list[str]] = {c: [] for c in cells}
    for f in faces:
        if f.id in removed or f.cells[0] == f.cells[1]:
            continue
        adj[f.cells[0]].append(f.cells[1])
        adj[f.cells[1]].append(f.cells[0])
    start = cells[0]
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(cells)


# ---------------------------------------------------------------------------
# serialization


def load(text) -> WeightedComplex:
    """Parse and validate a ``homcmc-complex/1`` document (str or bytes)."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"parse error: not UTF-8 ({exc.reason})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"parse error: {exc.msg}", f"line {exc.lineno} column {exc.colno}"
        ) from None
    return from_dict(doc)


def from_dict(doc) -> WeightedComplex:
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    unknown = set(doc) - {"format", "cells", "faces", "surfaces"}
    if unknown:
        raise FormatError(f"unknown top-level key {sorted(unknown)[0]}")
    if doc.get("format") != FORMAT:
        raise FormatError(f"expected format {FORMAT!r}", "format")

    cells = []
    for i, c in enumerate(_list(doc, "cells")):
        cid = _str(c, "id", f"cells[{i}]")
        cells.append(Cell(cid, parse_weight(c.get("volume"), f"cells[{i}].volume")))
    faces = []
    for i, f in enumerate(_list(doc, "faces")):
        fid = _str(f, "id", f"faces[{i}]")
        pair = f.get("cells")
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(p, str) for p in pair)):
            raise FormatError("expected a pair of cell ids", f"faces[{i}].cells")
        faces.append(Face(fid, parse_weight(f.get("area"), f"faces[{i}].area"), (pair[0], pair[1])))
    surfaces = {}
    raw = doc.get("surfaces", {})
    if not isinstance(raw, dict):
        raise FormatError("expected an object", "surfaces")
    for name, fs in raw.items():
        if not (isinstance(fs, list) and all(isinstance(x, str) for x in fs)):
            raise FormatError("expected a list of face ids", f"surfaces.{name}")
        surfaces[name] = frozenset(fs)
    return WeightedComplex(tuple(cells), tuple(faces), surfaces)


def _list(doc, key):
    v = doc.get(key)
    if not isinstance(v, list):
        raise FormatError("expected a list", key)
    for i, item in enumerate(v):
        if not isinstance(item, dict):
            raise FormatError("expected an object", f"{key}[{i}]")
    return v


def _str(obj, key, locus):
    v = obj.get(key)
    if not isinstance(v, str) or not v:
        raise FormatError("expected a non-empty string", f"{locus}.{key}")
    return v


def to_dict(cx: WeightedComplex) -> dict:
    return {
        "format": FORMAT,
        "cells": [{"id": c.id, "volume": fmt(c.volume)} for c in cx.cells],
        "faces": [{"id": f.id, "area": fmt(f.area), "cells": list(f.cells)} for f in cx.faces],
        "surfaces": {k: sorted(v) for k, v in sorted(cx.surfaces.items())},
    }


def dumps(cx: WeightedComplex) -> str:
    return json.dumps(to_dict(cx), indent=1) + "\n"


# ---------------------------------------------------------------------------
# chains and homology


def boundary(cx: WeightedComplex, region) -> SurfaceChain:
    """Faces with exactly one incident cell in ``region``."""
    cells = region.cells if isinstance(region, Region) else frozenset(region)
    out = []
    for f in cx.faces:
        u, v = f.cells
        if u != v and ((u in cells) != (v in cells)):
            out.append(f.id)
    return cx.surface(out)


def is_cycle(cx: WeightedComplex, faces: Iterable[str]) -> tuple[bool, list[str]]:
    """Check a declared surface; returns ``(True, warnings)``.

    Every face set is a 2-chain here, so the only failure is an unknown id,
    which raises.  Self-adjacent members are legal but flagged.
    """
    chain = cx.surface(faces)
    warnings = [
        f"face {f} is self-adjacent and never appears in a region boundary"
        for f in sorted(chain.faces)
        if cx.face(f).self_adjacent
    ]
    return True, warnings


def solve_boundary(cx: WeightedComplex, faces: Iterable[str]):
    """Solve ``boundary(x) = faces`` over GF(2) by Gaussian elimination.

    The first cell is pinned outside ``x`` (complementary solutions share a
    boundary), which makes the solution unique on a connected complex.
    Returns the witness Region or ``None``.
    """
    target = frozenset(faces)
    for f in target:
        cx.face(f)
    n = len(cx.cells)
    idx = cx.cell_index
    rhs_bit = 1 << n
    rows = []
    for f in cx.faces:
        u, v = f.cells
        row = 0
        if u != v:
            for c in (u, v):
                if idx[c] != 0:
                    row ^= 1 << idx[c]
        if f.id in target:
            row ^= rhs_bit
        if row:
            rows.append(row)

    pivots: dict[int, int] = {}
    for row in rows:
        for col, prow in pivots.items():
            if row >> col & 1:
                row ^= prow
        low = row & (rhs_bit - 1)
        if not low:
            if row & rhs_bit:
                return None
            continue
        col = (low & -low).bit_length() - 1
        for c2 in list(pivots):
            if pivots[c2] >> col & 1:
                pivots[c2] ^= row
        pivots[col] = row
    x = set()
    for col, prow in pivots.items():
        if prow & rhs_bit:
            x.add(cx.cells[col].id)
    witness = cx.region(x)
    assert boundary(cx, witness).faces == target
    return witness


def is_null_homologous(cx: WeightedComplex, faces: Iterable[str]):
    """Return ``(True, witness)`` when the chain bounds, else ``(False, None)``."""
    witness = solve_boundary(cx, faces)
    return (witness is not None), witness


def homologous(cx: WeightedComplex, s1: Iterable[str], s2: Iterable[str]):
    return is_null_homologous(cx, frozenset(s1) ^ frozenset(s2))


def complement_connected(cx: WeightedComplex, faces: Iterable[str]) -> bool:
    """True when removing ``faces`` leaves the dual graph connected."""
    return _connected([c.id for c in cx.cells], cx.faces, frozenset(faces))
