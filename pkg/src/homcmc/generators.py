"""Instance generators.

Every generator emits a ``homcmc-complex/1`` document and :func:`gen` parses
it back, so generated instances always go through validation.  Each instance
carries its distinguished surface under the name ``"S"``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import FORMAT, WeightedComplex, load
from .cut import CutComplex
from .exact import fmt, parse_weight

KINDS = ("ring", "grid3", "product", "stack", "random")


def _doc(cells, faces, surface) -> str:
    doc = {
        "format": FORMAT,
        "cells": [{"id": c, "volume": fmt(v)} for c, v in cells],
        "faces": [{"id": f, "area": fmt(a), "cells": [u, v]} for f, a, u, v in faces],
        "surfaces": {"S": sorted(surface)},
    }
    return json.dumps(doc, indent=1) + "\n"


def _weights(values, k, default, name):
    if values is None:
        return [Fraction(default)] * k
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    values = [v if isinstance(v, Fraction) else parse_weight(str(v), name) for v in values]
    if len(values) != k:
        raise ValueError(f"{name}: expected {k} values, got {len(values)}")
    return values


def ring(k: int, areas=None, volumes=None, surface: str | None = None) -> str:
    """``k`` cells in a dual cycle; face ``f{i}{i+1}`` joins consecutive cells."""
    if k < 2:
        raise ValueError("ring needs at least 2 cells")
    areas = _weights(areas, k, 1, "areas")
    volumes = _weights(volumes, k, 1, "volumes")
    cells = [(f"c{i + 1}", volumes[i]) for i in range(k)]
    faces = []
    for i in range(k):
        j = (i + 1) % k
        faces.append((f"f{i + 1}{j + 1}", areas[i], f"c{i + 1}", f"c{j + 1}"))
    surface = surface or faces[0][0]
    if surface not in {f[0] for f in faces}:
        raise ValueError(f"surface face {surface} not in ring")
    return _doc(cells, faces, [surface])


def product(k: int, a=1, v=1) -> str:
    """Flat ring: every area ``a``, every volume ``v``; models a product metric."""
    return ring(k, [a] * k, [v] * k)


def grid3(a: int, b: int, c: int, axis: str | None = None) -> str:
    """Periodic ``a x b x c`` grid with unit weights.

    The surface is the coordinate slice across the wrap-around faces normal to
    ``axis`` (default: the longest dimension, so its area is the product of
    the two smaller ones).
    """
    dims = {"x": a, "y": b, "z": c}
    if min(dims.values()) < 2:
        raise ValueError("grid3 dimensions must be at least 2")
    if axis is None:
        axis = max("zyx", key=lambda ax: dims[ax])
    if axis not in dims:
        raise ValueError(f"axis must be x, y or z, not {axis!r}")
    cells = [(f"c{i}_{j}_{k}", Fraction(1)) for i in range(a) for j in range(b) for k in range(c)]
    faces, surface = [], []
    for i in range(a):
        for j in range(b):
            for k in range(c):
                here = f"c{i}_{j}_{k}"
                for ax, (ni, nj, nk), last in (
                    ("x", ((i + 1) % a, j, k), i == a - 1),
                    ("y", (i, (j + 1) % b, k), j == b - 1),
                    ("z", (i, j, (k + 1) % c), k == c - 1),
                ):
                    fid = f"{ax}{i}_{j}_{k}"
                    faces.append((fid, Fraction(1), here, f"c{ni}_{nj}_{nk}"))
                    if ax == axis and last:
                        surface.append(fid)
    return _doc(cells, faces, surface)


def stack(base: CutComplex, copies: int, cap_volume=Fraction(1, 100)) -> str:
    """``copies`` copies of a cut complex glued minus-to-plus, capped by two
    small-volume cells and closed up by a face of area ``|Sigma_0|``.

    The cap cells meet the end copies through faces with the cut surface's
    areas, so every boundary copy keeps its capacities.
    """
    if base.kind != "class":
        raise ValueError("stack needs a class-mode cut complex")
    if copies < 1:
        raise ValueError("copies must be positive")
    cap_volume = Fraction(cap_volume)
    area = {a.id[:-1]: a.capacity for a in base.source_arcs}
    cells = [("cap+", cap_volume)]
    for i in range(copies):
        cells += [(f"{c.id}@{i}", c.volume) for c in base.cells]
    cells.append(("cap-", cap_volume))
    faces = []
    for i in range(copies):
        faces += [(f"{a.id}@{i}", a.capacity, f"{a.u}@{i}", f"{a.v}@{i}") for a in base.arcs]
    for f, plus, minus in base.sides:
        faces.append((f"{f}@+", area[f], "cap+", f"{plus}@0"))
        for i in range(copies - 1):
            faces.append((f"{f}@{i}~{i + 1}", area[f], f"{minus}@{i}", f"{plus}@{i + 1}"))
        faces.append((f"{f}@-", area[f], f"{minus}@{copies - 1}", "cap-"))
    faces.append(("close", base.cut_surface.area, "cap-", "cap+"))
    return _doc(cells, faces, ["close"])


def random_complex(n: int, degree=3, lo: int = 1, hi: int = 100, seed: int = 0) -> str:
    """Connected random dual multigraph.

    A shuffled Hamiltonian cycle guarantees connectivity and a nontrivial
    class (the surface is one cycle face); extra faces join random distinct
    cells until the mean degree is reached.  Weights are random integers in
    ``[lo, hi]`` over a random denominator in ``1..4``.
    """
    if n < 2:
        raise ValueError("random needs at least 2 cells")
    if lo < 1 or hi < lo:
        raise ValueError("weight range must satisfy 1 <= lo <= hi")
    rng = random.Random(seed)

    def weight():
        return Fraction(rng.randint(lo, hi), rng.randint(1, 4))

    ids = [f"c{i}" for i in range(n)]
    cells = [(c, weight()) for c in ids]
    cycle = ids[:]
    rng.shuffle(cycle)
    faces = []
    for i in range(n):
        u, v = cycle[i], cycle[(i + 1) % n]
        faces.append((f"f{len(faces)}", weight(), u, v))
    target = max(n, round(n * Fraction(degree) / 2))
    while len(faces) < target:
        u, v = rng.sample(ids, 2)
        faces.append((f"f{len(faces)}", weight(), u, v))
    return _doc(cells, faces, ["f0"])


@dataclass(frozen=True)
class GenSpec:
    kind: str
    params: dict = field(default_factory=dict)


def generate_text(spec: GenSpec) -> str:
    p = dict(spec.params)
    if spec.kind == "ring":
        text = ring(int(p.pop("k", 3)), p.pop("areas", None), p.pop("volumes", None), p.pop("surface", None))
    elif spec.kind == "product":
        text = product(int(p.pop("k", 3)), p.pop("a", 1), p.pop("v", 1))
    elif spec.kind == "grid3":
        text = grid3(int(p.pop("a", 3)), int(p.pop("b", 3)), int(p.pop("c", 3)), p.pop("axis", None))
    elif spec.kind == "stack":
        text = stack(p.pop("base"), int(p.pop("copies", 2)), p.pop("cap_volume", Fraction(1, 100)))
    elif spec.kind == "random":
        text = random_complex(int(p.pop("n", 10)), p.pop("degree", 3), int(p.pop("lo", 1)),
                              int(p.pop("hi", 100)), int(p.pop("seed", 0)))
    else:
        raise ValueError(f"unknown generator kind {spec.kind!r}; expected one of {', '.join(KINDS)}")
    if p:
        raise ValueError(f"unknown parameter(s) for {spec.kind}: {', '.join(sorted(p))}")
    return text


def gen(spec: GenSpec) -> tuple[WeightedComplex, frozenset]:
    """Generate, serialize and reload; returns the complex and its surface ``S``."""
    cx = load(generate_text(spec))
    return cx, cx.surfaces["S"]


def stack_periodicity(profile, cap_volume, base_volume, copies: int) -> list:
    """Profile values at ``K_j = |cap| + j * base_volume``; a diagnostic only."""
    out = []
    for j in range(1, copies):
        K = Fraction(cap_volume) + j * Fraction(base_volume)
        try:
            out.append((K, profile.area_at(K)))
        except KeyError:
            out.append((K, None))
    return out
