"""Shared test instances: the small hand-checked complexes and seeded random
families used by the property and acceptance suites."""

from __future__ import annotations

import json
import random
from fractions import Fraction

from homcmc.complex import load
from homcmc.cut import build_cut, make_slab
from homcmc.errors import NonCoherentError
from homcmc.generators import GenSpec, gen, random_complex
from homcmc.min_surface import minimize_exact
from homcmc.report import default_seed_cell

BUMP1 = {
    "format": "homcmc-complex/1",
    "cells": [{"id": "c1", "volume": "1"}, {"id": "c2", "volume": "1"}],
    "faces": [
        {"id": "f0", "area": "1", "cells": ["c1", "c2"]},
        {"id": "f12", "area": "3", "cells": ["c1", "c2"]},
    ],
    "surfaces": {"S": ["f0"], "B": ["f12"]},
}

RING3 = {
    "format": "homcmc-complex/1",
    "cells": [{"id": f"c{i}", "volume": "1"} for i in (1, 2, 3)],
    "faces": [
        {"id": "f12", "area": "1", "cells": ["c1", "c2"]},
        {"id": "f23", "area": "2", "cells": ["c2", "c3"]},
        {"id": "f31", "area": "3", "cells": ["c3", "c1"]},
    ],
    "surfaces": {"S": ["f23"], "T": ["f12"]},
}


def bump1():
    return load(json.dumps(BUMP1))


def bump1_cut():
    return build_cut(bump1(), {"f0"}, "c1")


def ring3():
    return load(json.dumps(RING3))


def slab124():
    """SOURCE -(1)- c1 -(2)- c2 -(4)- SINK, unit volumes."""
    return make_slab([("c1", "1"), ("c2", "1")], [("m", "c1", "c2", "2")], [("s", "c1", "1")], [("t", "c2", "4")])


def single_slab(v="1"):
    return make_slab([("c1", v)], [], [("s", "c1", "1")], [("t", "c1", "1")])


def product_cut(k=3, a=2, v=1):
    cx, S = gen(GenSpec("product", {"k": k, "a": a, "v": v}))
    return cx, S, build_cut(cx, S, default_seed_cell(cx, S))


def _w(rng, hi, den):
    return Fraction(rng.randint(1, hi), rng.randint(1, den))


def random_slab(rng: random.Random, n: int, *, hi: int = 20, den: int = 3, unit: bool = False):
    """Connected random network on ``n`` cells with random terminal arcs."""
    cells = [(f"c{i:02d}", Fraction(1) if unit else _w(rng, hi, den)) for i in range(n)]
    ids = [c for c, _ in cells]
    arcs = []
    for i in range(1, n):
        arcs.append((f"a{len(arcs)}", ids[i], ids[rng.randrange(i)], _w(rng, hi, den)))
    for _ in range(rng.randint(0, n)):
        if n < 2:
            break
        u, v = rng.sample(ids, 2)
        arcs.append((f"a{len(arcs)}", u, v, _w(rng, hi, den)))
    src = [(f"s{k}", c, _w(rng, hi, den)) for k, c in enumerate(rng.sample(ids, rng.randint(1, max(1, n // 2))))]
    snk = [(f"t{k}", c, _w(rng, hi, den)) for k, c in enumerate(rng.sample(ids, rng.randint(1, max(1, n // 2))))]
    return make_slab(cells, arcs, src, snk)


def random_class(seed: int, n: int, *, degree=3, hi: int = 50, unit: bool = False):
    """A class-mode cut complex from the random generator.

    Seeds whose minimal surface is separating or has no coherent side are
    skipped deterministically; returns ``(complex, minimizer, cut complex)``.
    """
    s = seed
    while True:
        doc = json.loads(random_complex(n, degree, 1, hi, seed=s))
        if unit:
            for c in doc["cells"]:
                c["volume"] = "1"
        cx = load(json.dumps(doc))
        res = minimize_exact(cx, cx.surfaces["S"])
        if not res.trivial:
            try:
                return cx, res, build_cut(cx, res.surface.faces, default_seed_cell(cx, res.surface.faces))
            except NonCoherentError:
                pass
        s += 10_000
