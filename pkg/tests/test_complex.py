import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homcmc.complex import (
    boundary,
    dumps,
    homologous,
    is_cycle,
    is_null_homologous,
    load,
)
from homcmc.errors import FormatError, UnknownIdError
from homcmc.exact import decimal15, fmt, parse_weight
from homcmc.generators import GenSpec, gen

from _instances import BUMP1, RING3, ring3


def _doc(**changes):
    doc = json.loads(json.dumps(RING3))
    doc.update(changes)
    return doc


class TestLoad:
    def test_ring_total_volume(self):
        cx = ring3()
        assert cx.total_volume == 3
        assert [f.id for f in cx.faces] == ["f12", "f23", "f31"]

    def test_accepts_bytes_and_rationals(self):
        doc = _doc()
        doc["cells"][0]["volume"] = "3/6"
        doc["faces"][1]["area"] = "0.25"
        cx = load(json.dumps(doc).encode())
        assert cx.volume_of["c1"] == Fraction(1, 2)
        assert cx.area_of["f23"] == Fraction(1, 4)

    def test_zero_area_rejected(self):
        doc = _doc()
        doc["faces"][0]["area"] = "0"
        with pytest.raises(FormatError, match="non-positive weight"):
            load(json.dumps(doc))

    def test_negative_volume_rejected(self):
        doc = _doc()
        doc["cells"][2]["volume"] = "-1/2"
        with pytest.raises(FormatError, match="non-positive weight"):
            load(json.dumps(doc))

    def test_dangling_cell(self):
        doc = _doc()
        doc["faces"][2]["cells"] = ["c3", "c9"]
        with pytest.raises(FormatError, match="dangling id c9"):
            load(json.dumps(doc))

    def test_dangling_surface_face(self):
        with pytest.raises(FormatError, match="dangling id f99"):
            load(json.dumps(_doc(surfaces={"S": ["f99"]})))

    def test_duplicate_id(self):
        doc = _doc()
        doc["cells"][1]["id"] = "c1"
        with pytest.raises(FormatError, match="duplicate id c1"):
            load(json.dumps(doc))

    def test_disconnected(self):
        doc = _doc()
        doc["cells"].append({"id": "c4", "volume": "1"})
        doc["faces"].append({"id": "loop", "area": "1", "cells": ["c4", "c4"]})
        with pytest.raises(FormatError, match="disconnected dual graph"):
            load(json.dumps(doc))

    def test_unknown_top_level_key(self):
        with pytest.raises(FormatError, match="unknown top-level key extra"):
            load(json.dumps(_doc(extra=1)))

    def test_parse_error_has_locus(self):
        with pytest.raises(FormatError, match="line 2"):
            load('{"format": "homcmc-complex/1",\n "cells": [}')

    def test_float_weight_rejected(self):
        doc = _doc()
        doc["cells"][0]["volume"] = 0.5
        with pytest.raises(FormatError, match=r"cells\[0\]\.volume"):
            load(json.dumps(doc))

    def test_wrong_format(self):
        with pytest.raises(FormatError, match="expected format"):
            load(json.dumps(_doc(format="homcmc-complex/2")))

    def test_reserved_id(self):
        doc = _doc()
        doc["cells"][0]["id"] = "SOURCE"
        doc["faces"][0]["cells"] = ["SOURCE", "c2"]
        doc["faces"][2]["cells"] = ["c3", "SOURCE"]
        with pytest.raises(FormatError, match="reserved"):
            load(json.dumps(doc))

    def test_round_trip(self):
        cx = ring3()
        assert load(dumps(cx)) == cx


class TestBoundary:
    def test_single_cell(self):
        b = boundary(ring3(), {"c2"})
        assert b.faces == {"f12", "f23"} and b.area == 3

    def test_empty_and_full(self):
        cx = ring3()
        assert boundary(cx, set()).faces == set()
        assert boundary(cx, {"c1", "c2", "c3"}).faces == set()
        assert boundary(cx, set()).area == 0

    def test_self_adjacent_excluded(self):
        doc = json.loads(json.dumps(BUMP1))
        doc["faces"].append({"id": "loop", "area": "5", "cells": ["c1", "c1"]})
        cx = load(json.dumps(doc))
        assert boundary(cx, {"c1"}).faces == {"f0", "f12"}


class TestHomology:
    def test_is_cycle(self):
        cx = ring3()
        assert is_cycle(cx, {"f12"}) == (True, [])
        with pytest.raises(UnknownIdError):
            is_cycle(cx, {"f99"})

    def test_is_cycle_warns_self_adjacent(self):
        doc = json.loads(json.dumps(BUMP1))
        doc["faces"].append({"id": "loop", "area": "5", "cells": ["c1", "c1"]})
        ok, warnings = is_cycle(load(json.dumps(doc)), {"f0", "loop"})
        assert ok and len(warnings) == 1 and "loop" in warnings[0]

    def test_odd_ring_surface_nontrivial(self):
        assert is_null_homologous(ring3(), {"f12"}) == (False, None)

    def test_boundary_of_cell(self):
        ok, w = is_null_homologous(ring3(), {"f12", "f23"})
        assert ok and w.cells == {"c2"}

    def test_empty_bounds_empty(self):
        ok, w = is_null_homologous(ring3(), set())
        assert ok and w.cells == frozenset()

    def test_homologous(self):
        cx = ring3()
        ok, w = homologous(cx, {"f12"}, {"f23"})
        assert ok and w.cells == {"c2"}
        assert homologous(cx, {"f12"}, set())[0] is False
        ok, w = homologous(cx, {"f31"}, {"f31"})
        assert ok and w.cells == frozenset()


def _random_instances():
    return [gen(GenSpec("random", {"n": n, "seed": s}))[0] for n, s in [(5, 1), (8, 2), (11, 3), (14, 4)]]


INSTANCES = _random_instances()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(INSTANCES) - 1), st.integers(0, 2**31))
def test_boundary_properties(k, seed):
    cx = INSTANCES[k]
    rng = random.Random(seed)
    ids = [c.id for c in cx.cells]
    r1 = {c for c in ids if rng.random() < 0.5}
    r2 = {c for c in ids if rng.random() < 0.5}
    b1 = boundary(cx, r1)
    assert b1 == boundary(cx, set(ids) - r1)
    assert boundary(cx, r1 ^ r2).faces == b1.faces ^ boundary(cx, r2).faces
    ok, w = is_null_homologous(cx, b1.faces)
    assert ok and boundary(cx, w).faces == b1.faces
    assert b1.area == sum(cx.area_of[f] for f in sorted(b1.faces, key=lambda _: rng.random()))


class TestExact:
    @pytest.mark.parametrize("text,value", [("3", 3), ("-2/4", Fraction(-1, 2)), ("0.125", Fraction(1, 8)), (" 7 ", 7)])
    def test_parse(self, text, value):
        assert parse_weight(text) == value

    @pytest.mark.parametrize("bad", [1.5, "abc", "1/0", "nan", "inf", None, True])
    def test_parse_rejects(self, bad):
        with pytest.raises(FormatError):
            parse_weight(bad)

    def test_render(self):
        assert fmt(Fraction(6, 4)) == "3/2"
        assert fmt(Fraction(4, 2)) == "2"
        assert decimal15(Fraction(1, 3)) == "0.333333333333333"
        assert decimal15(Fraction(2)) == "2"
