import json
from fractions import Fraction

import pytest

from homcmc.cut import build_cut
from homcmc.flow import mincut
from homcmc.generators import GenSpec, gen, generate_text, stack_periodicity
from homcmc.min_surface import minimize_exact
from homcmc.profile import girth_and_bound, profile_exact
from homcmc.report import default_seed_cell, full_report

from _instances import bump1_cut, random_class


@pytest.mark.parametrize("spec", [
    GenSpec("ring", {"k": 5}),
    GenSpec("product", {"k": 4, "a": "3/2", "v": 2}),
    GenSpec("grid3", {"a": 2, "b": 3, "c": 2}),
    GenSpec("random", {"n": 9, "seed": 3}),
    GenSpec("stack", {"base": bump1_cut(), "copies": 2}),
])
def test_valid_and_pure(spec):
    a, b = generate_text(spec), generate_text(spec)
    assert a == b
    cx, S = gen(spec)
    assert S and json.loads(a)["format"] == "homcmc-complex/1"


def test_unknown_kind_and_param():
    with pytest.raises(ValueError, match="unknown generator kind"):
        generate_text(GenSpec("torus"))
    with pytest.raises(ValueError, match="unknown parameter"):
        generate_text(GenSpec("ring", {"k": 3, "colour": 1}))
    with pytest.raises(ValueError):
        generate_text(GenSpec("ring", {"k": 1}))
    with pytest.raises(ValueError):
        generate_text(GenSpec("ring", {"k": 3, "areas": [1, 2]}))


def test_random_seeds_differ():
    assert generate_text(GenSpec("random", {"seed": 1})) != generate_text(GenSpec("random", {"seed": 2}))


def test_random_rational_weights():
    cx, _ = gen(GenSpec("random", {"n": 20, "seed": 0}))
    assert any(c.volume.denominator > 1 for c in cx.cells)


def test_product_flat():
    cx, S = gen(GenSpec("product", {"k": 3, "a": 2, "v": 1}))
    C = build_cut(cx, S, default_seed_cell(cx, S))
    P = profile_exact(C)
    assert set(P.areas) == {2}
    assert girth_and_bound(P).C_S == 0


def test_ring_example():
    cx, _ = gen(GenSpec("ring", {"k": 3, "areas": [1, 2, 3], "surface": "f23"}))
    assert minimize_exact(cx, {"f23"}).area == 1


def test_random_example_passes_report():
    cx, S = gen(GenSpec("random", {"n": 10, "degree": 3, "lo": 1, "hi": 100, "seed": 7}))
    assert full_report(cx, S).ok


@pytest.mark.parametrize("dims,area", [((2, 2, 2), 4), ((2, 2, 3), 4), ((3, 2, 2), 4), ((2, 3, 3), 6), ((3, 3, 2), 6)])
def test_grid3_minimal_area(dims, area):
    a, b, c = dims
    cx, S = gen(GenSpec("grid3", {"a": a, "b": b, "c": c}))
    assert len(S) == area
    assert minimize_exact(cx, S).area == area


@pytest.mark.parametrize("copies", [1, 2, 3])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_stack_mincut(seed, copies):
    _, _, base = random_class(seed, 4 + seed)
    cx, S = gen(GenSpec("stack", {"base": base, "copies": copies}))
    assert S == {"close"}
    C = build_cut(cx, S, "cap+")
    assert C.sides == (("close", "cap+", "cap-"),)
    assert mincut(C).value == mincut(base).value


def test_stack_periodicity_is_diagnostic():
    base = bump1_cut()
    cx, S = gen(GenSpec("stack", {"base": base, "copies": 3}))
    P = profile_exact(build_cut(cx, S, "cap+"))
    rows = stack_periodicity(P, "1/100", base.total_volume, 3)
    assert [K for K, _ in rows] == [Fraction(201, 100), Fraction(401, 100)]
    assert all(area is None or area >= 1 for _, area in rows)


def test_stack_needs_class_base():
    from _instances import slab124
    with pytest.raises(ValueError, match="class-mode"):
        generate_text(GenSpec("stack", {"base": slab124()}))
