import random
from fractions import Fraction

import pytest

from homcmc.errors import CapExceededError, UnknownIdError
from homcmc.flow import mincut
from homcmc.oracles import brute_profile
from homcmc.profile import classify_envelope, girth_and_bound, h_of, profile_exact, witness_candidates

from _instances import bump1_cut, product_cut, random_class, random_slab, single_slab, slab124
from homcmc.cut import make_slab


def _pairs(P):
    return [(p.K, p.area) for p in P.points]


def test_bump1_profile():
    P = profile_exact(bump1_cut())
    assert _pairs(P) == [(0, 1), (1, 3), (2, 1)]
    mid = P.points[1]
    assert (mid.left_slope, mid.right_slope) == (2, -2)
    assert mid.witness.cells == {"c1"}
    assert P.class_mode and P.total_volume == 2 and P.sigma0_area == 1


def test_product_flat():
    _, _, C = product_cut(3, a=2)
    P = profile_exact(C)
    assert {p.area for p in P.points} == {2}


def test_single_slab_profile():
    assert _pairs(profile_exact(single_slab("5/2"))) == [(0, 1), (Fraction(5, 2), 1)]


def test_girth_bump1():
    G = girth_and_bound(profile_exact(bump1_cut()))
    assert (G.girth, G.C_S, G.witness_K1, G.witness_slope, G.witness_side) == (3, 1, 1, 2, "left")
    assert G.argmax_K == 1 and G.witness_region.cells == {"c1"}


def test_girth_product():
    _, S, C = product_cut(3, a=2)
    G = girth_and_bound(profile_exact(C))
    assert G.girth == 2 and G.C_S == 0 and G.witness_slope == 0


def test_girth_symmetric_slab():
    C = make_slab([("a", 1), ("b", 1)], [("ab", "a", "b", 1)], [("s", "a", 1)], [("t", "b", 1)])
    P = profile_exact(C)
    assert _pairs(P) == [(0, 1), (1, 1), (2, 1)]
    G = girth_and_bound(P)
    assert G.girth == 1 and G.C_S == 0


def test_girth_rejects_slab():
    with pytest.raises(ValueError, match="not in class mode"):
        girth_and_bound(profile_exact(slab124()))


def test_girth_rejects_two_points():
    with pytest.raises(ValueError, match="interior"):
        girth_and_bound(profile_exact(single_slab()))


def test_h_of():
    P = profile_exact(bump1_cut())
    assert h_of(P, 1) == (1, -1)
    assert h_of(P, 0) == (None, 1)
    with pytest.raises(UnknownIdError):
        h_of(P, Fraction(1, 2))
    _, _, C = product_cut(4, a=3)
    P = profile_exact(C)
    assert all(h_of(P, K) == (0, 0) for K in P.Ks[1:-1])


def test_classify_envelope():
    env = classify_envelope(profile_exact(bump1_cut()))
    assert env == {"lagrangian": [0, 2], "constrained": [1]}
    _, _, C = product_cut(3)
    assert classify_envelope(profile_exact(C))["constrained"] == []
    assert classify_envelope(profile_exact(slab124())) == {"lagrangian": [0, 1, 2], "constrained": []}


def test_cap():
    with pytest.raises(CapExceededError):
        profile_exact(random_slab(random.Random(0), 9), cap=8)


@pytest.mark.parametrize("seed", range(25))
def test_oracle(seed):
    rng = random.Random(seed)
    C = random_slab(rng, rng.randint(1, 11), den=2, hi=6)
    P = profile_exact(C)
    assert dict(_pairs(P)) == brute_profile(C)
    low = mincut(C).value
    for p in P.points:
        assert C.cut_value(p.witness.cells) == p.area and p.witness.volume == p.K
        assert p.area >= low


@pytest.mark.parametrize("seed", range(6))
def test_witness_lexicographic(seed):
    rng = random.Random(seed)
    C = random_slab(rng, 7, hi=2, den=1)  # small weights force ties
    P = profile_exact(C)
    from homcmc.oracles import all_regions
    for p in P.points:
        ties = [sorted(r) for r in all_regions(C.cell_ids)
                if sum(C.volume_of[c] for c in r) == p.K and C.cut_value(r) == p.area]
        assert sorted(p.witness.cells) == min(ties)


@pytest.mark.parametrize("seed", range(20))
def test_class_invariants(seed):
    _, res, C = random_class(seed, 4 + seed % 9)
    P = profile_exact(C)
    assert P.areas[0] == P.areas[-1] == res.area
    assert min(P.areas) == res.area
    G = girth_and_bound(P)
    assert abs(G.witness_slope) >= 2 * G.C_S
    assert all(abs(s) >= 2 * G.C_S for s, _, _ in witness_candidates(P))
    assert G.C_S == (max(P.areas) - res.area) / C.total_volume


def test_threads_identical():
    _, _, C = random_class(3, 13)
    a, b = profile_exact(C, threads=1), profile_exact(C, threads=4)
    assert _pairs(a) == _pairs(b) and a.witness_masks == b.witness_masks
