import random

import pytest

from homcmc.errors import CapExceededError
from homcmc.flow import mincut
from homcmc.oracles import brute_g_card, brute_width
from homcmc.width import g_card, width_dp

from _instances import bump1_cut, product_cut, random_class, random_slab, single_slab


def test_bump1():
    sw = width_dp(bump1_cut())
    assert sw.width == 3 and sw.ordering == ("c1", "c2") and sw.slices == (1, 3, 1)
    assert sw.g_card == 3 and sw.chat == 1
    C = bump1_cut()
    assert max(C.cut_value(set()), C.cut_value({"c2"}), C.cut_value({"c1", "c2"})) == 5


def test_single_slab():
    sw = width_dp(single_slab())
    assert sw.width == 1 and sw.ordering == ("c1",)
    assert g_card(single_slab()) == 1


def test_product():
    _, _, C = product_cut(4, a=3)
    sw = width_dp(C)
    assert sw.width == 3 == sw.g_card and sw.chat == 0


def test_cap():
    with pytest.raises(CapExceededError):
        width_dp(random_slab(random.Random(1), 6), cap=5)


@pytest.mark.parametrize("seed", range(20))
def test_oracle(seed):
    rng = random.Random(seed)
    C = random_slab(rng, rng.randint(1, 7), hi=5, den=2)
    sw = width_dp(C)
    assert sw.width == brute_width(C)
    assert sw.g_card == brute_g_card(C) == g_card(C)
    assert sw.width >= sw.g_card and sw.width >= mincut(C).value
    # the reported ordering realizes the width and is lexicographically smallest
    region, worst = set(), C.cut_value(())
    for c in sw.ordering:
        region.add(c)
        worst = max(worst, C.cut_value(region))
    assert worst == sw.width
    from itertools import permutations
    best = min(p for p in permutations(sorted(C.cell_ids))
               if max(C.cut_value(p[:i]) for i in range(len(p) + 1)) == sw.width)
    assert sw.ordering == best


@pytest.mark.parametrize("seed", range(8))
def test_class_chat(seed):
    _, res, C = random_class(seed, 5 + seed)
    sw = width_dp(C)
    assert sw.chat == (sw.width - res.area) / C.total_volume


def test_threads_identical():
    _, _, C = random_class(5, 12)
    assert width_dp(C, threads=1) == width_dp(C, threads=3)
