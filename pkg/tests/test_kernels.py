import random

import numpy as np
import pytest

from homcmc import kernels
from homcmc.subsets import cut_table, volume_table

from _instances import random_slab

BACKENDS = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])


def _random_form(rng, n, big=False):
    hi = 10**19 if big else 1000
    linear = [rng.randint(-hi, hi) for _ in range(n)]
    quad = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            quad[i][j] = quad[j][i] = rng.randint(-hi, 0)
    return rng.randint(0, hi), linear, quad


def _naive(const, linear, quad):
    n = len(linear)
    out = []
    for m in range(1 << n):
        s = const
        for i in range(n):
            if m >> i & 1:
                s += linear[i]
                for j in range(i + 1, n):
                    if m >> j & 1:
                        s += quad[i][j]
        out.append(s)
    return out


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n", [0, 1, 2, 5, 9])
def test_subset_values(backend, n):
    rng = random.Random(n)
    form = _random_form(rng, n)
    got = kernels.subset_values(*form, backend=backend)
    assert [int(v) for v in got] == _naive(*form)


@pytest.mark.parametrize("backend", BACKENDS)
def test_subset_values_big_ints(backend):
    form = _random_form(random.Random(9), 6, big=True)
    got = kernels.subset_values(*form, backend=backend)
    assert got.dtype == object
    assert [int(v) for v in got] == _naive(*form)


@pytest.mark.parametrize("threads", [2, 3, 8])
def test_threads_identical(threads):
    form = _random_form(random.Random(4), 12)
    one = kernels.subset_values(*form, threads=1)
    many = kernels.subset_values(*form, threads=threads)
    assert np.array_equal(one, many)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled core not built")
def test_backends_agree():
    rng = random.Random(7)
    for n in (3, 8, 13):
        form = _random_form(rng, n)
        a = kernels.subset_values(*form, backend="python")
        b = kernels.subset_values(*form, backend="cython")
        assert np.array_equal(a, b)
        assert np.array_equal(kernels.chain_dp(a, backend="python"), kernels.chain_dp(b, backend="cython"))


def _chain_naive(values):
    n = (len(values) - 1).bit_length()
    W = [None] * len(values)
    for X in sorted(range(len(values)), key=lambda m: bin(m).count("1")):
        if X == 0:
            W[X] = values[0]
            continue
        W[X] = max(values[X], min(W[X ^ (1 << c)] for c in range(n) if X >> c & 1))
    return W


@pytest.mark.parametrize("backend", BACKENDS)
def test_chain_dp(backend):
    rng = random.Random(1)
    for n in (1, 4, 7):
        vals = np.array([rng.randint(0, 50) for _ in range(1 << n)], dtype=np.int64)
        assert [int(v) for v in kernels.chain_dp(vals, backend=backend)] == _chain_naive(list(map(int, vals)))


def test_lexmin_mask_and_popcount():
    assert kernels.lexmin_mask([0b110, 0b101, 0b011]) == 0b011
    assert kernels.lexmin_mask([0b100, 0b010]) == 0b010
    assert list(kernels.popcount(np.arange(8, dtype=np.int64), 3)) == [0, 1, 1, 2, 1, 2, 2, 3]


def test_cut_table_matches_cut_value():
    rng = random.Random(5)
    C = random_slab(rng, 7)
    d, vals = cut_table(C)
    dv, vols = volume_table(C)
    order = C.sorted_cells
    for m in range(1 << 7):
        cells = {order[i] for i in range(7) if m >> i & 1}
        assert vals[m] == C.cut_value(cells) * d
        assert vols[m] == sum(C.volume_of[c] for c in cells) * dv
