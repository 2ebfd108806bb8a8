import os
import subprocess
import sys

import numpy as np
import pytest

from rectfca import kernels
from rectfca.bitvec import pack_bools, tail_mask

pytestmark = pytest.mark.skipif("numba" not in kernels.available(), reason="numba not installed")

NB = kernels.get("numba")
NP = kernels.get("numpy")


def packed(rng, rows, length, word_bits, p=0.5):
    return pack_bools(rng.random((rows, length)) < p, word_bits)


def full_set(m, word_bits):
    return pack_bools(np.ones((1, m), dtype=bool), word_bits)[0]


@pytest.mark.parametrize("seed", range(10))
def test_subset_matrix_parity(seed, word_bits):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 200))
    sets = packed(rng, 30, m, word_bits, 0.15)
    cols = packed(rng, 12, m, word_bits, 0.7)
    a, b = NB.subset_matrix(sets, cols), NP.subset_matrix(sets, cols)
    assert a.dtype == b.dtype == bool
    assert (a == b).all()


@pytest.mark.parametrize("seed", range(10))
def test_intent_and_meet_parity(seed, word_bits):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(1, 150)), int(rng.integers(1, 20))
    cols = packed(rng, n, m, word_bits, 0.7)
    full = full_set(m, word_bits)
    active = rng.random(n) < 0.8
    for _ in range(10):
        ext = packed(rng, 1, m, word_bits, 0.2)[0]
        assert (NB.intent_mask(ext, cols, active) == NP.intent_mask(ext, cols, active)).all()
        mask = rng.random(n) < 0.3
        assert (NB.meet(cols, mask, full) == NP.meet(cols, mask, full)).all()
    assert (NB.meet(cols, np.zeros(n, dtype=bool), full) == full).all()


@pytest.mark.parametrize("seed", range(10))
def test_blocking_extent_parity(seed, word_bits):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(1, 100)), int(rng.integers(1, 12))
    cols = packed(rng, n, m, word_bits, 0.6)
    full = full_set(m, word_bits)
    extents = packed(rng, 15, m, word_bits, 0.2)
    contains = NP.subset_matrix(extents, cols)
    active = rng.random(n) < 0.9
    for q in range(n):
        for only in (True, False):
            args = (cols, active, q, extents, contains, full, only)
            assert NB.blocking_extent(*args) == NP.blocking_extent(*args)


@pytest.mark.parametrize("seed", range(8))
def test_cbo_parity(seed, word_bits):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(1, 90)), int(rng.integers(1, 12))
    cols = packed(rng, n, m, word_bits, 0.4)
    full = full_set(m, word_bits)
    e1, i1, o1 = NB.cbo(cols, full, n, 10**6)
    e2, i2, o2 = NP.cbo(cols, full, n, 10**6)
    assert not o1 and not o2
    assert (e1 == e2).all() and (i1 == i2).all()
    # overflow stops at the same point
    total = len(e1)
    cap = max(1, total // 2)
    e1, _, o1 = NB.cbo(cols, full, n, cap)
    e2, _, o2 = NP.cbo(cols, full, n, cap)
    assert len(e1) == len(e2) == cap
    assert o1 == o2 == (cap < total)
    assert (e1 == e2).all()


def test_tail_padding_stays_zero(word_bits):
    m = 37
    words = tail_mask(m, word_bits)
    assert (full_set(m, word_bits) == words).all()
    assert int(words[-1]) == (1 << (m % word_bits)) - 1


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get("fortran")


def test_env_flag_selects_backend():
    code = "from rectfca import kernels; print(kernels.DEFAULT_BACKEND)"
    for name in kernels.BACKENDS:
        env = {**os.environ, "RECTFCA_BACKEND": name}
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        assert out.stdout.strip() == name
    env = {**os.environ, "RECTFCA_BACKEND": "bogus"}
    assert subprocess.run([sys.executable, "-c", code], env=env, capture_output=True).returncode != 0
