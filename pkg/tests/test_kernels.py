from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from hyperell import _kernels
from hyperell.config import PointConfiguration, roots_of_unity_config
from hyperell.field import GF, prime_with_roots_of_unity
from hyperell.strata import _admissible_perms

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@pytest.mark.parametrize("seed", range(5))
def test_preserving_maps_parity(seed):
    rng = random.Random(seed)
    p = prime_with_roots_of_unity(7, 8)
    F = GF(p)
    cfg = roots_of_unity_config(F, 8) if seed == 0 else PointConfiguration.of(F, rng.sample(range(p), 7) + ["oo"])
    rows = cfg._int_rows()
    a = _kernels.preserving_maps(rows[:3], rows, rows, p, use_numba=False)
    b = _kernels.preserving_maps(rows[:3], rows, rows, p, use_numba=True)
    assert np.array_equal(a, b)


@needs_numba
def test_lemma_kernel_parity():
    perms = _admissible_perms(7)
    subsets = np.array(list(itertools.combinations(range(7), 4)))
    assert np.array_equal(
        _kernels.lemma_success(perms, subsets, use_numba=False),
        _kernels.lemma_success(perms, subsets, use_numba=True),
    )


@pytest.mark.parametrize("use_numba", [False, pytest.param(True, marks=needs_numba)])
def test_affine_count_matches_scan(use_numba):
    # oracle: enumerate all (x, y) pairs
    p = 13
    coeffs = [3, 0, 1, 5, 0, 2, 1]
    for a in (1, 2):
        brute = sum(1 for x in range(p) for y in range(p)
                    if (a * y * y - sum(c * x**i for i, c in enumerate(coeffs))) % p == 0)
        assert _kernels.affine_count(coeffs, a, p, use_numba=use_numba) == brute


def test_env_flag_disables_numba(monkeypatch):
    monkeypatch.setenv("HYPERELL_DISABLE_NUMBA", "1")
    assert not _kernels.numba_enabled() and _kernels.backend() == "numpy"
    monkeypatch.setenv("HYPERELL_DISABLE_NUMBA", "0")
    assert _kernels.numba_enabled() == _kernels.HAVE_NUMBA


def test_large_prime_rejected():
    with pytest.raises(ValueError):
        _kernels.affine_count([1, 0, 1], 1, 2**31 + 11)


def test_kernel_arithmetic_near_the_int64_limit():
    # p close to 2^31: products must still fit
    p = 2_147_483_629
    F = GF(p)
    cfg = PointConfiguration.of(F, [0, 1, p - 1, 2, p - 2, "oo"])
    rows = cfg._int_rows()
    for flag in ([False, True] if _kernels.HAVE_NUMBA else [False]):
        maps = _kernels.preserving_maps(rows[:3], rows, rows, p, use_numba=flag)
        assert any((m[1] == 0 and m[2] == 0 and m[0] == m[3]) for m in maps)
