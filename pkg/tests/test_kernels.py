"""Compiled and fallback kernels must agree exactly."""
import numpy as np
import pytest

from capitul import _kernels as kern
from capitul.forms import is_fundamental


@pytest.fixture
def fallback(monkeypatch):
    monkeypatch.setattr(kern, "USE_NUMBA", False)


def _both(fn, *args):
    fast = fn(*args)
    kern_flag = kern.USE_NUMBA
    kern.USE_NUMBA = False
    try:
        slow = fn(*args)
    finally:
        kern.USE_NUMBA = kern_flag
    return fast, slow


def test_legendre_matrix_parity():
    rng = np.random.default_rng(3)
    primes = np.array([3, 5, 7, 11, 13, 101, 10007], dtype=np.int64)
    res = rng.integers(0, 10**6, size=(30, len(primes))) % primes
    fast, slow = _both(kern.legendre_matrix, res, primes)
    assert np.array_equal(fast, slow)
    for j, p in enumerate(primes):
        for r in range(30):
            a = int(res[r, j])
            want = 0 if a == 0 else (1 if pow(a, (int(p) - 1) // 2, int(p)) == 1 else -1)
            assert fast[r, j] == want


def test_count_reduced_imag_parity():
    for D in range(-3, -2000, -1):
        if is_fundamental(D):
            fast, slow = _both(kern.count_reduced_imag, -D)
            assert fast == slow


def test_cycles_parity():
    for D in range(5, 3000):
        if is_fundamental(D):
            a, b = _both(kern.count_form_cycles, D)
            assert a == b, D
            f1, f2 = _both(kern.reduced_indefinite_forms, D)
            assert np.array_equal(np.asarray(f1), np.asarray(f2))


def test_minimal_pell_parity():
    for d in (2, 3, 5, 13, 14, 61, 94, 130, 151):
        assert _both(kern.minimal_pell_search, d, 10**5, d % 4 == 1)[0] == _both(
            kern.minimal_pell_search, d, 10**5, d % 4 == 1
        )[1]


def test_minimal_pell_not_found():
    assert kern.minimal_pell_search(151, 1000, False) == (0, 0, 0)


def test_fallback_flag_via_env(tmp_path):
    import os
    import subprocess
    import sys

    env = dict(os.environ, CAPITUL_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from capitul import _kernels as k; print(k.USE_NUMBA, k.count_reduced_imag(520))"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["False", "4"]


def test_fixture_fallback_used(fallback):
    assert kern.count_reduced_imag(520) == 4
