"""Machine-integer inner loops, compiled with numba when available.

Set CAPITUL_DISABLE_NUMBA=1 to force the pure numpy/python path. Both paths
return identical results; ``benchmarks/bench_kernels.py`` times them.
All kernels assume their integer inputs fit comfortably in int64.
"""
from __future__ import annotations

import os

import numpy as np

__all__ = [
    "USE_NUMBA",
    "count_reduced_imag",
    "legendre_matrix",
    "minimal_pell_search",
    "reduced_indefinite_forms",
    "count_form_cycles",
]

_DISABLED = os.environ.get("CAPITUL_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    USE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    USE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


# ---------------------------------------------------------------------------
# Legendre symbols of a residue matrix
# ---------------------------------------------------------------------------


@njit(cache=True)
def _powmod(b, e, m):
    r = 1
    b %= m
    while e > 0:
        if e & 1:
            r = r * b % m
        b = b * b % m
        e >>= 1
    return r


@njit(cache=True)
def _legendre_matrix_jit(res, primes):
    n, k = res.shape
    out = np.zeros((n, k), dtype=np.int8)
    for j in range(k):
        p = primes[j]
        h = (p - 1) // 2
        for r in range(n):
            a = res[r, j] % p
            if a == 0:
                out[r, j] = 0
            elif _powmod(a, h, p) == 1:
                out[r, j] = 1
            else:
                out[r, j] = -1
    return out


def _legendre_matrix_np(res: np.ndarray, primes: np.ndarray) -> np.ndarray:
    p = primes[None, :].astype(np.int64)
    base = np.mod(res, p).astype(np.int64)
    e = np.broadcast_to((p - 1) // 2, base.shape).copy()
    acc = np.ones_like(base)
    while np.any(e):
        odd = (e & 1).astype(bool)
        acc = np.where(odd, acc * base % p, acc)
        base = base * base % p
        e >>= 1
    out = np.where(acc == 1, 1, -1).astype(np.int8)
    out[np.mod(res, p) == 0] = 0
    return out


def legendre_matrix(res: np.ndarray, primes: np.ndarray) -> np.ndarray:
    """Legendre symbols (res[r, j] / primes[j]); primes below 2**31."""
    res = np.ascontiguousarray(res, dtype=np.int64)
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    if USE_NUMBA:
        return _legendre_matrix_jit(res, primes)
    return _legendre_matrix_np(res, primes)


# ---------------------------------------------------------------------------
# Binary quadratic forms
# ---------------------------------------------------------------------------


@njit(cache=True)
def _count_reduced_imag_jit(absD):
    count = 0
    a = 1
    while 3 * a * a <= absD:
        for b in range(-a + 1, a + 1):
            num = b * b + absD
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            # primitivity
            g = a
            for v in (abs(b), c):
                x, y = g, v
                while y:
                    x, y = y, x % y
                g = x
            if g == 1:
                count += 1
        a += 1
    return count


def _count_reduced_imag_py(absD: int) -> int:
    from math import gcd

    count = 0
    a = 1
    while 3 * a * a <= absD:
        bs = np.arange(-a + 1, a + 1, dtype=np.int64)
        num = bs * bs + absD
        ok = num % (4 * a) == 0
        for b, n in zip(bs[ok].tolist(), num[ok].tolist()):
            c = n // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                count += 1
        a += 1
    return count


def count_reduced_imag(absD: int) -> int:
    """Number of primitive reduced positive definite forms of discriminant -absD."""
    return int(_count_reduced_imag_jit(absD) if USE_NUMBA else _count_reduced_imag_py(absD))


@njit(cache=True)
def _isqrt_i64(n):
    r = np.int64(np.sqrt(np.float64(n)))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@njit(cache=True)
def _reduced_indefinite_jit(D):
    s = _isqrt_i64(D)
    out = np.zeros((4 * (s + 1) * (s + 1), 3), dtype=np.int64)
    n = 0
    for b in range(1, s + 1):
        if (b - D) % 2 != 0:
            continue
        m = (D - b * b) // 4  # = -a*c > 0
        for a in range(1, s + 1):
            if m % a != 0:
                continue
            # |a| in (s - b, s + b] translated to integers: s - b < 2|a| <= s + b
            if not (s - b < 2 * a and 2 * a <= s + b):
                continue
            c = m // a
            for sgn in (1, -1):
                out[n, 0] = sgn * a
                out[n, 1] = b
                out[n, 2] = -sgn * c
                n += 1
    return out[:n]


def _reduced_indefinite_py(D: int) -> np.ndarray:
    from math import isqrt

    s = isqrt(D)
    rows = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        m = (D - b * b) // 4
        for a in range(1, s + 1):
            if m % a or not (s - b < 2 * a <= s + b):
                continue
            c = m // a
            rows += [(a, b, -c), (-a, b, c)]
    return np.array(rows, dtype=np.int64).reshape(-1, 3)


def reduced_indefinite_forms(D: int) -> np.ndarray:
    """All reduced forms (a, b, c) of non-square discriminant D > 0.

    Reduced means 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
    """
    return _reduced_indefinite_jit(D) if USE_NUMBA else _reduced_indefinite_py(D)


@njit(cache=True)
def _rho_index(forms, D, s):
    n = forms.shape[0]
    nxt = np.full(n, -1, dtype=np.int64)
    for idx in range(n):
        a, b, c = forms[idx, 0], forms[idx, 1], forms[idx, 2]
        ac = abs(c)
        # choose b2 = -b mod 2c with s - 2|c| < b2 <= s
        r = (-b) % (2 * ac)
        b2 = r + ((s - r) // (2 * ac)) * (2 * ac)
        c2 = (b2 * b2 - D) // (4 * c)
        for j in range(n):
            if forms[j, 0] == c and forms[j, 1] == b2 and forms[j, 2] == c2:
                nxt[idx] = j
                break
    return nxt


def _rho_index_py(forms: np.ndarray, D: int, s: int) -> np.ndarray:
    lookup = {tuple(f): j for j, f in enumerate(forms.tolist())}
    nxt = np.full(len(forms), -1, dtype=np.int64)
    for idx, (a, b, c) in enumerate(forms.tolist()):
        ac = abs(c)
        r = (-b) % (2 * ac)
        b2 = r + ((s - r) // (2 * ac)) * (2 * ac)
        c2 = (b2 * b2 - D) // (4 * c)
        nxt[idx] = lookup.get((c, b2, c2), -1)
    return nxt


def count_form_cycles(D: int) -> int:
    """Number of rho-cycles of reduced indefinite forms: the narrow class number."""
    from math import isqrt

    forms = reduced_indefinite_forms(D)
    s = isqrt(D)
    nxt = _rho_index(forms, D, s) if USE_NUMBA else _rho_index_py(forms, D, s)
    if np.any(nxt < 0):
        raise ArithmeticError(f"reduction operator left the reduced set for D={D}")
    seen = np.zeros(len(forms), dtype=bool)
    cycles = 0
    for start in range(len(forms)):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = nxt[j]
    return cycles


# ---------------------------------------------------------------------------
# Brute-force minimal Pell solution (oracle for the continued fraction path)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _minimal_pell_jit(d, ymax, half):
    for y in range(1, ymax + 1):
        t = d * y * y
        for rhs in ((-4, 4) if half else (-1, 1)):
            v = t + rhs
            if v <= 0:
                continue
            x = _isqrt_i64(v)
            if x * x == v:
                return x, y, rhs
    return 0, 0, 0


def _minimal_pell_np(d: int, ymax: int, half: bool):
    chunk = 1 << 16
    for lo in range(1, ymax + 1, chunk):
        y = np.arange(lo, min(lo + chunk, ymax + 1), dtype=np.int64)
        t = d * y * y
        best = None
        for rhs in ((-4, 4) if half else (-1, 1)):
            v = t + rhs
            x = np.floor(np.sqrt(v.astype(np.float64))).astype(np.int64)
            x = np.where((x + 1) * (x + 1) <= v, x + 1, x)
            x = np.where(x * x > v, x - 1, x)
            hit = np.nonzero((x * x == v) & (v > 0))[0]
            if hit.size and (best is None or hit[0] < best[0]):
                best = (int(hit[0]), int(x[hit[0]]), rhs)
        if best is not None:
            return best[1], int(y[best[0]]), best[2]
    return 0, 0, 0


def minimal_pell_search(d: int, ymax: int, half: bool) -> tuple[int, int, int]:
    """Smallest y <= ymax with x**2 - d*y**2 = rhs, rhs in {-1, 1} or {-4, 4} if ``half``.

    Returns (x, y, rhs), or (0, 0, 0) when nothing is found. At equal y the
    negative right-hand side wins.
    """
    if USE_NUMBA:
        x, y, r = _minimal_pell_jit(d, ymax, half)
    else:
        x, y, r = _minimal_pell_np(d, ymax, half)
    return int(x), int(y), int(r)
