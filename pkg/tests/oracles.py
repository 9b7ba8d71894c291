"""Independent brute-force oracles. None of these call into the reduction theory,
continued fractions or tower descent that the package itself uses."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

import mpmath


def legendre_euler(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def is_prime_naive(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out, m, q = [], n, 2
    while m > 1:
        if m % q == 0:
            m //= q
            out.append(q)
        else:
            q += 1
    return tuple(out)


def kronecker_naive(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1 via prime factorisation and Euler's criterion."""
    out = 1
    for q in _prime_factors(n):
        if q == 2:
            out *= 0 if D % 2 == 0 else (1 if D % 8 in (1, 7) else -1)
        else:
            out *= legendre_euler(D, q)
    return out


# -- Pell ------------------------------------------------------------------

def pell_bruteforce(d: int, ymax: int) -> tuple[int, int, int, int] | None:
    """Smallest unit (x + y sqrt d)/den > 1 with y <= ymax, den 2 allowed when d = 1 mod 4.

    Returns (x, y, den, norm) in lowest terms, or None.
    """
    dens = (2, 1) if d % 4 == 1 else (1,)
    for y in range(1, ymax + 1):
        for den in dens:
            for rhs in (-1, 1):
                t = d * y * y + rhs * den * den
                x = math.isqrt(t) if t > 0 else -1
                if x > 0 and x * x == t:
                    if den == 2 and x % 2 == 0 and y % 2 == 0:
                        continue  # found with den 1 at y/2 already
                    return x, y, den, rhs
    return None


def pell_sympy(d: int) -> tuple[int, int, int, int]:
    """Fundamental unit via sympy's generalized Pell solver (used where brute force overflows)."""
    from sympy.solvers.diophantine.diophantine import diop_DN

    cands = []
    for den, rhs in ((1, -1), (1, 1)) + (((2, -1), (2, 1)) if d % 4 == 1 else ()):
        for x, y in diop_DN(d, rhs * den * den):
            x, y = abs(x), abs(y)
            if y > 0:
                cands.append((Fraction(x, den) + Fraction(y, den) * math.sqrt(d), x, y, den, rhs))
    best = min(cands, key=lambda t: t[0])
    _, x, y, den, rhs = best
    if den == 2 and x % 2 == 0 and y % 2 == 0:
        x, y, den = x // 2, y // 2, 1
    return x, y, den, rhs


# -- imaginary quadratic class numbers by ideal enumeration -----------------

def _hnf(rows: list[tuple[int, int]]) -> tuple[int, int, int]:
    """Hermite form (a, b, c) of the Z-span of rows: basis (a, 0), (b, c), 0 <= b < a."""
    rows = [list(r) for r in rows if r != (0, 0)]
    # eliminate second coordinate by gcd steps
    while sum(1 for r in rows if r[1] != 0) > 1:
        rows.sort(key=lambda r: (r[1] == 0, abs(r[1])))
        piv = rows[0]
        for r in rows[1:]:
            if r[1]:
                q = r[1] // piv[1]
                r[0] -= q * piv[0]
                r[1] -= q * piv[1]
        rows = [r for r in rows if r != [0, 0]]
    piv = next(r for r in rows if r[1] != 0)
    if piv[1] < 0:
        piv = [-piv[0], -piv[1]]
    a = 0
    for r in rows:
        if r[1] == 0:
            a = math.gcd(a, r[0])
    b = piv[0] % a
    return a, b, piv[1]


class ImagQuadOrder:
    """Maximal order Z[w] of Q(sqrt D), w = (D + sqrt D)/2, D < 0 fundamental."""

    def __init__(self, D: int):
        self.D = D
        self.n = (D * D - D) // 4  # w**2 = D w - n

    def mul(self, u, v):
        x1, y1 = u
        x2, y2 = v
        yy = y1 * y2
        return (x1 * x2 - self.n * yy, x1 * y2 + x2 * y1 + self.D * yy)

    def norm(self, u) -> int:
        x, y = u
        return x * x + self.D * x * y + self.n * y * y

    def ideals_of_norm(self, N: int):
        out = []
        for c in range(1, N + 1):
            if N % c:
                continue
            a = N // c
            for b in range(a):
                if self._is_ideal(a, b, c):
                    out.append((a, b, c))
        return out

    @staticmethod
    def _contains(I, u) -> bool:
        a, b, c = I
        x, y = u
        return y % c == 0 and (x - b * (y // c)) % a == 0

    def _is_ideal(self, a, b, c) -> bool:
        I = (a, b, c)
        w = (0, 1)
        return self._contains(I, self.mul(w, (a, 0))) and self._contains(I, self.mul(w, (b, c)))

    def ideal_mul(self, I, J):
        gi = [(I[0], 0), (I[1], I[2])]
        gj = [(J[0], 0), (J[1], J[2])]
        return _hnf([self.mul(u, v) for u, v in product(gi, gj)])

    def conj(self, I):
        # conj(x + y w) = (x + D y) - y w
        gens = [(I[0], 0), (I[1] + self.D * I[2], -I[2])]
        return _hnf(gens)

    def is_principal(self, I) -> bool:
        N = I[0] * I[2]
        ymax = math.isqrt(4 * N // -self.D) + 1
        for y in range(-ymax, ymax + 1):
            # |x + y D/2| <= sqrt(N)
            lo = math.floor(-y * self.D / 2 - math.sqrt(N)) - 1
            hi = math.ceil(-y * self.D / 2 + math.sqrt(N)) + 1
            for x in range(lo, hi + 1):
                if self.norm((x, y)) == N and self._contains(I, (x, y)):
                    return True
        return False


def class_number_ideals(D: int) -> int:
    """h(D) for fundamental D < 0 by enumerating ideals below the Minkowski bound."""
    O = ImagQuadOrder(D)
    bound = int(2 / math.pi * math.sqrt(-D)) + 1
    ideals = [I for N in range(1, bound + 1) for I in O.ideals_of_norm(N)]
    reps: list = []
    for I in ideals:
        if not any(O.is_principal(O.ideal_mul(I, O.conj(J))) for J in reps):
            reps.append(I)
    return len(reps)


# -- analytic class number formulas ----------------------------------------

def class_number_dirichlet_imag(D: int) -> int:
    w = {-3: 6, -4: 4}.get(D, 2)
    s = sum(kronecker_naive(D, a) * a for a in range(1, -D))
    h = Fraction(-w * s, 2 * -D)
    assert h.denominator == 1
    return int(h)


def class_number_dirichlet_real(D: int, unit: tuple[int, int, int]) -> int:
    """h(D) log(eps) = -1/2 sum_{a<D} (D/a) log sin(pi a / D), eps = (x + y sqrt d)/den > 1."""
    x, y, den = unit
    d = D if D % 4 == 1 else D // 4
    with mpmath.workdps(40):
        eps = (x + y * mpmath.sqrt(d)) / den
        s = mpmath.fsum(kronecker_naive(D, a) * mpmath.log(mpmath.sin(mpmath.pi * a / D)) for a in range(1, D))
        h = -s / (2 * mpmath.log(eps))
        r = int(mpmath.nint(h))
        assert abs(h - r) < mpmath.mpf(10) ** -20, h
        return r
