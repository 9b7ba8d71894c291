"""Rational-integer utilities: residue symbols, modular roots, squares, Cornacchia."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

__all__ = [
    "NotPrimeError",
    "Prime1Mod4",
    "cornacchia4",
    "factorize",
    "is_prime",
    "is_square_nat",
    "jacobi",
    "kronecker",
    "sqrt_mod",
    "squarefree_divisors",
    "squarefree_part",
    "v2",
]

# Deterministic for n < 3.3e24 (Sorenson & Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class NotPrimeError(ValueError):
    pass


def is_prime(n: int) -> bool:
    """Miller-Rabin with a base set that is deterministic far beyond 2**64."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi: modulus must be odd and positive, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1; extends jacobi to even n."""
    if n <= 0:
        raise ValueError("kronecker: n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    return result * jacobi(a, n) if n > 1 else result


def sqrt_mod(a: int, p: int) -> int | None:
    """Square root of a modulo an odd prime p, in [0, (p-1)/2]; None for non-residues.

    Tonelli-Shanks.
    """
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while jacobi(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def is_square_nat(n: int) -> int | None:
    """Exact square root of n >= 0, or None when n is not a perfect square."""
    if n < 0:
        raise ValueError("is_square_nat: negative input")
    # Squares mod 64 only take 12 values; cheap filter before isqrt.
    if (0x202021202030213 >> (n & 63)) & 1 == 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; meant for the small moduli used here."""
    if n < 1:
        raise ValueError("factorize: n must be positive")
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    while q * q <= n:
        for r in (q, q + 2):
            while n % r == 0:
                out[r] = out.get(r, 0) + 1
                n //= r
        q += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(n: int) -> int:
    out = 1
    for q, e in factorize(n).items():
        if e % 2:
            out *= q
    return out


def squarefree_divisors(n: int) -> list[int]:
    """Sorted squarefree divisors of n."""
    divs = [1]
    for q in factorize(n):
        divs += [d * q for d in divs]
    return sorted(divs)


def v2(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("v2(0) is infinite")
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class Prime1Mod4:
    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise NotPrimeError(f"{self.p} is not prime")
        if self.p % 4 != 1:
            raise ValueError(f"{self.p} ≢ 1 (mod 4)")

    @property
    def residue8(self) -> int:
        return self.p % 8


def cornacchia4(p: int | Prime1Mod4) -> tuple[int, int]:
    """Write a prime p = 1 (mod 4) as e**2 + 4 f**2 with e odd > 0 and f > 0."""
    p = Prime1Mod4(p).p if isinstance(p, int) else p.p
    r0 = sqrt_mod(-1, p)
    # Euclidean descent on (p, r0) stops at the first remainder below sqrt(p).
    a, b = p, r0
    bound = isqrt(p)
    while b > bound:
        a, b = b, a % b
    c = isqrt(p - b * b)
    if b * b + c * c != p:
        raise NotPrimeError(f"cornacchia failed for {p}")
    e, g = (b, c) if b % 2 else (c, b)
    assert gcd(e, g) == 1 and g % 2 == 0
    return e, g // 2
