"""Fundamental units of real quadratic fields by continued fractions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .arith import factorize, is_square_nat, squarefree_divisors

__all__ = ["FundUnit", "PellFactor", "fund_unit", "pell_factor"]


@dataclass(frozen=True)
class FundUnit:
    """(x + y*sqrt(d)) / denom with x**2 - d*y**2 = norm * denom**2."""

    d: int
    x: int
    y: int
    denom: int
    norm: int

    def __post_init__(self) -> None:
        if self.x * self.x - self.d * self.y * self.y != self.norm * self.denom**2:
            raise ValueError(f"not a unit: {self}")

    def __str__(self) -> str:
        body = f"{self.x} + {self.y}*sqrt({self.d})"
        return body if self.denom == 1 else f"({body})/{self.denom}"


def _is_squarefree(d: int) -> bool:
    return all(e == 1 for e in factorize(d).values())


def _pqa_unit(d: int, p0: int, q0: int) -> tuple[int, int, int]:
    """Run PQa on (p0 + sqrt(d))/q0 to the end of the first period.

    Returns (G, B, sign) with G**2 - d*B**2 = sign * q0**2.
    """
    s = isqrt(d)
    p, q = p0, q0
    g_prev, g = -p0, q0
    b_prev, b = 1, 0
    i = 0
    while True:
        a = (p + s) // q
        g_prev, g = g, a * g + g_prev
        b_prev, b = b, a * b + b_prev
        p = a * q - p
        q = (d - p * p) // q
        # G_i**2 - d B_i**2 = (-1)**(i+1) * Q_{i+1} * Q_0
        if q == q0:
            return g, b, (-1) ** (i + 1)
        i += 1


@lru_cache(maxsize=None)
def fund_unit(d: int) -> FundUnit:
    """Fundamental unit > 1 of the maximal order of Q(sqrt(d))."""
    if d <= 1 or not _is_squarefree(d):
        raise ValueError(f"fund_unit: d must be squarefree and > 1, got {d}")
    if d % 4 == 1:
        g, b, sign = _pqa_unit(d, 1, 2)
        # G**2 - d B**2 = ±4; the unit is (G + B sqrt d)/2.
        if g % 2 == 0 and b % 2 == 0:
            return FundUnit(d, g // 2, b // 2, 1, sign)
        return FundUnit(d, g, b, 2, sign)
    g, b, sign = _pqa_unit(d, 0, 1)
    return FundUnit(d, g, b, 1, sign)


@dataclass(frozen=True)
class PellFactor:
    """x + denom = dplus * a**2 and x - denom = dminus * b**2 for a norm +1 unit.

    Then sqrt(2*denom*eps) = a*sqrt(dplus) + b*sqrt(dminus).
    """

    dplus: int
    dminus: int
    a: int
    b: int


def pell_factor(eps: FundUnit) -> PellFactor:
    if eps.norm != 1:
        raise ValueError("pell_factor: unit norm must be +1")
    candidates = squarefree_divisors(2 * eps.d)

    def split(n: int) -> tuple[int, int]:
        for c in candidates:
            if n % c == 0:
                r = is_square_nat(n // c)
                if r is not None:
                    return c, r
        raise ArithmeticError(f"no factorization of {n} over divisors of {2 * eps.d}")

    dplus, a = split(eps.x + eps.denom)
    dminus, b = split(eps.x - eps.denom)
    return PellFactor(dplus, dminus, a, b)
