"""Exact arithmetic in Z[i] and the Gaussian splitting of norm -1 Pell solutions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .arith import Prime1Mod4, cornacchia4, is_square_nat

__all__ = [
    "DecompositionError",
    "GaussInt",
    "GaussPrime",
    "PellSplit",
    "pell_gauss_decompose",
    "split_norm_minus_one",
    "split_prime",
]


class DecompositionError(ArithmeticError):
    pass


@dataclass(frozen=True, slots=True)
class GaussInt:
    re: int
    im: int = 0

    def __add__(self, other: GaussInt | int) -> GaussInt:
        o = _coerce(other)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: GaussInt | int) -> GaussInt:
        o = _coerce(other)
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: int) -> GaussInt:
        return _coerce(other) - self

    def __neg__(self) -> GaussInt:
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other: GaussInt | int) -> GaussInt:
        o = _coerce(other)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GaussInt:
        out, base = GaussInt(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> GaussInt:
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __divmod__(self, other: GaussInt | int) -> tuple[GaussInt, GaussInt]:
        """Division with the quotient rounded to the nearest lattice point."""
        o = _coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        num = self * o.conj()
        q = GaussInt(_round_div(num.re, n), _round_div(num.im, n))
        return q, self - q * o

    def __floordiv__(self, other: GaussInt | int) -> GaussInt:
        return divmod(self, other)[0]

    def __mod__(self, other: GaussInt | int) -> GaussInt:
        return divmod(self, other)[1]

    def exact_div(self, other: GaussInt | int) -> GaussInt | None:
        q, r = divmod(self, other)
        return q if r.is_zero() else None

    def normalized(self) -> GaussInt:
        """Associate in the first quadrant (re > 0, im >= 0), zero stays zero."""
        z = self
        for _ in range(4):
            if z.re > 0 and z.im >= 0:
                return z
            z = z * GaussInt(0, 1)
        return z

    def sqrt(self) -> GaussInt | None:
        """Exact square root in Z[i] (the root with re > 0, or im > 0 when re == 0)."""
        if self.is_zero():
            return self
        m = is_square_nat(self.norm())
        if m is None:
            return None
        c2, rem = divmod(self.re + m, 2)
        if rem:
            return None
        c = is_square_nat(c2)
        if c is None:
            return None
        d2 = c2 - self.re
        d = is_square_nat(d2)
        if d is None:
            return None
        if 2 * c * d != abs(self.im):
            return None
        root = GaussInt(c, d if self.im >= 0 else -d)
        if root.re == 0 and root.im < 0:
            root = -root
        assert root * root == self
        return root

    def __repr__(self) -> str:
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


I = GaussInt(0, 1)
ONE_PLUS_I = GaussInt(1, 1)


def _coerce(x: GaussInt | int) -> GaussInt:
    return x if isinstance(x, GaussInt) else GaussInt(x, 0)


def _round_div(a: int, n: int) -> int:
    return (2 * a + n) // (2 * n)


def gauss_gcd(a: GaussInt, b: GaussInt) -> GaussInt:
    while not b.is_zero():
        a, b = b, a % b
    return a.normalized()


@dataclass(frozen=True)
class GaussPrime:
    """pi = e + 2 f i above a rational prime p = 1 (mod 4); its conjugate is e - 2 f i."""

    p: int
    e: int
    f: int

    @property
    def pi(self) -> GaussInt:
        return GaussInt(self.e, 2 * self.f)

    @property
    def pi_bar(self) -> GaussInt:
        return GaussInt(self.e, -2 * self.f)


def split_prime(p: int | Prime1Mod4) -> GaussPrime:
    q = Prime1Mod4(p) if isinstance(p, int) else p
    e, f = cornacchia4(q)
    return GaussPrime(q.p, e, f)


@dataclass(frozen=True)
class PellSplit:
    """Gaussian factorization of a norm -1 unit (x + y sqrt(d)) / delta.

    Records x + sign*delta*i = u * y1**2 * tau with u = i**twist and N(tau) = d,
    so x - sign*delta*i = conj(u) * y2**2 * conj(tau) with y2 = conj(y1) and y1*y2 = y.
    """

    x: int
    y: int
    delta: int
    d: int
    tau: GaussInt
    y1: GaussInt
    twist: int
    sign: int

    @property
    def y2(self) -> GaussInt:
        return self.y1.conj()

    @property
    def unit(self) -> GaussInt:
        return I if self.twist else GaussInt(1)

    @property
    def variant(self) -> str:
        return ("i-twisted" if self.twist else "plain") + ("" if self.sign > 0 else ", conjugate")

    def check(self) -> bool:
        lhs = GaussInt(self.x, self.sign * self.delta)
        return (
            lhs == self.unit * self.y1 * self.y1 * self.tau
            and self.y1.norm() == self.y
            and self.tau.norm() == self.d
        )


def split_norm_minus_one(
    x: int, y: int, delta: int, d: int, taus: Iterable[GaussInt]
) -> PellSplit | None:
    """Find the first tau (then sign +, -) for which x + sign*delta*i = u*y1**2*tau.

    Requires x**2 - d*y**2 = -delta**2. Returns None when no listed tau fits.
    """
    if x * x - d * y * y != -delta * delta:
        raise ValueError("split_norm_minus_one: not a norm -1 solution")
    for tau in taus:
        if tau.norm() != d:
            raise ValueError(f"split_norm_minus_one: N({tau}) != {d}")
        for sign in (1, -1):
            q = GaussInt(x, sign * delta).exact_div(tau)
            if q is None:
                continue
            for twist, u_inv in ((0, GaussInt(1)), (1, -I)):
                root = (q * u_inv).sqrt()
                if root is not None:
                    split = PellSplit(x, y, delta, d, tau, root, twist, sign)
                    assert split.check()
                    return split
    return None


def pell_gauss_decompose(eps, pi: GaussPrime) -> PellSplit:
    """Split a norm -1 fundamental unit of Q(sqrt(p)) over Z[i] against pi.

    ``eps`` is any object with ``x, y, denom, d, norm`` (see ``pell.FundUnit``).
    """
    if eps.d != pi.p or eps.d % 4 != 1:
        raise ValueError(f"pell_gauss_decompose: need d = p = 1 (mod 4), got d={eps.d}")
    if eps.norm != -1:
        raise ValueError("pell_gauss_decompose: unit norm must be -1")
    split = split_norm_minus_one(eps.x, eps.y, eps.denom, eps.d, [pi.pi])
    if split is None:
        raise DecompositionError(f"decomposition failed for eps of Q(sqrt({eps.d}))")
    return split


def products(factors: Sequence[Sequence[GaussInt]]) -> list[GaussInt]:
    """All products picking one entry from each slot, first slot varying slowest."""
    out = [GaussInt(1)]
    for slot in factors:
        out = [a * b for a in out for b in slot]
    return out
