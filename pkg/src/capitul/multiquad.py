"""Exact arithmetic in L = Q(i, sqrt2, sqrt p1, sqrt p2).

Elements are sparse maps from a 4-bit monomial index to integer numerators over a
common positive denominator. Bit 0 is i, bit 1 is sqrt2, bit 2 is sqrt p1,
bit 3 is sqrt p2; the monomial with index m is the product of the radicals whose
bits are set in m. Galois automorphisms are 4-bit sign masks s acting by
m -> (-1)**popcount(m & s) m.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Mapping

from .arith import is_prime, is_square_nat
from .gaussian import GaussInt

__all__ = [
    "Field",
    "FieldElem",
    "Subfield",
    "charpoly",
    "is_square",
    "subfield_norm",
]

Rational = int | Fraction


def _parity(n: int) -> int:
    return bin(n).count("1") & 1


def _span(gens: Iterable[int]) -> frozenset[int]:
    out = {0}
    for g in gens:
        out |= {m ^ g for m in out}
    return frozenset(out)


@dataclass(frozen=True)
class Subfield:
    """A subfield of L spanned by the monomials in ``mask``."""

    name: str
    mask: frozenset[int]
    basis: tuple[int, ...] = dc_field(compare=False)

    @classmethod
    def from_gens(cls, name: str, gens: Iterable[int]) -> Subfield:
        mask = _span(gens)
        basis: list[int] = []
        seen = frozenset({0})
        for m in sorted(mask):
            if m not in seen:
                basis.append(m)
                seen = _span(basis)
        return cls(name, mask, tuple(basis))

    @property
    def degree(self) -> int:
        return len(self.mask)

    @cached_property
    def fixing_group(self) -> tuple[int, ...]:
        """Sign masks of the automorphisms of L fixing this subfield pointwise."""
        return tuple(s for s in range(16) if all(not _parity(s & m) for m in self.basis))

    @cached_property
    def tower(self) -> tuple[frozenset[int], ...]:
        """Masks of Q = M_0 < M_1 < ... < M_r = self along the basis."""
        return tuple(_span(self.basis[:j]) for j in range(len(self.basis) + 1))

    def contains(self, other: Subfield) -> bool:
        return other.mask <= self.mask

    def __repr__(self) -> str:
        return f"Subfield({self.name}, deg={self.degree})"


class Field:
    """The ambient genus field for a pair of distinct odd primes (p1, p2)."""

    def __init__(self, p1: int, p2: int) -> None:
        if p1 == p2:
            raise ValueError("degenerate context: p1 == p2")
        for p in (p1, p2):
            if p == 2 or not is_prime(p):
                raise ValueError(f"degenerate context: {p} is not an odd prime")
        self.p1, self.p2 = p1, p2
        self.radical_squares = (-1, 2, p1, p2)
        sq = []
        for m in range(16):
            v = 1
            for bit, r in enumerate(self.radical_squares):
                if m >> bit & 1:
                    v *= r
            sq.append(v)
        # monomial(m) * monomial(n) = sqfac[m & n] * monomial(m ^ n)
        self.sqfac: tuple[int, ...] = tuple(sq)
        self._subfields: dict[str, Subfield] = {}
        d = 2 * p1 * p2
        for name, gens in (
            ("Q", ()),
            ("Qi", (0b0001,)),
            ("k", (0b0001, 0b1110)),
            ("k+", (0b1110,)),
            ("K1", (0b0001, 0b0100, 0b1010)),
            ("K1+", (0b0100, 0b1010)),
            ("K2", (0b0001, 0b1000, 0b0110)),
            ("K2+", (0b1000, 0b0110)),
            ("K3", (0b0001, 0b0010, 0b1100)),
            ("K3+", (0b0010, 0b1100)),
            ("L", (0b0001, 0b0010, 0b0100, 0b1000)),
            ("L+", (0b0010, 0b0100, 0b1000)),
        ):
            self._subfields[name] = Subfield.from_gens(name, gens)
        self.d = d

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p1, self.p2) == (other.p1, other.p2)

    def __hash__(self) -> int:
        return hash((self.p1, self.p2))

    def __repr__(self) -> str:
        return f"Field({self.p1}, {self.p2})"

    # -- subfields ---------------------------------------------------------
    def subfield(self, name: str) -> Subfield:
        if name.startswith("Q(sqrt") and name not in self._subfields:
            n = int(name[len("Q(sqrt"):].rstrip(")"))
            self._subfields[name] = Subfield.from_gens(name, (self.radical_mask(n),))
        return self._subfields[name]

    def quadratic_subfield(self, n: int) -> Subfield:
        return self.subfield(f"Q(sqrt{n})")

    def radical_mask(self, n: int) -> int:
        """Monomial index of sqrt(n) for n a signed divisor of 2*p1*p2 (squarefree)."""
        m = 0
        if n < 0:
            m, n = 1, -n
        for bit, r in ((1, 2), (2, self.p1), (3, self.p2)):
            if n % r == 0:
                n //= r
                m |= 1 << bit
        if n != 1:
            raise ValueError(f"sqrt of {n} does not lie in {self}")
        return m

    # -- constructors ------------------------------------------------------
    def elem(self, coeffs: Mapping[int, Rational], den: int = 1) -> FieldElem:
        fr = {m: Fraction(c) / den for m, c in coeffs.items()}
        common = 1
        for c in fr.values():
            common = common * c.denominator // gcd(common, c.denominator)
        return FieldElem._make(self, {m: int(c * common) for m, c in fr.items()}, common)

    def rational(self, q: Rational) -> FieldElem:
        q = Fraction(q)
        return FieldElem._make(self, {0: q.numerator}, q.denominator)

    def monomial(self, m: int) -> FieldElem:
        return FieldElem._make(self, {m: 1}, 1)

    def sqrt(self, n: int) -> FieldElem:
        return self.monomial(self.radical_mask(n))

    def gauss(self, g: GaussInt) -> FieldElem:
        return FieldElem._make(self, {0: g.re, 1: g.im}, 1)

    def quad(self, x: Rational, y: Rational, n: int) -> FieldElem:
        """x + y*sqrt(n)."""
        return self.rational(x) + self.rational(y) * self.sqrt(n)

    def unit(self, eps) -> FieldElem:
        """Embed a ``pell.FundUnit``."""
        return self.quad(Fraction(eps.x, eps.denom), Fraction(eps.y, eps.denom), eps.d)

    @cached_property
    def one(self) -> FieldElem:
        return self.rational(1)

    @cached_property
    def zero(self) -> FieldElem:
        return self.rational(0)

    @cached_property
    def i(self) -> FieldElem:
        return self.monomial(0b0001)

    @cached_property
    def zeta8(self) -> FieldElem:
        """(1 + i)/sqrt2."""
        return self.elem({0b0010: 1, 0b0011: 1}, 2)

    def monomial_name(self, m: int) -> str:
        parts = []
        if m & 1:
            parts.append("i")
        rad = 1
        for bit, r in ((1, 2), (2, self.p1), (3, self.p2)):
            if m >> bit & 1:
                rad *= r
        if rad > 1:
            parts.append(f"√{rad}")
        return "".join(parts)


class FieldElem:
    """Immutable element of L; arithmetic requires a shared Field."""

    __slots__ = ("field", "c", "den", "_hash")

    def __init__(self) -> None:  # pragma: no cover - use Field constructors
        raise TypeError("construct FieldElem through Field methods")

    @classmethod
    def _make(cls, field: Field, c: dict[int, int], den: int) -> FieldElem:
        c = {m: v for m, v in c.items() if v}
        if den < 0:
            c = {m: -v for m, v in c.items()}
            den = -den
        if not c:
            den = 1
        else:
            g = gcd(den, *c.values())
            if g > 1:
                c = {m: v // g for m, v in c.items()}
                den //= g
        self = object.__new__(cls)
        self.field, self.c, self.den, self._hash = field, c, den, None
        return self

    # -- helpers -----------------------------------------------------------
    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        if isinstance(other, GaussInt):
            return self.field.gauss(other)
        return NotImplemented

    def coeff(self, m: int) -> Fraction:
        return Fraction(self.c.get(m, 0), self.den)

    def coeffs(self) -> dict[int, Fraction]:
        return {m: Fraction(v, self.den) for m, v in sorted(self.c.items())}

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.c)

    def is_zero(self) -> bool:
        return not self.c

    def is_rational(self) -> bool:
        return set(self.c) <= {0}

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeff(0)

    def lies_in(self, sf: Subfield) -> bool:
        return set(self.c) <= sf.mask

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other) -> FieldElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        den = self.den * o.den // gcd(self.den, o.den)
        fa, fb = den // self.den, den // o.den
        out = {m: v * fa for m, v in self.c.items()}
        for m, v in o.c.items():
            out[m] = out.get(m, 0) + v * fb
        return FieldElem._make(self.field, out, den)

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        return FieldElem._make(self.field, {m: -v for m, v in self.c.items()}, self.den)

    def __sub__(self, other) -> FieldElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> FieldElem:
        return (-self) + other

    def __mul__(self, other) -> FieldElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        sq = self.field.sqfac
        out: dict[int, int] = {}
        for m1, v1 in self.c.items():
            for m2, v2 in o.c.items():
                m = m1 ^ m2
                out[m] = out.get(m, 0) + v1 * v2 * sq[m1 & m2]
        return FieldElem._make(self.field, out, self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> FieldElem:
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other) -> FieldElem:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_rational():
            q = o.to_rational()
            if q == 0:
                raise ZeroDivisionError("division by zero in L")
            return FieldElem._make(
                self.field, {m: v * q.denominator for m, v in self.c.items()}, self.den * q.numerator
            )
        return self * o.inverse()

    def __rtruediv__(self, other) -> FieldElem:
        return self._coerce(other) / self

    def mul_monomial(self, g: int) -> FieldElem:
        sq = self.field.sqfac
        return FieldElem._make(self.field, {m ^ g: v * sq[m & g] for m, v in self.c.items()}, self.den)

    def galois(self, s: int) -> FieldElem:
        """Apply the automorphism negating the radicals selected by sign mask s."""
        return FieldElem._make(
            self.field, {m: -v if _parity(m & s) else v for m, v in self.c.items()}, self.den
        )

    def conj(self) -> FieldElem:
        """Complex conjugation (i -> -i)."""
        return self.galois(0b0001)

    def inverse(self) -> FieldElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        y, cofactor = self, self.field.one
        for bit in range(4):
            z = y.galois(1 << bit)
            if z == y:
                continue
            cofactor = cofactor * z
            y = y * z
        return cofactor / y.to_rational()

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussInt)):
            other = self._coerce(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field == other.field and self.den == other.den and self.c == other.c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.den, frozenset(self.c.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for m, v in sorted(self.c.items()):
            name = self.field.monomial_name(m)
            if not name:
                terms.append(str(v))
            elif v == 1:
                terms.append(name)
            elif v == -1:
                terms.append("-" + name)
            else:
                terms.append(f"{v}{name}")
        body = " + ".join(terms).replace("+ -", "- ")
        if self.den == 1:
            return body
        return f"({body})/{self.den}"

    def to_json(self) -> dict:
        return {"den": self.den, "coeffs": {str(m): v for m, v in sorted(self.c.items())}}


def subfield_norm(x: FieldElem, target: Subfield, source: Subfield | None = None) -> FieldElem:
    """Relative norm N_{source/target}(x); source defaults to the whole field L."""
    F = x.field
    source = source or F.subfield("L")
    if not x.lies_in(source):
        raise ValueError(f"{x} does not lie in {source.name}")
    if not source.contains(target):
        raise ValueError(f"{target.name} is not a subfield of {source.name}")
    src_fix = set(source.fixing_group)
    reps: list[int] = []
    covered: set[int] = set()
    for s in target.fixing_group:
        if s not in covered:
            reps.append(s)
            covered |= {s ^ t for t in src_fix}
    out = F.one
    for s in reps:
        out = out * x.galois(s)
    assert out.lies_in(target)
    return out


def charpoly(x: FieldElem, where: Subfield) -> list[Fraction]:
    """Characteristic polynomial of x over Q as an element of ``where``, low degree first."""
    F = x.field
    if not x.lies_in(where):
        raise ValueError(f"{x} does not lie in {where.name}")
    poly = [F.one]
    reps: list[int] = []
    covered: set[int] = set()
    for s in range(16):
        if s not in covered:
            reps.append(s)
            covered |= {s ^ t for t in where.fixing_group}
    for s in reps:
        r = -x.galois(s)
        nxt = [F.zero] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k] = nxt[k] + c * r
            nxt[k + 1] = nxt[k + 1] + c
        poly = nxt
    return [c.to_rational() for c in poly]


def _rational_sqrt(x: FieldElem) -> FieldElem | None:
    q = x.to_rational()
    if q < 0:
        return None
    n, d = is_square_nat(q.numerator), is_square_nat(q.denominator)
    if n is None or d is None:
        return None
    return x.field.rational(Fraction(n, d))


def _restrict(x: FieldElem, mask: frozenset[int]) -> FieldElem:
    return FieldElem._make(x.field, {m: v for m, v in x.c.items() if m in mask}, x.den)


def _descend(x: FieldElem, sf: Subfield, level: int) -> FieldElem | None:
    if x.is_zero():
        return x
    if level == 0:
        return _rational_sqrt(x)
    g = sf.basis[level - 1]
    r = x.field.sqfac[g]
    a = _restrict(x, sf.tower[level - 1])
    b = (x - a).mul_monomial(g) / r
    if b.is_zero():
        c = _descend(a, sf, level - 1)
        if c is not None:
            return c
        c = _descend(a / r, sf, level - 1)
        return None if c is None else c.mul_monomial(g)
    s = _descend(a * a - b * b * r, sf, level - 1)
    if s is None:
        return None
    for t in (s, -s):
        c = _descend((a + t) / 2, sf, level - 1)
        if c is not None and not c.is_zero():
            return c + (b / (2 * c)).mul_monomial(g)
    return None


def is_square(x: FieldElem, where: Subfield | None = None) -> FieldElem | None:
    """Square root of x inside ``where`` (default L), or None if x is not a square there.

    The root returned has a positive first nonzero coordinate in monomial order.
    """
    where = where or x.field.subfield("L")
    if x.is_zero():
        raise ValueError("is_square: x must be nonzero")
    if not x.lies_in(where):
        raise ValueError(f"is_square: {x} does not lie in {where.name}")
    y = _descend(x, where, len(where.basis))
    if y is None:
        return None
    if y.c[min(y.c)] < 0:
        y = -y
    if y * y != x:
        raise ArithmeticError(f"square-root descent produced a wrong root for {x}")
    return y
