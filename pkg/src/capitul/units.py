"""Systems of fundamental units (SFU) of the unramified extensions K1, K2, K3 of k.

Dictionary per tower (each SFUClass records its own):
  K1: eps1 = eps(p1), eps2 = eps(2 p2), eps3 = eps(2 p1 p2)
  K2: eps1 = eps(p2), eps2 = eps(2 p1), eps3 = eps(2 p1 p2)
  K3: eps1 = eps(2),  eps2 = eps(p1 p2), eps3 = eps(2 p1 p2)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from itertools import product

import mpmath

from .arith import factorize, is_square_nat
from .characters import character_table
from .multiquad import Field, FieldElem, Subfield, charpoly, is_square, subfield_norm
from .pell import FundUnit, fund_unit, pell_factor

__all__ = [
    "InconsistentCase",
    "SFUClass",
    "SFUCheck",
    "UnitIndexQ",
    "genus_unit_subgroup",
    "k_units",
    "norm_index",
    "quadratic_sqrt",
    "sfu_classify",
    "unit_index_K3",
    "unit_index_quad_i",
    "unit_index_square_test",
    "verify_sfu",
]

log = logging.getLogger(__name__)

SHAPES = ("E_plain", "E_sqrt123", "E_sqrt_i123", "E_sqrt_i2")


class InconsistentCase(ArithmeticError):
    """Unit norms contradict the case analysis; always a bug, never bad input."""


@dataclass(frozen=True)
class UnitIndexQ:
    field: str
    q: int
    method: str = ""


@dataclass(frozen=True)
class SFUClass:
    tower: str
    shape: str
    generators: tuple[FieldElem, ...]
    labels: tuple[str, ...]
    torsion: FieldElem
    torsion_label: str
    dictionary: dict[str, FundUnit] = dc_field(default_factory=dict, compare=False)
    notes: tuple[str, ...] = ()

    @property
    def hasse_q(self) -> int:
        """Unit index of the CM field over its maximal real subfield."""
        return 2 if self.shape in ("E_sqrt_i123", "E_sqrt_i2") else 1

    def rank(self) -> int:
        return len(self.generators)

    def class_count(self) -> int:
        return 1 << (len(self.generators) + 1)

    def exponents(self) -> list[tuple[int, ...]]:
        """Exponent vectors mod 2 of (torsion, *generators); torsion varies fastest."""
        n = len(self.generators) + 1
        return [tuple((idx >> j) & 1 for j in range(n)) for idx in range(1 << n)]

    def element(self, exps: tuple[int, ...]) -> FieldElem:
        F = self.torsion.field
        out = F.one
        for e, g in zip(exps, (self.torsion, *self.generators)):
            if e:
                out = out * g
        return out

    def label(self, exps: tuple[int, ...]) -> str:
        names = [n for e, n in zip(exps, (self.torsion_label, *self.labels)) if e]
        return "*".join(names) or "1"

    def summary(self) -> dict:
        return {
            "tower": self.tower,
            "shape": self.shape,
            "torsion": self.torsion_label,
            "generators": list(self.labels),
            "notes": list(self.notes),
        }


def quadratic_sqrt(u: Fraction, v: Fraction, a: int) -> tuple[Fraction, Fraction] | None:
    """Square root (s, t) of u + v*sqrt(a) inside Q(sqrt(a)), or None."""

    def qsqrt(q: Fraction) -> Fraction | None:
        if q < 0:
            return None
        n, d = is_square_nat(q.numerator), is_square_nat(q.denominator)
        return None if n is None or d is None else Fraction(n, d)

    u, v = Fraction(u), Fraction(v)
    if v == 0:
        s = qsqrt(u)
        if s is not None:
            return s, Fraction(0)
        t = qsqrt(u / a)
        return None if t is None else (Fraction(0), t)
    n = qsqrt(u * u - a * v * v)
    if n is None:
        return None
    for w in (n, -n):
        s = qsqrt((u + w) / 2)
        if s:
            return s, v / (2 * s)
    return None


def unit_index_quad_i(a: int) -> UnitIndexQ:
    """Unit index Q of Q(sqrt(a), i) for squarefree a > 1."""
    if a <= 1 or any(e > 1 for e in factorize(a).values()):
        raise ValueError(f"unit_index_quad_i: {a} is not squarefree > 1")
    name = f"Q(sqrt{a},i)"
    if a % 4 == 1:
        return UnitIndexQ(name, 1, "a = 1 mod 4")
    odd = a // 2 if a % 2 == 0 else a
    odd_primes = list(factorize(odd)) if odd > 1 else []
    for mask in range(1, 1 << len(odd_primes)):
        div = 1
        for j, q in enumerate(odd_primes):
            if mask >> j & 1:
                div *= q
        if div % 8 == 5:
            return UnitIndexQ(name, 1, f"odd divisor {div} = 5 mod 8")
    return unit_index_square_test(a)


def unit_index_square_test(a: int) -> UnitIndexQ:
    """Q of Q(sqrt(a), i) from the exact test: Q = 2 iff 2*eps_a is a square in Q(sqrt(a))."""
    eps = fund_unit(a)
    root = quadratic_sqrt(Fraction(2 * eps.x, eps.denom), Fraction(2 * eps.y, eps.denom), a)
    return UnitIndexQ(f"Q(sqrt{a},i)", 2 if root is not None else 1, "square test of 2*eps")


def _eps_label(n: int) -> str:
    return f"eps{n}"


def k_units(F: Field) -> SFUClass:
    """E_k = <i, eps(2 p1 p2)> (unit index 1 because N(eps) = -1)."""
    eps = fund_unit(F.d)
    if eps.norm != -1:
        raise InconsistentCase(f"N(eps{F.d}) = +1: unit group of k is not <i, eps>")
    return SFUClass(
        "k", "E_plain", (F.unit(eps),), (_eps_label(F.d),), F.i, "i", {"eps3": eps}
    )


def _tower_dictionary(F: Field, tower: str) -> tuple[int, int, int]:
    p1, p2, d = F.p1, F.p2, F.d
    return {"K1": (p1, 2 * p2, d), "K2": (p2, 2 * p1, d), "K3": (2, p1 * p2, d)}[tower]


def _sqrt_2delta_eps(F: Field, eps: FundUnit) -> FieldElem:
    """sqrt(2*denom*eps) = a sqrt(D+) + b sqrt(D-) for a norm +1 unit."""
    pf = pell_factor(eps)
    root = F.rational(pf.a) * F.sqrt(pf.dplus) + F.rational(pf.b) * F.sqrt(pf.dminus)
    if root * root != 2 * eps.denom * F.unit(eps):
        raise ArithmeticError(f"pell factor identity failed for {eps}")
    return root


def sfu_classify(F: Field, tower: str) -> SFUClass:
    """SFU of K1, K2 or K3 with explicit generators in L."""
    if tower not in ("K1", "K2", "K3"):
        raise ValueError(f"sfu_classify: unknown tower {tower}")
    n1, n2, n3 = _tower_dictionary(F, tower)
    e1, e2, e3 = fund_unit(n1), fund_unit(n2), fund_unit(n3)
    if e1.norm != -1 or e3.norm != -1:
        raise InconsistentCase(f"{tower}: expected N(eps{n1}) = N(eps{n3}) = -1")
    u1, u2, u3 = F.unit(e1), F.unit(e2), F.unit(e3)
    l1, l2, l3 = map(_eps_label, (n1, n2, n3))
    K = F.subfield(tower)
    K0 = F.subfield(tower + "+")
    dictionary = {"eps1": e1, "eps2": e2, "eps3": e3}
    i = F.i
    half_1pi = (1 + i) / 2
    notes: list[str] = []

    if tower in ("K1", "K2"):
        torsion, tlabel = F.i, "i"
        if e2.norm == 1:
            # 2*eps2 is a square in Q(sqrt(2q)); sqrt(i eps2) = sqrt(2 eps2) (1+i)/2
            r2 = _sqrt_2delta_eps(F, e2)
            if not r2.lies_in(F.quadratic_subfield(n2)):
                raise InconsistentCase(f"sqrt(2*{l2}) not in Q(sqrt{n2})")
            g = r2 * half_1pi
            shape, gens, labels = "E_sqrt_i2", (u1, g, u3), (l1, f"sqrt(i*{l2})", l3)
        else:
            E = u1 * u2 * u3
            r = is_square(E, K0)
            r2 = is_square(2 * E, K0)
            if r is not None and r2 is not None:
                raise InconsistentCase("both eps1eps2eps3 and 2eps1eps2eps3 are squares")
            prod_label = f"{l1}*{l2}*{l3}"
            if r is not None:
                shape, gens, labels = "E_sqrt123", (u1, u2, r), (l1, l2, f"sqrt({prod_label})")
            elif r2 is not None:
                shape, gens = "E_sqrt_i123", (u1, u2, r2 * half_1pi)
                labels = (l1, l2, f"sqrt(i*{prod_label})")
            else:
                shape, gens, labels = "E_plain", (u1, u2, u3), (l1, l2, l3)
                notes.append("neither eps1eps2eps3 nor 2eps1eps2eps3 is a square in K0")
    else:
        torsion, tlabel = F.zeta8, "zeta8"
        if e2.norm == 1:
            shape, gens, labels = "E_plain", (u1, u2, u3), (l1, l2, l3)
        else:
            r = is_square(u1 * u2 * u3, K0)
            if r is not None:
                shape, gens = "E_sqrt123", (u1, u2, r)
                labels = (l1, l2, f"sqrt({l1}*{l2}*{l3})")
            else:
                shape, gens, labels = "E_plain", (u1, u2, u3), (l1, l2, l3)
        gens, labels, extra = _recheck_cm_index(F, K, torsion, gens, labels)
        notes += extra

    for g in gens:
        assert g.lies_in(K), (tower, g)
    return SFUClass(tower, shape, tuple(gens), tuple(labels), torsion, tlabel, dictionary, tuple(notes))


def _recheck_cm_index(F: Field, K: Subfield, torsion: FieldElem, gens, labels):
    """Confirm no zeta * (real unit) is a square in K, i.e. K and K+ share the SFU.

    If one is found, its root replaces the last generator involved and a note records it.
    """
    gens, labels = list(gens), list(labels)
    for exps in product((0, 1), repeat=len(gens)):
        u = reduce(lambda acc, eg: acc * eg[1] if eg[0] else acc, zip(exps, gens), torsion)
        r = is_square(u, K)
        if r is not None:
            j = max(idx for idx, e in enumerate(exps) if e) if any(exps) else None
            lab = "sqrt(" + "*".join(["zeta8", *(l for e, l in zip(exps, labels) if e)]) + ")"
            if j is None:
                raise InconsistentCase("zeta8 is a square in K")
            gens[j], labels[j] = r, lab
            return gens, labels, [f"re-verification: {lab} lies in {K.name}; SFU extended"]
    return gens, labels, []


def unit_index_K3(sfu3: SFUClass) -> UnitIndexQ:
    """Index of <-1, eps1, eps2, eps3> in the units of K3+ = Q(sqrt2, sqrt(p1 p2))."""
    if sfu3.tower != "K3":
        raise ValueError("unit_index_K3 needs the K3 system")
    q = 2 if sfu3.shape == "E_sqrt123" else 1
    return UnitIndexQ("K3+", q, f"SFU shape {sfu3.shape}")


def genus_unit_subgroup(F: Field, systems: list[SFUClass]) -> SFUClass:
    """Units of k* generated by zeta8 and the SFUs of K1, K2, K3 (a finite-index subgroup)."""
    gens: list[FieldElem] = []
    labels: list[str] = []
    for sfu in systems:
        for g, lab in zip(sfu.generators, sfu.labels):
            if g not in gens:
                gens.append(g)
                labels.append(lab)
    return SFUClass(
        "L",
        "E_genus_subgroup",
        tuple(gens),
        tuple(labels),
        F.zeta8,
        "zeta8",
        notes=("subgroup of E_L: certifies principality, not non-principality",),
    )


def _k_class(F: Field, u: FieldElem) -> tuple[int, int]:
    """Class of a unit of k in E_k / E_k^2 as exponents of (i, eps_d)."""
    k = F.subfield("k")
    eps = F.unit(fund_unit(F.d))
    for a, b in ((0, 0), (1, 0), (0, 1), (1, 1)):
        c = (F.i if a else F.one) * (eps if b else F.one)
        if is_square(u * c, k) is not None:
            return a, b
    raise ArithmeticError(f"{u} is not a unit of k")


def norm_index(F: Field, sfu: SFUClass) -> int:
    """[E_k : N_{K/k}(E_K)] from the norms of torsion and SFU generators."""
    K = F.subfield(sfu.tower)
    k = F.subfield("k")
    span = {(0, 0)}
    for g in (sfu.torsion, *sfu.generators):
        n = subfield_norm(g, k, K)
        a, b = _k_class(F, n)
        span |= {(x ^ a, y ^ b) for x, y in span}
    return 4 // len(span)


@dataclass(frozen=True)
class SFUCheck:
    units: bool
    independent_mod_squares: bool
    regulator_nonzero: bool
    precision: int
    regulator: str

    @property
    def ok(self) -> bool:
        return self.units and self.independent_mod_squares and self.regulator_nonzero


def _is_unit(x: FieldElem, K: Subfield) -> bool:
    poly = charpoly(x, K)
    return all(c.denominator == 1 for c in poly) and abs(poly[0]) == 1


def _embedding_logs(x: FieldElem, signs: list[int]) -> list:
    F = x.field
    vals = []
    rad = [mpmath.mpc(0, 1), mpmath.sqrt(2), mpmath.sqrt(F.p1), mpmath.sqrt(F.p2)]
    for s in signs:
        total = mpmath.mpc(0)
        for m, c in x.c.items():
            term = mpmath.mpf(c)
            for bit in range(4):
                if m >> bit & 1:
                    term *= -rad[bit] if s >> bit & 1 else rad[bit]
            total += term
        vals.append(mpmath.log(abs(total / x.den)))
    return vals


def verify_sfu(F: Field, sfu: SFUClass, prec: int = 256, max_prec: int = 4096) -> SFUCheck:
    """Certify units, independence mod squares (with torsion) and a nonzero regulator."""
    K = F.subfield(sfu.tower)
    units = all(_is_unit(g, K) for g in sfu.generators) and _is_unit(sfu.torsion, K)

    table = character_table(F, K)
    elems = [sfu.torsion, *sfu.generators]
    bits = table.bits(elems)
    independent = True
    for exps in sfu.exponents()[1:]:
        neg, known = 0, -1
        for e, (nb, kb) in zip(exps, bits):
            if e:
                neg ^= nb
                known &= kb
        if neg & known:
            continue
        if is_square(sfu.element(exps), K) is not None:
            independent = False
            break

    # One embedding per pair of complex places: sign masks modulo the fixing group and conj.
    signs: list[int] = []
    covered: set[int] = set()
    for s in range(16):
        if s in covered:
            continue
        signs.append(s)
        for t in K.fixing_group:
            covered |= {s ^ t, s ^ t ^ 1}
    rows_needed = len(sfu.generators)
    p = prec
    reg = mpmath.mpf(0)
    ok = False
    while p <= max_prec:
        with mpmath.workprec(p):
            logs = [_embedding_logs(g, signs) for g in sfu.generators]
            sums = [abs(mpmath.fsum(r)) for r in logs]
            tol = mpmath.mpf(2) ** (-p // 4)
            if all(v < tol for v in sums):
                M = mpmath.matrix([r[:rows_needed] for r in logs])
                reg = abs(mpmath.det(M))
                ok = reg > mpmath.mpf(2) ** (-p // 8)
                break
        p *= 2
    return SFUCheck(units, independent, ok, min(p, max_prec), mpmath.nstr(reg, 12))
