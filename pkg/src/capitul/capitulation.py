"""Class generators H0, H1, H2 of k and their capitulation in K1, K2, K3 and k*.

A class c with ideal H, H**2 = (gamma), becomes principal in K exactly when
gamma * u is a square in K for some unit u of K; only u modulo squares matters.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .arith import NotPrimeError, Prime1Mod4, jacobi
from .characters import character_table
from .gaussian import GaussInt, GaussPrime, split_prime
from .multiquad import Field, FieldElem, is_square
from .pell import fund_unit, pell_factor
from .units import SFUClass, UnitIndexQ, k_units, norm_index

__all__ = [
    "CapKernel",
    "ClassVec",
    "Eligibility",
    "InvalidPair",
    "NotASubgroup",
    "OrderTwoReport",
    "Witness",
    "computed_kernel",
    "eligibility",
    "generators",
    "is_principal_in",
    "order_two_check",
    "predicted_kernels",
    "principal_witness",
    "span",
    "thm17_count",
]

Bits = tuple[int, int, int]
ALL_BITS: tuple[Bits, ...] = tuple((a, b, c) for c in (0, 1) for b in (0, 1) for a in (0, 1))


class InvalidPair(ValueError):
    pass


class NotASubgroup(ArithmeticError):
    pass


@dataclass(frozen=True)
class Eligibility:
    p1: int
    p2: int
    sym_pp: int
    sym_2p1: int
    sym_2p2: int

    @property
    def symbols(self) -> tuple[int, int, int]:
        return self.sym_pp, self.sym_2p1, self.sym_2p2

    @property
    def eligible(self) -> bool:
        return sum(1 for s in self.symbols if s == -1) >= 2

    @property
    def reason(self) -> str:
        n = sum(1 for s in self.symbols if s == -1)
        if n >= 2:
            return f"{n} symbols equal -1"
        return {0: "no symbol equals -1", 1: "only one symbol equals -1"}[n]


def eligibility(p1: int, p2: int) -> Eligibility:
    """Symbols ((p1/p2), (2/p1), (2/p2)); eligible iff at least two equal -1."""
    for p in (p1, p2):
        if p == 2:
            raise InvalidPair("p = 2 is excluded")
        try:
            Prime1Mod4(p)
        except NotPrimeError as exc:
            raise InvalidPair(str(exc)) from None
        except ValueError as exc:
            raise InvalidPair(str(exc)) from None
    if p1 == p2:
        raise InvalidPair("p1 and p2 must be distinct")
    return Eligibility(p1, p2, jacobi(p1, p2), jacobi(2, p1), jacobi(2, p2))


def _bits_str(b: Bits) -> str:
    return "".join(map(str, b))


@dataclass(frozen=True)
class ClassVec:
    """Class of H0**a H1**b H2**c; its square is generated by (1+i)**a pi1**b pi2**c."""

    bits: Bits
    pi: GaussPrime

    @property
    def radicand_gauss(self) -> GaussInt:
        a, b, c = self.bits
        return GaussInt(1, 1) ** a * self.pi.pi**b * self.pi.pi_bar**c

    def radicand(self, F: Field) -> FieldElem:
        return F.gauss(self.radicand_gauss)

    @property
    def name(self) -> str:
        parts = [f"H{j}" for j, e in enumerate(self.bits) if e]
        return "".join(parts) or "1"

    def __add__(self, other: ClassVec) -> ClassVec:
        return ClassVec(tuple(x ^ y for x, y in zip(self.bits, other.bits)), self.pi)

    def __str__(self) -> str:
        return _bits_str(self.bits)


def span(gens) -> frozenset[Bits]:
    out = {(0, 0, 0)}
    for g in gens:
        g = g.bits if isinstance(g, ClassVec) else tuple(g)
        out |= {tuple(x ^ y for x, y in zip(e, g)) for e in out}
    return frozenset(out)


def _is_subgroup(elems: frozenset[Bits]) -> bool:
    return (0, 0, 0) in elems and all(
        tuple(x ^ y for x, y in zip(a, b)) in elems for a in elems for b in elems
    )


@dataclass(frozen=True)
class CapKernel:
    target: str
    elements: frozenset[Bits]

    def __post_init__(self) -> None:
        if not _is_subgroup(self.elements):
            raise NotASubgroup(f"kernel in {self.target} is not a subgroup: {sorted(self.elements)}")

    @cached_property
    def basis(self) -> tuple[Bits, ...]:
        """Reduced echelon basis (pivots in H0, H1, H2 order), sorted by a + 2b + 4c."""
        rows: list[list[int]] = []
        for e in sorted(self.elements, key=lambda b: [-x for x in b]):
            v = list(e)
            for r in rows:
                piv = r.index(1)
                if v[piv]:
                    v = [x ^ y for x, y in zip(v, r)]
            if any(v):
                piv = v.index(1)
                rows = [[x ^ y for x, y in zip(r, v)] if r[piv] else r for r in rows]
                rows.append(v)
        return tuple(sorted((tuple(r) for r in rows), key=lambda b: b[0] + 2 * b[1] + 4 * b[2]))

    @property
    def generators(self) -> tuple[Bits, ...]:
        return self.basis

    def encode(self) -> str:
        return "+".join(_bits_str(b) for b in self.basis) or "000"

    @classmethod
    def decode(cls, target: str, text: str) -> CapKernel:
        gens = [] if text == "000" else [tuple(int(ch) for ch in t) for t in text.split("+")]
        return cls(target, span(gens))

    def __len__(self) -> int:
        return len(self.elements)


def generators(F: Field) -> tuple[ClassVec, ClassVec, ClassVec]:
    """H0, H1, H2 above 1+i, pi1 = e + 2fi and pi2 = e - 2fi with p1 = F.p1."""
    pi = split_prime(F.p1)
    return ClassVec((1, 0, 0), pi), ClassVec((0, 1, 0), pi), ClassVec((0, 0, 1), pi)


def class_vec(F: Field, bits: Bits) -> ClassVec:
    return ClassVec(tuple(bits), split_prime(F.p1))


@dataclass(frozen=True)
class Witness:
    """alpha with alpha**2 = radicand * unit inside the target field."""

    alpha: FieldElem
    unit: FieldElem
    unit_label: str
    route: str = "search"


def _fast_path_k3(F: Field, c: ClassVec, target: str, sfu: SFUClass) -> Witness | None:
    """H1H2 in K3 when N(eps(p1 p2)) = +1: sqrt(p1 eps2) from the Pell factorization."""
    if target != "K3" or c.bits != (0, 1, 1):
        return None
    eps2 = fund_unit(F.p1 * F.p2)
    if eps2.norm != 1:
        return None
    pf = pell_factor(eps2)
    root2 = F.rational(pf.a) * F.sqrt(pf.dplus) + F.rational(pf.b) * F.sqrt(pf.dminus)
    delta = eps2.denom
    alpha = root2 * F.sqrt(2 * F.p1) / (2 * delta) if delta == 1 else root2 * F.sqrt(F.p1) / 2
    # delta = 2: sqrt(4 eps2) = root2, so sqrt(p1 eps2) = root2 sqrt(p1) / 2
    u = F.unit(eps2)
    if alpha * alpha == c.radicand(F) * u and alpha.lies_in(F.subfield("K3+")):
        return Witness(alpha, u, f"eps{F.p1 * F.p2}", "pell-factor")
    return None


def principal_witness(F: Field, c: ClassVec, target: str, sfu: SFUClass) -> Witness | None:
    """First unit class u (torsion exponent first) with radicand * u a square in target."""
    if target == "k*":
        target = "L"
    sf = F.subfield(target)
    fast = _fast_path_k3(F, c, target, sfu)
    if fast is not None:
        return fast
    gamma = c.radicand(F)
    table = character_table(F, sf)
    elems = [gamma, sfu.torsion, *sfu.generators]
    (g_neg, g_known), *unit_bits = table.bits(elems)
    for exps in sfu.exponents():
        neg, known = g_neg, g_known
        for e, (nb, kb) in zip(exps, unit_bits):
            if e:
                neg ^= nb
                known &= kb
        if neg & known:
            continue
        u = sfu.element(exps)
        alpha = is_square(gamma * u, sf)
        if alpha is not None:
            return Witness(alpha, u, sfu.label(exps))
    return None


def is_principal_in(F: Field, c: ClassVec, target: str, sfu: SFUClass) -> bool:
    return principal_witness(F, c, target, sfu) is not None


@dataclass(frozen=True)
class OrderTwoReport:
    nonprincipal: dict[str, bool]
    criterion_h1h2: bool

    @property
    def passed(self) -> bool:
        return all(self.nonprincipal.values()) and self.criterion_h1h2


def order_two_check(F: Field) -> OrderTwoReport:
    """All 7 nonzero classes of <H0, H1, H2> are non-principal in k."""
    ek = k_units(F)
    result = {}
    for bits in ALL_BITS[1:]:
        c = class_vec(F, bits)
        result[_bits_str(bits)] = not is_principal_in(F, c, "k", ek)
    # With N(eps_d) = -1 the class of H1H2 has order 2 without any search.
    criterion = fund_unit(F.d).norm == -1
    return OrderTwoReport(result, criterion)


def predicted_kernels(F: Field, q3: UnitIndexQ | int) -> dict[str, CapKernel]:
    q = q3.q if isinstance(q3, UnitIndexQ) else q3
    k3 = [(1, 0, 0), (0, 1, 1)] if q == 1 else [(1, 0, 0)]
    return {
        "K1": CapKernel("K1", span([(0, 1, 0), (0, 0, 1)])),
        "K2": CapKernel("K2", span([(1, 1, 0), (1, 0, 1)])),
        "K3": CapKernel("K3", span(k3)),
        "k*": CapKernel("k*", frozenset(ALL_BITS)),
    }


def computed_kernel(F: Field, target: str, sfu: SFUClass) -> tuple[CapKernel, dict[str, Witness]]:
    """Search every class of <H0, H1, H2> for principality in target."""
    witnesses: dict[str, Witness] = {}
    elems = set()
    for bits in ALL_BITS:
        w = principal_witness(F, class_vec(F, bits), target, sfu)
        if w is not None:
            elems.add(bits)
            witnesses[_bits_str(bits)] = w
    return CapKernel(target, frozenset(elems)), witnesses


def thm17_count(F: Field, sfu: SFUClass) -> int:
    """[K:k] [E_k : N(E_K)] for the quadratic extension K = sfu.tower."""
    if sfu.tower not in ("K1", "K2", "K3"):
        raise ValueError("thm17_count applies to K1, K2, K3")
    return 2 * norm_index(F, sfu)
