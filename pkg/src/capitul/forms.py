"""Binary quadratic forms: class numbers, composition, and the Kuroda check."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from . import _kernels
from .arith import factorize, v2
from .pell import fund_unit

__all__ = [
    "KurodaReport",
    "QuadForm",
    "class_group_imag",
    "class_number_imag",
    "class_number_real",
    "compose",
    "is_fundamental",
    "kuroda_check",
    "principal_form",
    "reduce_definite",
    "two_rank_imag",
]


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def inverse(self) -> QuadForm:
        return QuadForm(self.a, -self.b, self.c)

    def is_reduced(self) -> bool:
        if self.disc >= 0:
            raise ValueError("is_reduced: only implemented for definite forms")
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 or (a != c and abs(b) != a)


def is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return all(e == 1 for e in factorize(abs(D)).values())
    if D % 4 == 0:
        m = D // 4
        if m % 4 not in (2, 3):
            return False
        return all(e == 1 for e in factorize(abs(m)).values())
    return False


def _require_fundamental(D: int) -> None:
    if not is_fundamental(D):
        raise ValueError(f"{D} is not a fundamental discriminant")


def principal_form(D: int) -> QuadForm:
    if D % 4 == 0:
        return QuadForm(1, 0, -D // 4)
    return QuadForm(1, 1, (1 - D) // 4)


def reduce_definite(f: QuadForm) -> QuadForm:
    a, b, c = f.a, f.b, f.c
    if a <= 0:
        raise ValueError("reduce_definite: positive definite forms only")
    while True:
        if b > a or b <= -a:
            # translate b into (-a, a]
            k = (a - b) // (2 * a)
            c = a * k * k + b * k + c
            b = b + 2 * a * k
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Dirichlet composition of primitive forms of the same discriminant (unreduced)."""
    D = f.disc
    if g.disc != D:
        raise ValueError("compose: discriminants differ")
    a1, b1 = f.a, f.b
    a2, b2, c2 = g.a, g.b, g.c
    s = (b1 + b2) // 2
    n = b2 - s
    d, y1, _ = _xgcd(a2, a1)
    d1, x2, y = _xgcd(s, d)
    y2 = -y
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    return QuadForm(a3, b3, (b3 * b3 - D) // (4 * a3))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def class_number_imag(D: int) -> int:
    """h(D) for a negative fundamental discriminant: count of reduced forms."""
    if D >= 0:
        raise ValueError("class_number_imag: D must be negative")
    _require_fundamental(D)
    return _kernels.count_reduced_imag(-D)


def class_group_imag(D: int) -> list[QuadForm]:
    """All reduced forms of discriminant D < 0, sorted."""
    _require_fundamental(D)
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            f = QuadForm(a, b, (b * b - D) // (4 * a))
            if f.is_reduced() and gcd(gcd(f.a, f.b), f.c) == 1:
                out.append(f)
        a += 1
    return sorted(out)


def two_rank_imag(D: int) -> int:
    """2-rank of the form class group: log2 of the number of classes of order <= 2."""
    principal = reduce_definite(principal_form(D))
    count = sum(1 for f in class_group_imag(D) if reduce_definite(compose(f, f)) == principal)
    return count.bit_length() - 1


def class_number_real(D: int) -> int:
    """Wide class number of the real quadratic field of fundamental discriminant D > 0."""
    if D <= 0:
        raise ValueError("class_number_real: D must be positive")
    _require_fundamental(D)
    narrow = _kernels.count_form_cycles(D)
    d = D if D % 4 == 1 else D // 4
    if fund_unit(d).norm == -1:
        return narrow
    return narrow // 2


@dataclass(frozen=True)
class KurodaReport:
    applicable: bool
    passed: bool
    h_real: int = 0
    h_imag: int = 0
    v2_sum: int = 0
    reason: str = ""


def kuroda_check(p1: int, p2: int) -> KurodaReport:
    """2-part of h(Q(sqrt(d), i)) = h(d) h(-d) / 2 equals 8, for d = 2 p1 p2."""
    from .capitulation import eligibility

    verdict = eligibility(p1, p2)
    if not verdict.eligible:
        return KurodaReport(False, False, reason=f"not applicable: {verdict.reason}")
    d = 2 * p1 * p2
    if fund_unit(d).norm != -1:
        return KurodaReport(False, False, reason="unit index of k is not 1")
    h_real, h_imag = class_number_real(4 * d), class_number_imag(-4 * d)
    total = v2(h_real) + v2(h_imag)
    return KurodaReport(True, total == 4, h_real, h_imag, total)
