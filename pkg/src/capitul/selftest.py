"""Fixed oracle / identity suite behind ``capitul selftest``.

Setting CAPITUL_FAULT_INJECT=pell swaps the fundamental unit for its square
in the Pell check, a negative control that must make the suite fail.
"""
from __future__ import annotations

import os
import random
from collections.abc import Callable
from fractions import Fraction

from ._kernels import minimal_pell_search
from .arith import cornacchia4, is_prime, jacobi, kronecker, squarefree_part
from .forms import class_number_imag, is_fundamental
from .identities import verify_radical_identity
from .multiquad import Field, is_square
from .pell import FundUnit, fund_unit
from .report import run_pair

__all__ = ["CHECKS", "run_selftest"]


def _fault(name: str) -> bool:
    return name in os.environ.get("CAPITUL_FAULT_INJECT", "").split(",")


def _unit_under_test(d: int) -> FundUnit:
    e = fund_unit(d)
    if _fault("pell"):
        x, y, den = e.x, e.y, e.denom
        x, y = (x * x + d * y * y) // den, 2 * x * y // den
        return FundUnit(d, x, y, den, 1)
    return e


def check_jacobi() -> str | None:
    for p in range(3, 400, 2):
        if not is_prime(p):
            continue
        squares = {a * a % p for a in range(1, p)}
        for a in range(p):
            want = 0 if a == 0 else (1 if a in squares else -1)
            if jacobi(a, p) != want:
                return f"jacobi({a}, {p}) = {jacobi(a, p)}, expected {want}"
    return None


def check_pell() -> str | None:
    for d in range(2, 120):
        if squarefree_part(d) != d:
            continue
        e = _unit_under_test(d)
        x, y, rhs = minimal_pell_search(d, 10**6, d % 4 == 1)
        if y == 0:
            continue
        den = 2 if d % 4 == 1 else 1
        if x % 2 == 0 and y % 2 == 0 and den == 2:
            x, y, den = x // 2, y // 2, 1
        got = (e.x * den, e.y * den, e.norm)
        want = (x * e.denom, y * e.denom, 1 if rhs > 0 else -1)
        if got != want:
            return f"d={d}: fund_unit {e} disagrees with search ({x}, {y}, {rhs})"
    return None


def check_sqrt() -> str | None:
    F = Field(5, 13)
    rng = random.Random(20260)
    for _ in range(60):
        r = F.elem({m: Fraction(rng.randint(-9, 9), rng.choice((1, 2))) for m in rng.sample(range(16), 4)})
        if r == F.zero:
            continue
        root = is_square(r * r)
        if root is None or root * root != r * r:
            return f"no root recovered for {r}"
    if is_square(F.sqrt(2) + 1) is not None:
        return "1 + sqrt2 reported square"
    return None


def check_cornacchia() -> str | None:
    for p in range(5, 2000, 4):
        if is_prime(p):
            e, f = cornacchia4(p)
            if e * e + 4 * f * f != p or e % 2 == 0 or f <= 0:
                return f"cornacchia4({p}) = {(e, f)}"
    return None


def check_dirichlet() -> str | None:
    # h(D) = -(1/|D|) sum_{a<|D|} (D/a) a for fundamental D < -4
    for D in range(-7, -400, -1):
        if not is_fundamental(D):
            continue
        s = sum(kronecker(D, a) * a for a in range(1, -D))
        if Fraction(-s, -D) != class_number_imag(D):
            return f"h({D}) = {class_number_imag(D)}, Dirichlet gives {Fraction(-s, -D)}"
    return None


def _identity(tag: str) -> Callable[[], str | None]:
    def run() -> str | None:
        r = verify_radical_identity(tag, Field(5, 13))
        return None if r.status == "pass" else f"{tag}: {r.status} {r.detail}"

    return run


def check_pipeline() -> str | None:
    rep = run_pair(5, 13, checks=("kernels", "order2"))
    if rep.overall != "PASS":
        return f"(5, 13) pipeline: {rep.checks}"
    if rep.kernels["K1"]["computed"] != "010+001":
        return f"(5, 13) ker K1 = {rep.kernels['K1']['computed']}"
    return None


CHECKS: dict[str, Callable[[], str | None]] = {
    "jacobi_bruteforce": check_jacobi,
    "pell_bruteforce": check_pell,
    "sqrt_roundtrip": check_sqrt,
    "cornacchia": check_cornacchia,
    "class_number_dirichlet": check_dirichlet,
    "identity_sqrt_2eps2": _identity("sqrt_2eps2"),
    "identity_k3_witness": _identity("k3_witness"),
    "pipeline_5_13": check_pipeline,
}


def run_selftest(names: list[str] | None = None) -> list[tuple[str, str | None]]:
    """Run the named checks (all by default); each result is (name, failure or None)."""
    out = []
    for name in names or list(CHECKS):
        try:
            msg = CHECKS[name]()
        except Exception as exc:  # a crash is a failure, not an abort
            msg = f"{type(exc).__name__}: {exc}"
        out.append((name, msg))
    return out
