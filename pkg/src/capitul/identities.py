"""Exact checks of the explicit radical identities built from Pell units over Z[i].

Tags:
  split_p1, split_p2  sqrt(2 c pi eps_p) as y1 A pi + y2 B sqrt(p)
  split_2q            same for eps(2 p2) against tau = (1+i) pi3, needs norm -1
  split_d             same for eps(2 p1 p2) against (1+i) pi1 pi3 or (1+i) pi1 pi4
  sqrt_eps_pp         sqrt(2 eps(p1 p2)) from sqrt(u tau) and its conjugate, squared form
  sqrt_eps_d          the same for eps(2 p1 p2), trying both radicand assignments
  sqrt_2eps2          (sqrt(1+i) + sqrt(1-i))**2 = 2 eps2
  k3_witness          sqrt((1+i) eps2) = (2 + (1+i) sqrt2) / 2 inside K3

Identities whose individual radicals leave L (square roots of Gaussian
integers) are checked in expanded squared form inside L.
"""
from __future__ import annotations

from dataclasses import dataclass

from .gaussian import GaussInt, PellSplit, split_norm_minus_one, split_prime
from .multiquad import Field, FieldElem, is_square
from .pell import fund_unit

__all__ = ["IDENTITY_TAGS", "IdentityResult", "verify_all", "verify_radical_identity"]

IDENTITY_TAGS = ("split_p1", "split_p2", "split_2q", "split_d", "sqrt_eps_pp", "sqrt_eps_d", "sqrt_2eps2", "k3_witness")

ONE_PLUS_I = GaussInt(1, 1)
ONE_MINUS_I = GaussInt(1, -1)


@dataclass(frozen=True)
class IdentityResult:
    tag: str
    status: str  # "pass", "fail" or "skipped"
    detail: str

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def _linear_forms(F: Field, split: PellSplit) -> tuple[FieldElem, FieldElem, int]:
    """R1 = y1 A tau + y2 B sqrt d and R2 = y1 A sqrt d + y2 B conj(tau).

    A = 1+i, B = 1-i for the i-twisted variant (scale c = 2), else A = B = 1 (c = 1).
    Then R1**2 = 2c tau delta eps, R2**2 = 2c conj(tau) delta eps, R1 R2 = 2c delta sqrt(d) eps.
    """
    A, B, c = (ONE_PLUS_I, ONE_MINUS_I, 2) if split.twist else (GaussInt(1), GaussInt(1), 1)
    rd = F.sqrt(split.d)
    r1 = F.gauss(split.y1 * A * split.tau) + F.gauss(split.y2 * B) * rd
    r2 = F.gauss(split.y1 * A) * rd + F.gauss(split.y2 * B * split.tau.conj())
    return r1, r2, c


def _check_linear(F: Field, tag: str, split: PellSplit, tau_name: str) -> IdentityResult:
    eps = F.quad(split.x, split.y, split.d) / split.delta
    r1, r2, c = _linear_forms(F, split)
    de = eps * split.delta
    tau = F.gauss(split.tau)
    checks = (
        r1 * r1 == 2 * c * tau * de,
        r2 * r2 == 2 * c * F.gauss(split.tau.conj()) * de,
        r1 * r2 == 2 * c * F.sqrt(split.d) * de,
    )
    detail = (
        f"tau={tau_name}={split.tau} y1={split.y1} variant={split.variant} "
        f"(y1 A tau + y2 B sqrt{split.d})^2 = {2 * c * split.delta} tau eps"
    )
    return IdentityResult(tag, "pass" if all(checks) else "fail", detail)


def _check_squared(F: Field, tag: str, split: PellSplit, tau_name: str) -> IdentityResult:
    """(y1 sqrt(u tau) + y2 sqrt(conj(u tau)))**2 = 2 delta eps, expanded inside L."""
    u = split.unit
    z = u * split.y1 * split.y1 * split.tau
    lhs = F.gauss(z) + F.gauss(z.conj()) + 2 * split.y * F.sqrt(split.d)
    eps = F.quad(split.x, split.y, split.d) / split.delta
    ok = lhs == 2 * split.delta * eps
    root = "sqrt(2 eps)" if split.delta == 1 else "2 sqrt(eps)"
    detail = f"tau={tau_name}={split.tau} b1={split.y1} variant={split.variant}: {root} squared form"
    return IdentityResult(tag, "pass" if ok else "fail", detail)


def _split_first(eps, taus: list[tuple[str, GaussInt]]):
    split = split_norm_minus_one(eps.x, eps.y, eps.denom, eps.d, [t for _, t in taus])
    if split is None:
        return None, None
    name = next(n for n, t in taus if t == split.tau)
    return split, name


def verify_radical_identity(tag: str, F: Field) -> IdentityResult:
    p1, p2 = F.p1, F.p2
    g1, g2 = split_prime(p1), split_prime(p2)
    pi1, pi3, pi4 = g1.pi, g2.pi, g2.pi_bar

    if tag in ("split_p1", "split_p2"):
        g = g1 if tag == "split_p1" else g2
        eps = fund_unit(g.p)
        split, name = _split_first(eps, [("pi", g.pi)])
        if split is None:
            return IdentityResult(tag, "fail", "decomposition failed")
        return _check_linear(F, tag, split, name)

    if tag == "split_2q":
        eps = fund_unit(2 * p2)
        if eps.norm != -1:
            return IdentityResult(tag, "skipped", f"hypothesis not met: N(eps{2 * p2}) = +1")
        split, name = _split_first(eps, [("(1+i)pi3", ONE_PLUS_I * pi3)])
        if split is None:
            return IdentityResult(tag, "fail", "decomposition failed")
        return _check_linear(F, tag, split, name)

    if tag in ("split_d", "sqrt_eps_d"):
        eps = fund_unit(F.d)
        if eps.norm != -1:
            return IdentityResult(tag, "skipped", f"hypothesis not met: N(eps{F.d}) = +1")
        taus = [("(1+i)pi1pi3", ONE_PLUS_I * pi1 * pi3), ("(1+i)pi1pi4", ONE_PLUS_I * pi1 * pi4)]
        split, name = _split_first(eps, taus)
        if split is None:
            return IdentityResult(tag, "fail", "no radicand assignment fits")
        check = _check_linear if tag == "split_d" else _check_squared
        return check(F, tag, split, name)

    if tag == "sqrt_eps_pp":
        eps = fund_unit(p1 * p2)
        if eps.norm != -1:
            return IdentityResult(tag, "skipped", f"hypothesis not met: N(eps{p1 * p2}) = +1")
        split, name = _split_first(eps, [("pi1pi3", pi1 * pi3), ("pi1pi4", pi1 * pi4)])
        if split is None:
            return IdentityResult(tag, "fail", "no radicand assignment fits")
        return _check_squared(F, tag, split, name)

    if tag == "sqrt_2eps2":
        # (sqrt(1+i) + sqrt(1-i))^2 = (1+i) + (1-i) + 2 sqrt(2)
        lhs = F.gauss(ONE_PLUS_I) + F.gauss(ONE_MINUS_I) + 2 * F.sqrt(2)
        ok = lhs == 2 * F.unit(fund_unit(2))
        return IdentityResult(tag, "pass" if ok else "fail", "(sqrt(1+i)+sqrt(1-i))^2 = 2 + 2 sqrt2 = 2 eps2")

    if tag == "k3_witness":
        w = (2 + F.gauss(ONE_PLUS_I) * F.sqrt(2)) / 2
        target = F.gauss(ONE_PLUS_I) * F.unit(fund_unit(2))
        root = is_square(target, F.subfield("K3"))
        ok = w * w == target and root is not None and root in (w, -w)
        return IdentityResult(tag, "pass" if ok else "fail", f"sqrt((1+i) eps2) = {w}")

    raise ValueError(f"unknown identity tag {tag!r}")


def verify_all(F: Field) -> list[IdentityResult]:
    return [verify_radical_identity(tag, F) for tag in IDENTITY_TAGS]
