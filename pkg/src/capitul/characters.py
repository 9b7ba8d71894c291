"""Quadratic residue characters of a subfield at primes splitting completely in it.

A square in the subfield has trivial character at every prime where it is a
local unit, so a nontrivial character value is a proof of non-squareness. The
principality search uses these bit vectors to discard unit candidates before
running the exact square-root descent.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import _kernels
from .arith import is_prime, jacobi, sqrt_mod
from .multiquad import Field, FieldElem, Subfield

__all__ = ["CharacterTable", "character_table"]


class CharacterTable:
    """Characters of ``sf`` at ``count`` primes q that split completely in it."""

    def __init__(self, field: Field, sf: Subfield, count: int = 40) -> None:
        self.field, self.sf = field, sf
        bad = 2 * field.p1 * field.p2
        primes: list[int] = []
        images: list[dict[int, int]] = []
        q = 3
        while len(primes) < count and sf.basis:
            q += 2
            if bad % q == 0 or not is_prime(q):
                continue
            squares = [field.sqfac[g] for g in sf.basis]
            if any(jacobi(r, q) != 1 for r in squares):
                continue
            roots = [sqrt_mod(r, q) for r in squares]
            primes.append(q)
            images.append(self._monomial_images(q, roots))
        self.primes = primes
        self._images = images
        self._np_primes = np.array(primes, dtype=np.int64)

    def _monomial_images(self, q: int, roots: list[int]) -> dict[int, int]:
        """Images in F_q of every monomial of the subfield under one fixed embedding."""
        F, basis = self.field, self.sf.basis
        out = {}
        for m in self.sf.mask:
            prod, val = F.one, 1
            for j, g in enumerate(basis):
                if self._coordinate(m, j):
                    prod = prod.mul_monomial(g)
                    val = val * roots[j] % q
            # prod = scale * monomial(m)
            scale = prod.coeff(m)
            out[m] = val * pow(scale.numerator, -1, q) * scale.denominator % q
        return out

    @lru_cache(maxsize=None)
    def _coords(self) -> dict[int, tuple[int, ...]]:
        basis = self.sf.basis
        out: dict[int, tuple[int, ...]] = {0: (0,) * len(basis)}
        frontier = [0]
        while frontier:
            m = frontier.pop()
            for j, g in enumerate(basis):
                n = m ^ g
                if n not in out:
                    v = list(out[m])
                    v[j] ^= 1
                    out[n] = tuple(v)
                    frontier.append(n)
        return out

    def _coordinate(self, m: int, j: int) -> int:
        return self._coords()[m][j]

    def residues(self, xs: list[FieldElem]) -> tuple[np.ndarray, np.ndarray]:
        """Residue matrix (len(xs), nprimes) and a mask of entries that are defined."""
        res = np.zeros((len(xs), len(self.primes)), dtype=np.int64)
        ok = np.ones_like(res, dtype=bool)
        for r, x in enumerate(xs):
            if not x.lies_in(self.sf):
                raise ValueError(f"{x} does not lie in {self.sf.name}")
            for j, (q, img) in enumerate(zip(self.primes, self._images)):
                if x.den % q == 0:
                    ok[r, j] = False
                    continue
                v = sum(c * img[m] for m, c in x.c.items()) % q
                res[r, j] = v * pow(x.den, -1, q) % q
        return res, ok

    def bits(self, xs: list[FieldElem]) -> list[tuple[int, int]]:
        """For each x: (bitmask of primes where the character is -1, bitmask of defined primes)."""
        if not xs:
            return []
        res, ok = self.residues(xs)
        leg = _kernels.legendre_matrix(res, self._np_primes)
        ok &= leg != 0
        out = []
        weights = [1 << j for j in range(len(self.primes))]
        for r in range(len(xs)):
            neg = sum(w for w, v, d in zip(weights, leg[r], ok[r]) if d and v == -1)
            known = sum(w for w, d in zip(weights, ok[r]) if d)
            out.append((neg, known))
        return out


_tables: dict[tuple[int, int, str, int], CharacterTable] = {}


def character_table(field: Field, sf: Subfield, count: int = 40) -> CharacterTable:
    key = (field.p1, field.p2, sf.name, count)
    if key not in _tables:
        _tables[key] = CharacterTable(field, sf, count)
    return _tables[key]
