"""The free metabelian group in Magnus coordinates, and its finite quotients.

An element is stored as (v, c): v the abelianized exponent vector and c the
row of Fox coordinates, subject to the defining constraint x^v − 1 = Σ c_i σ_i.
Multiplication is the 2×2 upper-triangular matrix product written out on the
coordinates: (v_a, c_a)·(v_b, c_b) = (v_a + v_b, c_a + x^{v_a}·c_b).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .ring import ExponentVector, LaurentPoly, ModGroupRingElem, RingError


class MagnusError(Exception):
    pass


@dataclass(frozen=True)
class MagnusElement:
    n: int
    v: ExponentVector
    c: Tuple[LaurentPoly, ...]

    def __post_init__(self):
        if len(self.v) != self.n or len(self.c) != self.n:
            raise MagnusError("coordinate length mismatch")

    def constraint_holds(self) -> bool:
        lhs = LaurentPoly.monomial(self.n, self.v) - 1
        rhs = LaurentPoly.zero(self.n)
        for i, ci in enumerate(self.c, start=1):
            rhs = rhs + ci * LaurentPoly.sigma(i, self.n)
        return lhs == rhs

    @staticmethod
    def identity(n: int) -> "MagnusElement":
        zero = LaurentPoly.zero(n)
        return MagnusElement(n, (0,) * n, (zero,) * n)

    def __mul__(self, other: "MagnusElement") -> "MagnusElement":
        if self.n != other.n:
            raise MagnusError("rank mismatch")
        g = LaurentPoly.monomial(self.n, self.v)
        v = tuple(a + b for a, b in zip(self.v, other.v))
        c = tuple(a + g * b for a, b in zip(self.c, other.c))
        return MagnusElement(self.n, v, c)

    def inv(self) -> "MagnusElement":
        v = tuple(-a for a in self.v)
        ginv = LaurentPoly.monomial(self.n, v)
        c = tuple(-(ginv * ci) for ci in self.c)
        return MagnusElement(self.n, v, c)

    def __str__(self) -> str:
        coords = ", ".join(str(ci) for ci in self.c)
        return f"(v={self.v}; c=[{coords}])"


def mg_generator(i: int, n: int) -> MagnusElement:
    if not 1 <= i <= n:
        raise MagnusError(f"generator index {i} out of range 1..{n}")
    v = tuple(1 if k == i - 1 else 0 for k in range(n))
    c = tuple(LaurentPoly.one(n) if k == i - 1 else LaurentPoly.zero(n) for k in range(n))
    return MagnusElement(n, v, c)


def mg_mul(a: MagnusElement, b: MagnusElement) -> MagnusElement:
    return a * b


def mg_inv(a: MagnusElement) -> MagnusElement:
    return a.inv()


# A group word is a sequence of (generator index, ±1) letters.
GroupWord = Sequence[Tuple[int, int]]


def word_parse(text: str) -> List[Tuple[int, int]]:
    """Parse the CLI word grammar: 'g1 g2^-1 g1'."""
    letters = []
    for tok in text.split():
        exp = 1
        if "^" in tok:
            tok, etxt = tok.split("^", 1)
            exp = int(etxt)
        if not tok.startswith("g"):
            raise MagnusError(f"bad generator token {tok!r}")
        i = int(tok[1:])
        if exp == 0:
            continue
        step = 1 if exp > 0 else -1
        letters.extend([(i, step)] * abs(exp))
    return letters


def mg_eval(w: GroupWord, n: int) -> MagnusElement:
    out = MagnusElement.identity(n)
    for i, e in w:
        g = mg_generator(i, n)
        out = out * (g if e == 1 else g.inv())
    return out


# -- finite quotients Psi_m --------------------------------------------------


@dataclass(frozen=True)
class PsiElement:
    n: int
    m: int
    v: ExponentVector  # entries in [0, m)
    c: Tuple[ModGroupRingElem, ...]

    def constraint_holds(self) -> bool:
        n, m = self.n, self.m
        lhs = ModGroupRingElem.from_dict(n, m, {tuple(self.v): 1}) - ModGroupRingElem.one(n, m)
        rhs = ModGroupRingElem.zero(n, m)
        for i, ci in enumerate(self.c, start=1):
            sig = ModGroupRingElem.var(i, n, m) - ModGroupRingElem.one(n, m)
            rhs = rhs + ci * sig
        return lhs == rhs

    @staticmethod
    def identity(n: int, m: int) -> "PsiElement":
        zero = ModGroupRingElem.zero(n, m)
        return PsiElement(n, m, (0,) * n, (zero,) * n)

    def __mul__(self, other: "PsiElement") -> "PsiElement":
        if (self.n, self.m) != (other.n, other.m):
            raise MagnusError("quotient mismatch")
        n, m = self.n, self.m
        g = ModGroupRingElem.from_dict(n, m, {tuple(self.v): 1})
        v = tuple((a + b) % m for a, b in zip(self.v, other.v))
        c = tuple(a + g * b for a, b in zip(self.c, other.c))
        return PsiElement(n, m, v, c)


def mg_project_psi(a: MagnusElement, m: int) -> PsiElement:
    if m < 2:
        raise MagnusError("modulus must be >= 2")
    v = tuple(x % m for x in a.v)
    c = tuple(ci.reduce_mod_hm(m) for ci in a.c)
    return PsiElement(a.n, m, v, c)


def psi_enumerate(n: int, m: int, ceiling: int = 4096):
    """All constraint-satisfying pairs (v, c) — brute force, desk scale only.

    Raises MagnusError when the enumeration would exceed the ceiling.
    """
    ring_size = m ** (m ** n)
    total = (m ** n) * (ring_size ** n)
    if total > ceiling:
        raise MagnusError(
            f"size ceiling exceeded: {total} candidate pairs > ceiling {ceiling}")
    exps = list(itertools.product(range(m), repeat=n))
    ring_elems = []
    for coeffs in itertools.product(range(m), repeat=len(exps)):
        ring_elems.append(ModGroupRingElem.from_dict(
            n, m, {e: c for e, c in zip(exps, coeffs)}))
    out = []
    for v in itertools.product(range(m), repeat=n):
        for c in itertools.product(ring_elems, repeat=n):
            cand = PsiElement(n, m, v, tuple(c))
            if cand.constraint_holds():
                out.append(cand)
    return out
