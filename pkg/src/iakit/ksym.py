"""Steinberg words and symbols, their matrix evaluations and lifts.

The Steinberg group St_d(R) is represented here purely by words in the
generators x_{i,j}(r): there is no word-problem machinery, because every
use downstream evaluates a word through the homomorphism

    phi_d : x_{i,j}(r) |-> I_d + r*E_{i,j}

either over a finite coefficient ring, or lifted entry-by-entry back to an
exact ring to land in a relative SL_d.  The module also provides the
commutator identities showing D_m = {I + (x^{km}-1)E_{1,1}} normalizes the
relative elementary subgroup, the determinant splitting GL_d(S,J_m) =
D_m*SL_d(S,J_m), and the truncated counting ring Z[y]/(p^2, y^{p^l}).
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .ring import IdealRef, LaurentPoly, ModGroupRingElem, RingError, ideal_member
from .ia import PolyMatrix


class KsymError(Exception):
    pass


# ---------------------------------------------------------------------------
# coefficient ring adapters
#
# Words carry abstract ring elements; these small adapter objects supply the
# handful of operations evaluation needs.  Inverses in the finite rings are
# found by walking the power cycle of the element: if u^k = 1 then
# u^{-1} = u^{k-1}, and if the powers repeat without reaching 1 the element
# is not a unit.


class ZmodRing:
    """Z/mZ with elements represented as ints in range(m)."""

    def __init__(self, m: int):
        if m < 2:
            raise KsymError("modulus must be at least 2")
        self.m = m
        self.zero = 0
        self.one = 1

    def from_int(self, k: int):
        return k % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def eq(self, a, b) -> bool:
        return a % self.m == b % self.m

    def inv(self, a):
        return _cycle_inverse(self, a)

    def __repr__(self):
        return f"ZmodRing({self.m})"


class ZRing:
    """The integers; only +-1 are units."""

    def __init__(self):
        self.zero = 0
        self.one = 1

    def from_int(self, k: int):
        return k

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b) -> bool:
        return a == b

    def inv(self, a):
        if a in (1, -1):
            return a
        raise KsymError(f"{a} is not a unit of Z")


class LaurentSRing:
    """Z[x_1^+-1, ..., x_nvars^+-1] as a coefficient ring for words."""

    def __init__(self, nvars: int = 1):
        self.nvars = nvars
        self.zero = LaurentPoly.zero(nvars)
        self.one = LaurentPoly.one(nvars)

    def from_int(self, k: int):
        return LaurentPoly.const(self.nvars, k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b) -> bool:
        return a == b

    def inv(self, a: LaurentPoly) -> LaurentPoly:
        u = a.unit_check()
        if u is None:
            raise KsymError("not a unit of the Laurent ring")
        sign, exps = u
        return LaurentPoly.from_dict(
            self.nvars, {tuple(-e for e in exps): sign})


class GroupRingZmZmn:
    """The finite group ring Z_m[Z_m^n]."""

    def __init__(self, m: int, n: int):
        self.m = m
        self.n = n
        self.zero = ModGroupRingElem.zero(n, m)
        self.one = ModGroupRingElem.one(n, m)

    def from_int(self, k: int):
        return ModGroupRingElem.const(self.n, self.m, k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b) -> bool:
        return a == b

    def inv(self, a):
        return _cycle_inverse(self, a)


def _cycle_inverse(ring, a):
    """Inverse of a unit in a finite ring by walking its power cycle."""
    if ring.eq(a, ring.one):
        return a
    if ring.eq(a, ring.zero):
        raise KsymError("zero is not a unit")
    seen = [a]
    power = a
    while True:
        power = ring.mul(power, a)
        if ring.eq(power, ring.one):
            return seen[-1]
        for s in seen:
            if ring.eq(power, s):
                raise KsymError("not a unit (power cycle misses 1)")
        seen.append(power)


# ---------------------------------------------------------------------------
# Steinberg words


@dataclass(frozen=True)
class StToken:
    i: int
    j: int
    r: object
    inverse: bool = False


@dataclass(frozen=True)
class SteinbergWord:
    tokens: Tuple[StToken, ...]

    def __post_init__(self):
        for t in self.tokens:
            if t.i == t.j or t.i < 1 or t.j < 1:
                raise KsymError(f"bad generator indices ({t.i},{t.j})")

    def __mul__(self, other: "SteinbergWord") -> "SteinbergWord":
        return SteinbergWord(self.tokens + other.tokens)

    def inverse(self) -> "SteinbergWord":
        return SteinbergWord(tuple(
            StToken(t.i, t.j, t.r, not t.inverse)
            for t in reversed(self.tokens)))

    def __len__(self):
        return len(self.tokens)


def st_gen(i: int, j: int, r) -> SteinbergWord:
    return SteinbergWord((StToken(i, j, r),))


def _w_word(u, i, j, ring) -> SteinbergWord:
    # w_{i,j}(u) = x_{i,j}(u) x_{j,i}(-u^{-1}) x_{i,j}(u)
    uinv = ring.inv(u)
    return SteinbergWord((
        StToken(i, j, u),
        StToken(j, i, ring.neg(uinv)),
        StToken(i, j, u),
    ))


def _h_word(u, i, j, ring) -> SteinbergWord:
    # h_{i,j}(u) = w_{i,j}(u) w_{i,j}(-1)
    return _w_word(u, i, j, ring) * _w_word(ring.neg(ring.one), i, j, ring)


def st_symbol_word(u, v, i: int = 1, j: int = 2, ring=None) -> SteinbergWord:
    """The Steinberg symbol {u,v}_{i,j} = h(uv) h(u)^-1 h(v)^-1 as a word.

    u and v must be units of the coefficient ring; the word has 18 tokens
    (each h is a product of two three-token w's).
    """
    if ring is None:
        raise KsymError("a coefficient ring adapter is required")
    huv = _h_word(ring.mul(u, v), i, j, ring)
    hu = _h_word(u, i, j, ring)
    hv = _h_word(v, i, j, ring)
    return huv * hu.inverse() * hv.inverse()


# ---------------------------------------------------------------------------
# evaluation


def mat_identity(d: int, ring) -> List[List[object]]:
    return [[ring.one if a == b else ring.zero for b in range(d)]
            for a in range(d)]


def mat_mul(A, B, ring):
    d = len(A)
    out = []
    for a in range(d):
        row = []
        for b in range(d):
            acc = ring.zero
            for c in range(d):
                acc = ring.add(acc, ring.mul(A[a][c], B[c][b]))
            row.append(acc)
        out.append(row)
    return out


def mat_eq(A, B, ring) -> bool:
    d = len(A)
    return all(ring.eq(A[a][b], B[a][b]) for a in range(d) for b in range(d))


def st_eval(w: SteinbergWord, d: int, ring) -> List[List[object]]:
    """phi_d image of the word: x_{i,j}(r) |-> I_d + r E_{i,j}.

    Inverse tokens contribute I_d - r E_{i,j} (the exact inverse of a single
    elementary matrix).
    """
    out = mat_identity(d, ring)
    for t in w.tokens:
        if t.i > d or t.j > d:
            raise KsymError(f"token index out of range for d={d}")
        factor = mat_identity(d, ring)
        factor[t.i - 1][t.j - 1] = ring.neg(t.r) if t.inverse else t.r
        out = mat_mul(out, factor, ring)
    return out


def st_lift_eval(w: SteinbergWord, lift: Callable, d: int,
                 ideal: Union[IdealRef, Callable[[LaurentPoly], bool]],
                 nvars: int = 1,
                 reduce: Optional[Callable] = None,
                 check_block: bool = True) -> PolyMatrix:
    """Evaluate a word over a quotient ring through an entrywise lift.

    Each token's coefficient r is replaced by lift(r), an exact Laurent
    polynomial, and the product is computed exactly.  For a symbol word in
    position (1,2) the result must land in SL_d(R,H) and have the block
    shape (A 0; 0 I_{d-2}); both facts are verified and a KsymError is
    raised if either fails.  `ideal` is either an IdealRef or a membership
    predicate for H.
    """
    def lifted(r):
        h = lift(r)
        if not isinstance(h, LaurentPoly):
            h = LaurentPoly.const(nvars, int(h))
        return h

    if reduce is not None:
        for t in w.tokens:
            if not reduce(lifted(t.r)) == t.r:
                raise KsymError("lift inconsistency: lift(r) does not reduce to r")
    out = PolyMatrix.identity(d, nvars)
    for t in w.tokens:
        if t.i > d or t.j > d:
            raise KsymError(f"token index out of range for d={d}")
        h = lifted(t.r)
        if t.inverse:
            h = -h
        out = out * PolyMatrix.elementary(d, t.i, t.j, h)

    if isinstance(ideal, IdealRef):
        member = lambda p: ideal_member(p, ideal)
    else:
        member = ideal
    eye = PolyMatrix.identity(d, nvars)
    det = out.det()
    if det != LaurentPoly.one(nvars):
        raise KsymError("lifted word does not have determinant 1")
    for a in range(d):
        for b in range(d):
            if not member(out.rows[a][b] - eye.rows[a][b]):
                raise KsymError(
                    f"lifted word entry ({a+1},{b+1}) not congruent to I mod H")
    if check_block:
        for a in range(d):
            for b in range(d):
                if (a >= 2 or b >= 2) and out.rows[a][b] != eye.rows[a][b]:
                    raise KsymError(
                        "lifted symbol is not of block form (A 0; 0 I)")
    return out


# ---------------------------------------------------------------------------
# D_m normality identities


def dm_normality_identities(d: int, m: int, k: int, j: int,
                            r: Optional[LaurentPoly] = None) -> bool:
    """Commutator identities of I + (x^{km}-1)E_{1,1} with the generators.

    Worked over Z[x^{+-1}, r^{+-1}] with r a fresh symbolic coefficient
    (variable 2).  Checks, with [a,b] = a b a^{-1} b^{-1}:

        [I + (x^{km}-1)E_{1,1}, I + r E_{1,j}] = I + r (x^{km}-1)  E_{1,j}
        [I + (x^{km}-1)E_{1,1}, I + r E_{j,1}] = I + r (x^{-km}-1) E_{j,1}

    and that elements of the remaining generator shapes -- diagonal units
    at (1,1) and elementaries avoiding row and column 1 -- commute with it.
    The commutator entries are elementary with coefficient divisible by
    x^{km}-1, hence lie in the relative elementary subgroup for J_m.
    """
    if d < 3 or not 2 <= j <= d:
        raise KsymError("need d >= 3 and 2 <= j <= d")
    nv = 2
    x = LaurentPoly.var(1, nv)
    if r is None:
        r = LaurentPoly.var(2, nv)
    xkm = LaurentPoly.var(1, nv, k * m)
    xkm_inv = LaurentPoly.var(1, nv, -k * m)
    one = LaurentPoly.one(nv)
    a = PolyMatrix.elementary(d, 1, 1, xkm - one)
    ainv = PolyMatrix.elementary(d, 1, 1, xkm_inv - one)

    def comm(b, binv):
        return a * b * ainv * binv

    ok = True
    # row-1 generator
    b = PolyMatrix.elementary(d, 1, j, r)
    binv = PolyMatrix.elementary(d, 1, j, -r)
    ok = ok and comm(b, binv) == PolyMatrix.elementary(d, 1, j, r * (xkm - one))
    # column-1 generator, exponent flips sign
    b = PolyMatrix.elementary(d, j, 1, r)
    binv = PolyMatrix.elementary(d, j, 1, -r)
    ok = ok and comm(b, binv) == PolyMatrix.elementary(d, j, 1, r * (xkm_inv - one))
    # the coefficients are in J_m: kill the symbolic r and check the
    # univariate factors
    jm = IdealRef.J(m)
    ok = ok and ideal_member((xkm - one).project(1), jm)
    ok = ok and ideal_member((xkm_inv - one).project(1), jm)
    # commuting generator shapes: unit at (1,1), elementaries off row/col 1
    for p in (x - one, -x - one):  # I + (+-x - 1)E_{1,1}
        b = PolyMatrix.elementary(d, 1, 1, p)
        ok = ok and a * b == b * a
    for (i2, j2) in ((2, 3), (3, 2), (2, d), (d, 2)):
        if i2 == j2 or i2 > d or j2 > d:
            continue
        b = PolyMatrix.elementary(d, i2, j2, r)
        ok = ok and a * b == b * a
    return ok


# ---------------------------------------------------------------------------
# determinant splitting GL_d(S, J_m) = D_m SL_d(S, J_m)


def det_dm_split(A: PolyMatrix, m: int) -> Tuple[int, PolyMatrix]:
    """Split A in GL_d(S,J_m) as (I + (x^{km}-1)E_{1,1}) * SLpart.

    For m > 2 the units congruent to 1 mod J_m are exactly {x^{km}}, so
    det(A) = x^{km} for a unique k; the returned SLpart has determinant 1.
    """
    if m <= 2:
        raise KsymError("det_dm_split requires m > 2")
    if A.nvars != 1:
        raise KsymError("expected a matrix over the univariate Laurent ring")
    jm = IdealRef.J(m)
    eye = PolyMatrix.identity(A.d, 1)
    for a in range(A.d):
        for b in range(A.d):
            if not ideal_member(A.rows[a][b] - eye.rows[a][b], jm):
                raise KsymError("A is not congruent to I mod J_m")
    det = A.det()
    u = det.unit_check()
    if u is None:
        raise KsymError("determinant is not a unit")
    sign, exps = u
    if sign != 1 or exps[0] % m != 0:
        raise KsymError(f"determinant {det} is not of the form x^(k*{m})")
    k = exps[0] // m
    dfac_inv = PolyMatrix.elementary(A.d, 1, 1, LaurentPoly.var(1, 1, -k * m)
                                     - LaurentPoly.one(1))
    slpart = dfac_inv * A
    if slpart.det() != LaurentPoly.one(1):
        raise KsymError("internal error: SL part does not have determinant 1")
    return k, slpart


# ---------------------------------------------------------------------------
# the counting ring Z[y]/(p^2, y^{p^l})


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


class SBarRing:
    """Z[y]/(p^2, y^{p^l}), elements as dense coefficient vectors.

    An element is a tuple of p^l integers mod p^2, the coefficient of y^t
    at index t.  Also usable as a coefficient ring adapter for Steinberg
    words (one/zero/add/mul/neg/eq/inv).
    """

    CEILING = 64

    def __init__(self, p: int, l: int):
        if not _is_prime(p):
            raise KsymError(f"{p} is not prime")
        if l < 1:
            raise KsymError("l must be positive")
        self.p = p
        self.l = l
        self.deg = p ** l
        if self.deg > self.CEILING:
            raise KsymError(f"p^l = {self.deg} exceeds ceiling {self.CEILING}")
        self.mod = p * p
        self.zero = (0,) * self.deg
        self.one = self.from_coeffs([1])
        self.y = self.from_coeffs([0, 1])

    def from_coeffs(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        if len(coeffs) > self.deg:
            raise KsymError("too many coefficients")
        out = [0] * self.deg
        for t, c in enumerate(coeffs):
            out[t] = c % self.mod
        return tuple(out)

    def from_int(self, k: int):
        return self.from_coeffs([k])

    def add(self, a, b):
        return tuple((x + y) % self.mod for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.mod for x in a)

    def mul(self, a, b):
        out = [0] * self.deg
        for s, c1 in enumerate(a):
            if not c1:
                continue
            for t, c2 in enumerate(b):
                if s + t >= self.deg:  # y^{p^l} = 0
                    break
                out[s + t] = (out[s + t] + c1 * c2) % self.mod
        return tuple(out)

    def eq(self, a, b) -> bool:
        return a == b

    def pow(self, a, k: int):
        out = self.one
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def inv(self, a):
        return _cycle_inverse(self, a)

    def verify_unit_identity(self) -> bool:
        """(y+1)^{p^{l+1}} = 1, so y+1 generates a cyclic unit group."""
        yp1 = self.add(self.y, self.one)
        return self.eq(self.pow(yp1, self.p ** (self.l + 1)), self.one)

    def s_to_sbar(self, f: LaurentPoly):
        """Ring homomorphism Z[x^{+-1}] -> this ring sending x to y+1."""
        if f.nvars != 1:
            raise KsymError("expected a univariate Laurent polynomial")
        yp1 = self.add(self.y, self.one)
        # y+1 is a unit of order dividing p^{l+1}
        yp1_inv = self.pow(yp1, self.p ** (self.l + 1) - 1)
        out = self.zero
        for exps, coeff in f.terms:
            e = exps[0]
            mono = self.pow(yp1, e) if e >= 0 else self.pow(yp1_inv, -e)
            out = self.add(out, self.mul(self.from_coeffs([coeff]), mono))
        return out


def sbar_ops(p: int, l: int) -> SBarRing:
    return SBarRing(p, l)
