"""IA-automorphism matrices over R_n: validation, generators, ρ_i, IGL maps.

Composition convention (fixed once, tested once): composing automorphisms
α after β corresponds to the matrix product M_β·M_α, so that Fox-coordinate
rows transform by right multiplication, c(α(w)) = c(w)·M_α.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .magnus import MagnusElement
from .ring import (IdealRef, LaurentPoly, NotDivisible, RingError, _add_int,
                   _canon, _decode_packed, _mpz as _ring_mpz, _pack_terms,
                   ideal_member)


class IAError(Exception):
    pass


class NotIA(IAError):
    pass


# -- generic small matrices over LaurentPoly ---------------------------------


@dataclass(frozen=True)
class PolyMatrix:
    """A d×d working matrix over a Laurent polynomial ring (not necessarily IA)."""

    d: int
    nvars: int
    rows: Tuple[Tuple[LaurentPoly, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.d or any(len(r) != self.d for r in self.rows):
            raise IAError("matrix shape mismatch")

    @staticmethod
    def identity(d: int, nvars: int) -> "PolyMatrix":
        one = LaurentPoly.one(nvars)
        zero = LaurentPoly.zero(nvars)
        return PolyMatrix(d, nvars, tuple(
            tuple(one if i == j else zero for j in range(d)) for i in range(d)))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[LaurentPoly]]) -> "PolyMatrix":
        d = len(rows)
        nv = rows[0][0].nvars
        return PolyMatrix(d, nv, tuple(tuple(r) for r in rows))

    @staticmethod
    def elementary(d: int, i: int, j: int, h: LaurentPoly) -> "PolyMatrix":
        """I_d + h·E_{i,j} (1-based indices; i == j allowed for I + hE_{ii})."""
        out = [[LaurentPoly.one(h.nvars) if a == b else LaurentPoly.zero(h.nvars)
                for b in range(d)] for a in range(d)]
        out[i - 1][j - 1] = out[i - 1][j - 1] + h
        return PolyMatrix.from_rows(out)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.rows[i - 1][j - 1]

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.d != other.d or self.nvars != other.nvars:
            raise IAError("matrix dimension/ring mismatch")
        cols = list(zip(*other.rows))
        rows = []
        for i in range(self.d):
            row = []
            for j in range(self.d):
                # accumulate all term products of the row/column pairing in
                # one dict, skipping zero entries, and canonicalize once
                data = {}
                get = data.get
                for a, b in zip(self.rows[i], cols[j]):
                    t1, t2 = a.terms, b.terms
                    if not (t1 and t2):
                        continue
                    if len(t1) > len(t2):
                        t1, t2 = t2, t1
                    for e1, c1 in t1:
                        for e2, c2 in t2:
                            e = tuple(map(_add_int, e1, e2))
                            data[e] = get(e, 0) + c1 * c2
                row.append(LaurentPoly(self.nvars, _canon(self.nvars, data)))
            rows.append(tuple(row))
        return PolyMatrix(self.d, self.nvars, tuple(rows))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.d != other.d or self.nvars != other.nvars:
            raise IAError("matrix dimension/ring mismatch")
        return PolyMatrix(self.d, self.nvars, tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.rows, other.rows)))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.d != other.d or self.nvars != other.nvars:
            raise IAError("matrix dimension/ring mismatch")
        return PolyMatrix(self.d, self.nvars, tuple(
            tuple(a - b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.rows, other.rows)))

    def det(self) -> LaurentPoly:
        return _det(self.rows, self.nvars)

    def inv(self) -> "PolyMatrix":
        """Exact inverse via the adjugate; the determinant must be a unit."""
        dt = self.det()
        u = dt.unit_check()
        if u is None:
            raise IAError(f"determinant {dt} is not a unit")
        sign, exps = u
        dt_inv = LaurentPoly.monomial(self.nvars, tuple(-e for e in exps), sign)
        d = self.d
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                minor = [[self.rows[a][b] for b in range(d) if b != i]
                         for a in range(d) if a != j]
                cof = _det(minor, self.nvars)
                if (i + j) % 2:
                    cof = -cof
                row.append(cof * dt_inv)
            rows.append(tuple(row))
        return PolyMatrix(d, self.nvars, tuple(rows))

    def __pow__(self, k: int) -> "PolyMatrix":
        if k < 0:
            return self.inv() ** (-k)
        out = PolyMatrix.identity(self.d, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.d, self.nvars, tuple(
            tuple(self.rows[j][i] for j in range(self.d)) for i in range(self.d)))

    def conjugate_perm(self, perm: Sequence[int]) -> "PolyMatrix":
        """P·M·P⁻¹ for the permutation sending row/col k to perm[k] (1-based)."""
        p = [x - 1 for x in perm]
        rows = [[None] * self.d for _ in range(self.d)]
        for i in range(self.d):
            for j in range(self.d):
                rows[p[i]][p[j]] = self.rows[i][j]
        return PolyMatrix(self.d, self.nvars, tuple(tuple(r) for r in rows))

    def subs(self, mapping, nvars_out: Optional[int] = None) -> "PolyMatrix":
        nv = self.nvars if nvars_out is None else nvars_out
        return PolyMatrix(self.d, nv, tuple(
            tuple(e.subs(mapping, nv) for e in r) for r in self.rows))

    def extend(self, nvars_out: int) -> "PolyMatrix":
        return PolyMatrix(self.d, nvars_out, tuple(
            tuple(e.extend(nvars_out) for e in r) for r in self.rows))

    def project(self, nvars_out: int) -> "PolyMatrix":
        return PolyMatrix(self.d, nvars_out, tuple(
            tuple(e.project(nvars_out) for e in r) for r in self.rows))

    def is_identity(self) -> bool:
        return self == PolyMatrix.identity(self.d, self.nvars)

    def __str__(self) -> str:
        return "; ".join(", ".join(str(e) for e in r) for r in self.rows)


SmallMatrix = PolyMatrix


def _det_cofactor(rows, nvars: int) -> LaurentPoly:
    d = len(rows)
    if d == 1:
        return rows[0][0]
    if d == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = LaurentPoly.zero(nvars)
    for j in range(d):
        if not rows[0][j].terms:
            continue
        minor = [[rows[a][b] for b in range(d) if b != j] for a in range(1, d)]
        term = rows[0][j] * _det_cofactor(minor, nvars)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


# Kronecker-packed determinant.  Every entry is encoded as one big integer,
# one base-2^K digit per exponent-box slot, so polynomial products become
# integer products (see ring._packed_mul).  For 4x4 matrices the work is
# staged: the twelve 2x2 minors are computed over the small two-fold box,
# decoded, re-packed over the four-fold box with a slot width derived from
# their actual L1 norms, and the Laplace expansion along the first two rows
# is accumulated packed, with a single decode at the end.  Each stage's slot
# width is certified by L1-norm bounds, so the computation is exact.
def _minor2_packed(rows, lo, box2, nvars):
    """All 2x2 minors of a 2x4 entry block, as shifted sparse term dicts."""
    strides = []
    slots = 1
    for v in range(nvars):
        strides.append(slots)
        slots *= box2[v]
    l1 = [[sum(abs(c) for _, c in e.terms) for e in row] for row in rows]
    bound = 0
    for c1 in range(4):
        for c2 in range(4):
            if c1 != c2:
                bound = max(bound, l1[0][c1] * l1[1][c2]
                            + l1[0][c2] * l1[1][c1])
    K = max(bound.bit_length() + 2, 8)
    K += (-K) % 8
    nbytes = K // 8
    packed = [[_pack_terms(e.terms, lo, strides, nvars, nbytes)
               if e.terms else _ring_mpz(0) for e in row] for row in rows]
    zero_shift = [0] * nvars
    minors = {}
    for c1 in range(4):
        for c2 in range(c1 + 1, 4):
            m = packed[0][c1] * packed[1][c2] - packed[0][c2] * packed[1][c1]
            minors[(c1, c2)] = _decode_packed(m, strides, nvars, nbytes,
                                              zero_shift)
    return minors


def _det_packed4(rows, lo, hi, nvars):
    box2 = [2 * (hi[v] - lo[v]) + 1 for v in range(nvars)]
    top = _minor2_packed(rows[0:2], lo, box2, nvars)
    bot = _minor2_packed(rows[2:4], lo, box2, nvars)
    strides = []
    slots = 1
    for v in range(nvars):
        strides.append(slots)
        slots *= 4 * (hi[v] - lo[v]) + 1
    l1t = max(sum(abs(c) for c in m.values()) for m in top.values())
    l1b = max(sum(abs(c) for c in m.values()) for m in bot.values())
    K = max((6 * max(l1t, 1) * max(l1b, 1)).bit_length() + 2, 8)
    K += (-K) % 8
    nbytes = K // 8
    zero = [0] * nvars

    def pack_minor(m):
        if not m:
            return _ring_mpz(0)
        return _pack_terms(tuple(m.items()), zero, strides, nvars, nbytes)

    total = _ring_mpz(0)
    for c1, c2 in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
        t = top[(c1, c2)]
        if not t:
            continue
        c3, c4 = [c for c in range(4) if c not in (c1, c2)]
        term = pack_minor(t) * pack_minor(bot[(min(c3, c4), max(c3, c4))])
        total += term if (c1 + c2) % 2 else -term
    shift = [4 * lo[v] for v in range(nvars)]
    return LaurentPoly.from_dict(
        nvars, _decode_packed(total, strides, nvars, nbytes, shift))


def _det_packed(rows, nvars: int) -> LaurentPoly:
    d = len(rows)
    lo = [0] * nvars
    hi = [0] * nvars
    norm1 = 1
    for row in rows:
        row_norm = 0
        for e in row:
            row_norm += sum(abs(c) for _, c in e.terms)
            for exps, _ in e.terms:
                for v in range(nvars):
                    if exps[v] < lo[v]:
                        lo[v] = exps[v]
                    if exps[v] > hi[v]:
                        hi[v] = exps[v]
        norm1 *= max(row_norm, 1)
    if d == 4:
        return _det_packed4(rows, lo, hi, nvars)
    K = max(norm1.bit_length() + 2, 8)
    K += (-K) % 8
    nbytes = K // 8
    # mixed-radix strides: products of up to d entries have per-variable
    # exponent sums in [k*lo_v, k*hi_v] after the per-entry shift by -lo
    strides = []
    acc_stride = 1
    for v in range(nvars):
        strides.append(acc_stride)
        acc_stride *= d * (hi[v] - lo[v]) + 1
    packed = [[_pack_terms(e.terms, lo, strides, nvars, nbytes)
               if e.terms else _ring_mpz(0) for e in row] for row in rows]
    # subset DP over columns: best[S] = det of the first |S| rows, columns S
    best = {0: _ring_mpz(1)}
    for r in range(d):
        nxt = {}
        for subset, sub_det in best.items():
            if sub_det == 0:
                continue
            seen = 0
            for c in range(d):
                bit = 1 << c
                if subset & bit:
                    seen += 1
                    continue
                p = packed[r][c]
                if p == 0:
                    continue
                term = sub_det * p if (r - seen) % 2 == 0 \
                    else -(sub_det * p)
                key = subset | bit
                nxt[key] = nxt.get(key, 0) + term
        best = nxt
    total = best.get((1 << d) - 1, _ring_mpz(0))
    shift = [d * lo[v] for v in range(nvars)]
    return LaurentPoly.from_dict(
        nvars, _decode_packed(total, strides, nvars, nbytes, shift))


def _det(rows, nvars: int) -> LaurentPoly:
    d = len(rows)
    if d <= 2:
        return _det_cofactor(rows, nvars)
    # the packed representation is dense over the exponent box, so it only
    # pays off when the entries carry many terms over a small box
    max_terms = 0
    lo = [0] * nvars
    hi = [0] * nvars
    for row in rows:
        for e in row:
            if len(e.terms) > max_terms:
                max_terms = len(e.terms)
            for exps, _ in e.terms:
                for v in range(nvars):
                    if exps[v] < lo[v]:
                        lo[v] = exps[v]
                    if exps[v] > hi[v]:
                        hi[v] = exps[v]
    slots = 1
    for v in range(nvars):
        slots *= d * (hi[v] - lo[v]) + 1
        if slots > 1 << 21:
            return _det_cofactor(rows, nvars)
    if max_terms * max_terms < 16 * slots // (d * d):
        return _det_cofactor(rows, nvars)
    return _det_packed(rows, nvars)


def matrix_parse(text: str, nvars: int) -> PolyMatrix:
    """Row-major text format: semicolon-separated rows of comma-separated polys."""
    from .ring import lp_parse
    rows = []
    for row_text in text.split(";"):
        rows.append([lp_parse(p, nvars) for p in row_text.split(",")])
    return PolyMatrix.from_rows(rows)


# -- IA matrices --------------------------------------------------------------


@dataclass(frozen=True)
class IAMatrix:
    n: int
    M: PolyMatrix


def sigma_vec(n: int, nvars: Optional[int] = None) -> Tuple[LaurentPoly, ...]:
    nv = n if nvars is None else nvars
    return tuple(LaurentPoly.sigma(i, nv) for i in range(1, n + 1))


def ia_validate(M: PolyMatrix, n: Optional[int] = None) -> IAMatrix:
    """Check the three IA invariants; raise NotIA naming the first violation.

    The matrix ring may carry extra variables beyond the first n (fresh
    symbolic parameters); the IA constraints only involve x_1..x_n.
    """
    if n is None:
        n = M.d
    if M.d != n or n < 2:
        raise NotIA(f"expected a square matrix of size n={n}")
    sig = sigma_vec(n, M.nvars)
    for i in range(n):
        acc = LaurentPoly.zero(M.nvars)
        for j in range(n):
            acc = acc + M.rows[i][j] * sig[j]
        if acc != sig[i]:
            raise NotIA(f"row {i + 1}: Σ a_{{k,l}}σ_l = {acc} differs from σ_{i + 1}")
    dt = M.det()
    u = dt.unit_check()
    if u is None or u[0] != 1:
        raise NotIA(f"determinant {dt} is not of the form +x^s")
    if any(u[1][n:]):
        raise NotIA("determinant involves a parameter variable")
    eye = PolyMatrix.identity(n, M.nvars)
    for l in range(1, n + 1):
        others = [i for i in range(1, n + 1) if i != l]
        for k in range(1, n + 1):
            e = (M.rows[k - 1][l - 1] - eye.rows[k - 1][l - 1]).specialize(others)
            if not e.is_zero():
                raise NotIA(
                    f"entry ({k},{l}) of M−I is outside Σ_{{i≠{l}}}σ_iR_n")
    return IAMatrix(n, M)


def ia_is_valid(M: PolyMatrix, n: Optional[int] = None) -> bool:
    try:
        ia_validate(M, n)
        return True
    except NotIA:
        return False


def ia_mul(a: IAMatrix, b: IAMatrix) -> IAMatrix:
    if a.n != b.n:
        raise IAError("rank mismatch")
    return IAMatrix(a.n, a.M * b.M)


def ia_inv(a: IAMatrix) -> IAMatrix:
    return IAMatrix(a.n, a.M.inv())


def ia_generator_E(r: int, s: int, t: int, n: int, nvars: Optional[int] = None) -> IAMatrix:
    """E_{r,s,t} = I_n + σ_t E_{r,s} − σ_s E_{r,t} with s ≠ t (r = s allowed)."""
    if s == t:
        raise IAError("E_{r,s,t} requires s != t")
    if r == t:
        # I + σ_rE_{r,s} − σ_sE_{r,r} has determinant 1−σ_s, not a unit.
        raise IAError("E_{r,s,t} requires t != r")
    for idx in (r, s, t):
        if not 1 <= idx <= n:
            raise IAError("generator index out of range")
    nv = n if nvars is None else nvars
    M = PolyMatrix.identity(n, nv)
    M = M + PolyMatrix.from_rows([[
        LaurentPoly.sigma(t, nv) if (a, b) == (r - 1, s - 1)
        else -LaurentPoly.sigma(s, nv) if (a, b) == (r - 1, t - 1)
        else LaurentPoly.zero(nv)
        for b in range(n)] for a in range(n)])
    return IAMatrix(n, M)


def ia_apply(alpha: IAMatrix, w: MagnusElement) -> MagnusElement:
    """Action on Magnus coordinates: v fixed, c ↦ c·M."""
    if alpha.n != w.n:
        raise IAError("rank mismatch")
    n = alpha.n
    c = []
    for j in range(n):
        acc = LaurentPoly.zero(n)
        for i in range(n):
            acc = acc + w.c[i] * alpha.M.rows[i][j].project(n)
        c.append(acc)
    return MagnusElement(n, w.v, tuple(c))


def ia_rho(i: int, alpha: IAMatrix) -> PolyMatrix:
    """ρ_i: specialize x_j ↦ 1 for j ≠ i, delete row and column i.

    The result is (n−1)×(n−1) over S_i = Z[x_i^±1], congruent to I mod σ_i;
    entries keep the ambient variable indexing (only x_i occurs).
    """
    n = alpha.n
    others = [j for j in range(1, n + 1) if j != i]
    rows = []
    for a in range(1, n + 1):
        if a == i:
            continue
        row = []
        for b in range(1, n + 1):
            if b == i:
                continue
            row.append(alpha.M.rows[a - 1][b - 1].specialize(others))
        rows.append(row)
    return PolyMatrix.from_rows(rows)


def _small_to_big_index(i: int, n: int):
    """Map 1..n−1 (small) to 1..n skipping i (big)."""
    out = []
    for a in range(1, n + 1):
        if a != i:
            out.append(a)
    return out


def igl_embed(i: int, B: PolyMatrix, n: Optional[int] = None) -> IAMatrix:
    """Preimage of I + σ_iB' in IGL'_{n−1,i}: insert row i = e_i and rebuild column i.

    B must be congruent to I modulo σ_i entrywise.
    """
    if n is None:
        n = B.d + 1
    if B.d != n - 1:
        raise IAError("block size must be n-1")
    nv = B.nvars
    idx = _small_to_big_index(i, n)
    eye_small = PolyMatrix.identity(n - 1, nv)
    for a in range(n - 1):
        for b in range(n - 1):
            e = B.rows[a][b] - eye_small.rows[a][b]
            if not e.specialize([i]).is_zero():
                raise NotDivisible(
                    f"entry ({a + 1},{b + 1}) of B−I is not divisible by σ_{i}")
    rows = [[LaurentPoly.zero(nv) for _ in range(n)] for _ in range(n)]
    for a in range(n - 1):
        for b in range(n - 1):
            rows[idx[a] - 1][idx[b] - 1] = B.rows[a][b]
    rows[i - 1][i - 1] = LaurentPoly.one(nv)
    # column i via a_{k,i} = −Σ_{l≠i} a_{k,l}σ_l / σ_i (rows k ≠ i)
    return complete_column(i, PolyMatrix.from_rows(rows), n)


def complete_column(i: int, M: PolyMatrix, n: Optional[int] = None) -> IAMatrix:
    """Fill column i so that every row satisfies the IA row constraint."""
    if n is None:
        n = M.d
    nv = M.nvars
    eye = PolyMatrix.identity(n, nv)
    rows = [list(r) for r in M.rows]
    for k in range(1, n + 1):
        acc = LaurentPoly.zero(nv)
        for l in range(1, n + 1):
            if l == i:
                continue
            a = rows[k - 1][l - 1] - eye.rows[k - 1][l - 1]
            acc = acc + a * LaurentPoly.sigma(l, nv)
        corr = (-acc).divide_sigma(i)
        rows[k - 1][i - 1] = eye.rows[k - 1][i - 1] + corr
    return ia_validate(PolyMatrix.from_rows(rows), n)


def igl_project(i: int, alpha: IAMatrix) -> PolyMatrix:
    """Erase row/column i; valid when row i of M−I is zero (IGL'_{n−1,i})."""
    n = alpha.n
    eye = PolyMatrix.identity(n, alpha.M.nvars)
    for b in range(n):
        if alpha.M.rows[i - 1][b] != eye.rows[i - 1][b]:
            raise IAError(f"row {i} of M−I is nonzero; not in IGL'_{{n-1,{i}}}")
    rows = []
    for a in range(1, n + 1):
        if a == i:
            continue
        rows.append([alpha.M.rows[a - 1][b - 1] for b in range(1, n + 1) if b != i])
    return PolyMatrix.from_rows(rows)


def ig_member(alpha: IAMatrix, m: int) -> bool:
    """True iff every entry of M−I reduces to zero mod H_m."""
    eye = PolyMatrix.identity(alpha.n, alpha.M.nvars)
    diff = alpha.M - eye
    return all(e.reduce_mod_hm(m).is_zero() for row in diff.rows for e in row)


def random_ig_element(rng, n: int, m: int, conj_len: int = 2, nfactors: int = 2) -> IAMatrix:
    """A random element of IG_{m²}: product of conjugated (E_{r,s,t})^{m²}."""
    def random_E(off_row: bool = False):
        while True:
            r = rng.randrange(1, n + 1)
            s = rng.randrange(1, n + 1)
            t = rng.randrange(1, n + 1)
            if s == t or r == t:
                continue
            if off_row and r == s:
                # only for r ∉ {s,t} is the nilpotent part square-zero, so
                # that E^{m²} = I + m²N lands in IG_{m²}
                continue
            return ia_generator_E(r, s, t, n)

    acc = IAMatrix(n, PolyMatrix.identity(n, n))
    for _ in range(nfactors):
        g = PolyMatrix.identity(n, n)
        for _ in range(rng.randrange(conj_len + 1)):
            e = random_E().M
            g = g * (e if rng.random() < 0.5 else e.inv())
        core = random_E(off_row=True).M ** (m * m)
        acc = IAMatrix(n, acc.M * (g.inv() * core * g))
    return acc


def rho_ig_probe(i: int, m: int, samples: int, n: int = 4, seed: int = 0,
                 sample_list: Optional[List[IAMatrix]] = None) -> dict:
    """Check ρ_i(IG_{m²}) ⊆ GL_{n−1}(S_i, σ_iJ_{i,m}) on sampled elements."""
    import random as _random
    rng = _random.Random(seed)
    report = {"i": i, "m": m, "n": n, "seed": seed, "samples": [], "pass": True}
    ideal = IdealRef.sigma_J(i, m)
    for k in range(samples):
        alpha = sample_list[k] if sample_list else random_ig_element(rng, n, m)
        if not ig_member(alpha, m * m):
            report["pass"] = False
            report["samples"].append({"index": k, "ok": False,
                                      "detail": "sample not in IG_{m^2}"})
            continue
        r = ia_rho(i, alpha)
        eye = PolyMatrix.identity(n - 1, r.nvars)
        bad = None
        for a in range(n - 1):
            for b in range(n - 1):
                if not ideal_member(r.rows[a][b] - eye.rows[a][b], ideal):
                    bad = (a + 1, b + 1)
        ok = bad is None
        report["samples"].append({"index": k, "ok": ok,
                                  **({"entry": bad} if bad else {})})
        report["pass"] = report["pass"] and ok
    return report
