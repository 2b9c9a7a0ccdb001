"""Witnessed elementary-subgroup machinery.

Membership in E_d(R,H) and in the subgroup generated by m-th powers of
IA matrices is always certificate-carried, never decided.  A certificate
(IAmWitness) is a product of factors, each one of:

  * PowerM(base)            -- base^m with base a valid IA matrix;
  * Template(family, ...)   -- one of the three witnessed row families,
                               re-expanded through its displayed commutator
                               construction at verification time;
  * Conj(g, factors)        -- g^{-1} (...) g with g a valid IA matrix;
  * Inv(factor).

Conjugations by matrices outside IA are always pushed into PowerM bases by
the constructors (normality of GL_{n-1}(R_n, sigma_n R_n) makes the
conjugated base IA again), so verification is a pure exact computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from .ia import IAError, IAMatrix, PolyMatrix, ia_validate
from .ring import LaurentPoly, NotDivisible, RingError


class WitnessError(Exception):
    pass


# -- tokens and generators ----------------------------------------------------


@dataclass(frozen=True)
class ElemToken:
    """G^{-1}(I + hE_{i,j})G, with inverse=True meaning the formal inverse."""

    G: PolyMatrix
    i: int
    j: int
    h: LaurentPoly
    inverse: bool = False

    def value(self) -> PolyMatrix:
        if self.i == self.j:
            raise WitnessError("elementary token needs i != j")
        core = PolyMatrix.elementary(self.G.d, self.i, self.j,
                                     -self.h if self.inverse else self.h)
        if self.G.det().unit_check() is None:
            raise WitnessError("conjugator determinant is not a unit")
        return self.G.inv() * core * self.G


def elem_eval(word: Sequence[ElemToken], d: int) -> PolyMatrix:
    if not word:
        raise WitnessError("empty token word needs an explicit dimension ring")
    out = PolyMatrix.identity(d, word[0].h.nvars)
    for tok in word:
        if tok.G.d != d:
            raise WitnessError("token dimension mismatch")
        out = out * tok.value()
    return out


@dataclass(frozen=True)
class SuslinGenerator:
    """(I_d − fE_{i,j})(I_d + hE_{j,i})(I_d + fE_{i,j})."""

    f: LaurentPoly
    h: LaurentPoly
    i: int
    j: int
    d: int


def suslin_eval(g: SuslinGenerator) -> PolyMatrix:
    if g.i == g.j:
        raise WitnessError("Suslin generator needs i != j")
    a = PolyMatrix.elementary(g.d, g.i, g.j, -g.f)
    b = PolyMatrix.elementary(g.d, g.j, g.i, g.h)
    c = PolyMatrix.elementary(g.d, g.i, g.j, g.f)
    return a * b * c


# -- the witness calculus -----------------------------------------------------


@dataclass(frozen=True)
class PowerM:
    base: PolyMatrix


@dataclass(frozen=True)
class Template:
    """One of the three witnessed row families.

    The value differs from I_n only in row u, where it gains
      family 1:  m        * coeff * (sigma_i e_j - sigma_j e_i)
      family 2: (x_k^m -1) * coeff * (sigma_i e_j - sigma_j e_i)   (k != u)
      family 3: sigma_u (x_u^m - 1) * coeff * (sigma_i e_j - sigma_j e_i)
    with i, j != u throughout.
    """

    family: int
    u: int
    i: int
    j: int
    coeff: LaurentPoly
    k: int = 0  # only for family 2


@dataclass(frozen=True)
class Conj:
    g: PolyMatrix
    factors: Tuple["WitnessFactor", ...]


@dataclass(frozen=True)
class Inv:
    factor: "WitnessFactor"


WitnessFactor = Union[PowerM, Template, Conj, Inv]


@dataclass(frozen=True)
class IAmWitness:
    n: int
    m: int
    factors: Tuple[WitnessFactor, ...]


def _row_matrix(n: int, nvars: int, u: int, vec) -> PolyMatrix:
    """I_n with row u incremented by vec (a length-n tuple of polys)."""
    rows = [list(r) for r in PolyMatrix.identity(n, nvars).rows]
    for b in range(n):
        rows[u - 1][b] = rows[u - 1][b] + vec[b]
    return PolyMatrix.from_rows(rows)


def _family_vector(t: Template, m: int, n: int, nvars: int):
    sig_i = LaurentPoly.sigma(t.i, nvars)
    sig_j = LaurentPoly.sigma(t.j, nvars)
    if t.family == 1:
        scale = LaurentPoly.const(nvars, m)
    elif t.family == 2:
        scale = LaurentPoly.var(t.k, nvars, m) - 1
    elif t.family == 3:
        scale = LaurentPoly.sigma(t.u, nvars) * (LaurentPoly.var(t.u, nvars, m) - 1)
    else:
        raise WitnessError(f"unknown template family {t.family}")
    zero = LaurentPoly.zero(nvars)
    vec = [zero] * n
    vec[t.j - 1] = vec[t.j - 1] + scale * t.coeff * sig_i
    vec[t.i - 1] = vec[t.i - 1] - scale * t.coeff * sig_j
    return vec


def _template_checks(t: Template, n: int) -> None:
    if not (1 <= t.u <= n and 1 <= t.i <= n and 1 <= t.j <= n):
        raise WitnessError("template index out of range")
    if t.u in (t.i, t.j) or t.i == t.j:
        raise WitnessError("template requires distinct u, i, j")
    if t.family == 2 and (t.k == t.u or not 1 <= t.k <= n):
        raise WitnessError("family 2 requires k != u in range")
    if t.family == 3 and n < 4:
        raise WitnessError("family 3 requires n >= 4 (auxiliary index)")


def template_value(t: Template, m: int, n: int, nvars: Optional[int] = None) -> PolyMatrix:
    _template_checks(t, n)
    nv = t.coeff.nvars if nvars is None else nvars
    return _row_matrix(n, nv, t.u, _family_vector(t, m, n, nv))


def _certify_template(t: Template, m: int, n: int) -> PolyMatrix:
    """Re-expand the template through its displayed construction, exactly."""
    _template_checks(t, n)
    nv = t.coeff.nvars
    value = template_value(t, m, n, nv)
    if t.family == 1:
        base = _row_matrix(n, nv, t.u, _family_vector(
            Template(1, t.u, t.i, t.j, t.coeff), 1, n, nv))
        ia_validate(base, n)
        if base ** m != value:
            raise WitnessError("family 1 template is not the declared m-th power")
        return value
    if t.family == 2:
        g = _row_matrix(n, nv, t.u, _family_vector(
            Template(1, t.u, t.i, t.j, t.coeff), 1, n, nv))
        ia_validate(g, n)
        from .ia import ia_generator_E
        hmat = ia_generator_E(t.u, t.u, t.k, n, nvars=nv).M
        # [g^{-1}, h^m] = (g^{-1} h g)^m (h^{-1})^m, a product of m-th powers
        lhs = g.inv() * (hmat ** m) * g * (hmat.inv() ** m)
        if lhs != value:
            raise WitnessError("family 2 commutator identity failed")
        ia_validate(g.inv() * hmat * g, n)
        return value
    # family 3: conjugate a family-2 row at an auxiliary index v by E_{u,u,v}
    v = next(a for a in range(n, 0, -1) if a not in (t.u, t.i, t.j))
    inner = Template(2, v, t.i, t.j, -t.coeff, k=t.u)
    w1 = _certify_template(inner, m, n)
    from .ia import ia_generator_E
    a = ia_generator_E(t.u, t.u, v, n, nvars=nv).M
    if a * w1 * a.inv() * w1.inv() != value:
        raise WitnessError("family 3 commutator identity failed")
    return value


def factor_value(f: WitnessFactor, m: int, n: int) -> PolyMatrix:
    """Evaluate a witness factor, certifying it along the way."""
    if isinstance(f, PowerM):
        ia_validate(f.base, n)
        return f.base ** m
    if isinstance(f, Template):
        return _certify_template(f, m, n)
    if isinstance(f, Conj):
        ia_validate(f.g, n)
        inner = None
        for sub in f.factors:
            v = factor_value(sub, m, n)
            inner = v if inner is None else inner * v
        if inner is None:
            raise WitnessError("empty conjugation factor")
        return f.g.inv() * inner * f.g
    if isinstance(f, Inv):
        return factor_value(f.factor, m, n).inv()
    raise WitnessError(f"unknown witness factor {f!r}")


def witness_value(w: IAmWitness) -> PolyMatrix:
    out = None
    for f in w.factors:
        v = factor_value(f, w.m, w.n)
        out = v if out is None else out * v
    if out is None:
        raise WitnessError("empty witness")
    return out


def witness_verify(w: IAmWitness, claimed: Union[IAMatrix, PolyMatrix], m: int) -> bool:
    """Certify every factor and compare the witness product with `claimed`."""
    if m != w.m:
        return False
    M = claimed.M if isinstance(claimed, IAMatrix) else claimed
    try:
        v = witness_value(w)
    except (WitnessError, RingError, IAError):
        return False
    nv = max(v.nvars, M.nvars)
    return v.extend(nv) == M.extend(nv)


def sec6_generator(family: int, u: int, i: int, j: int, f: LaurentPoly,
                   m: int, n: int, k: int = 0) -> Tuple[IAMatrix, IAmWitness]:
    """A witnessed element of one of the three row families."""
    t = Template(family, u, i, j, f, k=k)
    value = template_value(t, m, n)
    mat = ia_validate(value, n)
    w = IAmWitness(n, m, (t,))
    if not witness_verify(w, mat, m):  # pragma: no cover - exact by construction
        raise WitnessError("sec6 template failed its own certification")
    return mat, w


def form1_power_identity_check(A: PolyMatrix, hprime: LaurentPoly, i: int, j: int,
                               m: int, n: int) -> bool:
    """A^{-1}(I + sigma_n·m·h' E_{i,j})A = (A^{-1}(I + sigma_n·h' E_{i,j})A)^m."""
    if i == j:
        raise WitnessError("need i != j")
    nv = A.nvars
    sig = LaurentPoly.sigma(n, nv)
    h = sig * hprime.extend(nv) if hprime.nvars < nv else sig * hprime
    Ainv = A.inv()
    lhs = Ainv * PolyMatrix.elementary(A.d, i, j, h * m) * A
    rhs = (Ainv * PolyMatrix.elementary(A.d, i, j, h) * A) ** m
    return lhs == rhs


# -- Form 1..4 factors and the decomposition lemma ---------------------------


def _xm1_divides(f: LaurentPoly, r: int, m: int) -> bool:
    """True iff (x_r^m - 1) divides f: the exponent-folded image must vanish."""
    from .ring import _canon
    data = {}
    for exps, coeff in f.terms:
        e = list(exps)
        e[r - 1] %= m
        e = tuple(e)
        data[e] = data.get(e, 0) + coeff
    return all(c == 0 for c in data.values())


def _coeffs_divisible(f: LaurentPoly, m: int) -> bool:
    return all(c % m == 0 for _, c in f.terms)


def _no_var(f: LaurentPoly, i: int) -> bool:
    return i not in f.used_vars()


def _check_role(h: LaurentPoly, role: Tuple[str, int], m: int, n: int) -> bool:
    """Ideal checks for the declared summand of an h parameter."""
    kind, r = role
    try:
        if kind == "sigma_n_Om":                      # sigma_n * m * R_n
            return _coeffs_divisible(h.divide_sigma(n), m)
        if kind == "sigma_n2_Unm":                    # sigma_n^2 (x_n^m-1) R_n
            q = h.divide_sigma(n).divide_sigma(n)
            return _xm1_divides(q, n, m)
        if kind == "sigma_n_sigma_r2_Urm":            # sigma_n sigma_r^2 (x_r^m-1) R_n
            q = h.divide_sigma(n).divide_sigma(r).divide_sigma(r)
            return _xm1_divides(q, r, m)
        if kind == "Om2_bar":                         # m^2 R_{n-1}
            return _no_var(h, n) and _coeffs_divisible(h, m * m)
        if kind == "sigma_r2_Urm_bar":                # sigma_r^2 (x_r^m-1) R_{n-1}
            q = h.divide_sigma(r).divide_sigma(r)
            return _no_var(h, n) and _xm1_divides(q, r, m)
        if kind == "sigma_r_Om_bar":                  # sigma_r m R_{n-1}
            return _no_var(h, n) and _coeffs_divisible(h.divide_sigma(r), m)
    except NotDivisible:
        return False
    raise WitnessError(f"unknown role {kind!r}")


@dataclass(frozen=True)
class FormFactor:
    """One factor of the decomposition lemma, with its declared ideal role.

    kind 1/2: A^{-1} (I + h E_{i,j}) A
    kind 3/4: A^{-1} [(I + h E_{i,j}), (I + f E_{j,i})] A
    """

    kind: int
    A: PolyMatrix
    i: int
    j: int
    h: LaurentPoly
    role: Tuple[str, int]
    f: Optional[LaurentPoly] = None
    # cached inverse of A, supplied by producers that know it cheaply
    Ainv: Optional[PolyMatrix] = field(default=None, compare=False, repr=False)

    def core(self) -> PolyMatrix:
        d = self.A.d
        if self.kind in (1, 2):
            return PolyMatrix.elementary(d, self.i, self.j, self.h)
        eh = PolyMatrix.elementary(d, self.i, self.j, self.h)
        ef = PolyMatrix.elementary(d, self.j, self.i, self.f)
        # single elementaries invert by negating the off-diagonal entry
        eh_inv = PolyMatrix.elementary(d, self.i, self.j, -self.h)
        ef_inv = PolyMatrix.elementary(d, self.j, self.i, -self.f)
        return eh * ef * eh_inv * ef_inv

    def value(self) -> PolyMatrix:
        ainv = self.Ainv if self.Ainv is not None else self.A.inv()
        return ainv * self.core() * self.A

    def check_ideals(self, m: int, n: int) -> bool:
        ok = _check_role(self.h, self.role, m, n)
        if self.kind in (3, 4):
            ok = ok and self.f is not None and \
                self.f.specialize([n]).is_zero()
        if self.kind == 1:
            ok = ok and self.role[0] == "sigma_n_Om"
        if self.kind == 2:
            ok = ok and self.role[0] in ("sigma_n2_Unm", "sigma_n_sigma_r2_Urm")
        if self.kind == 3:
            ok = ok and self.role[0] == "Om2_bar"
        if self.kind == 4:
            ok = ok and self.role[0] in ("sigma_r2_Urm_bar", "sigma_r_Om_bar")
        return ok


@dataclass(frozen=True)
class TmComponent:
    """A declared summand of an h in T_m: its kind, index and cofactor."""

    kind: str  # 'sig2U' | 'sigO' | 'O2'
    r: int
    coeff: LaurentPoly

    def value(self, m: int, nvars: int) -> LaurentPoly:
        c = self.coeff.extend(nvars) if self.coeff.nvars < nvars else self.coeff
        if self.kind == "sig2U":
            s = LaurentPoly.sigma(self.r, nvars)
            return s * s * (LaurentPoly.var(self.r, nvars, m) - 1) * c
        if self.kind == "sigO":
            return LaurentPoly.sigma(self.r, nvars) * c * m
        if self.kind == "O2":
            return c * (m * m)
        raise WitnessError(f"unknown T_m component kind {self.kind!r}")


@dataclass(frozen=True)
class WitnessedSuslin:
    """A Suslin generator whose h carries its T_m decomposition."""

    f: LaurentPoly
    components: Tuple[TmComponent, ...]
    i: int
    j: int
    d: int

    def h(self, m: int) -> LaurentPoly:
        nv = self.f.nvars
        total = LaurentPoly.zero(nv)
        for c in self.components:
            total = total + c.value(m, nv)
        return total

    def generator(self, m: int) -> SuslinGenerator:
        return SuslinGenerator(self.f, self.h(m), self.i, self.j, self.d)


class ResidualError(WitnessError):
    pass


def decompose_form(B: PolyMatrix, witness: Sequence[WitnessedSuslin], m: int, n: int,
                   allow_residual: bool = False):
    """Rewrite a witnessed product of Suslin generators into Form 1-4 factors.

    Implements the decomposition lemma's proof at the witness level: each h
    splits as sigma_n*h1 + h2 with h2 = h(x_n=1), each f as sigma_n*f1 + f2,
    and the GL(R_{n-1}) residuals produced on the way are tracked and must
    cancel (unless allow_residual, in which case (factors, residual) is
    returned for inspection).
    """
    d = B.d
    nv = B.nvars
    prod = None
    for g in witness:
        v = suslin_eval(g.generator(m))
        prod = v if prod is None else prod * v
    if prod is None or prod != B:
        raise WitnessError("witness product does not equal B")
    eye = PolyMatrix.identity(d, nv)
    if not allow_residual:
        for a in range(d):
            for b in range(d):
                if not (B.rows[a][b] - eye.rows[a][b]).specialize([n]).is_zero():
                    raise WitnessError(
                        "B is not congruent to I modulo sigma_n R_n")

    sig_n = LaurentPoly.sigma(n, nv)
    factors: List[FormFactor] = []
    # Accumulated residual prefix; its inverse is kept up to date so that
    # emitting a factor never needs an adjugate inversion.
    Q = eye
    Qinv = eye

    def absorb(a, b, p):
        nonlocal Q, Qinv
        Q = Q * PolyMatrix.elementary(d, a, b, p)
        Qinv = PolyMatrix.elementary(d, a, b, -p) * Qinv

    def emit(kind, A_local, A_local_inv, i, j, h, role, f=None):
        A_total = A_local * Qinv
        A_total_inv = Q * A_local_inv
        factors.append(FormFactor(kind, A_total, i, j, h, role, f,
                                  Ainv=A_total_inv))

    for g in witness:
        i, j = g.i, g.j
        f = g.f.extend(nv) if g.f.nvars < nv else g.f
        f2 = f.specialize([n])
        f1 = (f - f2).divide_sigma(n)
        A_g = PolyMatrix.elementary(d, i, j, f)
        A_g_inv = PolyMatrix.elementary(d, i, j, -f)
        # sigma_n*h1 part: conjugated elementaries (Forms 1 and 2)
        for comp in g.components:
            val = comp.value(m, nv)
            v2 = val.specialize([n])
            v1 = (val - v2).divide_sigma(n)
            if not v1.is_zero():
                h1c = sig_n * v1
                if comp.kind == "sig2U":
                    role = ("sigma_n2_Unm", n) if comp.r == n \
                        else ("sigma_n_sigma_r2_Urm", comp.r)
                    kind = 2
                else:
                    role = ("sigma_n_Om", 0)
                    kind = 1
                emit(kind, A_g, A_g_inv, j, i, h1c, role)
        # h2 part: residual + commutators (Forms 3 and 4)
        h2_comps = []
        for comp in g.components:
            v2 = comp.value(m, nv).specialize([n])
            if v2.is_zero():
                continue
            if comp.kind == "sig2U":
                role = ("sigma_r2_Urm_bar", comp.r)
                kind = 4
            elif comp.kind == "sigO":
                role = ("sigma_r_Om_bar", comp.r)
                kind = 4
            else:
                role = ("Om2_bar", 0)
                kind = 3
            h2_comps.append((v2, kind, role))
        if h2_comps:
            absorb(i, j, -f2)
            for (k_c, kind, role) in h2_comps:
                absorb(j, i, k_c)
                # the commutator [(I - k E_ji), (I - sigma_n f1 E_ij)]
                emit(kind, eye, eye, j, i, -k_c, role, -(sig_n * f1))
            absorb(i, j, f2)

    if not Q.is_identity():
        if allow_residual:
            return factors, Q
        raise ResidualError("residual GL(R_{n-1}) factors do not cancel")
    # round-trip check: the emitted factors multiply back to B exactly
    out = eye
    for fac in factors:
        out = out * fac.value()
    if out != B:
        raise WitnessError("internal error: factor product differs from B")
    return factors
