"""Proof-chain engine: declarative multi-step matrix identity scripts.

A ChainScript re-checks a multi-step matrix computation as a sequence of
steps over Z[x_1^±,...,x_n^±, fresh parameters]:

  * ExactStep       -- two factor lists whose products must agree entrywise;
  * MemberStep      -- a matrix together with an IAmWitness certifying that
                       it lies in the subgroup generated by m-th powers;
  * CongruenceStep  -- an exact factorization in which some factors are
                       marked as dropped: the full interleaved product must
                       equal the left product exactly, every dropped factor
                       must carry a verifying witness, and the kept factors
                       are the congruence conclusion;
  * DetStep         -- the determinant of a factor product must equal a
                       stated unit.

Identities quantified over ring elements are checked with fresh commuting
indeterminates adjoined as extra Laurent variables, which proves them in
every commutative ring by evaluation.  Congruence steps never compute in a
quotient group: the dropped factors are reinstated explicitly and certified
by witnesses, so every check is an exact computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .elem import (Conj, IAmWitness, Inv, PowerM, Template, WitnessError,
                   witness_verify)
from .ia import IAError, PolyMatrix, complete_column, ia_generator_E
from .ring import IdealRef, LaurentPoly, RingError, ideal_member


class VerifyError(Exception):
    pass


# -- parameters ---------------------------------------------------------------


@dataclass(frozen=True)
class SymbolicParam:
    """A fresh central indeterminate adjoined as Laurent variable `index`.

    `constraint` restricts the polynomials that may be substituted for the
    parameter when a script is re-instantiated:
      None          -- any element of R_n;
      ("bar", n)    -- no occurrence of x_n (element of R_{n-1});
      ("int", 0)    -- a constant polynomial.
    The declared ideal shapes of the source statements (such as an h ranging
    over sigma_n*O_m) are realized structurally: the script builds h from
    unconstrained fresh parameters, so a pass is universal over the shape.
    """

    name: str
    index: int
    constraint: Optional[Tuple[str, int]] = None
    note: str = ""


def _check_binding(p: SymbolicParam, value: LaurentPoly, n: int) -> None:
    if p.constraint is None:
        return
    kind, arg = p.constraint
    if kind == "bar":
        if arg in value.used_vars():
            raise VerifyError(
                f"binding for {p.name!r} must not involve x_{arg}")
    elif kind == "int":
        if any(any(e != 0 for e in exps) for exps, _ in value.terms):
            raise VerifyError(f"binding for {p.name!r} must be constant")
    else:  # pragma: no cover - constructor controlled
        raise VerifyError(f"unknown constraint {kind!r}")


# -- matrix expressions --------------------------------------------------------


@dataclass(frozen=True)
class MatrixExpr:
    """A light product tree over matrix atoms; eval() flattens it exactly."""

    kind: str  # 'atom' | 'mul' | 'inv' | 'pow'
    mat: Optional[PolyMatrix] = None
    args: Tuple["MatrixExpr", ...] = ()
    exp: int = 1

    @staticmethod
    def atom(M: PolyMatrix) -> "MatrixExpr":
        return MatrixExpr("atom", mat=M)

    @staticmethod
    def mul(*args: "MatrixExpr") -> "MatrixExpr":
        return MatrixExpr("mul", args=tuple(args))

    @staticmethod
    def inv(arg: "MatrixExpr") -> "MatrixExpr":
        return MatrixExpr("inv", args=(arg,))

    @staticmethod
    def pow(arg: "MatrixExpr", k: int) -> "MatrixExpr":
        return MatrixExpr("pow", args=(arg,), exp=k)

    def eval(self) -> PolyMatrix:
        if self.kind == "atom":
            return self.mat
        if self.kind == "mul":
            out = None
            for a in self.args:
                v = a.eval()
                out = v if out is None else out * v
            if out is None:
                raise VerifyError("empty product expression")
            return out
        if self.kind == "inv":
            return self.args[0].eval().inv()
        if self.kind == "pow":
            return self.args[0].eval() ** self.exp
        raise VerifyError(f"unknown expression kind {self.kind!r}")


# -- steps ---------------------------------------------------------------------


@dataclass(frozen=True)
class ExactStep:
    label: str
    lhs: Tuple[PolyMatrix, ...]
    rhs: Tuple[PolyMatrix, ...]


@dataclass(frozen=True)
class MemberStep:
    label: str
    block: PolyMatrix           # (n-1)x(n-1) block or full n x n matrix
    witness: IAmWitness


@dataclass(frozen=True)
class RhsItem:
    keep: bool
    mat: PolyMatrix
    witness: Optional[IAmWitness] = None


@dataclass(frozen=True)
class CongruenceStep:
    label: str
    lhs: Tuple[PolyMatrix, ...]
    rhs: Tuple[RhsItem, ...]


@dataclass(frozen=True)
class DetStep:
    label: str
    factors: Tuple[PolyMatrix, ...]
    expected: LaurentPoly


Step = Union[ExactStep, MemberStep, CongruenceStep, DetStep]


@dataclass(frozen=True)
class ChainScript:
    name: str
    n: int
    m: int
    nvars: int
    params: Tuple[SymbolicParam, ...]
    steps: Tuple[Step, ...]
    note: str = ""


# -- reports -------------------------------------------------------------------


@dataclass
class StepReport:
    label: str
    kind: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"label": self.label, "kind": self.kind,
                "pass": self.passed, "detail": self.detail}


@dataclass
class ChainReport:
    name: str
    steps: List[StepReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed,
                "steps": [s.to_dict() for s in self.steps]}


# -- checking ------------------------------------------------------------------


def _product(mats: Sequence[PolyMatrix], d: int, nvars: int) -> PolyMatrix:
    out = PolyMatrix.identity(d, nvars)
    for M in mats:
        out = out * M
    return out


def _first_mismatch(A: PolyMatrix, B: PolyMatrix) -> str:
    for a in range(A.d):
        for b in range(A.d):
            if A.rows[a][b] != B.rows[a][b]:
                return f"entry ({a + 1},{b + 1})"
    return ""


def embed_block(B: PolyMatrix, n: int) -> PolyMatrix:
    """Embed a (n-1)x(n-1) block as the n x n matrix fixing sigma-vec.

    The block goes in the leading corner with 1 at (n,n); column n is then
    rebuilt so every row satisfies the row constraint.  This is defined (and
    multiplicative) whenever each row imbalance is divisible by sigma_n.
    """
    if B.d == n:
        return B
    if B.d != n - 1:
        raise VerifyError("block must have size n-1 or n")
    nv = B.nvars
    zero = LaurentPoly.zero(nv)
    rows = [list(r) + [zero] for r in B.rows]
    rows.append([zero] * (n - 1) + [LaurentPoly.one(nv)])
    return complete_column(n, PolyMatrix.from_rows(rows), n).M


def _check_exact(step: ExactStep, s: ChainScript) -> StepReport:
    d = step.lhs[0].d if step.lhs else step.rhs[0].d
    L = _product(step.lhs, d, s.nvars)
    R = _product(step.rhs, d, s.nvars)
    if L == R:
        return StepReport(step.label, "exact", True)
    return StepReport(step.label, "exact", False,
                      f"products differ at {_first_mismatch(L, R)}")


def _check_member(step: MemberStep, s: ChainScript) -> StepReport:
    try:
        claimed = embed_block(step.block, s.n)
    except (VerifyError, IAError, RingError) as exc:
        return StepReport(step.label, "member", False, f"embedding: {exc}")
    ok = witness_verify(step.witness, claimed, s.m)
    return StepReport(step.label, "member", ok,
                      "" if ok else "witness does not certify the matrix")


def _check_congruence(step: CongruenceStep, s: ChainScript) -> StepReport:
    d = step.lhs[0].d
    L = _product(step.lhs, d, s.nvars)
    R = _product([it.mat for it in step.rhs], d, s.nvars)
    if L != R:
        return StepReport(step.label, "congruence", False,
                          f"reinstated product differs at {_first_mismatch(L, R)}")
    for k, it in enumerate(step.rhs):
        if it.keep:
            continue
        if it.witness is None:
            return StepReport(step.label, "congruence", False,
                              f"dropped factor {k + 1} has no witness")
        try:
            claimed = embed_block(it.mat, s.n)
        except (VerifyError, IAError, RingError) as exc:
            return StepReport(step.label, "congruence", False,
                              f"dropped factor {k + 1} embedding: {exc}")
        if not witness_verify(it.witness, claimed, s.m):
            return StepReport(step.label, "congruence", False,
                              f"dropped factor {k + 1} witness fails")
    return StepReport(step.label, "congruence", True)


def _check_det(step: DetStep, s: ChainScript) -> StepReport:
    d = step.factors[0].d
    P = _product(step.factors, d, s.nvars)
    got = P.det()
    if got == step.expected:
        return StepReport(step.label, "det", True)
    return StepReport(step.label, "det", False,
                      f"det is {got}, expected {step.expected}")


def chain_check(s: ChainScript) -> ChainReport:
    """Run every step of a script and report per-step results."""
    report = ChainReport(s.name)
    for step in s.steps:
        if isinstance(step, ExactStep):
            report.steps.append(_check_exact(step, s))
        elif isinstance(step, MemberStep):
            report.steps.append(_check_member(step, s))
        elif isinstance(step, CongruenceStep):
            report.steps.append(_check_congruence(step, s))
        elif isinstance(step, DetStep):
            report.steps.append(_check_det(step, s))
        else:  # pragma: no cover - constructor controlled
            raise VerifyError(f"unknown step {step!r}")
    return report


# -- instantiation -------------------------------------------------------------


def _subs_matrix(M: PolyMatrix, mapping, nvars_out: int) -> PolyMatrix:
    return M.subs(mapping, nvars_out)


def _subs_witness_factor(f, mapping, nvars_out):
    if isinstance(f, PowerM):
        return PowerM(_subs_matrix(f.base, mapping, nvars_out))
    if isinstance(f, Template):
        return Template(f.family, f.u, f.i, f.j,
                        f.coeff.subs(mapping, nvars_out), f.k)
    if isinstance(f, Conj):
        return Conj(_subs_matrix(f.g, mapping, nvars_out),
                    tuple(_subs_witness_factor(x, mapping, nvars_out)
                          for x in f.factors))
    if isinstance(f, Inv):
        return Inv(_subs_witness_factor(f.factor, mapping, nvars_out))
    raise VerifyError(f"unknown witness factor {f!r}")


def _subs_witness(w: IAmWitness, mapping, nvars_out) -> IAmWitness:
    return IAmWitness(w.n, w.m, tuple(
        _subs_witness_factor(f, mapping, nvars_out) for f in w.factors))


def _subs_step(step: Step, mapping, nvars_out) -> Step:
    if isinstance(step, ExactStep):
        return ExactStep(step.label,
                         tuple(_subs_matrix(M, mapping, nvars_out) for M in step.lhs),
                         tuple(_subs_matrix(M, mapping, nvars_out) for M in step.rhs))
    if isinstance(step, MemberStep):
        return MemberStep(step.label,
                          _subs_matrix(step.block, mapping, nvars_out),
                          _subs_witness(step.witness, mapping, nvars_out))
    if isinstance(step, CongruenceStep):
        return CongruenceStep(step.label,
                              tuple(_subs_matrix(M, mapping, nvars_out)
                                    for M in step.lhs),
                              tuple(RhsItem(it.keep,
                                            _subs_matrix(it.mat, mapping, nvars_out),
                                            None if it.witness is None else
                                            _subs_witness(it.witness, mapping,
                                                          nvars_out))
                                    for it in step.rhs))
    if isinstance(step, DetStep):
        return DetStep(step.label,
                       tuple(_subs_matrix(M, mapping, nvars_out)
                             for M in step.factors),
                       step.expected.subs(mapping, nvars_out))
    raise VerifyError(f"unknown step {step!r}")


def universality_instantiate(s: ChainScript, bindings: Dict[str, LaurentPoly]) -> ChainScript:
    """Substitute concrete values for every fresh parameter of a script.

    Bindings must cover all parameters, use only the base variables
    x_1..x_n, and respect each parameter's declared constraint.  A symbolic
    pass implies the instantiated script passes (evaluation homomorphism);
    running chain_check on the result is a secondary concrete oracle.
    """
    missing = [p.name for p in s.params if p.name not in bindings]
    if missing:
        raise VerifyError(f"missing bindings for {missing}")
    extra = set(bindings) - {p.name for p in s.params}
    if extra:
        raise VerifyError(f"unknown parameters {sorted(extra)}")
    mapping = {}
    for p in s.params:
        v = bindings[p.name]
        if any(i > s.n for i in v.used_vars()):
            raise VerifyError(
                f"binding for {p.name!r} must only use x_1..x_{s.n}")
        _check_binding(p, v, s.n)
        mapping[p.index] = v.project(s.n) if v.nvars > s.n else v.extend(s.n)
    steps = tuple(_subs_step(st, mapping, s.n) for st in s.steps)
    return ChainScript(s.name + "@concrete", s.n, s.m, s.n, (), steps, s.note)


# -- mutation controls ---------------------------------------------------------


def _flip_entry(M: PolyMatrix, rng) -> Optional[PolyMatrix]:
    cells = [(a, b) for a in range(M.d) for b in range(M.d)
             if a != b and not M.rows[a][b].is_zero()]
    if not cells:
        cells = [(a, b) for a in range(M.d) for b in range(M.d)
                 if not M.rows[a][b].is_zero()]
    if not cells:
        return None
    a, b = cells[rng.randrange(len(cells))]
    rows = [list(r) for r in M.rows]
    rows[a][b] = -rows[a][b]
    return PolyMatrix.from_rows(rows)


def _mutate_product(mats: Tuple[PolyMatrix, ...], rng) -> Optional[Tuple[Tuple[PolyMatrix, ...], str]]:
    idxs = [k for k, M in enumerate(mats) if not M.is_identity()]
    if not idxs:
        return None
    k = idxs[rng.randrange(len(idxs))]
    ops = ["flip", "swap", "drop"]
    rng.shuffle(ops)
    for op in ops:
        if op == "flip":
            M2 = _flip_entry(mats[k], rng)
            if M2 is not None and M2 != mats[k]:
                out = list(mats)
                out[k] = M2
                return tuple(out), f"sign flip in factor {k + 1}"
        elif op == "swap":
            M2 = mats[k].transpose()
            if M2 != mats[k]:
                out = list(mats)
                out[k] = M2
                return tuple(out), f"index swap (transpose) of factor {k + 1}"
        elif op == "drop" and len(mats) >= 2:
            out = list(mats)
            del out[k]
            return tuple(out), f"dropped factor {k + 1}"
    return None


def mutate_script(s: ChainScript, seed: int) -> Tuple[ChainScript, str]:
    """Apply one seeded single-token mutation; the result should fail."""
    import random
    rng = random.Random(seed)
    candidates: List[Tuple[int, str]] = []
    for i, st in enumerate(s.steps):
        if isinstance(st, ExactStep):
            if len(st.lhs) + len(st.rhs) >= 2:
                candidates.append((i, "exact"))
        elif isinstance(st, CongruenceStep):
            candidates.append((i, "cong"))
        elif isinstance(st, DetStep):
            candidates.append((i, "det"))
    if not candidates:
        raise VerifyError(f"script {s.name} has no mutable step")
    for _ in range(64):
        i, kind = candidates[rng.randrange(len(candidates))]
        st = s.steps[i]
        if kind == "exact":
            side = rng.random() < 0.5 and len(st.rhs) > 0
            mats = st.rhs if side else st.lhs
            if not mats:
                mats, side = st.lhs, False
            got = _mutate_product(mats, rng)
            if got is None:
                continue
            new_mats, desc = got
            new = ExactStep(st.label,
                            st.lhs if side else new_mats,
                            new_mats if side else st.rhs)
        elif kind == "cong":
            got = _mutate_product(tuple(it.mat for it in st.rhs), rng)
            if got is None:
                got = _mutate_product(st.lhs, rng)
                if got is None:
                    continue
                new_mats, desc = got
                new = CongruenceStep(st.label, new_mats, st.rhs)
            else:
                new_mats, desc = got
                if len(new_mats) == len(st.rhs):
                    items = tuple(RhsItem(it.keep, M, it.witness)
                                  for it, M in zip(st.rhs, new_mats))
                else:  # a factor was dropped
                    kept = list(new_mats)
                    items_l = []
                    src = list(st.rhs)
                    # align by scanning: removed factor is the first mismatch
                    j = 0
                    for it in src:
                        if j < len(kept) and it.mat == kept[j]:
                            items_l.append(it)
                            j += 1
                    items = tuple(items_l)
                new = CongruenceStep(st.label, st.lhs, items)
        else:
            got = _mutate_product(st.factors, rng)
            if got is None:
                continue
            new_mats, desc = got
            new = DetStep(st.label, new_mats, st.expected)
        steps = list(s.steps)
        steps[i] = new
        return (ChainScript(s.name + "@mut", s.n, s.m, s.nvars, s.params,
                            tuple(steps), s.note),
                f"step {i + 1} ({st.label}): {desc}")
    raise VerifyError(f"could not mutate script {s.name}")


# -- shared builders -----------------------------------------------------------


def _P(nv: int, x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x.extend(nv) if x.nvars < nv else x
    return LaurentPoly.const(nv, x)


def _mat(nv: int, rows) -> PolyMatrix:
    return PolyMatrix.from_rows([[_P(nv, e) for e in r] for r in rows])


def _sg(i: int, nv: int) -> LaurentPoly:
    return LaurentPoly.sigma(i, nv)


def _xv(i: int, nv: int, p: int = 1) -> LaurentPoly:
    return LaurentPoly.var(i, nv, p)


def _elem3(nv: int, i: int, j: int, h) -> PolyMatrix:
    return PolyMatrix.elementary(3, i, j, _P(nv, h))


def _pw_witness(X: PolyMatrix, A: Optional[PolyMatrix], m: int, n: int) -> PowerM:
    """Witness for (A^{-1} X A)^m given X ≡ I mod sigma_n, entrywise.

    Outer conjugations are pushed into the power base: the base is the
    completion of A^{-1} X A, which stays congruent to I mod sigma_n.
    """
    B = X if A is None else A.inv() * X * A
    return PowerM(embed_block(B, n))


def _conj_witness(g_block: PolyMatrix, inner: Sequence, n: int) -> Conj:
    return Conj(embed_block(g_block, n), tuple(inner))


# -- five-factor column-pair identities and their congruence corollaries -------
#
# Each identity writes a 3x3 two-column transvection block as a product of
# five factors; factors 1, 3, 5 split into commuting elementary atoms
# I + s·f·g^e·E_{a,b} and are dropped, factors 2 and 4 are kept.  Structural
# transforms (negating the parameters, transpose with reversal, permutation
# conjugation) generate the remaining printed variants from two base
# identities, so each variant inherits exactness and its atom bookkeeping.

# atoms: (a, b, sign, e) encodes I + sign*f*g^e*E_{a,b}
_AtomT = Tuple[int, int, int, int]


def _comp_lists(base: int, f: LaurentPoly, g: LaurentPoly):
    nv = f.nvars
    fg, fg2 = f * g, f * g * g
    if base == 1:
        lhs = _mat(nv, [[1 - fg, -fg, 0], [fg, 1 + fg, 0], [0, 0, 1]])
        facs = [
            (_mat(nv, [[1, 0, 0], [fg, 1, 0], [fg2, 0, 1]]),
             ((2, 1, 1, 1), (3, 1, 1, 2))),
            (_mat(nv, [[1, 0, 0], [0, 1 + fg, -f], [0, fg2, 1 - fg]]), None),
            (_mat(nv, [[1, -fg, 0], [0, 1, 0], [0, -fg2, 1]]),
             ((1, 2, -1, 1), (3, 2, -1, 2))),
            (_mat(nv, [[1 - fg, 0, f], [0, 1, 0], [-fg2, 0, 1 + fg]]), None),
            (_mat(nv, [[1, 0, -f], [0, 1, f], [0, 0, 1]]),
             ((1, 3, -1, 0), (2, 3, 1, 0))),
        ]
    elif base == 3:
        lhs = _mat(nv, [[1 - fg, -fg, 0], [fg, 1 + fg, 0], [0, 0, 1]])
        facs = [
            (_mat(nv, [[1, 0, 0], [0, 1, 0], [f, f, 1]]),
             ((3, 1, 1, 0), (3, 2, 1, 0))),
            (_mat(nv, [[1 - fg, 0, fg2], [0, 1, 0], [-f, 0, 1 + fg]]), None),
            (_mat(nv, [[1, 0, 0], [fg, 1, -fg2], [0, 0, 1]]),
             ((2, 1, 1, 1), (2, 3, -1, 2))),
            (_mat(nv, [[1, 0, 0], [0, 1 + fg, fg2], [0, -f, 1 - fg]]), None),
            (_mat(nv, [[1, -fg, -fg2], [0, 1, 0], [0, 0, 1]]),
             ((1, 2, -1, 1), (1, 3, -1, 2))),
        ]
    else:
        raise VerifyError("base must be 1 or 3")
    return lhs, facs


_PERMS: Dict[str, Tuple[int, int, int]] = {
    "id": (1, 2, 3), "p12": (2, 1, 3), "p13": (3, 2, 1), "p23": (1, 3, 2),
    "p123": (2, 3, 1), "p132": (3, 1, 2),
}


def _transform_identity(base: int, flip: bool, transp: bool, perm: str,
                        f: LaurentPoly, g: LaurentPoly):
    """Build a transformed identity; atoms stay expressed in the input f, g."""
    fb, gb = (-f, -g) if flip else (f, g)
    lhs, facs = _comp_lists(base, fb, gb)
    if flip:
        facs = [(M, None if atoms is None else tuple(
            (a, b, s * (-1) ** (e + 1), e) for a, b, s, e in atoms))
            for M, atoms in facs]
    if transp:
        lhs = lhs.transpose()
        facs = [(M.transpose(), None if atoms is None else tuple(
            (b, a, s, e) for a, b, s, e in reversed(atoms)))
            for M, atoms in reversed(facs)]
    p = _PERMS[perm]
    if p != (1, 2, 3):
        lhs = lhs.conjugate_perm(p)
        facs = [(M.conjugate_perm(p), None if atoms is None else tuple(
            (p[a - 1], p[b - 1], s, e) for a, b, s, e in atoms))
            for M, atoms in facs]
    return lhs, facs


def _find_transform(lhs_p: PolyMatrix, keeps_p: Sequence[PolyMatrix],
                    f: LaurentPoly, g: LaurentPoly):
    """Locate the transform matching a printed congruence line exactly."""
    for base in (1, 3):
        for flip in (False, True):
            for transp in (False, True):
                for perm in _PERMS:
                    lhs, facs = _transform_identity(base, flip, transp, perm, f, g)
                    if lhs != lhs_p:
                        continue
                    keeps = [M for M, atoms in facs if atoms is None]
                    if keeps == list(keeps_p):
                        return (base, flip, transp, perm), facs
    raise VerifyError("no structural transform matches the printed line")


def _constrained_f(nv: int, m: int, pvars: Sequence[int]) -> Tuple[LaurentPoly, list]:
    """f = sigma_n * (sum_r sigma_r p_r (x_r^m-1) + p4 (x4^m-1) + m p5).

    Returns f and the part list [(kind, r, p)] used to witness atoms.
    """
    p1, p2, p3, p4, p5 = (_xv(i, nv) for i in pvars)
    parts = [("sig", 1, p1), ("sig", 2, p2), ("sig", 3, p3),
             ("un", 4, p4), ("om", 0, p5)]
    acc = LaurentPoly.zero(nv)
    for kind, r, p in parts:
        if kind == "sig":
            acc = acc + _sg(r, nv) * p * (_xv(r, nv, m) - 1)
        elif kind == "un":
            acc = acc + p * (_xv(4, nv, m) - 1)
        else:
            acc = acc + p * m
    return _sg(4, nv) * acc, parts


def _atom_witness_factors(atom: _AtomT, parts, g: LaurentPoly, m: int):
    """Witness templates for I + s f g^e E_{a,b} with f the constrained sum."""
    a, b, s, e = atom
    nv = g.nvars
    mult = (g ** e) * s
    out = []
    for kind, r, p in parts:
        if kind == "sig":
            if r == a:
                out.append(Template(3, a, 4, b, p * mult))
            else:
                out.append(Template(2, a, 4, b, _sg(r, nv) * p * mult, k=r))
        elif kind == "un":
            out.append(Template(2, a, 4, b, p * mult, k=4))
        else:
            out.append(Template(1, a, 4, b, p * mult))
    return out


def _congruence_from_line(label: str, lhs_p: PolyMatrix,
                          keeps_p: Sequence[PolyMatrix],
                          f: LaurentPoly, parts, g: LaurentPoly,
                          m: int, n: int) -> CongruenceStep:
    _, facs = _find_transform(lhs_p, keeps_p, f, g)
    items = []
    for M, atoms in facs:
        if atoms is None:
            items.append(RhsItem(True, M))
            continue
        wfs = []
        prod = PolyMatrix.identity(3, f.nvars)
        for atom in atoms:
            a, b, s, e = atom
            prod = prod * _elem3(f.nvars, a, b, f * (g ** e) * s)
            wfs.extend(_atom_witness_factors(atom, parts, g, m))
        if prod != M:  # pragma: no cover - transform bookkeeping guard
            raise VerifyError("atom split does not rebuild the dropped factor")
        items.append(RhsItem(False, M, IAmWitness(n, m, tuple(wfs))))
    return CongruenceStep(label, (lhs_p,), tuple(items))


def _comp_params(nv: int) -> Tuple[SymbolicParam, ...]:
    return (SymbolicParam("f", 5), SymbolicParam("g", 6))


def build_comp(base: int, flip: bool = False, *, name: str, m: int = 2,
               note: str = "") -> ChainScript:
    """Exact five-factor identity script (no congruence content)."""
    nv = 6
    f, g = _xv(5, nv), _xv(6, nv)
    fb, gb = (-f, -g) if flip else (f, g)
    lhs, facs = _comp_lists(base, fb, gb)
    steps: List[Step] = []
    if base == 1 and not flip:
        # displayed derivation: two-factor split, commutator form, brackets
        Ma = _mat(nv, [[1, 0, f], [0, 1, -f], [g, g, 1]])
        Mb = _mat(nv, [[1, 0, -f], [0, 1, f], [-g, -g, 1]])
        G = _mat(nv, [[1, 0, 0], [0, 1, 0], [g, g, 1]])
        U = _mat(nv, [[1, 0, f], [0, 1, -f], [0, 0, 1]])
        steps.append(ExactStep("two-factor split", (lhs,), (Ma, Mb)))
        steps.append(ExactStep("commutator form", (Ma, Mb),
                               (G, U, G.inv(), U.inv())))
        steps.append(ExactStep(
            "bracket split", (G, U, G.inv(), U.inv()),
            (G, _elem3(nv, 2, 3, -f), G.inv(),
             G, _elem3(nv, 1, 3, f), G.inv(), U.inv())))
    steps.append(ExactStep("five-factor identity", (lhs,),
                           tuple(M for M, _ in facs)))
    for k, (M, atoms) in enumerate(facs):
        if atoms is None:
            continue
        steps.append(ExactStep(
            f"factor {k + 1} atom split", (M,),
            tuple(_elem3(nv, a, b, fb * (gb ** e) * s)
                  for a, b, s, e in atoms)))
    return ChainScript(name, 4, m, nv, _comp_params(nv), tuple(steps), note)


def _corcomp_env(m: int):
    nv = 10
    f, parts = _constrained_f(nv, m, (5, 6, 7, 8, 9))
    g = _xv(10, nv)
    params = tuple(SymbolicParam(f"p{k}", 4 + k) for k in range(1, 6)) + (
        SymbolicParam("g", 10),)
    return nv, f, parts, g, params


def build_cor_comp(which: int, *, m: int = 2) -> ChainScript:
    """Congruence corollaries: kept two-factor products for six block shapes."""
    nv, f, parts, g, params = _corcomp_env(m)
    fg, fg2 = f * g, f * g * g

    def C(rows):
        return _mat(nv, rows)

    if which == 1:
        lhs = C([[1 - fg, -fg, 0], [fg, 1 + fg, 0], [0, 0, 1]])
        lines = [
            ("first kept pair",
             [C([[1, 0, 0], [0, 1 + fg, -f], [0, fg2, 1 - fg]]),
              C([[1 - fg, 0, f], [0, 1, 0], [-fg2, 0, 1 + fg]])]),
            ("second kept pair",
             [C([[1, 0, 0], [0, 1 + fg, f], [0, -fg2, 1 - fg]]),
              C([[1 - fg, 0, -f], [0, 1, 0], [fg2, 0, 1 + fg]])]),
            ("third kept pair",
             [C([[1 - fg, 0, fg2], [0, 1, 0], [-f, 0, 1 + fg]]),
              C([[1, 0, 0], [0, 1 + fg, fg2], [0, -f, 1 - fg]])]),
            ("fourth kept pair",
             [C([[1 - fg, 0, -fg2], [0, 1, 0], [f, 0, 1 + fg]]),
              C([[1, 0, 0], [0, 1 + fg, -fg2], [0, f, 1 - fg]])]),
        ]
    elif which == 2:
        lhs = C([[1 - fg, fg, 0], [-fg, 1 + fg, 0], [0, 0, 1]])
        lines = [
            ("transposed kept pair",
             [C([[1 - fg, 0, -fg2], [0, 1, 0], [f, 0, 1 + fg]]),
              C([[1, 0, 0], [0, 1 + fg, fg2], [0, -f, 1 - fg]])]),
        ]
    elif which == 3:
        lhs = C([[1 - fg, 0, -fg], [0, 1, 0], [fg, 0, 1 + fg]])
        lines = [
            ("first kept pair",
             [C([[1, 0, 0], [0, 1 - fg, fg2], [0, -f, 1 + fg]]),
              C([[1 - fg, f, 0], [-fg2, 1 + fg, 0], [0, 0, 1]])]),
            ("second kept pair",
             [C([[1, 0, 0], [0, 1 - fg, -fg2], [0, f, 1 + fg]]),
              C([[1 - fg, -f, 0], [fg2, 1 + fg, 0], [0, 0, 1]])]),
            ("third kept pair",
             [C([[1 - fg, fg2, 0], [-f, 1 + fg, 0], [0, 0, 1]]),
              C([[1, 0, 0], [0, 1 - fg, -f], [0, fg2, 1 + fg]])]),
            ("fourth kept pair",
             [C([[1 - fg, -fg2, 0], [f, 1 + fg, 0], [0, 0, 1]]),
              C([[1, 0, 0], [0, 1 - fg, f], [0, -fg2, 1 + fg]])]),
        ]
    elif which == 4:
        lhs = C([[1 - fg, 0, fg], [0, 1, 0], [-fg, 0, 1 + fg]])
        lines = [
            ("kept pair",
             [C([[1 - fg, -fg2, 0], [f, 1 + fg, 0], [0, 0, 1]]),
              C([[1, 0, 0], [0, 1 - fg, -f], [0, fg2, 1 + fg]])]),
        ]
    elif which == 5:
        lhs = C([[1, 0, 0], [0, 1 - fg, -fg], [0, fg, 1 + fg]])
        lines = [
            ("kept pair",
             [C([[1 - fg, 0, fg2], [0, 1, 0], [-f, 0, 1 + fg]]),
              C([[1 + fg, -fg2, 0], [f, 1 - fg, 0], [0, 0, 1]])]),
        ]
    elif which == 6:
        lhs = C([[1, 0, 0], [0, 1 - fg, fg], [0, -fg, 1 + fg]])
        lines = [
            ("kept pair",
             [C([[1 + fg, f, 0], [-fg2, 1 - fg, 0], [0, 0, 1]]),
              C([[1 - fg, 0, -f], [0, 1, 0], [fg2, 0, 1 + fg]])]),
        ]
    else:
        raise VerifyError("which must be 1..6")
    steps = tuple(_congruence_from_line(lbl, lhs, keeps, f, parts, g, m, 4)
                  for lbl, keeps in lines)
    return ChainScript(f"block-pair-cong-{which}", 4, m, nv, params, steps,
                       "congruence factorizations of a two-column block")


# -- row-family template displays ---------------------------------------------


def build_template_family2(*, m: int = 2) -> ChainScript:
    """The commutator expansion behind the (x_k^m - 1)-scaled row family."""
    nv = 5
    p = _xv(5, nv)
    t = Template(2, 1, 3, 2, p, k=2)
    from .elem import template_value
    value = template_value(t, m, 4, nv)
    g = template_value(Template(1, 1, 3, 2, p), 1, 4, nv)
    hmat = ia_generator_E(1, 1, 2, 4, nvars=nv).M
    steps: Tuple[Step, ...] = (
        ExactStep("commutator expansion",
                  (g.inv(), hmat ** m, g, hmat.inv() ** m), (value,)),
        MemberStep("certified row element", value, IAmWitness(4, m, (t,))),
    )
    return ChainScript("row-family-xk", 4, m, nv, (SymbolicParam("p", 5),),
                       steps, "scaled-row generator via a diagonal-unit commutator")


def build_template_family3(*, m: int = 2) -> ChainScript:
    """The auxiliary-index conjugation behind the sigma_u-scaled row family."""
    nv = 5
    p = _xv(5, nv)
    t = Template(3, 1, 2, 3, p)
    from .elem import template_value
    value = template_value(t, m, 4, nv)
    inner = Template(2, 4, 2, 3, -p, k=1)
    w1 = template_value(inner, m, 4, nv)
    a = ia_generator_E(1, 1, 4, 4, nvars=nv).M
    steps: Tuple[Step, ...] = (
        ExactStep("conjugation expansion",
                  (a, w1, a.inv(), w1.inv()), (value,)),
        MemberStep("certified row element", value, IAmWitness(4, m, (t,))),
    )
    return ChainScript("row-family-sigma", 4, m, nv, (SymbolicParam("p", 5),),
                       steps, "sigma-scaled row generator via auxiliary index")


def _gl3_conjugator(nv: int) -> PolyMatrix:
    """A fixed unimodular 3x3 matrix, deliberately not congruent to I."""
    A = _elem3(nv, 1, 2, _xv(1, nv)) * _elem3(nv, 2, 3, _xv(4, nv, -1)) * \
        _elem3(nv, 3, 1, _sg(2, nv))
    return A


def build_power_transfer(*, m: int = 2) -> ChainScript:
    """Conjugation commutes with m-th powers of elementary blocks."""
    nv = 5
    hp = _xv(5, nv)
    A = _gl3_conjugator(nv)
    Ai = A.inv()
    h = _sg(4, nv) * hp
    base = Ai * _elem3(nv, 1, 2, h) * A
    block = Ai * _elem3(nv, 1, 2, h * m) * A
    steps: Tuple[Step, ...] = (
        ExactStep("power transfer", (Ai, _elem3(nv, 1, 2, h * m), A),
                  tuple([base] * m)),
        MemberStep("conjugated power", block,
                   IAmWitness(4, m, (PowerM(embed_block(base, 4)),))),
    )
    return ChainScript("power-transfer", 4, m, nv,
                       (SymbolicParam("hp", 5),), steps,
                       "outer conjugation pushed into a power base")


# -- staged unit-conjugation displays -----------------------------------------


def _stage_form_steps(label: str, lhs: PolyMatrix, factors,
                      member: Optional[MemberStep]) -> List[Step]:
    steps: List[Step] = [ExactStep(label, (lhs,), tuple(factors))]
    if member is not None:
        steps.append(member)
    return steps


def build_stage(*, m: int = 2) -> ChainScript:
    """Four conjugation displays for sigma_r-squared scaled entries."""
    nv = 5
    p = _xv(5, nv)
    u = _sg(4, nv) * _sg(1, nv) * (_xv(1, nv, m) - 1) * p  # sigma_n sigma_1 U_{1,m}
    s1, s2, s3 = _sg(1, nv), _sg(2, nv), _sg(3, nv)
    su = s1 * u
    steps: List[Step] = []

    def member(name, block, factors):
        steps.append(MemberStep(name, block, IAmWitness(4, m, tuple(factors))))

    # (1,2)-corner form via a diagonal-unit conjugator
    lhs12 = _mat(nv, [[1 - su, -s1 * su, 0], [u, 1 + su, 0], [0, 0, 1]])
    B = _mat(nv, [[_xv(2, nv), -s1, 0], [0, 1, 0], [0, 0, 1]])
    mid12 = _elem3(nv, 2, 1, u * _xv(2, nv))
    steps.append(ExactStep("corner (1,2) conjugation", (lhs12,),
                           (B, mid12, B.inv())))
    member("corner (1,2) membership", lhs12,
           [_conj_witness(B.inv(), [Template(2, 2, 4, 1,
                                             s1 * p * _xv(2, nv), k=1)], 4)])
    # (1,3)-corner form
    lhs7 = _mat(nv, [[1 - su, 0, -s1 * su], [0, 1, 0], [u, 0, 1 + su]])
    B7 = _mat(nv, [[_xv(3, nv), 0, -s1], [0, 1, 0], [0, 0, 1]])
    steps.append(ExactStep("corner (1,3) conjugation", (lhs7,),
                           (B7, _elem3(nv, 3, 1, u * _xv(3, nv)), B7.inv())))
    member("corner (1,3) membership", lhs7,
           [_conj_witness(B7.inv(), [Template(2, 3, 4, 1,
                                              s1 * p * _xv(3, nv), k=1)], 4)])
    # (2,3)-corner form via a balanced row conjugator
    lhs3 = _mat(nv, [[1, 0, 0], [0, 1 + su, u], [0, -s1 * su, 1 - su]])
    Q3 = _mat(nv, [[1, 0, 0], [u * s2, 1, 0], [-u * s1 * s2, 0, 1]])
    C3 = _mat(nv, [[1, 0, 0], [0, 1, 0], [s2, -s1, 1]])
    steps.append(ExactStep("corner (2,3) conjugation", (lhs3,),
                           (Q3, C3, _elem3(nv, 2, 3, u), C3.inv())))
    member("corner (2,3) membership", lhs3,
           [Template(2, 2, 4, 1, s1 * p * s2, k=1),
            Template(2, 3, 4, 1, -s1 * s1 * p * s2, k=1),
            _conj_witness(C3.inv(), [Template(2, 2, 4, 3, s1 * p, k=1)], 4)])
    # (3,2)-corner form
    lhs6 = _mat(nv, [[1, 0, 0], [0, 1 - su, -s1 * su], [0, u, 1 + su]])
    Q6 = _mat(nv, [[1, 0, 0], [-u * s1 * s3, 1, 0], [u * s3, 0, 1]])
    C6 = _mat(nv, [[1, 0, 0], [s3, 1, -s1], [0, 0, 1]])
    steps.append(ExactStep("corner (3,2) conjugation", (lhs6,),
                           (Q6, C6, _elem3(nv, 3, 2, u), C6.inv())))
    member("corner (3,2) membership", lhs6,
           [Template(2, 2, 4, 1, -s1 * s1 * p * s3, k=1),
            Template(2, 3, 4, 1, s1 * p * s3, k=1),
            _conj_witness(C6.inv(), [Template(2, 3, 4, 2, s1 * p, k=1)], 4)])
    # degenerate x_4 variants: u4 in sigma_4 U_{4,m}, sign-degenerated conjugators
    u4 = _sg(4, nv) * (_xv(4, nv, m) - 1) * p
    s4u = _sg(4, nv) * u4
    lhs3d = _mat(nv, [[1, 0, 0], [0, 1 + s4u, u4], [0, -_sg(4, nv) * s4u, 1 - s4u]])
    C3d = _mat(nv, [[1, 0, 0], [0, 1, 0], [0, -_sg(4, nv), 1]])
    steps.append(ExactStep("degenerate (2,3) conjugation", (lhs3d,),
                           (C3d, _elem3(nv, 2, 3, u4), C3d.inv())))
    member("degenerate (2,3) membership", lhs3d,
           [_conj_witness(C3d.inv(), [Template(2, 2, 4, 3, p, k=4)], 4)])
    lhs12d = _mat(nv, [[1 - s4u, -_sg(4, nv) * s4u, 0], [u4, 1 + s4u, 0],
                       [0, 0, 1]])
    Bd = _mat(nv, [[1, -_sg(4, nv), 0], [0, 1, 0], [0, 0, 1]])
    steps.append(ExactStep("degenerate (1,2) conjugation", (lhs12d,),
                           (Bd, _elem3(nv, 2, 1, u4), Bd.inv())))
    member("degenerate (1,2) membership", lhs12d,
           [_conj_witness(Bd.inv(), [Template(2, 2, 4, 1, p, k=4)], 4)])
    return ChainScript("stage-conjugations", 4, m, nv,
                       (SymbolicParam("p", 5),), tuple(steps),
                       "corner blocks conjugated into single witnessed entries")


def build_stage_units(*, m: int = 2) -> ChainScript:
    """Unit-stage displays: the scaled entry is carried by a free cofactor."""
    nv = 6
    q, u = _xv(5, nv), _xv(6, nv)
    h = _sg(4, nv) * q
    s1, s2, s3 = _sg(1, nv), _sg(2, nv), _sg(3, nv)
    us1h = u * s1 * h
    steps: List[Step] = []
    lhs1 = _mat(nv, [[1, 0, 0], [0, 1 - us1h, h], [0, -u * u * s1 * s1 * h, 1 + us1h]])
    Q1 = _mat(nv, [[1, 0, 0], [-h * u * s2, 1, 0], [-h * u * u * s1 * s2, 0, 1]])
    C1 = _mat(nv, [[1, 0, 0], [0, 1, 0], [-u * s2, u * s1, 1]])
    steps.append(ExactStep("unit-stage (2,3)", (lhs1,),
                           (Q1, C1, _elem3(nv, 2, 3, h), C1.inv())))
    lhs6 = _mat(nv, [[1, 0, 0], [0, 1 - us1h, -u * u * s1 * s1 * h], [0, h, 1 + us1h]])
    Q6 = _mat(nv, [[1, 0, 0], [-h * u * u * s1 * s3, 1, 0], [h * u * s3, 0, 1]])
    C6 = _mat(nv, [[1, 0, 0], [u * s3, 1, -u * s1], [0, 0, 1]])
    steps.append(ExactStep("unit-stage (3,2)", (lhs6,),
                           (Q6, C6, _elem3(nv, 3, 2, h), C6.inv())))
    # sign-switched companions (u and h negated simultaneously)
    hn, un = -h, -u
    unh = un * s1 * hn
    lhs3 = _mat(nv, [[1, 0, 0], [0, 1 - unh, hn], [0, -un * un * s1 * s1 * hn, 1 + unh]])
    Q3 = _mat(nv, [[1, 0, 0], [-hn * un * s2, 1, 0], [-hn * un * un * s1 * s2, 0, 1]])
    C3 = _mat(nv, [[1, 0, 0], [0, 1, 0], [-un * s2, un * s1, 1]])
    steps.append(ExactStep("unit-stage (2,3) sign-switched", (lhs3,),
                           (Q3, C3, _elem3(nv, 2, 3, hn), C3.inv())))
    return ChainScript("stage-units", 4, m, nv,
                       (SymbolicParam("q", 5), SymbolicParam("u", 6)),
                       tuple(steps),
                       "free-cofactor conjugation displays (exact layer only)")


# -- commutator exchange and the induction scripts -----------------------------


def _exchange_pieces(f: LaurentPoly, h: LaurentPoly, hp: LaurentPoly, m: int):
    """Matrices and power bases for the two-column exchange derivation.

    f must be sigma_4-divisible and h = sigma_1 * m * hp, so every dropped
    factor is an m-th power of a sigma_4-congruent base.
    """
    nv = f.nvars
    fh = f * h
    fh2 = fh * h
    s = f * _sg(1, nv) * hp          # fh / m
    s2 = f * _sg(1, nv) * _sg(1, nv) * hp * hp * m   # fh^2 / m
    d = {}
    d["Xa"] = _elem3(nv, 2, 1, fh) * _elem3(nv, 3, 1, fh2)
    d["Xb"] = _mat(nv, [[1, 0, 0], [0, 1 + fh, -f], [0, fh2, 1 - fh]])
    d["Xc"] = _elem3(nv, 1, 2, -fh) * _elem3(nv, 3, 2, -fh2)
    d["Xd"] = _mat(nv, [[1 - fh, 0, f], [0, 1, 0], [-fh2, 0, 1 + fh]])
    fsq_h = f * f * h
    d["Xe"] = _mat(nv, [[1, 0, 0], [fsq_h * h, 1, -fsq_h], [0, 0, 1]])
    d["Cf"] = _elem3(nv, 2, 3, f)
    d["L44"] = _mat(nv, [[1 - fh, -fh, 0], [fh, 1 + fh, 0], [0, 0, 1]])
    # m-th-power bases for the dropped factors
    d["Xa_b"] = _elem3(nv, 2, 1, s) * _elem3(nv, 3, 1, s2)
    d["L44_b"] = _mat(nv, [[1 - s, -s, 0], [s, 1 + s, 0], [0, 0, 1]])
    ffs = f * f * _sg(1, nv) * hp
    d["Xe_b"] = _mat(nv, [[1, 0, 0], [ffs * h, 1, -ffs], [0, 0, 1]])
    d["Xc_b"] = _elem3(nv, 1, 2, -s) * _elem3(nv, 3, 2, -s2)
    return d


def build_commutator_exchange(*, m: int = 2) -> ChainScript:
    """[row transvection, column transvection] exchanged across the corner."""
    nv = 6
    f5, hp = _xv(5, nv), _xv(6, nv)
    f = _sg(4, nv) * f5
    h = _sg(1, nv) * hp * m
    P = _exchange_pieces(f, h, hp, m)
    Pn = _exchange_pieces(-f, h, hp, m)
    Xa, Xb, Xc, Xd, Xe, Cf, L44 = (P[k] for k in
                                   ("Xa", "Xb", "Xc", "Xd", "Xe", "Cf", "L44"))
    fh = f * h
    steps: List[Step] = []
    steps.append(ExactStep(
        "main factorization", (L44,),
        (Xa, Xb, Cf, Cf.inv(), Xc, Cf, Xd, Xe, _elem3(nv, 1, 3, -f))))
    steps.append(ExactStep("auxiliary conjugation",
                           (Cf.inv(), Xd, Cf), (Xd, Xe)))
    steps.append(ExactStep(
        "block as conjugated transvection", (L44,),
        (_elem3(nv, 2, 1, _P(nv, -1)), _elem3(nv, 1, 2, -fh),
         _elem3(nv, 2, 1, _P(nv, 1)))))

    def drops(Q):
        """The four dropped factors of the kept-pair congruence, with witnesses."""
        e13 = _elem3(nv, 1, 3, -Q["Cf"].entry(2, 3))  # I - fE13 for the same f
        return [
            (Q["Xa"].inv(),
             [Inv(PowerM(embed_block(Q["Xa_b"], 4)))]),
            (Q["L44"], [PowerM(embed_block(Q["L44_b"], 4))]),
            (Q["Xd"] * Q["Xe"].inv() * Q["Xd"].inv(),
             [_conj_witness(Q["Xd"].inv(),
                            [Inv(PowerM(embed_block(Q["Xe_b"], 4)))], 4)]),
            (Q["Cf"].inv() * Q["Xc"].inv() * Q["Cf"],
             [_conj_witness(Q["Cf"],
                            [Inv(PowerM(embed_block(Q["Xc_b"], 4)))], 4)]),
        ]

    dp = drops(P)
    steps.append(CongruenceStep(
        "kept inverse pair", (Xb, Cf),
        (RhsItem(False, dp[0][0], IAmWitness(4, m, tuple(dp[0][1]))),
         RhsItem(False, dp[1][0], IAmWitness(4, m, tuple(dp[1][1]))),
         RhsItem(True, _elem3(nv, 1, 3, f)),
         RhsItem(True, Xd.inv()),
         RhsItem(False, dp[2][0], IAmWitness(4, m, tuple(dp[2][1]))),
         RhsItem(False, dp[3][0], IAmWitness(4, m, tuple(dp[3][1]))))))
    # commutator exchange: conjugate the kept-pair line by f -> -f
    H32, H31 = _elem3(nv, 3, 2, h), _elem3(nv, 3, 1, h)
    b1 = (H32, Cf, H32.inv(), Cf.inv())
    b2 = (_elem3(nv, 1, 3, -f), H31, _elem3(nv, 1, 3, f), H31.inv())
    B1 = _product(b1, 3, nv)
    B2 = _product(b2, 3, nv)
    dn = drops(Pn)
    delta = B2.inv() * B1
    wdelta = (
        _conj_witness(B2, dn[0][1] + dn[1][1], 4),
        dn[2][1][0],
        dn[3][1][0],
    )
    steps.append(CongruenceStep(
        "commutator exchange", b1,
        tuple([RhsItem(True, M) for M in b2]) +
        (RhsItem(False, delta, IAmWitness(4, m, wdelta)),)))
    params = (SymbolicParam("f5", 5), SymbolicParam("hp", 6, ("bar", 4)))
    return ChainScript("commutator-exchange", 4, m, nv, params, tuple(steps),
                       "row/column transvection commutators agree mod m-powers")


def build_induction_base(*, m: int = 2) -> ChainScript:
    """Base of the induction: the commutator is witnessed directly."""
    nv = 6
    f5, p = _xv(5, nv), _xv(6, nv)
    f = _sg(4, nv) * f5
    u = p * m
    h = _sg(1, nv) * u
    s1, s2 = _sg(1, nv), _sg(2, nv)
    P0 = _mat(nv, [[1, 0, 0], [0, 1, 0], [-s2 * u, s1 * u, 1]])
    Cf = _elem3(nv, 2, 3, f)
    H32 = _elem3(nv, 3, 2, h)
    Q1a = _elem3(nv, 2, 1, f * s2 * u)
    Q1b = _elem3(nv, 3, 1, s1 * s2 * u * u * f)
    t_p0 = Template(1, 3, 1, 2, p)
    t_q1a = Template(1, 2, 4, 1, f5 * s2 * p)
    t_q1b = Template(1, 3, 4, 1, s1 * s2 * m * p * p * f5)
    X = H32 * Cf * H32.inv() * Cf.inv()
    steps: Tuple[Step, ...] = (
        ExactStep("commutator rearrangement",
                  (P0, Cf, P0.inv(), Cf.inv()),
                  (Q1a, Q1b, H32, Cf, H32.inv(), Cf.inv())),
        MemberStep("row auxiliary", P0, IAmWitness(4, m, (t_p0,))),
        MemberStep("base commutator", X, IAmWitness(4, m, (
            Inv(t_q1b), Inv(t_q1a), t_p0,
            _conj_witness(Cf.inv(), [Inv(t_p0)], 4)))),
    )
    params = (SymbolicParam("f5", 5), SymbolicParam("p", 6, ("bar", 4)))
    return ChainScript("induction-base", 4, m, nv, params, steps,
                       "commutator expressed through a witnessed row element")


def build_induction_step(*, m: int = 2) -> ChainScript:
    """Conjugating the exchanged commutator by a free transvection."""
    nv = 7
    f5, hp, r = _xv(5, nv), _xv(6, nv), _xv(7, nv)
    f = _sg(4, nv) * f5
    h = _sg(1, nv) * hp * m
    P = _exchange_pieces(f, h, hp, m)
    Pn = _exchange_pieces(-f, h, hp, m)
    Cf = P["Cf"]
    Cfn = Pn["Cf"]
    H32, H31 = _elem3(nv, 3, 2, h), _elem3(nv, 3, 1, h)
    b1 = (H32, Cf, H32.inv(), Cf.inv())
    b2 = (_elem3(nv, 1, 3, -f), H31, _elem3(nv, 1, 3, f), H31.inv())
    B1 = _product(b1, 3, nv)
    B2 = _product(b2, 3, nv)
    Er = _elem3(nv, 2, 3, r)
    Y = _elem3(nv, 2, 1, r * h * h * f) * _elem3(nv, 2, 3, -r * h * f)
    Yb = _elem3(nv, 2, 1, r * h * _sg(1, nv) * hp * f) * \
        _elem3(nv, 2, 3, -r * _sg(1, nv) * hp * f)
    steps: List[Step] = [
        ExactStep("transvection conjugation", (Er.inv(), B2, Er), (B2, Y)),
    ]
    delta = B2.inv() * B1

    def conj_base(g: PolyMatrix, base: PolyMatrix) -> PowerM:
        return PowerM(embed_block(g.inv() * base * g, 4))

    gBE = B2 * Er
    gDE = Pn["Xd"].inv() * Er
    gCE = Cfn * Er
    w_delta_conj = (
        Inv(conj_base(gBE, Pn["Xa_b"])),
        conj_base(gBE, Pn["L44_b"]),
        Inv(conj_base(gDE, Pn["Xe_b"])),
        Inv(conj_base(gCE, Pn["Xc_b"])),
    )
    steps.append(CongruenceStep(
        "conjugated exchange", (Er.inv(),) + b1 + (Er,),
        tuple(RhsItem(True, M) for M in b2) + (
            RhsItem(False, Y, IAmWitness(4, m, (PowerM(embed_block(Yb, 4)),))),
            RhsItem(False, Er.inv() * delta * Er,
                    IAmWitness(4, m, w_delta_conj)))))
    # the conjugate returns to the original commutator
    w_delta = (
        _conj_witness(B2, [Inv(PowerM(embed_block(Pn["Xa_b"], 4))),
                           PowerM(embed_block(Pn["L44_b"], 4))], 4),
        _conj_witness(Pn["Xd"].inv(),
                      [Inv(PowerM(embed_block(Pn["Xe_b"], 4)))], 4),
        _conj_witness(Cfn, [Inv(PowerM(embed_block(Pn["Xc_b"], 4)))], 4),
    )
    theta = B1.inv() * Er.inv() * B1 * Er
    w_theta = tuple(Inv(x) for x in reversed(w_delta)) + (
        PowerM(embed_block(Yb, 4)),) + w_delta_conj
    steps.append(CongruenceStep(
        "return to the commutator", (Er.inv(), B1, Er),
        (RhsItem(True, B1),
         RhsItem(False, theta, IAmWitness(4, m, w_theta)))))
    params = (SymbolicParam("f5", 5), SymbolicParam("hp", 6, ("bar", 4)),
              SymbolicParam("r", 7))
    return ChainScript("induction-step", 4, m, nv, params, tuple(steps),
                       "free-transvection conjugation preserves the class")


# -- the two summation lemmas ---------------------------------------------------


def build_sum_split(*, m: int = 2) -> ChainScript:
    """Conjugates by f1 + f2 split into conjugates by f1 and by f2."""
    nv = 7
    hp, f1, f2 = _xv(5, nv), _xv(6, nv), _xv(7, nv)
    h = _sg(4, nv) * hp * m
    hhalf = _sg(4, nv) * hp            # h / m, still sigma_4-divisible
    F = f1 + f2
    MS = _mat(nv, [[1 - h * F, -h * F * F, 0], [h, 1 + h * F, 0], [0, 0, 1]])
    G1 = _mat(nv, [[1, 0, -F], [0, 1, 1], [-h, -h * F, 1]])
    G2 = _mat(nv, [[1, 0, F], [0, 1, -1], [h, h * F, 1]])
    Lm = _mat(nv, [[1, 0, 0], [0, 1, 0], [-h, -h * F, 1]])
    Um = _mat(nv, [[1, 0, -F], [0, 1, 1], [0, 0, 1]])
    Lp = _mat(nv, [[1, 0, 0], [0, 1, 0], [h, h * F, 1]])
    Up = _mat(nv, [[1, 0, F], [0, 1, -1], [0, 0, 1]])
    L1p = _mat(nv, [[1, 0, 0], [0, 1, 0], [h, h * f1, 1]])
    U1m = _mat(nv, [[1, 0, -f1], [0, 1, 1], [0, 0, 1]])
    U1p = _mat(nv, [[1, 0, f1], [0, 1, -1], [0, 0, 1]])
    C2m, C2p = _elem3(nv, 1, 3, -f2), _elem3(nv, 1, 3, f2)
    S1 = Lm
    S2 = _mat(nv, [[1, 0, 0], [0, 1 + h * f2, -h * f2], [0, h * f2, 1 - h * f2]])
    S3 = _elem3(nv, 1, 2, -F * h * f2) * _elem3(nv, 1, 3, F * h * f2)
    S4 = _elem3(nv, 1, 2, -h * f1 * f2) * _elem3(nv, 3, 2, h * f1)
    S5 = _mat(nv, [[1 - h * f2, 0, -h * f2 * f2], [0, 1, 0],
                   [h, 0, 1 + h * f2]])
    S6 = _elem3(nv, 1, 3, -h * f1 * f2) * _elem3(nv, 2, 3, h * f2)
    S7 = _mat(nv, [[1 - h * f1, -h * f1 * f1, 0], [h, 1 + h * f1, 0],
                   [0, 0, 1]])
    S5b = _mat(nv, [[1 - hhalf * f2, 0, -hhalf * f2 * f2], [0, 1, 0],
                    [hhalf, 0, 1 + hhalf * f2]])
    S7b = _mat(nv, [[1 - hhalf * f1, -hhalf * f1 * f1, 0],
                    [hhalf, 1 + hhalf * f1, 0], [0, 0, 1]])
    w = {
        "S1": (Template(1, 3, 4, 1, -hp), Template(1, 3, 4, 2, -hp * F)),
        "S3": (Template(1, 1, 4, 2, -hp * F * f2),
               Template(1, 1, 4, 3, hp * F * f2)),
        "S4": (Template(1, 1, 4, 2, -hp * f1 * f2),
               Template(1, 3, 4, 2, hp * f1)),
        "S5": (PowerM(embed_block(S5b, 4)),),
        "S6": (Template(1, 1, 4, 3, -hp * f1 * f2),
               Template(1, 2, 4, 3, hp * f2)),
        "S7": (PowerM(embed_block(S7b, 4)),),
    }
    steps: List[Step] = [
        MemberStep("base transvection", _elem3(nv, 2, 1, h),
                   IAmWitness(4, m, (Template(1, 2, 4, 1, hp),))),
        ExactStep("sandwiched block",
                  (_elem3(nv, 1, 2, -F), _elem3(nv, 2, 1, h),
                   _elem3(nv, 1, 2, F)), (MS,)),
        ExactStep("two-factor split", (MS,), (G1, G2)),
        ExactStep("four-factor split", (G1, G2), (Lm, Um, Lp, Up)),
        ExactStep("bracketed regroup", (Lm, Um, Lp, Up),
                  (S1,
                   Um, _elem3(nv, 3, 2, h * f2), Up,
                   C2m, L1p, C2p,
                   C2m, L1p.inv(), U1m, L1p, U1p, C2p)),
        ExactStep("seven-factor form",
                  (S1, Um, _elem3(nv, 3, 2, h * f2), Up,
                   C2m, L1p, C2p,
                   C2m, L1p.inv(), U1m, L1p, U1p, C2p),
                  (S1, S2, S3, S4, S5, S6, S7)),
        CongruenceStep(
            "single kept factor", (S1, S2, S3, S4, S5, S6, S7),
            tuple(RhsItem(False, M, IAmWitness(4, m, w[lbl]))
                  if lbl != "S2" else RhsItem(True, M)
                  for lbl, M in (("S1", S1), ("S2", S2), ("S3", S3),
                                 ("S4", S4), ("S5", S5), ("S6", S6),
                                 ("S7", S7)))),
        _congruence_from_line("exchange through the block pair", S2,
                              [_mat(nv, [[1 - h * f2, -h, 0],
                                         [h * f2 * f2, 1 + h * f2, 0],
                                         [0, 0, 1]]),
                               _mat(nv, [[1 + h * f2, 0, h],
                                         [0, 1, 0],
                                         [-h * f2 * f2, 0, 1 - h * f2]])],
                              -h, [("om", 0, -hp)], f2, m, 4),
    ]
    keeps = [it.mat for it in steps[-1].rhs if it.keep]
    K1b = _mat(nv, [[1 - hhalf * f2, -hhalf, 0],
                    [hhalf * f2 * f2, 1 + hhalf * f2, 0], [0, 0, 1]])
    K2b = _mat(nv, [[1 + hhalf * f2, 0, hhalf], [0, 1, 0],
                    [-hhalf * f2 * f2, 0, 1 - hhalf * f2]])
    steps.append(CongruenceStep(
        "kept pair vanishes", tuple(keeps),
        (RhsItem(False, keeps[0],
                 IAmWitness(4, m, (PowerM(embed_block(K1b, 4)),))),
         RhsItem(False, keeps[1],
                 IAmWitness(4, m, (PowerM(embed_block(K2b, 4)),))))))
    params = (SymbolicParam("hp", 5, ("bar", 4)), SymbolicParam("f1", 6),
              SymbolicParam("f2", 7))
    return ChainScript("sum-split", 4, m, nv, params, tuple(steps),
                       "conjugated transvections add over the conjugator")


def build_power_split(*, m: int = 2) -> ChainScript:
    """A conjugated block with parameter h1 + h2 splits into h1 and h2 parts."""
    nv = 7
    f5, h1, h2 = _xv(5, nv), _xv(6, nv), _xv(7, nv)
    f = _sg(4, nv) * f5
    A = _gl3_conjugator(nv)
    Ai = A.inv()
    F = h1 + h2

    def C(t: LaurentPoly) -> PolyMatrix:
        mt = t * m
        return _mat(nv, [[1 - f * mt, f, 0], [-f * mt * mt, 1 + f * mt, 0],
                         [0, 0, 1]])

    NE = _elem3(nv, 1, 2, -f)
    mF = _P(nv, m) * F
    G1 = _mat(nv, [[1, 0, -f], [0, 1, -f * mF], [-mF, 1, 1]])
    G2 = _mat(nv, [[1, 0, f], [0, 1, f * mF], [mF, -1, 1]])
    Lm = _mat(nv, [[1, 0, 0], [0, 1, 0], [-mF, 1, 1]])
    Um = _elem3(nv, 1, 3, -f) * _elem3(nv, 2, 3, -f * mF)
    Lp = _mat(nv, [[1, 0, 0], [0, 1, 0], [mF, -1, 1]])
    Up = Um.inv()
    mh1, mh2 = h1 * m, h2 * m
    L1m = _mat(nv, [[1, 0, 0], [0, 1, 0], [-mh1, 1, 1]])
    U1m = _elem3(nv, 1, 3, -f) * _elem3(nv, 2, 3, -f * mh1)
    L1p = _mat(nv, [[1, 0, 0], [0, 1, 0], [mh1, -1, 1]])
    U1p = U1m.inv()
    L2m, L2p = _elem3(nv, 3, 1, -mh2), _elem3(nv, 3, 1, mh2)
    W = _elem3(nv, 2, 3, -f * mh2)
    Wb = _elem3(nv, 2, 3, -f * h2)
    V = _elem3(nv, 2, 3, f * F)
    Z = _elem3(nv, 1, 2, -f) * _elem3(nv, 1, 3, f)
    Vp = (Ai * V * A) ** m
    PW1 = (Ai * Lm * Wb * Lp * A) ** m
    Y1 = _elem3(nv, 3, 1, f * mh1 * h2) * _elem3(nv, 3, 2, -f * h2)
    PY1 = (Ai * Y1 * A) ** m
    NE13 = _elem3(nv, 1, 3, -f)
    U23h1 = _elem3(nv, 2, 3, -f * h1)
    PU23 = (Ai * L2m * U23h1 * L2p * A) ** m
    Y3 = _elem3(nv, 1, 2, f * f * h2) * _elem3(nv, 3, 2, -(f * h2) ** 2 * m)
    PY3 = (Ai * Y3 * A) ** m
    X5 = _mat(nv, [[1 - f * mh2, 0, -f], [0, 1, 0],
                   [f * mh2 * mh2, 0, 1 + f * mh2]])
    IpfE12, IpfE13 = _elem3(nv, 1, 2, f), _elem3(nv, 1, 3, f)
    # corner-to-row exchange: X5 (I + f E13) = C(h2) NE W5  exactly, where
    # W5 factors into three conjugated m-th powers
    t = f * h2
    Mb = _mat(nv, [[1, 0, 0], [0, 1 + t, t], [0, -t, 1 - t]])
    Y6b = _elem3(nv, 2, 1, f * m * h2 * h2) * _elem3(nv, 2, 3, f * h2)
    Y7b = _elem3(nv, 3, 1, f * m * h2 * h2) * _elem3(nv, 3, 2, -f * h2)
    W5 = NE.inv() * C(h2).inv() * X5 * IpfE13
    g1, g2 = C(h2) * NE * A, NE * A
    w_w5 = (
        PowerM(embed_block(g1.inv() * Y6b * g1, 4)),
        PowerM(embed_block(g2.inv() * Y7b * g2, 4)),
        Inv(PowerM(embed_block(g2.inv() * Mb * g2, 4))),
    )
    steps: Tuple[Step, ...] = (
        ExactStep("two-factor split", (Ai, C(F), NE, A), (Ai, G1, G2, NE, A)),
        ExactStep("four-factor split", (Ai, G1, G2, NE, A),
                  (Ai, Lm, Um, Lp, Up, NE, A)),
        ExactStep("bracketed regroup", (Ai, Lm, Um, Lp, Up, NE, A),
                  (Ai, L2m, L1m, U1m, L1p, U1p, U1m, L2p, A,
                   Ai, Lm, W, Lp, A, Vp, Ai, Z, A)),
        CongruenceStep(
            "first reduction",
            (Ai, L2m, L1m, U1m, L1p, U1p, U1m, L2p, A,
             Ai, Lm, W, Lp, A, Vp, Ai, Z, A),
            (RhsItem(True, Ai), RhsItem(True, L2m), RhsItem(True, C(h1)),
             RhsItem(True, U1m), RhsItem(True, L2p), RhsItem(True, A),
             RhsItem(True, PW1),
             RhsItem(False, Vp,
                     IAmWitness(4, m, (PowerM(embed_block(Ai * V * A, 4)),))),
             RhsItem(True, Ai), RhsItem(True, Z), RhsItem(True, A))),
        CongruenceStep(
            "second reduction",
            (Ai, L2m, C(h1), U1m, L2p, A, PW1, Ai, Z, A),
            (RhsItem(True, Ai),
             RhsItem(True, L2m), RhsItem(True, C(h1)), RhsItem(True, L2p),
             RhsItem(True, L2m), RhsItem(True, NE13), RhsItem(True, L2p),
             RhsItem(True, L2m), RhsItem(True, _elem3(nv, 2, 3, -f * mh1)),
             RhsItem(True, L2p), RhsItem(True, A),
             RhsItem(False, PW1,
                     IAmWitness(4, m,
                                (PowerM(embed_block(Ai * Lm * Wb * Lp * A,
                                                    4)),))),
             RhsItem(True, Ai), RhsItem(True, Z), RhsItem(True, A))),
        ExactStep("powers isolated",
                  (Ai, L2m, C(h1), L2p, L2m, NE13, L2p,
                   L2m, _elem3(nv, 2, 3, -f * mh1), L2p, A, Ai, Z, A),
                  (Ai, C(h1), A, PY1, Ai, L2m, NE13, L2p, A, PU23,
                   Ai, Z, A)),
        CongruenceStep(
            "third reduction",
            (Ai, C(h1), A, PY1, Ai, L2m, NE13, L2p, A, PU23, Ai, Z, A),
            (RhsItem(True, Ai), RhsItem(True, C(h1)), RhsItem(True, A),
             RhsItem(False, PY1,
                     IAmWitness(4, m, (PowerM(embed_block(Ai * Y1 * A, 4)),))),
             RhsItem(True, Ai), RhsItem(True, L2m), RhsItem(True, NE13),
             RhsItem(True, L2p), RhsItem(True, A),
             RhsItem(False, PU23,
                     IAmWitness(4, m,
                                (PowerM(embed_block(Ai * L2m * U23h1 * L2p * A,
                                                    4)),))),
             RhsItem(True, Ai), RhsItem(True, Z), RhsItem(True, A))),
        ExactStep("corner conjugation exposed",
                  (Ai, C(h1), L2m, NE13, L2p, Z, A),
                  (Ai, C(h1), NE, IpfE12, X5, IpfE12.inv(), IpfE13, A)),
        ExactStep("last power isolated",
                  (Ai, C(h1), NE, IpfE12, X5, IpfE12.inv(), IpfE13, A),
                  (Ai, C(h1), NE, A, PY3, Ai, X5, IpfE13, A)),
        CongruenceStep(
            "fourth reduction",
            (Ai, C(h1), NE, A, PY3, Ai, X5, IpfE13, A),
            (RhsItem(True, Ai), RhsItem(True, C(h1)), RhsItem(True, NE),
             RhsItem(True, A),
             RhsItem(False, PY3,
                     IAmWitness(4, m, (PowerM(embed_block(Ai * Y3 * A, 4)),))),
             RhsItem(True, Ai), RhsItem(True, X5), RhsItem(True, IpfE13),
             RhsItem(True, A))),
        CongruenceStep(
            "corner to row transvection",
            (Ai, C(h1), NE, A, Ai, X5, IpfE13, A),
            (RhsItem(True, Ai), RhsItem(True, C(h1)), RhsItem(True, NE),
             RhsItem(True, A),
             RhsItem(True, Ai), RhsItem(True, C(h2)), RhsItem(True, NE),
             RhsItem(True, A),
             RhsItem(False, Ai * W5 * A, IAmWitness(4, m, w_w5)))),
        ExactStep("reassembled split",
                  (Ai, C(h1), NE, A, Ai, C(h2), NE, A),
                  (Ai, C(h1), NE, C(h2), NE, A)),
    )
    params = (SymbolicParam("f5", 5), SymbolicParam("h1", 6),
              SymbolicParam("h2", 7))
    return ChainScript("power-split", 4, m, nv, params, steps,
                       "conjugated block with summed parameter splits in two")


# -- remaining displays: generator factorizations and scalar identities --------


def build_suslin_factorizations(*, m: int = 2) -> ChainScript:
    """The planar-rotation generator splits into conjugated transvections."""
    nv = 3
    h, f1, f2 = _xv(1, nv), _xv(2, nv), _xv(3, nv)
    Q = _mat(nv, [[1 + h * f1 * f2, -h * f1 * f1, 0],
                  [h * f2 * f2, 1 - h * f1 * f2, 0], [0, 0, 1]])
    L = _mat(nv, [[1, 0, 0], [0, 1, 0], [f2, -f1, 1]])
    U1 = _elem3(nv, 1, 3, -h * f1)
    U2 = _elem3(nv, 2, 3, -h * f2)
    U = U1 * U2
    L2 = _elem3(nv, 3, 1, f2)
    L1 = _elem3(nv, 3, 2, -f1)
    steps: Tuple[Step, ...] = (
        ExactStep("two-factor split", (Q,),
                  (_mat(nv, [[1, 0, -h * f1], [0, 1, -h * f2], [f2, -f1, 1]]),
                   _mat(nv, [[1, 0, h * f1], [0, 1, h * f2], [-f2, f1, 1]]))),
        ExactStep("conjugation form", (Q,), (L, U, L.inv(), U.inv())),
        ExactStep("column split", (U.inv(),),
                  (_elem3(nv, 1, 3, h * f1), _elem3(nv, 2, 3, h * f2))),
        ExactStep("conjugate splits", (L, U, L.inv()),
                  (L, U1, L.inv(), L, U2, L.inv())),
        ExactStep("first bracket", (L, U1, L.inv()),
                  (_elem3(nv, 3, 2, -h * f1 * f1 * f2),
                   _elem3(nv, 1, 2, -h * f1 * f1),
                   L2, U1, L2.inv())),
        ExactStep("second bracket", (L, U2, L.inv()),
                  (_elem3(nv, 3, 1, -h * f1 * f2 * f2),
                   _elem3(nv, 2, 1, h * f2 * f2),
                   L1, U2, L1.inv())),
    )
    params = (SymbolicParam("h", 1), SymbolicParam("f1", 2),
              SymbolicParam("f2", 3))
    return ChainScript("suslin-factorizations", 4, m, nv, params, steps,
                       "relative elementary generators reduce to conjugated "
                       "transvections")


def build_nine_factor(*, m: int = 2) -> ChainScript:
    """Conjugated planar block split into nine conjugated factors."""
    nv = 6
    f, h = _xv(5, nv), _xv(6, nv)
    A = _gl3_conjugator(nv)
    Ai = A.inv()
    LHS = _mat(nv, [[1 - f * h, -f * h, 0], [f * h, 1 + f * h, 0], [0, 0, 1]])
    F1 = _mat(nv, [[1, 0, 0], [f * h, 1, 0], [f * h * h, 0, 1]])
    F2 = _mat(nv, [[1, 0, 0], [0, 1 + f * h, -f], [0, f * h * h, 1 - f * h]])
    F3 = _elem3(nv, 2, 3, f)
    F4 = _elem3(nv, 2, 3, -f)
    F5 = _mat(nv, [[1, -f * h, 0], [0, 1, 0], [0, -f * h * h, 1]])
    F7 = _mat(nv, [[1 - f * h, 0, f], [0, 1, 0],
                   [-f * h * h, 0, 1 + f * h]])
    F8 = _mat(nv, [[1, 0, 0], [f * f * h * h, 1, -f * f * h], [0, 0, 1]])
    F9 = _elem3(nv, 1, 3, -f)
    steps: Tuple[Step, ...] = (
        ExactStep("nine-factor split", (Ai, LHS, A),
                  (Ai, F1, A, Ai, F2, F3, A, Ai, F4, A, Ai, F5, A,
                   Ai, F3, A, Ai, F7, A, Ai, F8, A, Ai, F9, A)),
        ExactStep("auxiliary exchange", (F4, F7, F3), (F7, F8)),
        ExactStep("block as conjugated transvection", (LHS,),
                  (_elem3(nv, 2, 1, _P(nv, -1)), _elem3(nv, 1, 2, -f * h),
                   _elem3(nv, 2, 1, _P(nv, 1)))),
    )
    params = (SymbolicParam("f", 5), SymbolicParam("h", 6))
    return ChainScript("nine-factor-split", 4, m, nv, params, steps,
                       "conjugated commutator block rewritten across the "
                       "third row and column")


def build_unit_block_commutators(*, m: int = 2) -> ChainScript:
    """Commutators of the diagonal unit block with elementary generators."""
    nv = 2
    x = _xv(1, nv)
    r = _xv(2, nv)
    xm = _xv(1, nv, m)       # x^m
    d = 4
    I = PolyMatrix.identity(d, nv)

    def el(i: int, j: int, c: LaurentPoly) -> PolyMatrix:
        rows = [list(row) for row in I.rows]
        rows[i - 1][j - 1] = rows[i - 1][j - 1] + c
        return PolyMatrix(d, nv, tuple(tuple(row) for row in rows))

    D = el(1, 1, xm - 1)
    one = _P(nv, 1)
    T3 = el(1, 3, r)
    T4 = el(3, 1, r)
    U1 = el(1, 1, x - 1)
    U2 = el(2, 3, r)
    steps: Tuple[Step, ...] = (
        ExactStep("row commutator", (D, T3, D.inv(), T3.inv()),
                  (el(1, 3, r * (xm - 1)),)),
        ExactStep("column commutator", (D, T4, D.inv(), T4.inv()),
                  (el(3, 1, r * (_xv(1, nv, -m) - 1)),)),
        ExactStep("diagonal commutes", (D, U1, D.inv(), U1.inv()), (I,)),
        ExactStep("interior commutes", (D, U2, D.inv(), U2.inv()), (I,)),
    )
    params = (SymbolicParam("r", 2),)
    return ChainScript("unit-block-commutators", 4, m, nv, params, steps,
                       "diagonal unit block normalizes the relative "
                       "elementary subgroup")


def build_det_reduction(*, m: int = 2, t: int = 1) -> ChainScript:
    """The determinant of the corner power and its scalar ideal witness."""
    nv = 4
    e = m ** 4 * t
    E = ia_generator_E(1, 1, 4, 4, nvars=nv).M
    x = _xv(4, nv)
    geo = _P(nv, 0)
    for i in range(e):
        geo = geo + _xv(4, nv, i)           # 1 + x + ... + x^{e-1}
    A4 = _P(nv, 0)
    for i in range(m * m):
        A4 = A4 + _xv(4, nv, i)             # 1 + x + ... + x^{m^2-1}
    q = _P(nv, 0)
    for j in range(m * m):
        for i in range(j):
            q = q + _xv(4, nv, m * m * i)
    corner = _mat(nv, [[_xv(4, nv, e), 0, 0], [0, 1, 0], [0, 0, 1]])
    half = _mat(nv, [[_xv(4, nv, e // m), 0, 0], [0, 1, 0], [0, 0, 1]])
    xm2 = _xv(4, nv, m * m) - 1
    steps: Tuple[Step, ...] = (
        DetStep("corner power determinant", (E ** e,), _xv(4, nv, e)),
        MemberStep("corner power is an m-th power", corner,
                   IAmWitness(4, m, (PowerM(embed_block(half, 4)),))),
        ExactStep("unit as one plus multiple",
                  (_mat(nv, [[_xv(4, nv, e)]]),),
                  (_mat(nv, [[1 + _sg(4, nv) * geo]]),)),
        ExactStep("geometric sum in the level ideal",
                  (_mat(nv, [[geo]]),),
                  (_mat(nv, [[xm2 * (q * A4) + A4 * (m * m)]]),)),
        ExactStep("unit witness recombines",
                  (_mat(nv, [[_xv(4, nv, e)]]),),
                  (_mat(nv, [[1 + _sg(4, nv) *
                              (xm2 * (q * A4) + A4 * (m * m))]]),)),
    )
    return ChainScript("det-reduction", 4, m, nv, (), steps,
                       "corner determinant is a congruence-level unit")


def build_scalar_ideal_split(*, m: int = 2) -> ChainScript:
    """x^{m^2}-1 splits across the squared-augmentation ideal summands."""
    nv = 4
    x = _xv(4, nv)
    sig = _sg(4, nv)
    xm1 = _xv(4, nv, m) - 1
    A = _P(nv, 0)
    B = _P(nv, 0)
    C = _P(nv, 0)
    for j in range(m):
        A = A + _xv(4, nv, j)
        for i in range(j):
            B = B + _xv(4, nv, i)
            C = C + _xv(4, nv, m * i)
    Am = _P(nv, 0)
    for j in range(m):
        Am = Am + _xv(4, nv, m * j)
    lhs = _mat(nv, [[_xv(4, nv, m * m) - 1]])
    steps: Tuple[Step, ...] = (
        ExactStep("geometric factorization", (lhs,),
                  (_mat(nv, [[sig * A * Am]]),)),
        ExactStep("first factor split", (_mat(nv, [[A]]),),
                  (_mat(nv, [[sig * B + m]]),)),
        ExactStep("second factor split", (_mat(nv, [[Am]]),),
                  (_mat(nv, [[xm1 * C + m]]),)),
        ExactStep("three-ideal recombination", (lhs,),
                  (_mat(nv, [[sig * sig * xm1 * (B * C) +
                              sig * sig * (B + A * C) * m +
                              sig * (m * m)]]),)),
    )
    return ChainScript("scalar-ideal-split", 4, m, nv, (), steps,
                       "level-m^2 scalar lies in the graded ideal sum")


# -- suite registry ------------------------------------------------------------

_BUILDERS: Dict[str, Callable[[], ChainScript]] = {
    "five-factor-a": lambda: build_comp(1, False, name="five-factor-a"),
    "five-factor-b": lambda: build_comp(1, True, name="five-factor-b"),
    "five-factor-c": lambda: build_comp(3, False, name="five-factor-c"),
    "five-factor-d": lambda: build_comp(3, True, name="five-factor-d"),
    "block-pair-cong-1": lambda: build_cor_comp(1),
    "block-pair-cong-2": lambda: build_cor_comp(2),
    "block-pair-cong-3": lambda: build_cor_comp(3),
    "block-pair-cong-4": lambda: build_cor_comp(4),
    "block-pair-cong-5": lambda: build_cor_comp(5),
    "block-pair-cong-6": lambda: build_cor_comp(6),
    "row-family-xk": build_template_family2,
    "row-family-sigma": build_template_family3,
    "power-transfer": build_power_transfer,
    "stage-conjugations": build_stage,
    "stage-units": build_stage_units,
    "commutator-exchange": build_commutator_exchange,
    "induction-base": build_induction_base,
    "induction-step": build_induction_step,
    "sum-split": build_sum_split,
    "power-split": build_power_split,
    "suslin-factorizations": build_suslin_factorizations,
    "nine-factor-split": build_nine_factor,
    "unit-block-commutators": build_unit_block_commutators,
    "det-reduction": build_det_reduction,
    "scalar-ideal-split": build_scalar_ideal_split,
}

#: One-line description of what each suite script certifies.
COVERAGE: Dict[str, str] = {
    "five-factor-a": "five-factor product identity for the (1,2)-plane block",
    "five-factor-b": "sign-flipped variant of the five-factor identity",
    "five-factor-c": "five-factor identity with the row variant",
    "five-factor-d": "sign-flipped row variant",
    "block-pair-cong-1": "congruence: block pair one, with certified drops",
    "block-pair-cong-2": "congruence: block pair two, with certified drops",
    "block-pair-cong-3": "congruence: block pair three, with certified drops",
    "block-pair-cong-4": "congruence: block pair four, with certified drops",
    "block-pair-cong-5": "congruence: block pair five, with certified drops",
    "block-pair-cong-6": "congruence: block pair six, with certified drops",
    "row-family-xk": "row template of grading (x_k^m - 1) as a commutator",
    "row-family-sigma": "row template of grading sigma_u (x_u^m - 1)",
    "power-transfer": "conjugation commutes with m-th powers",
    "stage-conjugations": "corner transvections moved into witnessed rows",
    "stage-units": "unit-coefficient corner conjugation displays",
    "commutator-exchange": "row/column transvection commutators exchanged",
    "induction-base": "base commutator with a direct witness",
    "induction-step": "free-transvection conjugation preserves the class",
    "sum-split": "conjugators add: f1 + f2 splits into f1 and f2 parts",
    "power-split": "block parameter h1 + h2 splits under conjugation",
    "suslin-factorizations": "relative generators from conjugated transvections",
    "nine-factor-split": "nine-factor split of a conjugated commutator block",
    "unit-block-commutators": "diagonal unit block normalizes the subgroup",
    "det-reduction": "corner determinant is a congruence-level unit",
    "scalar-ideal-split": "scalar level identity in the graded ideal sum",
}


def script_names() -> List[str]:
    return sorted(_BUILDERS)


def get_script(name: str) -> ChainScript:
    if name not in _BUILDERS:
        raise VerifyError(f"unknown chain script: {name!r}")
    return _BUILDERS[name]()


def builtin_suite() -> List[ChainScript]:
    return [get_script(name) for name in script_names()]
