import pytest

from iakit.ia import PolyMatrix
from iakit.ksym import (GroupRingZmZmn, KsymError, LaurentSRing, SBarRing,
                        ZRing, ZmodRing, det_dm_split,
                        dm_normality_identities, mat_eq, mat_identity,
                        sbar_ops, st_eval, st_gen, st_lift_eval,
                        st_symbol_word)
from iakit.ring import IdealRef, LaurentPoly, ModGroupRingElem, lp_parse


def units_of(ring, candidates):
    out = []
    for u in candidates:
        try:
            ring.inv(u)
            out.append(u)
        except (KsymError, ZeroDivisionError, ValueError):
            pass
    return out


# -- Steinberg words and symbols --------------------------------------------------

def test_symbol_word_has_eighteen_tokens():
    ring = ZmodRing(5)
    w = st_symbol_word(ring.from_int(2), ring.from_int(3), ring=ring)
    assert len(w.tokens) == 18


def test_symbol_trivial_over_z5_all_unit_pairs():
    ring = ZmodRing(5)
    units = [ring.from_int(k) for k in (1, 2, 3, 4)]
    for d in (3, 4):
        eye = mat_identity(d, ring)
        for u in units:
            for v in units:
                w = st_symbol_word(u, v, ring=ring)
                assert mat_eq(st_eval(w, d, ring), eye, ring)


def test_symbol_trivial_over_z2z2_units():
    ring = GroupRingZmZmn(2, 1)
    one = ring.from_int(1)
    x = ModGroupRingElem.var(1, 1, 2)
    units = units_of(ring, [one, x])
    assert len(units) == 2
    for d in (3, 4):
        eye = mat_identity(d, ring)
        for u in units:
            for v in units:
                w = st_symbol_word(u, v, ring=ring)
                assert mat_eq(st_eval(w, d, ring), eye, ring)


def test_lift_lands_in_block_form_z_mod_5():
    ring = ZmodRing(5)
    w = st_symbol_word(ring.from_int(2), ring.from_int(3), ring=ring)
    lift = lambda r: LaurentPoly.const(1, int(r))
    ideal = lambda p: all(c % 5 == 0 for _, c in p.terms)
    M = st_lift_eval(w, lift, 3, ideal)
    # 2x2 corner, identity elsewhere, det 1 and congruent to I mod 5
    assert M.det() == LaurentPoly.one(1)
    assert M.rows[2][2] == LaurentPoly.one(1)
    assert M.rows[0][2].is_zero() and M.rows[2][0].is_zero()


def test_lift_lands_in_block_form_group_ring():
    ring = GroupRingZmZmn(2, 1)
    x = ModGroupRingElem.var(1, 1, 2)
    w = st_symbol_word(x, x, ring=ring)
    lift = lambda r: LaurentPoly.from_dict(1, {e: c for e, c in r.terms})
    M = st_lift_eval(w, lift, 3, IdealRef.J(2))
    assert M.det() == LaurentPoly.one(1)
    assert M.rows[2][2] == LaurentPoly.one(1)


def test_lift_failure_raises():
    ring = ZmodRing(5)
    w = st_symbol_word(ring.from_int(2), ring.from_int(3), ring=ring)
    lift = lambda r: LaurentPoly.const(1, int(r))
    with pytest.raises(KsymError):
        # an ideal nothing nonzero belongs to: congruence check must fail
        st_lift_eval(w, lift, 3, lambda p: p.is_zero())


# -- relative-subgroup normality identities -----------------------------------------

def test_dm_normality_grid():
    for d in (3, 4):
        for m in (2, 3):
            for k in (1, 2):
                for j in range(2, d + 1):
                    assert dm_normality_identities(d, m, k, j)


def test_dm_normality_rejects_bad_indices():
    with pytest.raises(KsymError):
        dm_normality_identities(2, 2, 1, 2)


def test_det_dm_split():
    m = 3
    x = LaurentPoly.var(1, 1)
    A = PolyMatrix.from_rows([
        [x ** m, LaurentPoly.zero(1)],
        [LaurentPoly.zero(1), LaurentPoly.one(1)]])
    k, sl = det_dm_split(A, m)
    assert k == 1
    assert sl.det() == LaurentPoly.one(1)
    with pytest.raises(KsymError):
        det_dm_split(PolyMatrix.from_rows([[x]]), m)  # det x, not x^{km}


# -- truncated unit identities -------------------------------------------------------

def test_sbar_unit_identity():
    for p, l in ((2, 1), (2, 2), (3, 1)):
        assert sbar_ops(p, l).verify_unit_identity()


def test_sbar_rejects_composite_p():
    with pytest.raises(KsymError):
        sbar_ops(4, 1)


def test_s_to_sbar_is_a_homomorphism():
    ops = sbar_ops(2, 1)
    a = lp_parse("x1 + 1", 1)
    b = lp_parse("x1^2 - 3", 1)
    assert ops.s_to_sbar(a * b) == ops.mul(ops.s_to_sbar(a), ops.s_to_sbar(b))
    assert ops.s_to_sbar(a + b) == ops.add(ops.s_to_sbar(a), ops.s_to_sbar(b))


# -- small coefficient rings ----------------------------------------------------------

def test_zmod_ring_ops():
    r = ZmodRing(4)
    assert r.mul(r.from_int(2), r.from_int(3)) == r.from_int(6)
    assert r.inv(r.from_int(3)) == r.from_int(3)
    with pytest.raises(KsymError):
        r.inv(r.from_int(2))


def test_laurent_s_ring_inverts_monomials():
    r = LaurentSRing(1)
    x = LaurentPoly.var(1, 1)
    assert r.mul(x, r.inv(x)) == r.one
    with pytest.raises(KsymError):
        r.inv(lp_parse("x1 + 1", 1))
