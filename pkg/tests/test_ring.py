import random

import pytest

from iakit.ring import (IdealRef, LaurentPoly, ModGroupRingElem, NotDivisible,
                        RingError, hm2_in_tm_witness, ideal_member, lp_arith,
                        lp_divide_exact, lp_parse, lp_reduce_mod_Hm,
                        lp_specialize, unit_check, _packed_mul)

from conftest import rand_poly


# -- constructors and parsing -------------------------------------------------

def test_parse_round_trip():
    f = lp_parse("x1^2*x2^-1 - 3*x3 + 7", 3)
    assert f == (LaurentPoly.var(1, 3, 2) * LaurentPoly.var(2, 3, -1)
                 - 3 * LaurentPoly.var(3, 3) + 7)
    assert lp_parse(str(f), 3) == f


def test_parse_rejects_unknown_variable():
    with pytest.raises(RingError):
        lp_parse("x5", 3)


def test_sigma_is_x_minus_one():
    assert LaurentPoly.sigma(2, 3) == LaurentPoly.var(2, 3) - 1


def test_zero_and_one():
    assert LaurentPoly.zero(2).is_zero()
    assert not LaurentPoly.one(2).is_zero()
    assert LaurentPoly.one(2) == LaurentPoly.const(2, 1)


# -- ring laws ----------------------------------------------------------------

def test_ring_laws_randomized():
    rng = random.Random(11)
    for _ in range(150):
        nv = rng.randint(1, 4)
        a, b, c = (rand_poly(rng, nv) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + LaurentPoly.zero(nv) == a
        assert a * LaurentPoly.one(nv) == a
        assert (a - a).is_zero()


def test_pow_including_negative_units():
    x = LaurentPoly.var(1, 2)
    assert x ** -3 == LaurentPoly.var(1, 2, -3)
    f = lp_parse("x1 + 1", 2)
    assert f ** 3 == f * f * f
    assert f ** 0 == LaurentPoly.one(2)


def test_packed_mul_matches_sparse_loop():
    rng = random.Random(5)
    for _ in range(100):
        nv = rng.randint(1, 4)
        a = rand_poly(rng, nv, max_terms=40, span=2, cmax=10 ** 6)
        b = rand_poly(rng, nv, max_terms=40, span=2, cmax=10 ** 6)
        data = {}
        for e1, c1 in a.terms:
            for e2, c2 in b.terms:
                e = tuple(x + y for x, y in zip(e1, e2))
                data[e] = data.get(e, 0) + c1 * c2
        ref = LaurentPoly.from_dict(nv, data)
        got = _packed_mul(a, b)
        if got is not None:
            assert got == ref
        assert a * b == ref


# -- division and specialization ----------------------------------------------

def test_divide_sigma_exact():
    rng = random.Random(3)
    for _ in range(60):
        nv = rng.randint(2, 4)
        i = rng.randint(1, nv)
        q = rand_poly(rng, nv)
        f = q * LaurentPoly.sigma(i, nv)
        assert f.divide_sigma(i) == q


def test_divide_sigma_rejects_non_multiple():
    with pytest.raises(NotDivisible):
        LaurentPoly.one(2).divide_sigma(1)


def test_lp_divide_exact_wrapper():
    f = LaurentPoly.sigma(1, 2) * lp_parse("x2 + 2", 2)
    assert lp_divide_exact(f, 1) == lp_parse("x2 + 2", 2)


def test_specialize():
    f = lp_parse("x1*x2 - x2 + 4", 2)
    assert lp_specialize(f, [1]) == lp_parse("4", 2)
    assert f.specialize([2]) == lp_parse("x1 + 3", 2)


def test_unit_check():
    assert unit_check(lp_parse("x1^2*x2^-1", 2)) == (1, (2, -1))
    assert unit_check(lp_parse("-x1", 2)) == (-1, (1, 0))
    assert unit_check(lp_parse("x1 + 1", 2)) is None
    assert unit_check(LaurentPoly.zero(2)) is None


# -- quotient ring and the reduction homomorphism -------------------------------

def test_reduce_mod_hm_is_a_ring_homomorphism():
    rng = random.Random(7)
    for _ in range(120):
        nv = rng.randint(1, 3)
        m = rng.choice([2, 3, 4])
        a, b = rand_poly(rng, nv), rand_poly(rng, nv)
        assert (a + b).reduce_mod_hm(m) == \
            a.reduce_mod_hm(m) + b.reduce_mod_hm(m)
        assert (a * b).reduce_mod_hm(m) == \
            a.reduce_mod_hm(m) * b.reduce_mod_hm(m)


def test_reduce_mod_hm_kernel():
    # x_i^m - 1 and m both vanish in the quotient
    for m in (2, 3):
        assert lp_reduce_mod_Hm(lp_parse(f"x1^{m} - 1", 2), m).is_zero()
        assert lp_reduce_mod_Hm(LaurentPoly.const(2, m), m).is_zero()
    assert not lp_reduce_mod_Hm(lp_parse("x1 - 1", 2), 2).is_zero()


def test_mod_group_ring_arithmetic():
    a = ModGroupRingElem.var(1, 2, 2)
    assert a * a == ModGroupRingElem.one(2, 2)
    assert (a + a).is_zero()


# -- structured ideal membership ------------------------------------------------

def test_ideal_member_augmentation():
    assert ideal_member(LaurentPoly.sigma(1, 2), IdealRef.augmentation())
    assert ideal_member(lp_parse("x1*x2 - 1", 2), IdealRef.augmentation())
    assert not ideal_member(LaurentPoly.one(2), IdealRef.augmentation())


def test_ideal_member_sigma_principal():
    f = LaurentPoly.sigma(2, 3) * lp_parse("x1 + x3", 3)
    assert ideal_member(f, IdealRef.sigma_principal(2))
    assert not ideal_member(f, IdealRef.sigma_principal(1))


def test_ideal_member_H_and_J():
    m = 2
    f = lp_parse(f"x1^{m} - 1", 2) * lp_parse("x2", 2) + m * lp_parse("x1", 2)
    assert ideal_member(f, IdealRef.H(m))
    assert not ideal_member(LaurentPoly.one(2), IdealRef.H(m))
    g = lp_parse("x1^2 - 1", 1) + 2
    assert ideal_member(g, IdealRef.J(2))
    assert not ideal_member(lp_parse("x1 - 1", 1), IdealRef.J(2))


def test_ideal_member_sigma_times_H():
    m = 2
    f = LaurentPoly.sigma(1, 2) * (lp_parse(f"x2^{m} - 1", 2) + m)
    assert ideal_member(f, IdealRef.sigma_times_H(1, m))
    assert not ideal_member(LaurentPoly.sigma(1, 2),
                            IdealRef.sigma_times_H(1, m))


# -- the level-m² containment witness -------------------------------------------

def test_hm2_witness_recombines():
    for m in (2, 3):
        for i in (1, 2, 3, 4):
            w = hm2_in_tm_witness(i, m, 4)
            assert w.verify()


def test_lp_arith_kinds():
    a, b = lp_parse("x1 + 1", 1), lp_parse("x1 - 1", 1)
    assert lp_arith(a, b, "add") == lp_parse("2*x1", 1)
    assert lp_arith(a, b, "sub") == lp_parse("2", 1)
    assert lp_arith(a, b, "mul") == lp_parse("x1^2 - 1", 1)
    with pytest.raises(RingError):
        lp_arith(a, b, "div")
