import random

import pytest

from iakit.elem import (Conj, ElemToken, IAmWitness, Inv, PowerM,
                        SuslinGenerator, Template, TmComponent, WitnessError,
                        WitnessedSuslin, decompose_form, elem_eval,
                        form1_power_identity_check, sec6_generator,
                        suslin_eval, template_value, witness_value,
                        witness_verify)
from iakit.ia import PolyMatrix, ia_validate
from iakit.ring import LaurentPoly, lp_parse

from conftest import rand_poly


# -- token and Suslin evaluation ----------------------------------------------

def test_elem_token_single():
    t = ElemToken(PolyMatrix.identity(3, 2), 1, 2, LaurentPoly.sigma(1, 2))
    assert elem_eval([t], 3) == \
        PolyMatrix.elementary(3, 1, 2, LaurentPoly.sigma(1, 2))


def test_elem_token_inverse_cancels():
    G = PolyMatrix.elementary(3, 2, 3, lp_parse("x1", 2))
    t = ElemToken(G, 1, 2, lp_parse("x2 - 1", 2))
    ti = ElemToken(G, 1, 2, lp_parse("x2 - 1", 2), inverse=True)
    assert elem_eval([t, ti], 3).is_identity()


def test_commuting_disjoint_tokens():
    I4 = PolyMatrix.identity(4, 2)
    a = ElemToken(I4, 1, 2, lp_parse("x1", 2))
    b = ElemToken(I4, 3, 4, lp_parse("x2", 2))
    assert elem_eval([a, b], 4) == elem_eval([b, a], 4)


def test_non_unit_conjugator_rejected():
    G = PolyMatrix.elementary(3, 1, 2, LaurentPoly.one(2)) + \
        PolyMatrix.elementary(3, 1, 2, LaurentPoly.one(2))
    t = ElemToken(G, 1, 2, LaurentPoly.one(2))
    with pytest.raises(WitnessError):
        t.value()


def test_suslin_eval_shape():
    f, h = lp_parse("x1", 2), lp_parse("x2 - 1", 2)
    g = SuslinGenerator(f, h, 1, 2, 3)
    v = suslin_eval(g)
    a = PolyMatrix.elementary(3, 1, 2, -f)
    b = PolyMatrix.elementary(3, 2, 1, h)
    c = PolyMatrix.elementary(3, 1, 2, f)
    assert v == a * b * c


# -- the witness calculus -------------------------------------------------------

def test_template_families_verify():
    m, n = 2, 4
    f = lp_parse("x1 + x2", n)
    for family, k in ((1, 0), (2, 1), (3, 0)):
        t = Template(family, 2, 1, 3, f, k=k)
        val = template_value(t, m, n)
        mat = ia_validate(val, n)
        w = IAmWitness(n, m, (t,))
        assert witness_verify(w, mat, m)


def test_template_rejects_equal_indices():
    with pytest.raises(WitnessError):
        template_value(Template(1, 2, 3, 3, LaurentPoly.one(4)), 2, 4)


def test_power_conj_inv_factors():
    m, n = 2, 4
    t = Template(1, 1, 2, 3, LaurentPoly.one(n))
    base = template_value(t, m, n)
    w = IAmWitness(n, m, (Inv(t), t))
    assert witness_verify(w, PolyMatrix.identity(n, n), m)
    # conjugation by an IA generator matrix
    from iakit.ia import ia_generator_E
    g = ia_generator_E(1, 2, 3, n).M
    w2 = IAmWitness(n, m, (Conj(g, (t,)),))
    assert witness_verify(w2, g.inv() * base * g, m)


def test_power_m_factor():
    m, n = 2, 4
    from iakit.ia import ia_generator_E
    half = ia_generator_E(1, 2, 3, n).M
    # an m-th power is witnessed by PowerM of its root
    w = IAmWitness(n, m, (PowerM(half),))
    assert witness_verify(w, half ** m, m)


def test_witness_rejects_wrong_value():
    m, n = 2, 4
    t = Template(1, 1, 2, 3, LaurentPoly.one(n))
    w = IAmWitness(n, m, (t,))
    assert not witness_verify(w, PolyMatrix.identity(n, n), m)


def test_sec6_generator_reverifies():
    m, n = 2, 4
    for family, k in ((1, 0), (2, 3), (3, 0)):
        mat, w = sec6_generator(family, 1, 2, 4, lp_parse("x3", n), m, n, k=k)
        assert witness_verify(w, mat, m)


def test_form1_power_identity():
    from iakit.ia import ia_generator_E
    A = ia_generator_E(2, 3, 4, 4).M
    assert form1_power_identity_check(A, lp_parse("x1 + 1", 4), 1, 2, 2, 4)


# -- the decomposition of witnessed Suslin products ------------------------------

def make_witnessed(rng, n, m, d, ngen=2):
    """Random WitnessedSuslin list whose residuals cancel generator-by-generator."""
    sig_n = LaurentPoly.sigma(n, n)
    out = []
    for _ in range(ngen):
        i = rng.randint(1, d)
        j = rng.randint(1, d)
        while j == i:
            j = rng.randint(1, d)
        f = sig_n * rand_poly(rng, n, max_terms=2, span=1, cmax=2)
        comps = [
            TmComponent("sig2U", rng.randint(1, n),
                        sig_n * rand_poly(rng, n, max_terms=2, span=1,
                                          cmax=2)),
            TmComponent("sigO", rng.randint(1, n),
                        sig_n * rand_poly(rng, n, max_terms=2, span=1,
                                          cmax=2)),
        ]
        # paired +c/-c summands: their x_n = 1 parts cancel, so the block
        # stays congruent to I mod sigma_n and the residual collapses
        c = rand_poly(rng, n, max_terms=2, span=1, cmax=2)
        comps.append(TmComponent("O2", 0, c))
        comps.append(TmComponent("O2", 0, -c))
        out.append(WitnessedSuslin(f, tuple(comps), i, j, d))
    return out


def product_of(witness, m):
    prod = None
    for g in witness:
        v = suslin_eval(g.generator(m))
        prod = v if prod is None else prod * v
    return prod


def test_decompose_form_round_trip():
    rng = random.Random(77)
    n, m, d = 5, 2, 3
    for _ in range(5):
        witness = make_witnessed(rng, n, m, d)
        B = product_of(witness, m)
        factors = decompose_form(B, witness, m, n)
        out = PolyMatrix.identity(d, B.nvars)
        for fac in factors:
            out = out * fac.value()
        assert out == B
        assert all(fac.check_ideals(m, n) for fac in factors)


def test_decompose_form_rejects_wrong_product():
    rng = random.Random(78)
    n, m, d = 5, 2, 3
    witness = make_witnessed(rng, n, m, d)
    with pytest.raises(WitnessError):
        decompose_form(PolyMatrix.identity(d, n), witness, m, n)
