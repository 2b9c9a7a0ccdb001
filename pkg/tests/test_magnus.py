import random

import pytest

from iakit.magnus import (MagnusError, mg_eval, mg_generator, mg_inv, mg_mul,
                          mg_project_psi, psi_enumerate, word_parse)

from conftest import E_INDEX_TRIPLES


def rand_word(rng, n, max_len=8):
    # mg_eval consumes unit letters; word_parse expands powers to them
    return [(rng.randint(1, n), rng.choice([1, -1]))
            for _ in range(rng.randint(0, max_len))]


def test_word_parse_grammar():
    assert word_parse("g1 g2^-1 g1^3") == \
        [(1, 1), (2, -1), (1, 1), (1, 1), (1, 1)]
    assert word_parse("") == []
    with pytest.raises(MagnusError):
        word_parse("h1")
    with pytest.raises(MagnusError):
        mg_eval(word_parse("g0"), 2)


def test_generators_are_distinct():
    n = 4
    gens = [mg_generator(i, n) for i in range(1, n + 1)]
    assert len({(g.v, g.c) for g in gens}) == n


def test_group_laws_randomized():
    rng = random.Random(17)
    n = 3
    e = mg_eval([], n)
    for _ in range(120):
        a = mg_eval(rand_word(rng, n), n)
        b = mg_eval(rand_word(rng, n), n)
        c = mg_eval(rand_word(rng, n), n)
        assert mg_mul(mg_mul(a, b), c) == mg_mul(a, mg_mul(b, c))
        assert mg_mul(a, e) == a
        assert mg_mul(e, a) == a
        assert mg_mul(a, mg_inv(a)) == e
        assert mg_mul(mg_inv(a), a) == e


def test_eval_is_word_concatenation():
    n = 3
    w1, w2 = [(1, 2), (2, -1)], [(3, 1), (1, -1)]
    assert mg_eval(w1 + w2, n) == mg_mul(mg_eval(w1, n), mg_eval(w2, n))


def test_metabelian_relation_holds():
    # [[g1,g2],[g3,g1]] = 1: commutators of commutators vanish
    n = 3
    comm = lambda a, b: mg_mul(mg_mul(a, b), mg_inv(mg_mul(b, a)))
    a = comm(mg_eval([(1, 1)], n), mg_eval([(2, 1)], n))
    b = comm(mg_eval([(3, 1)], n), mg_eval([(1, 1)], n))
    assert comm(a, b) == mg_eval([], n)


def test_projection_is_a_homomorphism():
    rng = random.Random(23)
    n, m = 2, 2
    for _ in range(60):
        a = mg_eval(rand_word(rng, n), n)
        b = mg_eval(rand_word(rng, n), n)
        assert mg_project_psi(mg_mul(a, b), m) == \
            mg_project_psi(a, m) * mg_project_psi(b, m)


def test_psi_enumeration_n2_m2():
    elems = psi_enumerate(2, 2)
    assert len(elems) == 128
    index = {(e.v, e.c) for e in elems}
    assert len(index) == 128
    # closed under the group law
    for a in elems:
        for b in elems:
            p = a * b
            assert (p.v, p.c) in index


def test_psi_ceiling():
    with pytest.raises(MagnusError):
        psi_enumerate(3, 3, ceiling=4096)


def test_constraint_violations_are_detected():
    # a projected image always satisfies the constraint
    a = mg_project_psi(mg_eval([(1, 1), (2, -1)], 2), 2)
    assert a.constraint_holds()
