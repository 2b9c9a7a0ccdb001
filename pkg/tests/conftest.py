"""Shared fixtures and deterministic random generators for the test suite."""

import random

import pytest

from iakit.ring import LaurentPoly


def rand_poly(rng, nvars, max_terms=5, span=2, cmax=9):
    data = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(-span, span) for _ in range(nvars))
        data[exps] = rng.randint(-cmax, cmax)
    return LaurentPoly.from_dict(nvars, data)


def rand_nonzero_poly(rng, nvars, **kw):
    while True:
        p = rand_poly(rng, nvars, **kw)
        if not p.is_zero():
            return p


E_INDEX_TRIPLES = [(r, s, t)
                   for r in range(1, 5)
                   for s in range(1, 5)
                   for t in range(1, 5)
                   if s != t and r != t]


@pytest.fixture
def rng():
    return random.Random(0)
