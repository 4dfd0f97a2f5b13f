import random

import pytest

from poismodp.fieldpoly import MultiPoly, monomials_upto_degree

SEED = 20240801


@pytest.fixture
def rng():
    return random.Random(SEED)


def random_poly(rng, p, n, max_degree, max_terms=4, allow_zero=True):
    monos = monomials_upto_degree(n, max_degree)
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        terms[rng.choice(monos)] = rng.randrange(1 if not allow_zero else 0, p)
    return MultiPoly(p, n, terms)


def random_nonzero_poly(rng, p, n, max_degree, max_terms=4):
    while True:
        f = random_poly(rng, p, n, max_degree, max_terms)
        if not f.is_zero:
            return f
