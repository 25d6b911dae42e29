import random

import pytest

from charp.ffield import FiniteField
from charp.poly import Poly, RatFunc
from charp.towers import Elem, FieldTower


@pytest.fixture
def f2t():
    return FieldTower(FiniteField(2), ["t"])


@pytest.fixture
def f4t():
    return FieldTower(FiniteField(2, 2), ["t"])


@pytest.fixture
def f3t():
    return FieldTower(FiniteField(3), ["t"])


def rand_poly(rng: random.Random, ring, max_deg: int, nonzero=False) -> Poly:
    field = ring.field
    while True:
        terms = {}
        for e in range(max_deg + 1):
            if rng.random() < 0.6:
                c = tuple(rng.randrange(field.p) for _ in range(field.d))
                if not field.is_zero(c):
                    terms[(e,)] = c
        f = Poly(ring, terms)
        if not (nonzero and f.is_zero()):
            return f


def rand_ratfunc(rng: random.Random, ring, max_deg: int, nonzero=False) -> RatFunc:
    while True:
        f = RatFunc(rand_poly(rng, ring, max_deg),
                    rand_poly(rng, ring, max_deg, nonzero=True))
        if not (nonzero and f.is_zero()):
            return f


def rand_elem(rng: random.Random, tower: FieldTower, max_deg: int,
              nonzero=False) -> Elem:
    return Elem(tower, 0, rand_ratfunc(rng, tower.ring, max_deg, nonzero))
