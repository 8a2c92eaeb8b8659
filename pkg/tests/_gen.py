"""Random tiny instances shared by the property tests."""

import random
from fractions import Fraction

from mkpbound.model import validate_bsmkp, validate_mkp


def tiny_mkp(rng: random.Random, n_max=8, m_max=3, w_max=30, p_max=40):
    n = rng.randint(1, n_max)
    m = rng.randint(1, m_max)
    items = [(rng.randint(1, p_max), rng.randint(1, w_max)) for _ in range(n)]
    total = sum(w for _, w in items)
    caps = [rng.randint(1, max(1, total // m + w_max // 2)) for _ in range(m)]
    return validate_mkp(items, caps)


CHAINS = [(1,), (1, 2), (1, 3), (1, 2, 4), (1, 2, 6), (1, 3, 6), (1, 2, 4, 8), (2, 4), (3, 9), (1, 5, 10)]


def tiny_bsmkp(rng: random.Random, m_max=3, cap_max=14, classes_max=4, bound_max=3):
    chain = rng.choice(CHAINS)
    m = rng.randint(1, m_max)
    classes = []
    for _ in range(rng.randint(1, classes_max)):
        s = rng.choice(chain)
        classes.append((s, Fraction(rng.randint(1, 30), rng.randint(1, 4)), rng.randint(1, bound_max)))
    caps = [rng.randint(1, cap_max) for _ in range(m)]
    return validate_bsmkp(classes, caps)
