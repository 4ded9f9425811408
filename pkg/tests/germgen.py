"""Seeded random germ generation shared by the lct and acceptance suites."""

import random
from fractions import Fraction

from delpezzo.germs import CurveGerm


def random_germ(rng: random.Random, min_mult: int = 2, max_mult: int = 6,
                max_degree: int = 8, coeff_bound: int = 5) -> CurveGerm:
    """A germ with multiplicity in [min_mult, max_mult], degree <= max_degree.

    One term is anchored on the multiplicity level so mult is exact, not just
    a lower bound; coefficients are nonzero integers in [-coeff_bound, bound].
    """
    k = rng.randint(min_mult, max_mult)
    nonzero = [c for c in range(-coeff_bound, coeff_bound + 1) if c]
    i = rng.randint(0, k)
    terms = {(i, k - i): Fraction(rng.choice(nonzero))}
    for _ in range(rng.randint(0, 6)):
        d = rng.randint(k, max_degree)
        i = rng.randint(0, d)
        terms[(i, d - i)] = Fraction(rng.choice(nonzero))
    return CurveGerm.from_dict(terms)


def random_unimodular(rng: random.Random, size: int = 3):
    """An SL2(Z) matrix (a, b, c, d) built from shears, entries kept small."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(size):
        t = rng.randint(-2, 2)
        if rng.random() < 0.5:
            a, b = a + t * c, b + t * d
        else:
            c, d = c + t * a, d + t * b
    return (a, b, c, d)
