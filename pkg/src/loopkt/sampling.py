"""Seeded random elements for property checks.

Every generator takes an explicit ``random.Random`` so that a report can be
reproduced from its recorded seed.
"""

from __future__ import annotations

import random

from .coefficients import LaurentElt, Poly, Rational
from .quotient_rings import MultiElt, RingDescriptor, SymVec
from .series import TruncSeries

SMALL = 3


def random_int(rng: random.Random, bound: int = SMALL) -> int:
    return rng.randint(-bound, bound)


def random_laurent(rng: random.Random, span: int = 2, terms: int = 3) -> LaurentElt:
    return LaurentElt({rng.randint(-span, span): random_int(rng) for _ in range(terms)})


def random_poly(rng: random.Random, var: str = "v", degree: int = 2) -> Poly:
    return Poly([random_int(rng) for _ in range(rng.randint(0, degree) + 1)], var)


def random_series(rng: random.Random, cutoff: int, var: str = "t", density: float = 0.5):
    return TruncSeries(
        [Rational(random_int(rng), rng.randint(1, 4)) if rng.random() < density else 0
         for _ in range(cutoff + 1)],
        cutoff,
        var,
    )


def random_coeff(ring: RingDescriptor, rng: random.Random):
    tag = ring.coeff
    if tag == "RT":
        return random_laurent(rng)
    if tag == "RG":
        return random_poly(rng, "v")
    if tag == "Qb":
        return random_poly(rng, "bb")
    if tag == "Qt":
        return random_poly(rng, "t")
    if tag == "Z":
        return random_int(rng)
    return random_series(rng, ring.cutoff, "bb" if tag == "Sb" else "t")


def random_multi(ring: RingDescriptor, rng: random.Random, terms: int = 4) -> MultiElt:
    out = MultiElt(ring)
    for _ in range(terms):
        mask = rng.randrange(1 << ring.n)
        out = out + MultiElt(ring, {mask: random_coeff(ring, rng)})
    return out


def random_symvec(ring: RingDescriptor, rng: random.Random) -> SymVec:
    return SymVec(ring, tuple(random_coeff(ring, rng) for _ in range(ring.n + 1)))
