from __future__ import annotations

import random
from fractions import Fraction

import pytest

from parahoric.rootdata import build_root_system


@pytest.fixture(scope="session")
def systems():
    return {t: build_root_system(t) for t in ("A1", "A2", "B2", "C2", "G2", "A3", "B3", "D4", "F4")}


def rand_fraction(rng: random.Random, lo=-2, hi=2, max_den=12) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * q, hi * q), q)


def alcove_point(rng: random.Random, rs, max_den=30) -> tuple[Fraction, ...]:
    """Random rational point of the closed fundamental alcove."""
    h = rs.highest_root
    while True:
        x = tuple(Fraction(rng.randint(0, max_den), max_den * rng.randint(1, 3)) for _ in range(rs.rank))
        if sum(a * b for a, b in zip(h, x)) <= 1:
            return x
