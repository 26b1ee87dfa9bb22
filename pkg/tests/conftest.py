"""Shared test oracles, independent of the library's own kernels."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest


def cofactor_det(rows):
    """Textbook cofactor expansion along the first row; the determinant oracle."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = rows[0][0] * 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def random_rational_matrix(rng: random.Random, n: int, num_range=(-9, 9),
                           den_range=(1, 5)):
    return [[Fraction(rng.randint(*num_range), rng.randint(*den_range))
             for _ in range(n)] for _ in range(n)]


@pytest.fixture
def rng():
    return random.Random(20240817)
