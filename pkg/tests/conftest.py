import random

import pytest

from nuquad.gf2core import BitMatrix

# Gram matrix of Q(sqrt(-1365)) in the star basis {-3, 5, -7, 13}
BOSTON_ROWS = [
    [1, 1, 1, 0],
    [1, 1, 1, 1],
    [0, 1, 1, 1],
    [0, 1, 1, 0],
]

K1_RADICAND = -(5 * 29 * 109 * 281 * 349 * 47)
K2_RADICAND = -(5 * 29 * 109 * 281 * 349 * 1601 * 1889 * 5581 * 3847)
ALT_RADICAND = -(5 * 13 * 29 * 61 * 1049 * 1301 * 743)


@pytest.fixture
def boston_matrix() -> BitMatrix:
    return BitMatrix.from_rows(BOSTON_ROWS)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5EED)


def random_bitmatrix(rng: random.Random, rows: int, cols: int) -> BitMatrix:
    return BitMatrix(rows, cols,
                     tuple(rng.getrandbits(cols) for _ in range(rows)))


def random_invertible(rng: random.Random, n: int) -> BitMatrix:
    from nuquad.gf2core import is_invertible
    while True:
        m = random_bitmatrix(rng, n, n)
        if is_invertible(m):
            return m
