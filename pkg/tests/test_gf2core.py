import numpy as np
import pytest

from conftest import BOSTON_ROWS, random_bitmatrix, random_invertible
from nuquad.gf2core import (BitMatrix, NonSquare, SingularBasis, congruence,
                            format_matrix, is_invertible, kernel_basis,
                            mat_mul, mat_vec, parse_matrix, rank)


class TestBitMatrix:
    def test_roundtrip(self):
        m = BitMatrix.from_rows([[1, 0], [1, 1]])
        assert m.to_lists() == [[1, 0], [1, 1]]
        assert m.entry(0, 0) == 1 and m.entry(0, 1) == 0

    def test_empty_is_valid(self):
        m = BitMatrix(0, 0, ())
        assert rank(m) == 0
        assert m.to_lists() == []

    def test_rejects_stray_bits(self):
        with pytest.raises(ValueError):
            BitMatrix(1, 2, (0b100,))

    def test_transpose(self, rng):
        m = random_bitmatrix(rng, 5, 9)
        t = m.transpose()
        for i in range(5):
            for j in range(9):
                assert m.entry(i, j) == t.entry(j, i)


class TestTextFormat:
    def test_parse_format_roundtrip(self, boston_matrix):
        text = format_matrix(boston_matrix)
        assert text.splitlines()[0] == "4"
        assert parse_matrix(text) == boston_matrix

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_matrix("2\n1 0\n")
        with pytest.raises(ValueError):
            parse_matrix("2\n1 0\n0 2\n")
        with pytest.raises(ValueError):
            parse_matrix("")


class TestRank:
    def test_identity(self):
        assert rank(BitMatrix.identity(3)) == 3

    def test_zero(self):
        assert rank(BitMatrix.zeros(4, 4)) == 0

    def test_displayed_example_matrix(self, boston_matrix):
        assert rank(boston_matrix) == 3

    def test_rank_equals_transpose_rank(self, rng):
        for _ in range(50):
            n = rng.randint(1, 64)
            m = random_bitmatrix(rng, n, rng.randint(1, 64))
            assert rank(m) == rank(m.transpose())

    def test_input_not_mutated(self, boston_matrix):
        before = boston_matrix.data
        rank(boston_matrix)
        assert boston_matrix.data == before


class TestKernel:
    def test_identity_has_trivial_kernel(self):
        assert kernel_basis(BitMatrix.identity(3)) == []

    def test_zero_matrix_full_kernel(self):
        assert len(kernel_basis(BitMatrix.zeros(2, 2))) == 2

    def test_displayed_example_kernel(self, boston_matrix):
        basis = kernel_basis(boston_matrix)
        assert len(basis) == 1
        # solved by hand: x2 = x3, x1 = x4 = 0
        assert basis == [0b0110]
        assert mat_vec(boston_matrix, basis[0]) == 0

    def test_rank_nullity(self, rng):
        for _ in range(50):
            m = random_bitmatrix(rng, rng.randint(1, 20), rng.randint(1, 20))
            basis = kernel_basis(m)
            assert len(basis) + rank(m) == m.cols
            for v in basis:
                assert mat_vec(m, v) == 0


def _np_congruence(m: BitMatrix, e: BitMatrix) -> list[list[int]]:
    a = np.array(m.to_lists(), dtype=np.uint8)
    b = np.array(e.to_lists(), dtype=np.uint8)
    return ((b.T @ a @ b) % 2).tolist()


class TestCongruence:
    def test_identity_basis(self, boston_matrix):
        assert congruence(boston_matrix, BitMatrix.identity(4)) == boston_matrix

    def test_rank_preserved(self, rng):
        for _ in range(40):
            n = rng.randint(1, 16)
            m = random_bitmatrix(rng, n, n)
            e = random_invertible(rng, n)
            assert rank(congruence(m, e)) == rank(m)

    def test_matches_dense_oracle(self, rng):
        for _ in range(40):
            n = rng.randint(1, 12)
            m = random_bitmatrix(rng, n, n)
            e = random_invertible(rng, n)
            assert congruence(m, e).to_lists() == _np_congruence(m, e)

    def test_boston_change_of_basis(self, boston_matrix):
        # coordinates of {-3, -5, -7, -13} over the stars {-3, 5, -7, 13},
        # using -1 = product of all four stars in the radical
        e = BitMatrix.from_rows([
            [1, 1, 0, 1],
            [0, 0, 0, 1],
            [0, 1, 1, 1],
            [0, 1, 0, 0],
        ])
        got = congruence(boston_matrix, e)
        assert got.to_lists() == _np_congruence(boston_matrix, e)
        assert rank(got) == 3

    def test_errors(self, boston_matrix):
        with pytest.raises(NonSquare):
            congruence(BitMatrix.zeros(2, 3), BitMatrix.identity(2))
        with pytest.raises(SingularBasis):
            congruence(boston_matrix, BitMatrix.zeros(4, 4))


def test_mat_mul_against_numpy(rng):
    for _ in range(30):
        n, k, m = rng.randint(1, 10), rng.randint(1, 10), rng.randint(1, 10)
        a = random_bitmatrix(rng, n, k)
        b = random_bitmatrix(rng, k, m)
        want = ((np.array(a.to_lists()) @ np.array(b.to_lists())) % 2).tolist()
        assert mat_mul(a, b).to_lists() == want


def test_is_invertible(boston_matrix):
    assert is_invertible(BitMatrix.identity(5))
    assert not is_invertible(boston_matrix)  # rank 3 < 4
