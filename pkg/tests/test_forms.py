import pytest

from conftest import BOSTON_ROWS, random_bitmatrix, random_invertible
from nuquad import forms
from nuquad.forms import (BilinearForm, NotSymmetric, TooLarge,
                          classify_symmetric, is_alternating, is_symmetric,
                          nu_bounds, nu_brute, nu_exact, symmetrize)
from nuquad.gf2core import BitMatrix, congruence, rank


def form(rows) -> BilinearForm:
    return BilinearForm.from_rows(rows)


def random_form(rng, n) -> BilinearForm:
    return BilinearForm(n, random_bitmatrix(rng, n, n))


def all_symmetric_forms(n):
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    for bits in range(1 << len(pairs)):
        rows = [0] * n
        for k, (i, j) in enumerate(pairs):
            if (bits >> k) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield BilinearForm(n, BitMatrix(n, n, tuple(rows)))


IDENTITY5 = BilinearForm(5, BitMatrix.identity(5))
ZERO4 = BilinearForm(4, BitMatrix.zeros(4, 4))
METABOLIC0 = form([[0, 1], [1, 0]])
METABOLIC1 = form([[1, 1], [1, 0]])
THREE_PLANS = form([
    [0, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 0],
])


class TestSymmetrize:
    def test_forced_by_definition(self):
        assert symmetrize(form([[0, 1], [0, 0]])).gram.to_lists() == \
            [[0, 1], [1, 0]]

    def test_symmetric_input_gives_zero(self):
        assert symmetrize(METABOLIC1).gram.data == (0, 0)

    def test_twice_is_zero_and_always_alternating(self, rng):
        for _ in range(50):
            f = random_form(rng, rng.randint(1, 10))
            s = symmetrize(f)
            assert is_alternating(s)
            assert all(v == 0 for v in symmetrize(s).gram.data)


class TestPredicates:
    def test_identity_symmetric_not_alternating(self):
        f = BilinearForm(2, BitMatrix.identity(2))
        assert is_symmetric(f) and not is_alternating(f)

    def test_metabolic_plan_alternating(self):
        assert is_symmetric(METABOLIC0) and is_alternating(METABOLIC0)

    def test_nonsymmetric(self):
        assert not is_symmetric(form([[0, 1], [0, 0]]))


class TestClassifySymmetric:
    def test_diag_1_1_0(self):
        got = classify_symmetric(form([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
        assert (got.r, got.r0, got.delta, got.nu) == (2, 1, 0, 2)
        assert not got.alternating and got.zeros == 1

    def test_metabolic_plan(self):
        got = classify_symmetric(METABOLIC0)
        assert (got.r, got.r0, got.delta, got.nu) == (2, 1, 0, 1)
        assert got.alternating

    def test_identity5(self):
        got = classify_symmetric(IDENTITY5)
        assert (got.r, got.r0, got.delta, got.nu) == (5, 2, 1, 2)

    def test_rejects_nonsymmetric(self):
        with pytest.raises(NotSymmetric):
            classify_symmetric(form([[0, 1], [0, 0]]))

    def test_decomposition_identity_exhaustive(self):
        for n in range(0, 5):
            for f in all_symmetric_forms(n):
                c = classify_symmetric(f)
                assert c.r == 2 * c.r0 + c.delta
                assert c.nu == f.n - c.r0 - c.delta == nu_brute(f)
                assert c.delta == 0 or not c.alternating


class TestNuBounds:
    def test_zero_form(self):
        b = nu_bounds(ZERO4)
        assert (b.lower, b.upper) == (4, 4)

    def test_identity5_uses_classification(self):
        b = nu_bounds(IDENTITY5)
        assert (b.lower, b.upper) == (2, 2)

    def test_displayed_example_upper(self, boston_matrix):
        b = nu_bounds(BilinearForm(4, boston_matrix))
        assert b.upper == 2  # n - ceil(rank/2) = 4 - 2

    def test_sandwich_random(self, rng):
        for _ in range(300):
            n = rng.randint(1, 8)
            f = random_form(rng, n)
            b = nu_bounds(f)
            nu = nu_brute(f)
            assert 0 <= b.lower <= nu <= b.upper <= n


class TestNuExact:
    def test_displayed_example(self, boston_matrix):
        assert nu_exact(BilinearForm(4, boston_matrix)) == 2

    def test_three_metabolic_plans(self):
        assert nu_exact(THREE_PLANS) == 3

    def test_identity5(self):
        assert nu_exact(IDENTITY5) == 2

    def test_zero_form(self):
        assert nu_exact(BilinearForm(12, BitMatrix.zeros(12, 12))) == 12

    def test_ceiling(self):
        with pytest.raises(TooLarge):
            nu_exact(BilinearForm(21, BitMatrix.zeros(21, 21)))
        assert nu_exact(BilinearForm(3, BitMatrix.zeros(3, 3)), max_n=3) == 3

    def test_congruence_invariant(self, rng):
        for _ in range(60):
            n = rng.randint(1, 7)
            f = random_form(rng, n)
            e = random_invertible(rng, n)
            g = BilinearForm(n, congruence(f.gram, e))
            assert nu_exact(f) == nu_exact(g)


class TestNuBrute:
    def test_plan_with_unit(self):
        # vectors: e2 isotropic, e1 and e1+e2 are not, plane is not
        assert nu_brute(METABOLIC1) == 1

    def test_zero3(self):
        assert nu_brute(BilinearForm(3, BitMatrix.zeros(3, 3))) == 3

    def test_ceiling(self):
        with pytest.raises(TooLarge):
            nu_brute(BilinearForm(9, BitMatrix.zeros(9, 9)))

    def test_matches_exact(self, rng):
        for _ in range(300):
            n = rng.randint(1, 8)
            f = random_form(rng, n)
            assert nu_brute(f) == nu_exact(f)


def test_coarse_lower_bound(rng):
    # nu >= n - ceil(3 rk / 2) whenever nonnegative
    for _ in range(200):
        n = rng.randint(1, 8)
        f = random_form(rng, n)
        coarse = n - (3 * rank(f.gram) + 1) // 2
        if coarse >= 0:
            assert nu_exact(f) >= coarse


def test_empty_form():
    f = BilinearForm(0, BitMatrix(0, 0, ()))
    assert nu_exact(f) == 0
    assert nu_bounds(f) == forms.NuBounds(0, 0)
    assert classify_symmetric(f).nu == 0
