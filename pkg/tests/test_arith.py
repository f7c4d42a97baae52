import random

import pytest

from nuquad import arith
from nuquad.arith import (Factorization, NotOddPrime, factor, is_prime,
                          jacobi, kronecker, legendre, p_star)


class TestIsPrime:
    def test_small_cases(self):
        assert is_prime(2)
        assert not is_prime(1)
        assert not is_prime(0)
        assert is_prime(3847)  # largest prime of the 9-prime example field

    def test_witness_not_fooled_by_itself(self):
        # every Miller-Rabin witness value must itself test prime
        for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
            assert is_prime(a)

    def test_against_sieve(self):
        limit = 10_000
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, 101):
            if sieve[p]:
                sieve[p * p:: p] = bytearray(len(sieve[p * p:: p]))
        for m in range(limit + 1):
            assert is_prime(m) == bool(sieve[m]), m

    def test_large_semiprime(self):
        p, q = 2_147_483_647, 2_147_483_629
        assert is_prime(p)
        assert not is_prime(p * q)


class TestFactor:
    def test_boston_radicand(self):
        assert factor(1365).factors == ((3, 1), (5, 1), (7, 1), (13, 1))

    def test_prime_power(self):
        assert factor(4).factors == ((2, 2),)

    def test_identity_field_radicand(self):
        got = factor(72849085615)
        assert got.factors == ((5, 1), (29, 1), (47, 1), (109, 1),
                               (281, 1), (349, 1))
        assert got.squarefree

    def test_negative_and_unit(self):
        assert factor(-12).factors == ((2, 2), (3, 1))
        assert factor(1) == Factorization(1, ())
        assert factor(-1).factors == ()

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factor(0)

    def test_roundtrip_random_squarefree_products(self, rng):
        primes = [p for p in range(3, 1 << 16) if is_prime(p)]
        for _ in range(2000):
            chosen = rng.sample(primes, rng.randint(1, 4))
            value = 1
            for p in chosen:
                value *= p
            got = factor(value)
            assert got.primes() == sorted(chosen)
            assert got.squarefree

    def test_rho_path_large_factors(self, rng):
        for _ in range(20):
            p = _random_prime(rng, 1 << 28)
            q = _random_prime(rng, 1 << 28)
            f = factor(p * q)
            assert f.primes() == sorted(set((p, q)))


def _random_prime(rng, bound):
    while True:
        m = rng.randrange(bound // 2, bound) | 1
        if is_prime(m):
            return m


class TestLegendre:
    def test_examples(self):
        assert legendre(4, 7) == 1          # perfect square
        assert legendre(-3, 5) == -1        # squares mod 5 are {1, 4}
        assert legendre(7, 7) == 0

    def test_rejects_bad_modulus(self):
        with pytest.raises(NotOddPrime):
            legendre(3, 15)
        with pytest.raises(NotOddPrime):
            legendre(3, 2)

    def test_euler_criterion(self, rng):
        for _ in range(200):
            p = _random_prime(rng, 10_000)
            a = rng.randrange(-1000, 1000)
            want = pow(a % p, (p - 1) // 2, p)
            want = {0: 0, 1: 1, p - 1: -1}[want]
            assert legendre(a, p) == want

    def test_multiplicative(self, rng):
        for _ in range(100):
            p = _random_prime(rng, 10_000)
            a, b = rng.randrange(1, p), rng.randrange(1, p)
            assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


class TestKronecker:
    def test_at_two(self):
        assert kronecker(7, 2) == 1    # 7 = -1 mod 8
        assert kronecker(3, 2) == -1
        assert kronecker(4, 2) == 0

    def test_matches_legendre_at_odd_primes(self, rng):
        for _ in range(200):
            p = _random_prime(rng, 10_000)
            a = rng.randrange(-5000, 5000)
            assert kronecker(a, p) == legendre(a, p)

    def test_special_values(self):
        assert kronecker(1, 0) == 1
        assert kronecker(5, 0) == 0
        assert kronecker(-3, -1) == -1
        assert kronecker(3, -1) == 1

    def test_multiplicative_in_bottom(self, rng):
        for _ in range(200):
            a = rng.randrange(-300, 300)
            m1 = rng.randrange(1, 300)
            m2 = rng.randrange(1, 300)
            assert kronecker(a, m1 * m2) == kronecker(a, m1) * kronecker(a, m2)


class TestPStar:
    def test_examples(self):
        assert p_star(5) == 5
        assert p_star(3) == -3   # basis element of the -1365 example
        assert p_star(13) == 13

    def test_always_one_mod_four(self):
        for p in range(3, 2000):
            if is_prime(p):
                assert p_star(p) % 4 == 1
                assert abs(p_star(p)) == p

    def test_rejects_non_prime(self):
        with pytest.raises(NotOddPrime):
            p_star(9)
        with pytest.raises(NotOddPrime):
            p_star(2)


def test_reciprocity_pairs():
    # (p*/q) = (q/p) for distinct odd primes: the symmetry engine behind
    # the congruence criterion
    primes = [p for p in range(3, 500) if is_prime(p)]
    for p in primes:
        for q in primes:
            if p != q:
                assert legendre(p_star(p), q) == legendre(q, p)


def test_jacobi_total_function():
    assert jacobi(0, 1) == 1
    assert jacobi(0, 9) == 0
    assert jacobi(4, 9) == 1
