"""Exact integer arithmetic: primality, factorization, quadratic symbols.

Everything here is deterministic.  Primality uses a Miller-Rabin witness
set proven complete for 64-bit inputs; factorization runs trial division
up to a small bound and then Brent-cycle Pollard rho on the cofactors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt


class NotOddPrime(ValueError):
    """Modulus of a Legendre symbol must be an odd prime."""


# Witnesses sufficient for every n < 3_317_044_064_679_887_385_961_981
# (Sorenson & Webster), which covers the 128-bit products we factor.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(m: int) -> bool:
    """Deterministic primality test for m >= 0 (valid well past 64 bits)."""
    if m < 2:
        return False
    for p in _SMALL_PRIMES:
        if m % p == 0:
            return m == p
    d = m - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        if a % m == 0:
            continue
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1  # cycle degenerated; retry with a new polynomial


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of |value|, primes strictly increasing."""

    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


def factor(m: int) -> Factorization:
    """Complete factorization of m (|m| >= 1, up to 128 bits)."""
    if m == 0:
        raise ValueError("cannot factor 0")
    if abs(m) >= 1 << 128:
        raise ValueError("factorization ceiling is 128 bits")
    n = abs(m)
    found: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    p = 41
    while p * p <= n and p < 100_000:
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        n = stack.pop()
        if n == 1:
            continue
        if is_prime(n):
            found[n] = found.get(n, 0) + 1
            continue
        r = isqrt(n)
        if r * r == n:
            stack += [r, r]
            continue
        d = _brent_rho(n)
        stack += [d, n // d]
    return Factorization(m, tuple(sorted(found.items())))


def squarefree(m: int) -> bool:
    return factor(m).squarefree


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0, by reciprocity descent."""
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p); p must be an odd prime."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    return jacobi(a, p)


def kronecker(a: int, m: int) -> int:
    """Kronecker symbol (a/m), the full multiplicative extension."""
    if m == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if m < 0:
        m = -m
        if a < 0:
            sign = -1
    twos = 0
    while m % 2 == 0:
        m //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            sign = -sign
    return sign * jacobi(a, m)


def p_star(p: int) -> int:
    """Signed prime p* = (-1)^((p-1)/2) * p, the one congruent to 1 mod 4."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    return p if p % 4 == 1 else -p
