"""Class groups of imaginary quadratic fields via reduced binary forms.

Ground truth for the 2-rank and 4-rank computed elsewhere from genus
theory and the Redei matrix: the class group is materialized as the set
of reduced primitive forms under Gauss composition, and ranks are read
off from torsion counts.  Deliberately naive (desk-scale discriminants,
|disc| <= 10**6) and fully independent of the symbol machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt


class BadDiscriminant(ValueError):
    """Discriminant is not negative and fundamental."""


class DiscMismatch(ValueError):
    """Composed forms must share a discriminant."""


class TooLarge(ValueError):
    """Discriminant exceeds the oracle ceiling."""


DISC_CEILING = 10**6


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c


@dataclass(frozen=True)
class GroupStructure:
    order: int
    invariant_factors: tuple[int, ...]


def _squarefree(m: int) -> bool:
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        p += 1 if p == 2 else 2
    return True


def is_fundamental(disc: int) -> bool:
    if disc >= 0:
        return False
    if disc % 4 == 1:
        return _squarefree(-disc)
    if disc % 4 == 0:
        k = disc // 4  # the radicand; Python modulo keeps this nonnegative
        return k % 4 in (2, 3) and _squarefree(-k)
    return False


def _check_disc(disc: int) -> None:
    if not is_fundamental(disc):
        raise BadDiscriminant(f"{disc} is not a negative fundamental discriminant")


def _check_scale(disc: int) -> None:
    _check_disc(disc)
    if -disc > DISC_CEILING:
        raise TooLarge(f"|disc| exceeds the oracle ceiling {DISC_CEILING}")


def reduce_form(a: int, b: int, c: int) -> QuadForm:
    """Reduce a positive-definite form to |b| <= a <= c, b >= 0 at ties."""
    disc = b * b - 4 * a * c
    while True:
        if -a < b <= a:
            if a > c:
                a, b, c = c, -b, a
                continue
            break
        b = (b + a) % (2 * a) - a  # into [-a, a)
        if b == -a:
            b = a
        c = (b * b - disc) // (4 * a)
    if a == c and b < 0:
        b = -b
    return QuadForm(a, b, c)


def principal_form(disc: int) -> QuadForm:
    b = disc & 1
    return QuadForm(1, b, (b * b - disc) // 4)


def inverse(f: QuadForm) -> QuadForm:
    return reduce_form(f.a, -f.b, f.c)


def reduced_forms(disc: int) -> list[QuadForm]:
    """All reduced primitive forms of the discriminant; length = h."""
    _check_disc(disc)
    out = []
    amax = isqrt(-disc // 3)
    parity = disc & 1
    for a in range(1, amax + 1):
        for b in range(parity, a + 1, 2):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
            if b and b != a and a != c:
                out.append(QuadForm(a, -b, c))
    return sorted(out)


def _transform(f: QuadForm, x: int, u: int, y: int, v: int) -> QuadForm:
    """Action of the unimodular matrix [[x, u], [y, v]] (det = 1)."""
    a = f.a * x * x + f.b * x * y + f.c * y * y
    b = 2 * (f.a * x * u + f.c * y * v) + f.b * (x * v + y * u)
    c = f.a * u * u + f.b * u * v + f.c * v * v
    return QuadForm(a, b, c)


def _unit_vector_mod_p(f: QuadForm, p: int) -> tuple[int, int]:
    if f.a % p:
        return (1, 0)
    if f.c % p:
        return (0, 1)
    return (1, 1)  # value = a + b + c = b mod p, a unit by primitivity


def _represent_coprime(f: QuadForm, n: int) -> QuadForm:
    """Equivalent (not reduced) form with leading coefficient coprime to n.

    Per prime p | n choose (x, y) mod p where the form takes a unit value,
    CRT the choices, strip the common divisor, and complete to SL2.
    """
    if gcd(f.a, n) == 1:
        return f
    residues = []
    moduli = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            residues.append(_unit_vector_mod_p(f, p))
            moduli.append(p)
        p += 1 if p == 2 else 2
    if m > 1:
        residues.append(_unit_vector_mod_p(f, m))
        moduli.append(m)
    big = 1
    for mod in moduli:
        big *= mod
    x = y = 0
    for (xp, yp), mod in zip(residues, moduli):
        rest = big // mod
        lift = rest * pow(rest, -1, mod)
        x += xp * lift
        y += yp * lift
    x %= big
    y %= big
    g = gcd(x, y)
    if g:
        x //= g
        y //= g
    else:
        x = 1
    # complete (x, y) to [[x, u], [y, v]] with x*v - y*u = 1
    _, v, negu = _xgcd(x, y)
    return _transform(f, x, -negu, y, v)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _compose_raw(f: QuadForm, g: QuadForm, disc: int) -> QuadForm:
    g2 = _represent_coprime(g, f.a)
    a1, b1 = f.a, f.b
    a2, b2 = g2.a, g2.b
    t = ((b2 - b1) // 2 * pow(a1, -1, a2)) % a2 if a2 > 1 else 0
    big_b = b1 + 2 * a1 * t
    a3 = a1 * a2
    return reduce_form(a3, big_b, (big_b * big_b - disc) // (4 * a3))


def compose(f: QuadForm, g: QuadForm, disc: int) -> QuadForm:
    """Gauss composition; returns the reduced representative of the product."""
    _check_disc(disc)
    if f.disc != disc or g.disc != disc:
        raise DiscMismatch("forms have different discriminants")
    return _compose_raw(f, g, disc)


def _pow_form(f: QuadForm, e: int, disc: int) -> QuadForm:
    out = principal_form(disc)
    base = f
    while e:
        if e & 1:
            out = _compose_raw(out, base, disc)
        base = _compose_raw(base, base, disc)
        e >>= 1
    return out


@lru_cache(maxsize=128)
def _forms_two_four(disc: int) -> tuple[tuple[QuadForm, ...], frozenset, int]:
    forms = tuple(reduced_forms(disc))
    two_tor = frozenset(f for f in forms if f == inverse(f))
    four_count = sum(1 for f in forms if _compose_raw(f, f, disc) in two_tor)
    return forms, two_tor, four_count


def class_number(disc: int) -> int:
    _check_scale(disc)
    return len(_forms_two_four(disc)[0])


def two_rank(disc: int) -> int:
    """log2 of the 2-torsion count |Cl[2]|."""
    _check_scale(disc)
    return len(_forms_two_four(disc)[1]).bit_length() - 1


def four_rank(disc: int) -> int:
    """dim Cl[4]/Cl[2] = log2 #{x : x^4 = 1} - log2 #{x : x^2 = 1}."""
    _check_scale(disc)
    _, two_tor, four_count = _forms_two_four(disc)
    return four_count.bit_length() - len(two_tor).bit_length()


def _p_partition(forms, p: int, disc: int, ident: QuadForm) -> list[int]:
    """Exponents (largest first) of the cyclic p-factors, from the torsion
    ladder N_k = #{x : x^(p^k) = 1}."""
    logs = [0]
    powers = list(forms)
    while True:
        powers = [_pow_form(g, p, disc) for g in powers]
        nk = sum(1 for g in powers if g == ident)
        logn = 0
        t = 1
        while t < nk:
            t *= p
            logn += 1
        if logn == logs[-1]:
            break
        logs.append(logn)
    ranks = [logs[k + 1] - logs[k] for k in range(len(logs) - 1)]
    if not ranks:
        return []
    return [sum(1 for r in ranks if r > j) for j in range(ranks[0])]


def group_structure(disc: int) -> GroupStructure:
    """Invariant factors (each dividing the next) of the class group."""
    _check_scale(disc)
    forms = _forms_two_four(disc)[0]
    h = len(forms)
    ident = principal_form(disc)
    partitions: dict[int, list[int]] = {}
    rest = h
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            partitions[p] = _p_partition(forms, p, disc, ident)
        p += 1 if p == 2 else 2
    if rest > 1:
        partitions[rest] = _p_partition(forms, rest, disc, ident)
    width = max((len(v) for v in partitions.values()), default=0)
    factors = []
    for j in range(width):
        d = 1
        for p, exps in partitions.items():
            if j < len(exps):
                d *= p ** exps[j]
        factors.append(d)
    factors.reverse()  # ascending, each divides the next
    return GroupStructure(order=h, invariant_factors=tuple(factors))
