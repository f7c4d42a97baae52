"""Pure-Python survey kernel: segmented sieve + per-field statistics.

This is the fallback implementation selected when the compiled extension
is unavailable (see kernel.py).  Both kernels honor the same contract:

    survey_range(lo, hi, x_bound, by_radicand, want_rows,
                 case_a_only, n_filter) -> (counts, rows | None)

processes radicands d = -m for m in [lo, hi), keeping m squarefree with
|disc| <= x_bound (or m <= x_bound when keyed by radicand), and returns
associatively mergeable counters plus optional preformatted CSV rows in
increasing m order.  Per-field invariants are asserted on the fly and
violations are counted (they must stay zero).
"""

from __future__ import annotations

from math import isqrt

from . import forms
from .gf2core import BitMatrix
from .quadfield import _bit, _kron2, _redei_rows, _star, _submatrix_drop
from .arith import jacobi

NU_KERNEL_MAX = 12  # exact search ceiling inside surveys; n > 12 needs
                    # a radicand beyond 10**13, far past any survey bound

_PRIME_CACHE: list[int] = []
_PRIME_LIMIT = 0


def primes_upto(limit: int) -> list[int]:
    """Cached simple sieve; read-only after construction."""
    global _PRIME_CACHE, _PRIME_LIMIT
    if limit > _PRIME_LIMIT:
        size = max(limit, 2 * _PRIME_LIMIT, 1 << 10)
        mark = bytearray([1]) * (size + 1)
        mark[0:2] = b"\x00\x00"
        for p in range(2, isqrt(size) + 1):
            if mark[p]:
                mark[p * p:: p] = bytearray(len(mark[p * p:: p]))
        _PRIME_CACHE = [i for i, m in enumerate(mark) if m]
        _PRIME_LIMIT = size
    return _PRIME_CACHE


def _rank_rows(rows: list[int], cols: int) -> int:
    work = rows[:]
    rank = 0
    for col in range(cols):
        piv = None
        for k in range(rank, len(work)):
            if (work[k] >> col) & 1:
                piv = k
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for k in range(len(work)):
            if k != rank and (work[k] >> col) & 1:
                work[k] ^= work[rank]
        rank += 1
    return rank


def _transpose_rows(rows: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, row in enumerate(rows):
        for j in range(n):
            if (row >> j) & 1:
                out[j] |= 1 << i
    return out


def field_stats(m: int, odd: list[int]) -> tuple:
    """All survey statistics of d = -m (m squarefree, odd = odd primes of m).

    Returns (n, case_a, symmetric, rank_gram, rank_redei, four_rank,
    nu_lower, nu_upper, nu_exact_or_None, max_uniform_dim, decided,
    cs_pair_or_None, violations_bitmask, disc).
    """
    d = -m
    r = m % 4
    if r == 3:
        disc, p0 = d, 1
    else:
        disc = 4 * d
        p0 = (-4 if r == 1 else (-8 if (m // 2) % 4 == 1 else 8))
    two = p0 != 1

    red = _redei_rows(d, disc, p0, odd)
    size = len(red)
    n = size - 1
    skip = size - 1 if two else odd.index(max(p for p in odd if p % 4 == 3))
    gram = _submatrix_drop(red, size, skip)

    rg = _rank_rows(gram, n)
    rr = _rank_rows(red, size)
    r4 = n - rr

    sym = sum(1 for p in odd if p % 4 == 3) <= 1
    gram_t = _transpose_rows(gram, n)
    violations = 0
    if not (rg <= rr <= rg + 1):
        violations |= 1
    if not two and rr != rg:
        violations |= 2
    if any(bin(row).count("1") & 1 for row in red):
        violations |= 4
    if sym != (gram_t == gram):
        violations |= 8

    upper = n - (rg + 1) // 2
    if sym:
        alternating = all(not (gram[i] >> i) & 1 for i in range(n))
        delta = 0 if alternating else rg % 2
        lower = n - (rg - delta) // 2 - delta
        exact: int | None = lower
    else:
        rs = _rank_rows([a ^ b for a, b in zip(gram, gram_t)], n)
        lower = max(0, min(n - rs // 2 - rg // 2, upper))
        if n <= NU_KERNEL_MAX:
            exact = forms.nu_exact(
                forms.BilinearForm(n, BitMatrix(n, n, tuple(gram))))
        else:
            exact = None

    mud = min(exact if exact is not None else upper, upper, (n + 1 + r4) // 2)
    decided = mud <= 2

    cs = None
    for p in odd:
        sp = _star(p)
        for q in odd:
            if q != p and jacobi(sp, q) == -1:
                cs = (p, q)
                break
        if cs:
            break

    return (n, not two, sym, rg, rr, r4, lower, upper, exact,
            mud, decided, cs, violations, disc)


def _fmt_bool(v) -> str:
    return "true" if v else "false"


def format_row(m: int, stats: tuple) -> str:
    (n, case_a, sym, rg, rr, r4, lo, up, exact, mud, decided,
     cs, _viol, disc) = stats
    return ",".join([
        str(-m), str(disc), str(n), _fmt_bool(case_a), _fmt_bool(sym),
        str(rg), str(rr), str(r4), str(lo), str(up),
        "" if exact is None else str(exact),
        _fmt_bool(exact is not None), str(mud), _fmt_bool(decided),
        "" if cs is None else f"{cs[0]};{cs[1]}",
    ])


def survey_range(lo: int, hi: int, x_bound: int, by_radicand: bool,
                 want_rows: bool, case_a_only: bool = False,
                 n_filter: int = -1) -> tuple[dict, list[str] | None]:
    """Process radicands -m for m in [lo, hi); see the module docstring."""
    lo = max(lo, 1)
    if hi <= lo:
        return _empty_counts(), ([] if want_rows else None)
    seg = hi - lo
    primes = primes_upto(isqrt(hi - 1) if hi > 1 else 1)

    cof = list(range(lo, hi))
    sqfree = bytearray([1]) * seg
    facs: list[list[int]] = [[] for _ in range(seg)]
    for p in primes:
        start = ((lo + p - 1) // p) * p
        for m in range(start, hi, p):
            idx = m - lo
            facs[idx].append(p)
            q, rem = divmod(cof[idx], p)
            cof[idx] = q
            if q % p == 0:
                sqfree[idx] = 0
                while q % p == 0:
                    q //= p
                cof[idx] = q

    counts = _empty_counts()
    by_n = counts["by_n"]
    by_n_r = counts["by_n_r"]
    by_n_mud = counts["by_n_mud"]
    rows: list[str] | None = [] if want_rows else None

    for idx in range(seg):
        m = lo + idx
        if not sqfree[idx]:
            continue
        if by_radicand:
            if m > x_bound:
                continue
        elif m % 4 == 3:
            if m > x_bound:
                continue
        elif 4 * m > x_bound:
            continue
        odd = facs[idx]
        if cof[idx] > 1:
            odd = odd + [cof[idx]]
        if odd and odd[0] == 2:
            odd = odd[1:]
        stats = field_stats(m, odd)
        n = stats[0]
        if n_filter >= 0 and n != n_filter:
            continue
        if case_a_only and not stats[1]:
            continue
        counts["total"] += 1
        counts["case_a"] += stats[1]
        counts["nu_inexact"] += stats[8] is None
        counts["violations"] += stats[12] != 0
        by_n[n] = by_n.get(n, 0) + 1
        key = (n, stats[5])
        by_n_r[key] = by_n_r.get(key, 0) + 1
        key = (n, stats[9])
        by_n_mud[key] = by_n_mud.get(key, 0) + 1
        if rows is not None:
            rows.append(format_row(m, stats))

    return counts, rows


def _empty_counts() -> dict:
    return {
        "total": 0, "case_a": 0, "nu_inexact": 0, "violations": 0,
        "by_n": {}, "by_n_r": {}, "by_n_mud": {},
    }
