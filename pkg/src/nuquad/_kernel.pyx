# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled survey kernel.

Mirrors _pykernel.survey_range (the reference implementation) with the
sieve, symbol evaluations, GF(2) ranks and the exact-nu search all at C
level.  The equivalence test drives both over the same ranges and
requires identical counters and rows.
"""

from libc.stdint cimport int64_t, uint32_t
from libc.stdlib cimport free, malloc

from math import isqrt

from . import _pykernel

DEF MAX_FACTORS = 16
DEF MAX_N = 18          # ranks/odd-prime counts stay below this
DEF NU_MAX = 12         # exact-nu ceiling inside surveys
DEF NU_SPACE = 4096     # 1 << NU_MAX


cdef inline int _parity(uint32_t x) nogil:
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return x & 1


cdef inline int _bitlen(uint32_t x) nogil:
    cdef int n = 0
    while x:
        x >>= 1
        n += 1
    return n


cdef int _jacobi(int64_t a, int64_t n) nogil:
    """Jacobi symbol (a/n), n odd > 0."""
    cdef int result = 1
    cdef int64_t t
    a %= n
    if a < 0:
        a += n
    while a:
        while a % 2 == 0:
            a //= 2
            t = n % 8
            if t == 3 or t == 5:
                result = -result
        t = a
        a = n
        n = t
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    if n == 1:
        return result
    return 0


cdef inline int _kron2(int64_t a) nogil:
    """Kronecker symbol (a/2) for odd a."""
    cdef int64_t r = a & 7
    if r == 1 or r == 7:
        return 1
    return -1


cdef inline int _bit(int sym) nogil:
    return (1 - sym) >> 1


cdef int _rank_rows(uint32_t* rows, int nrows, int cols) nogil:
    cdef uint32_t work[MAX_N]
    cdef int i, col, rank = 0, piv
    cdef uint32_t tmp
    for i in range(nrows):
        work[i] = rows[i]
    for col in range(cols):
        piv = -1
        for i in range(rank, nrows):
            if (work[i] >> col) & 1:
                piv = i
                break
        if piv < 0:
            continue
        tmp = work[rank]
        work[rank] = work[piv]
        work[piv] = tmp
        for i in range(nrows):
            if i != rank and ((work[i] >> col) & 1):
                work[i] ^= work[rank]
        rank += 1
    return rank


cdef int _nu_dfs(uint32_t* rm, int n, int upper, int* cands, int ncand,
                 int dim, int* workspace, int best) nogil:
    cdef int i, j, pivot, nsub, v, w
    cdef uint32_t rv
    cdef int* sub
    if dim > best:
        best = dim
    sub = workspace
    for i in range(ncand):
        if best >= upper:
            return best
        v = cands[i]
        pivot = _bitlen(<uint32_t> v) - 1
        if dim + (n - pivot) <= best:
            continue
        rv = rm[v]
        nsub = 0
        for j in range(i + 1, ncand):
            w = cands[j]
            if _bitlen(<uint32_t> w) > pivot + 1 \
                    and _parity(rv & <uint32_t> w) == 0 \
                    and _parity(rm[w] & <uint32_t> v) == 0:
                sub[nsub] = w
                nsub += 1
        best = _nu_dfs(rm, n, upper, sub, nsub, dim + 1,
                       workspace + NU_SPACE, best)
    return best


cdef int _nu_exact(uint32_t* gram, int n, int upper, uint32_t* rm,
                   int* workspace) nogil:
    cdef int v, size = 1 << n, nroot = 0
    rm[0] = 0
    for v in range(1, size):
        rm[v] = rm[v & (v - 1)] ^ gram[_bitlen(<uint32_t> (v & (-v))) - 1]
    cdef int* root = workspace
    for v in range(1, size):
        if _parity(rm[v] & <uint32_t> v) == 0:
            root[nroot] = v
            nroot += 1
    return _nu_dfs(rm, n, upper, root, nroot, 0, workspace + NU_SPACE, 0)


cdef struct FieldStats:
    int n
    int case_a
    int symmetric
    int rank_gram
    int rank_redei
    int four_rank
    int nu_lower
    int nu_upper
    int nu_exact          # -1 when absent
    int mud
    int decided
    int64_t cs_p
    int64_t cs_q          # 0 when absent
    int violations
    int64_t disc


cdef void _field_stats(int64_t m, int64_t* odd, int modd, FieldStats* out,
                       uint32_t* rm, int* workspace) nogil:
    cdef int64_t d = -m
    cdef int64_t r4m = m & 3
    cdef int64_t disc, p0, p0_red
    cdef int two
    if r4m == 3:
        disc = d
        p0 = 1
        p0_red = 0
        two = 0
    else:
        disc = 4 * d
        two = 1
        if r4m == 1:
            p0 = -4
            p0_red = -1
        elif ((m // 2) & 3) == 1:
            p0 = -8
            p0_red = -2
        else:
            p0 = 8
            p0_red = 2

    cdef int64_t stars[MAX_FACTORS]
    cdef int i, j
    for i in range(modd):
        stars[i] = odd[i] if odd[i] % 4 == 1 else -odd[i]

    cdef int size = modd + two
    cdef int n = size - 1
    cdef uint32_t red[MAX_N]
    cdef uint32_t acc
    cdef int64_t q
    cdef int sym_val
    for i in range(size):
        acc = 0
        if two and i == size - 1:
            for j in range(modd):
                acc |= (<uint32_t> _bit(_kron2(stars[j]))) << j
            acc |= (<uint32_t> _bit(_kron2(disc // p0))) << (size - 1)
        else:
            q = odd[i]
            for j in range(size):
                if j == i:
                    sym_val = _jacobi(d // stars[i], q)
                elif two and j == size - 1:
                    sym_val = _jacobi(p0_red, q)
                else:
                    sym_val = _jacobi(stars[j], q)
                acc |= (<uint32_t> _bit(sym_val)) << j
        red[i] = acc

    cdef int skip
    cdef int64_t biggest
    if two:
        skip = size - 1
    else:
        biggest = 0
        skip = 0
        for i in range(modd):
            if odd[i] % 4 == 3 and odd[i] > biggest:
                biggest = odd[i]
                skip = i

    cdef uint32_t gram[MAX_N]
    cdef uint32_t low_mask = (<uint32_t> 1 << skip) - 1
    j = 0
    for i in range(size):
        if i == skip:
            continue
        gram[j] = (red[i] & low_mask) | ((red[i] >> (skip + 1)) << skip)
        j += 1

    cdef int rg = _rank_rows(gram, n, n)
    cdef int rr = _rank_rows(red, size, size)
    cdef int r4 = n - rr

    cdef int t3 = 0
    for i in range(modd):
        if odd[i] % 4 == 3:
            t3 += 1
    cdef int sym = t3 <= 1

    cdef uint32_t gram_t[MAX_N]
    for i in range(n):
        gram_t[i] = 0
    for i in range(n):
        for j in range(n):
            if (gram[i] >> j) & 1:
                gram_t[j] |= <uint32_t> 1 << i
    cdef int same = 1
    for i in range(n):
        if gram_t[i] != gram[i]:
            same = 0
            break

    cdef int violations = 0
    if not (rg <= rr <= rg + 1):
        violations |= 1
    if (not two) and rr != rg:
        violations |= 2
    for i in range(size):
        if _parity(red[i]):
            violations |= 4
            break
    if sym != same:
        violations |= 8

    cdef int upper = n - (rg + 1) // 2
    cdef int lower, exact, alternating, delta, rs
    cdef uint32_t sym_rows[MAX_N]
    if sym:
        alternating = 1
        for i in range(n):
            if (gram[i] >> i) & 1:
                alternating = 0
                break
        delta = 0 if alternating else rg & 1
        lower = n - (rg - delta) // 2 - delta
        exact = lower
    else:
        for i in range(n):
            sym_rows[i] = gram[i] ^ gram_t[i]
        rs = _rank_rows(sym_rows, n, n)
        lower = n - rs // 2 - rg // 2
        if lower > upper:
            lower = upper
        if lower < 0:
            lower = 0
        if n <= NU_MAX:
            exact = _nu_exact(gram, n, upper, rm, workspace)
        else:
            exact = -1

    cdef int mud = upper
    if exact >= 0 and exact < mud:
        mud = exact
    cdef int redei_bound = (n + 1 + r4) // 2
    if redei_bound < mud:
        mud = redei_bound

    cdef int64_t cs_p = 0, cs_q = 0
    cdef int64_t sp
    for i in range(modd):
        sp = stars[i]
        for j in range(modd):
            if j != i and _jacobi(sp, odd[j]) == -1:
                cs_p = odd[i]
                cs_q = odd[j]
                break
        if cs_p:
            break

    out.n = n
    out.case_a = 0 if two else 1
    out.symmetric = sym
    out.rank_gram = rg
    out.rank_redei = rr
    out.four_rank = r4
    out.nu_lower = lower
    out.nu_upper = upper
    out.nu_exact = exact
    out.mud = mud
    out.decided = 1 if mud <= 2 else 0
    out.cs_p = cs_p
    out.cs_q = cs_q
    out.violations = violations
    out.disc = disc


def survey_range(lo, hi, x_bound, by_radicand, want_rows,
                 case_a_only=False, n_filter=-1):
    """Same contract as _pykernel.survey_range."""
    cdef int64_t clo = max(int(lo), 1)
    cdef int64_t chi = int(hi)
    cdef int64_t cx = int(x_bound)
    cdef int c_by_rad = 1 if by_radicand else 0
    cdef int c_case_a = 1 if case_a_only else 0
    cdef int c_nfilter = int(n_filter)
    cdef int c_want_rows = 1 if want_rows else 0

    counts = _pykernel._empty_counts()
    rows = [] if want_rows else None
    if chi <= clo:
        return counts, rows

    if chi - 1 > <int64_t> 1 << 32:
        raise ValueError("compiled kernel handles radicands up to 2**32")

    cdef int64_t seg = chi - clo
    py_primes = _pykernel.primes_upto(isqrt(int(chi - 1)) if chi > 1 else 1)
    cdef int nprimes = len(py_primes)
    cdef int64_t* primes = <int64_t*> malloc(nprimes * sizeof(int64_t))
    cdef int64_t* cof = <int64_t*> malloc(seg * sizeof(int64_t))
    cdef unsigned char* sqfree = <unsigned char*> malloc(seg)
    cdef unsigned char* nfac = <unsigned char*> malloc(seg)
    cdef int64_t* facs = <int64_t*> malloc(seg * MAX_FACTORS * sizeof(int64_t))
    cdef uint32_t* rm = <uint32_t*> malloc(NU_SPACE * sizeof(uint32_t))
    cdef int* workspace = <int*> malloc((NU_MAX + 2) * NU_SPACE * sizeof(int))
    if not (primes and cof and sqfree and nfac and facs and rm and workspace):
        free(primes); free(cof); free(sqfree); free(nfac)
        free(facs); free(rm); free(workspace)
        raise MemoryError()

    cdef int i
    for i in range(nprimes):
        primes[i] = py_primes[i]

    cdef int64_t p, start, mm, qq, idx
    cdef int64_t total = 0, case_a_count = 0, nu_inexact = 0, violations = 0
    cdef int64_t by_n[MAX_N]
    cdef int64_t by_n_r[MAX_N][MAX_N]
    cdef int64_t by_n_mud[MAX_N][MAX_N]
    cdef int64_t odd[MAX_FACTORS]
    cdef int modd, k
    cdef FieldStats st

    for i in range(MAX_N):
        by_n[i] = 0
        for k in range(MAX_N):
            by_n_r[i][k] = 0
            by_n_mud[i][k] = 0

    with nogil:
        for idx in range(seg):
            cof[idx] = clo + idx
            sqfree[idx] = 1
            nfac[idx] = 0
        for i in range(nprimes):
            p = primes[i]
            start = ((clo + p - 1) // p) * p
            mm = start
            while mm < chi:
                idx = mm - clo
                facs[idx * MAX_FACTORS + nfac[idx]] = p
                nfac[idx] += 1
                qq = cof[idx] // p
                cof[idx] = qq
                if qq % p == 0:
                    sqfree[idx] = 0
                    while qq % p == 0:
                        qq //= p
                    cof[idx] = qq
                mm += p

    for idx in range(seg):
        mm = clo + idx
        if not sqfree[idx]:
            continue
        if c_by_rad:
            if mm > cx:
                continue
        elif (mm & 3) == 3:
            if mm > cx:
                continue
        elif 4 * mm > cx:
            continue
        modd = 0
        for k in range(nfac[idx]):
            p = facs[idx * MAX_FACTORS + k]
            if p != 2:
                odd[modd] = p
                modd += 1
        if cof[idx] > 1:
            odd[modd] = cof[idx]
            modd += 1
        _field_stats(mm, odd, modd, &st, rm, workspace)
        if c_nfilter >= 0 and st.n != c_nfilter:
            continue
        if c_case_a and not st.case_a:
            continue
        total += 1
        case_a_count += st.case_a
        if st.nu_exact < 0:
            nu_inexact += 1
        if st.violations:
            violations += 1
        by_n[st.n] += 1
        by_n_r[st.n][st.four_rank] += 1
        by_n_mud[st.n][st.mud] += 1
        if c_want_rows:
            stats_tuple = (
                st.n, bool(st.case_a), bool(st.symmetric),
                st.rank_gram, st.rank_redei, st.four_rank,
                st.nu_lower, st.nu_upper,
                None if st.nu_exact < 0 else st.nu_exact,
                st.mud, bool(st.decided),
                None if st.cs_p == 0 else (st.cs_p, st.cs_q),
                st.violations, st.disc)
            rows.append(_pykernel.format_row(mm, stats_tuple))

    counts["total"] = total
    counts["case_a"] = case_a_count
    counts["nu_inexact"] = nu_inexact
    counts["violations"] = violations
    for i in range(MAX_N):
        if by_n[i]:
            counts["by_n"][i] = by_n[i]
        for k in range(MAX_N):
            if by_n_r[i][k]:
                counts["by_n_r"][(i, k)] = by_n_r[i][k]
            if by_n_mud[i][k]:
                counts["by_n_mud"][(i, k)] = by_n_mud[i][k]

    free(primes); free(cof); free(sqfree); free(nfac)
    free(facs); free(rm); free(workspace)
    return counts, rows
