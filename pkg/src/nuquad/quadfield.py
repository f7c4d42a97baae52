"""Dossier of an imaginary quadratic field Q(sqrt(d)), d < 0 squarefree.

For each field we assemble: ramification data, the star basis of the Kummer
radical of the genus field, the Gram matrix of the 2-torsion bilinear form,
the Redei matrix over all ramified primes, the 4-rank of the class group,
bounds and exact value of the isotropy index nu, and the verdict on which
uniform analytic quotient dimensions are excluded.

Matrix orientation: entry (i, j) is the additive symbol of the j-th basis
star reduced mod the i-th prime (rows are indexed by the modulus).  With
this convention the Gram matrix is the principal submatrix of the Redei
matrix and matches the classical Redei-matrix tables; see the lemma
checks in the test suite.  Additive encoding: symbol +1 -> 0, -1 -> 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import forms
from .arith import factor, jacobi
from .forms import BilinearForm, NuBounds
from .gf2core import BitMatrix, rank


class NotNegative(ValueError):
    """Radicand must be negative."""


class NotSquarefree(ValueError):
    """Radicand must be squarefree."""


class BasisNotInRadical(ValueError):
    """Requested basis element does not lie in the Kummer radical."""


NU_SEARCH_MAX = forms.NU_EXACT_DEFAULT_MAX


def _star(p: int) -> int:
    return p if p % 4 == 1 else -p


def _bit(sym: int) -> int:
    return (1 - sym) >> 1


def _kron2(a: int) -> int:
    """Kronecker symbol (a/2) for odd a."""
    return 1 if a % 8 in (1, 7) else -1


def ramification(d: int) -> tuple[int, int, list[int], int]:
    """(disc, p0_star, odd ramified primes, dropped prime or 0) for d.

    p0_star is the even part of the fundamental discriminant: 1 when 2 is
    unramified (d = 1 mod 4), else -4 or +-8.  When 2 is unramified one odd
    prime leaves the Kummer-radical basis; we drop the largest prime that
    is 3 mod 4 (at least one exists).
    """
    m = -d
    odd = [p for p, _ in factor(m).factors if p != 2]
    r = m % 4
    if r == 3:
        disc, p0 = d, 1
        dropped = max(p for p in odd if p % 4 == 3)
    else:
        disc = 4 * d
        if r == 1:
            p0 = -4
        else:
            p0 = -8 if (m // 2) % 4 == 1 else 8
        dropped = 0
    return disc, p0, odd, dropped


@dataclass(frozen=True)
class FieldRecord:
    d: int
    disc: int
    odd_ramified: tuple[int, ...]
    p0_star: int
    n: int
    basis: tuple[int, ...]
    gram: BilinearForm
    redei: BitMatrix
    rank_gram: int
    rank_redei: int
    four_rank: int
    nu: NuBounds
    symmetric: bool
    case_a: bool
    cs_pair: tuple[int, int] | None
    max_uniform_dim: int
    conjecture2_decided: bool
    corollary_tags: tuple[str, ...]

    @property
    def nu_is_exact(self) -> bool:
        return self.nu.exact is not None


def _validate(d: int) -> int:
    if d >= 0:
        raise NotNegative(f"radicand must be negative, got {d}")
    f = factor(-d)
    if not f.squarefree:
        raise NotSquarefree(f"{d} is not squarefree")
    return -d


def _redei_rows(d: int, disc: int, p0: int, odd: list[int]) -> list[int]:
    """Packed rows of the Redei matrix over all ramified primes.

    Ramified primes are the odd ones in increasing order, then 2 (as the
    p0_star slot) when it ramifies.  Off-diagonal entry (i, j) encodes
    (q_j* / q_i); the diagonal at an odd q encodes (D_q / q) with
    D_q = d / q*, and at 2 it encodes (disc / p0_star / 2).  Column and
    row sums both vanish (quadratic reciprocity / the Artin symbol of the
    principal ideal sqrt((d))).
    """
    stars = [_star(p) for p in odd]
    two = p0 != 1
    size = len(odd) + (1 if two else 0)
    p0_red = {-4: -1, 8: 2, -8: -2}.get(p0, 0)
    rows = []
    for i in range(size):
        acc = 0
        if two and i == size - 1:
            for j, s in enumerate(stars):
                acc |= _bit(_kron2(s)) << j
            acc |= _bit(_kron2(disc // p0)) << (size - 1)
        else:
            q = odd[i]
            for j in range(size):
                if j == i:
                    sym = jacobi(d // stars[i], q)
                elif two and j == size - 1:
                    sym = jacobi(p0_red, q)
                else:
                    sym = jacobi(stars[j], q)
                acc |= _bit(sym) << j
        rows.append(acc)
    return rows


def _submatrix_drop(rows: list[int], size: int, skip: int) -> list[int]:
    out = []
    low = (1 << skip) - 1
    for i, row in enumerate(rows):
        if i == skip:
            continue
        out.append((row & low) | ((row >> (skip + 1)) << skip))
    return out


def redei_matrix(d: int) -> BitMatrix:
    """Redei matrix of Q(sqrt(d)); size (n+1) x (n+1), rows sum to zero."""
    m = _validate(d)
    disc, p0, odd, _ = ramification(d)
    rows = _redei_rows(d, disc, p0, odd)
    return BitMatrix(len(rows), len(rows), tuple(rows))


def gram_matrix(d: int) -> BilinearForm:
    """Gram matrix of the 2-torsion bilinear form in the star basis."""
    _validate(d)
    disc, p0, odd, dropped = ramification(d)
    rows = _redei_rows(d, disc, p0, odd)
    skip = odd.index(dropped) if p0 == 1 else len(rows) - 1
    sub = _submatrix_drop(rows, len(rows), skip)
    n = len(sub)
    return BilinearForm(n, BitMatrix(n, n, tuple(sub)))


def is_case_a(d: int) -> bool:
    """Case (A): 2 unramified, i.e. d = 1 mod 4."""
    _validate(d)
    return (-d) % 4 == 3


def is_symmetric_field(d: int) -> bool:
    """Symmetry criterion: at most one odd prime p = 3 mod 4 divides d."""
    m = _validate(d)
    odd = factor(m).primes()
    return sum(1 for p in odd if p != 2 and p % 4 == 3) <= 1


def cs_pair(d: int) -> tuple[int, int] | None:
    """First ordered pair (p, q) of distinct odd ramified primes with
    (p*/q) = -1; its existence gives a nonzero triple cup product."""
    _validate(d)
    _, _, odd, _ = ramification(d)
    for p in odd:
        sp = _star(p)
        for q in odd:
            if q != p and jacobi(sp, q) == -1:
                return (p, q)
    return None


def four_rank(d: int) -> int:
    """4-rank of the class group: n - rank of the Redei matrix."""
    red = redei_matrix(d)
    return (red.rows - 1 if red.rows else 0) - rank(red)


def fm_verdict(n: int, nu: NuBounds, four_rank: int,
               rank_gram: int) -> tuple[int, bool, tuple[str, ...]]:
    """(max excluded dimension bound, conjecture decided, corollary tags).

    max_uniform_dim bounds nu, hence every uniform quotient dimension;
    the Redei term comes from nu <= (n + 1 + R4)/2.  Deciding the
    conjecture needs max_uniform_dim <= 2 since FAb uniform quotients
    have dimension at least 3.
    """
    candidates = [nu.upper, (n + 1 + four_rank) // 2]
    if nu.exact is not None:
        candidates.append(nu.exact)
    max_dim = min(candidates)
    tags = []
    if n == 5 and rank_gram == 5:
        tags.append("i")
    if n == 4 and rank_gram >= 3:
        tags.append("ii")
    if n == 3 and rank_gram >= 1:
        tags.append("iii")
    return max_dim, max_dim <= 2, tuple(tags)


def build_field(d: int, nu_search_max: int = NU_SEARCH_MAX) -> FieldRecord:
    """Assemble the complete dossier for Q(sqrt(d))."""
    _validate(d)
    disc, p0, odd, dropped = ramification(d)
    two = p0 != 1
    red_rows = _redei_rows(d, disc, p0, odd)
    size = len(red_rows)
    skip = size - 1 if two else odd.index(dropped)
    gram_rows = _submatrix_drop(red_rows, size, skip)
    n = size - 1
    basis = tuple(_star(p) for i, p in enumerate(odd) if two or i != skip)

    redei = BitMatrix(size, size, tuple(red_rows))
    gram = BilinearForm(n, BitMatrix(n, n, tuple(gram_rows)))
    rg = rank(gram.gram)
    rr = rank(redei)
    r4 = n - rr

    bounds = forms.nu_bounds(gram)
    if forms.is_symmetric(gram):
        exact: int | None = bounds.lower  # classification value, exact
    elif n <= nu_search_max:
        exact = forms.nu_exact(gram, max_n=nu_search_max)
    else:
        exact = None
    nu = NuBounds(lower=bounds.lower, upper=bounds.upper, exact=exact)

    sym = sum(1 for p in odd if p % 4 == 3) <= 1
    max_dim, decided, tags = fm_verdict(n, nu, r4, rg)

    return FieldRecord(
        d=d, disc=disc, odd_ramified=tuple(odd), p0_star=p0, n=n,
        basis=basis, gram=gram, redei=redei,
        rank_gram=rg, rank_redei=rr, four_rank=r4, nu=nu,
        symmetric=sym, case_a=not two, cs_pair=cs_pair(d),
        max_uniform_dim=max_dim, conjecture2_decided=decided,
        corollary_tags=tags)


def relabel_basis(rec: FieldRecord, labels: list[int]) -> tuple[tuple[int, ...], BilinearForm]:
    """Re-present the Gram matrix with user-chosen signed representatives.

    Each label must be a signed squarefree integer lying in the Kummer
    radical (checked over the exponent lattice spanned by the stars and
    the relation d = square) whose odd part is one of the basis primes;
    together they must relabel every basis slot exactly once.  Signs and
    square factors of a label change the representative, not the symbol
    matrix: the Artin symbol sees only the underlying ramified prime, so
    the returned Gram is the canonical one with rows and columns permuted
    into the requested order.
    """
    if len(labels) != rec.n:
        raise BasisNotInRadical(
            f"expected {rec.n} basis elements, got {len(labels)}")
    basis_primes = [abs(s) for s in rec.basis]
    # Generators of the radical as rational square classes: the basis stars
    # plus the relation vector of d (d is a square in K).  When d is even
    # the relation carries the prime 2 and can never combine with
    # odd-supported labels, so it drops out.
    gens = list(rec.basis)
    if rec.d % 2 != 0:
        gens.append(rec.d)

    def exponent_vector(value: int) -> tuple[int, ...] | None:
        """Coordinates of value over (-1, odd ramified primes) mod squares."""
        if value == 0:
            return None
        f = factor(value)
        if not f.squarefree:
            return None
        coords = {-1: 1 if value < 0 else 0}
        for p in f.primes():
            if p == 2 or p not in rec.odd_ramified:
                return None  # 2 never lies in the odd-star radical
            coords[p] = 1
        return tuple(coords.get(p, 0) for p in (-1,) + rec.odd_ramified)

    gen_vecs = [exponent_vector(g) for g in gens]
    width = 1 + len(rec.odd_ramified)
    packed_gens = [sum(b << i for i, b in enumerate(v)) for v in gen_vecs]

    def in_radical(vec: tuple[int, ...]) -> bool:
        target = sum(b << i for i, b in enumerate(vec))
        work = packed_gens[:]
        row = 0
        for col in range(width):
            piv = next((k for k in range(row, len(work))
                        if (work[k] >> col) & 1), None)
            if piv is None:
                continue
            work[row], work[piv] = work[piv], work[row]
            for k in range(len(work)):
                if k != row and (work[k] >> col) & 1:
                    work[k] ^= work[row]
            if (target >> col) & 1:
                target ^= work[row]
            row += 1
        return target == 0

    perm = []
    seen = set()
    for a in labels:
        vec = exponent_vector(a)
        if vec is None or not in_radical(vec):
            raise BasisNotInRadical(f"{a} is not in the Kummer radical")
        support = [p for p in rec.odd_ramified if a % p == 0]
        if len(support) != 1 or support[0] not in basis_primes:
            raise BasisNotInRadical(
                f"{a} does not represent a single basis prime")
        idx = basis_primes.index(support[0])
        if idx in seen:
            raise BasisNotInRadical(f"duplicate basis prime {support[0]}")
        seen.add(idx)
        perm.append(idx)

    g = rec.gram.gram
    rows = [[g.entry(perm[i], perm[j]) for j in range(rec.n)]
            for i in range(rec.n)]
    return tuple(labels), BilinearForm.from_rows(rows)
