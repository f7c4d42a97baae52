"""Bilinear forms over GF(2): symmetric classification and the isotropy index.

The index nu of a form B on an n-dimensional space is the largest dimension
of a subspace W with B(w, w') = 0 for every ordered pair from W.  For
symmetric forms it is given in closed form by the Witt-style decomposition
into metabolic plans b(a) = [[a,1],[1,0]] and <1> summands; in general we
carry an upper bound from the rank, a lower bound from the symmetrization,
and an exact depth-first search over echelon bases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2core import BitMatrix, rank


class NotSymmetric(ValueError):
    """Classification applies to symmetric forms only."""


class TooLarge(ValueError):
    """Dimension exceeds the exact-search ceiling."""


NU_EXACT_DEFAULT_MAX = 20
NU_BRUTE_MAX = 8


@dataclass(frozen=True)
class BilinearForm:
    n: int
    gram: BitMatrix

    def __post_init__(self):
        if not self.gram.is_square() or self.gram.rows != self.n:
            raise ValueError("gram matrix must be n x n")

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> "BilinearForm":
        m = BitMatrix.from_rows(rows, len(rows))
        return cls(m.rows, m)


@dataclass(frozen=True)
class SymmetricClassification:
    r: int
    r0: int
    delta: int
    zeros: int
    alternating: bool
    nu: int


@dataclass(frozen=True)
class NuBounds:
    lower: int
    upper: int
    exact: int | None = None


def symmetrize(f: BilinearForm) -> BilinearForm:
    """B + B^T; always symmetric with zero diagonal (alternating)."""
    t = f.gram.transpose()
    data = tuple(a ^ b for a, b in zip(f.gram.data, t.data))
    return BilinearForm(f.n, BitMatrix(f.n, f.n, data))


def is_symmetric(f: BilinearForm) -> bool:
    return f.gram.data == f.gram.transpose().data


def is_alternating(f: BilinearForm) -> bool:
    """Symmetric with zero diagonal, i.e. B(x,x) = 0 for all x."""
    return is_symmetric(f) and all(
        not (f.gram.data[i] >> i) & 1 for i in range(f.n))


def classify_symmetric(f: BilinearForm) -> SymmetricClassification:
    """Decompose a symmetric form: r = 2*r0 + delta, nu = n - r0 - delta.

    delta counts <1> summands: 0 for alternating forms, rank parity
    otherwise (an even number of <1>'s regroups into metabolic plans).
    """
    if not is_symmetric(f):
        raise NotSymmetric("form is not symmetric")
    r = rank(f.gram)
    alternating = all(not (f.gram.data[i] >> i) & 1 for i in range(f.n))
    delta = 0 if alternating else r % 2
    r0 = (r - delta) // 2
    return SymmetricClassification(
        r=r, r0=r0, delta=delta, zeros=f.n - r,
        alternating=alternating, nu=f.n - r0 - delta)


def nu_bounds(f: BilinearForm) -> NuBounds:
    """Bracketing of nu without search.

    upper: nu <= n - rk/2, sharpened to n - ceil(rk/2) by integrality.
    lower: n - floor(rk_sym/2) - floor(rk/2) from restricting B to a
    maximal isotropic subspace of its symmetrization, clamped into
    [0, upper]; for symmetric forms the classification is exact and
    replaces it (the symmetrization vanishes and the formula degenerates).
    """
    r = rank(f.gram)
    upper = f.n - (r + 1) // 2
    if is_symmetric(f):
        lower = classify_symmetric(f).nu
    else:
        rs = rank(symmetrize(f).gram)
        lower = max(0, min(f.n - rs // 2 - r // 2, upper))
    return NuBounds(lower=lower, upper=upper)


def _row_masks(f: BilinearForm) -> list[int]:
    """rm[v] = xor of Gram rows selected by v, so B(v,w) = parity(rm[v] & w)."""
    size = 1 << f.n
    rm = [0] * size
    g = f.gram.data
    for v in range(1, size):
        rm[v] = rm[v & (v - 1)] ^ g[(v & -v).bit_length() - 1]
    return rm


def nu_exact(f: BilinearForm, max_n: int = NU_EXACT_DEFAULT_MAX) -> int:
    """Exact isotropy index by DFS over echelon-constrained bases.

    Basis vectors are added with strictly increasing leading bit, so every
    subspace is reachable; candidate lists are filtered incrementally and
    branches are cut once they cannot beat the best dimension found or the
    rank upper bound is attained.
    """
    if f.n > max_n:
        raise TooLarge(f"n = {f.n} exceeds exact-search ceiling {max_n}")
    if f.n == 0:
        return 0
    bounds = nu_bounds(f)
    if is_symmetric(f):
        return classify_symmetric(f).nu
    upper = bounds.upper
    rm = _row_masks(f)
    n = f.n
    best = 0

    def parity(x: int) -> int:
        return bin(x).count("1") & 1

    def extend(cands: list[int], dim: int) -> None:
        nonlocal best
        if dim > best:
            best = dim
        for idx, v in enumerate(cands):
            if best >= upper:
                return
            pivot = v.bit_length() - 1
            if dim + (n - pivot) <= best:
                continue
            rv = rm[v]
            sub = [w for w in cands[idx + 1:]
                   if w.bit_length() > pivot + 1
                   and not parity(rv & w) and not parity(rm[w] & v)]
            extend(sub, dim + 1)

    root = [v for v in range(1, 1 << n) if not parity(rm[v] & v)]
    extend(root, 0)
    return best


def nu_brute(f: BilinearForm) -> int:
    """Independent oracle: enumerate totally isotropic subspaces exhaustively.

    Walks every subspace of F_2^n through its unique reduced-row-echelon
    basis (new pivot above all previous, previous pivot bits cleared) and
    keeps the largest that stays totally isotropic.  Entry tests use plain
    Gram lookups, no packed row masks and no bound pruning.
    """
    if f.n > NU_BRUTE_MAX:
        raise TooLarge(f"n = {f.n} exceeds brute-force ceiling {NU_BRUTE_MAX}")
    n = f.n
    g = f.gram.data

    def pairs_ok(v: int, w: int) -> bool:
        total = 0
        for i in range(n):
            if (v >> i) & 1:
                total ^= bin(g[i] & w).count("1")
        return total & 1 == 0

    best = 0

    def extend(basis: list[int], pivots: int, dim: int) -> None:
        nonlocal best
        if dim > best:
            best = dim
        top = basis[-1].bit_length() if basis else 0
        for v in range(1 << top, 1 << n):
            if v & pivots:
                continue
            if not pairs_ok(v, v):
                continue
            if all(pairs_ok(v, w) and pairs_ok(w, v) for w in basis):
                extend(basis + [v], pivots | (1 << (v.bit_length() - 1)), dim + 1)

    extend([], 0, 0)
    return best
