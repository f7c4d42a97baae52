"""Dense linear algebra over GF(2) on bit-packed matrices.

Rows are stored as Python ints used as bitsets: bit j of ``data[i]`` is the
entry in row i, column j.  All operations are pure; matrices are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass


class NonSquare(ValueError):
    """Operation requires square matrices."""


class SingularBasis(ValueError):
    """Change-of-basis matrix is not invertible over GF(2)."""


@dataclass(frozen=True)
class BitMatrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.data) != self.rows:
            raise ValueError("inconsistent dimensions")
        mask = (1 << self.cols) - 1
        if any(row & ~mask for row in self.data):
            raise ValueError("bits set beyond column count")

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        packed = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            packed.append(sum((v & 1) << j for j, v in enumerate(r)))
        return cls(len(rows), cols, tuple(packed))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.cols)] for row in self.data]

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, row in enumerate(self.data):
            while row:
                low = row & -row
                out[low.bit_length() - 1] |= 1 << i
                row ^= low
        return BitMatrix(self.cols, self.rows, tuple(out))

    def is_square(self) -> bool:
        return self.rows == self.cols


def parse_matrix(text: str) -> BitMatrix:
    """Parse the shared matrix text format: first line n, then n rows of
    n space-separated 0/1 entries (row index = left argument of the form)."""
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty matrix file")
    n = int(lines[0])
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        entries = ln.split()
        if len(entries) != n or any(e not in ("0", "1") for e in entries):
            raise ValueError(f"bad matrix row: {ln!r}")
        rows.append([int(e) for e in entries])
    return BitMatrix.from_rows(rows, n)


def format_matrix(m: BitMatrix) -> str:
    if not m.is_square():
        raise NonSquare("matrix text format is square-only")
    body = "\n".join(" ".join(str(m.entry(i, j)) for j in range(m.cols))
                     for i in range(m.rows))
    return f"{m.rows}\n{body}\n" if m.rows else f"{m.rows}\n"


def _eliminate(rows: list[int], cols: int) -> tuple[int, list[int]]:
    """In-place forward elimination; returns (rank, pivot column list)."""
    rank = 0
    pivots = []
    for col in range(cols):
        piv = None
        for k in range(rank, len(rows)):
            if (rows[k] >> col) & 1:
                piv = k
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for k in range(len(rows)):
            if k != rank and (rows[k] >> col) & 1:
                rows[k] ^= rows[rank]
        pivots.append(col)
        rank += 1
    return rank, pivots


def rank(m: BitMatrix) -> int:
    """GF(2) row rank; works on a copy, never mutates the input."""
    work = list(m.data)
    r, _ = _eliminate(work, m.cols)
    return r


def kernel_basis(m: BitMatrix) -> list[int]:
    """Basis of {x : m.x = 0}, each vector a bitmask over the columns.

    Size equals cols - rank(m): the dimension of the right radical when
    m is the Gram matrix of a bilinear form.
    """
    work = list(m.data)
    _, pivots = _eliminate(work, m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for row_idx, col in enumerate(pivots):
            if (work[row_idx] >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def mat_vec(m: BitMatrix, v: int) -> int:
    """Product m.v over GF(2); v and the result are column bitmasks."""
    out = 0
    for i, row in enumerate(m.data):
        out |= (bin(row & v).count("1") & 1) << i
    return out


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise ValueError("dimension mismatch")
    out = []
    for row in a.data:
        acc = 0
        rem = row
        while rem:
            low = rem & -rem
            acc ^= b.data[low.bit_length() - 1]
            rem ^= low
        out.append(acc)
    return BitMatrix(a.rows, b.cols, tuple(out))


def is_invertible(e: BitMatrix) -> bool:
    return e.is_square() and rank(e) == e.rows


def congruence(m: BitMatrix, e: BitMatrix) -> BitMatrix:
    """Change of basis E^T M E; columns of e are the new basis coordinates.

    Preserves rank (and every congruence invariant of the form m represents).
    """
    if not m.is_square() or not e.is_square() or m.rows != e.rows:
        raise NonSquare("congruence needs square matrices of equal size")
    if not is_invertible(e):
        raise SingularBasis("change-of-basis matrix is singular")
    return mat_mul(mat_mul(e.transpose(), m), e)
