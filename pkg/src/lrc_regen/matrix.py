"""Dense matrices over GF(p) with exact Gaussian elimination.

Entries are stored as canonical residues in ``[0, p)``. Column indices in
this module are 0-based; node labels (1-based) are translated by callers.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .field import GF, FieldElement


class Matrix:
    __slots__ = ("rows", "p", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], p: int):
        GF(p)  # validates the modulus
        data = tuple(tuple(int(x) % p for x in r) for r in rows)
        if not data or not data[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged rows")
        self.rows = data
        self.p = p
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int, p: int) -> Matrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], p)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, p: int) -> Matrix:
        return cls([[0] * ncols for _ in range(nrows)], p)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], p: int) -> Matrix:
        return cls(zip(*cols), p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def element(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.rows[i][j], self.p)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> Matrix:
        return Matrix(zip(*self.rows), self.p)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.p == other.p and self.rows == other.rows

    def __hash__(self):
        return hash((self.p, self.rows))

    def __repr__(self):
        return f"Matrix({self.tolist()}, p={self.p})"

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.p != other.p:
            raise ValueError("modulus mismatch")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        p = self.p
        cols = other.columns()
        return Matrix(
            [[sum(a * b for a, b in zip(r, c)) % p for c in cols] for r in self.rows], p
        )

    def vecmul(self, v: Sequence[int]) -> list[int]:
        """Row vector times matrix: ``v @ self``."""
        if len(v) != self.nrows:
            raise ValueError(f"vector of length {len(v)} does not match {self.nrows} rows")
        p = self.p
        out = [0] * self.ncols
        for coef, row in zip(v, self.rows):
            coef %= p
            if coef:
                for j, x in enumerate(row):
                    out[j] += coef * x
        return [x % p for x in out]

    def select_columns(self, indices: Sequence[int]) -> Matrix:
        """Column submatrix ``G_X`` in the order given."""
        indices = list(indices)
        if not indices:
            raise ValueError("empty column selection")
        if len(set(indices)) != len(indices):
            raise ValueError(f"duplicate column index in {indices}")
        for j in indices:
            if not 0 <= j < self.ncols:
                raise IndexError(f"column {j} out of range for {self.ncols} columns")
        return Matrix([[r[j] for j in indices] for r in self.rows], self.p)


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; first nonzero entry is taken as pivot."""
    a = [list(r) for r in rows]
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank_of_rows(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank by forward elimination only (cheaper than full rref)."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        pr = a[r]
        for i in range(r + 1, nrows):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [(x - f * y) % p for x, y in zip(a[i], pr)]
        r += 1
        if r == nrows:
            break
    return r


def rank(m: Matrix) -> int:
    # eliminate along the shorter dimension
    if m.ncols < m.nrows:
        return rank_of_rows(list(zip(*m.rows)), m.p)
    return rank_of_rows(m.rows, m.p)


def columns_rank(cols: Sequence[Sequence[int]], p: int) -> int:
    """Rank of a set of column vectors (treated as rows of the transpose)."""
    if not cols:
        return 0
    return rank_of_rows(cols, p)


def solve_in_span(basis_cols: Matrix, target: Sequence[int]) -> Optional[list[int]]:
    """Find ``c`` with ``basis_cols @ c == target``, or ``None`` if no such ``c``.

    The solution is canonical: free variables of the reduced echelon form are
    set to zero, so the same inputs always give the same coefficients.
    """
    target = list(target)
    if len(target) != basis_cols.nrows:
        raise ValueError(
            f"target has length {len(target)}, basis columns have length {basis_cols.nrows}"
        )
    p = basis_cols.p
    aug = [list(r) + [t % p] for r, t in zip(basis_cols.rows, target)]
    red, pivots = rref(aug, p)
    n = basis_cols.ncols
    if pivots and pivots[-1] == n:
        return None
    coeffs = [0] * n
    for row, c in zip(red, pivots):
        coeffs[c] = row[n]
    return coeffs
