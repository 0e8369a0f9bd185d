"""Exact linear algebra over Q on plain lists and numpy object arrays."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SpanBasis",
    "frac_matrix",
    "identity",
    "zeros",
    "matrix_rank",
    "determinant",
    "inverse",
    "is_zero_matrix",
]


def frac_matrix(rows) -> np.ndarray:
    """Object-dtype numpy array of Fractions."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else np.empty((0, 0), dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = Fraction(v)
    return out


def zeros(n: int, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    out = np.empty((n, m), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero_matrix(m: np.ndarray) -> bool:
    return not any(x != 0 for x in m.flat)


def _row_echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with left-to-right pivot search."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def matrix_rank(m) -> int:
    rows = [[Fraction(x) for x in row] for row in m]
    return len(_row_echelon(rows)[1])


def determinant(m) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def inverse(m) -> list[list[Fraction]]:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = _row_echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


class SpanBasis:
    """Incrementally maintained reduced echelon basis of a subspace of Q^n.

    Because the basis is kept fully reduced, the coordinates of a vector
    in the span are just its entries at the pivot columns.
    """

    def __init__(self, length: int):
        self.length = length
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, vec: Sequence) -> bool:
        """Insert vec; return True if it enlarged the span."""
        v = self.reduce(vec)
        c = next((i for i, x in enumerate(v) if x != 0), None)
        if c is None:
            return False
        inv = 1 / v[c]
        v = [x * inv for x in v]
        for i, row in enumerate(self.rows):
            f = row[c]
            if f:
                self.rows[i] = [a - f * b for a, b in zip(row, v)]
        pos = next((i for i, p in enumerate(self.pivots) if p > c), len(self.pivots))
        self.rows.insert(pos, v)
        self.pivots.insert(pos, c)
        return True

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def coords(self, vec: Sequence) -> list[Fraction]:
        """Coordinates of vec against ``self.rows``; raises if vec is outside."""
        v = [Fraction(x) for x in vec]
        coeffs = [v[p] for p in self.pivots]
        resid = list(v)
        for f, row in zip(coeffs, self.rows):
            if f:
                resid = [a - f * b for a, b in zip(resid, row)]
        if any(resid):
            raise ValueError("vector is not in the span")
        return coeffs


def span_dimension(vectors: Iterable[Sequence]) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    basis = SpanBasis(len(vectors[0]))
    for v in vectors:
        basis.add(v)
    return len(basis)
