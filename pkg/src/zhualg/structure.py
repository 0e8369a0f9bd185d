"""Finite-dimensional algebras realised as spans of matrices.

An algebra generated by a few operators is computed by closing their
unital span under multiplication; the result carries its structure
constants so that semisimplicity can be decided by Dickson's criterion
(the trace form of the regular representation is nondegenerate).

Internally matrices are sparse dicts {(i, j): Fraction}; the operators
that occur here (diagonal Cartan actions, signed partial permutations and
their products) have very few nonzero entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactmath.linalg import matrix_rank, zeros

__all__ = ["StructureAlgebra", "SparseSpan", "span_closure", "is_semisimple", "trace_form"]


def to_sparse(m: np.ndarray) -> dict[tuple[int, int], Fraction]:
    return {(int(i), int(j)): Fraction(x) for (i, j), x in np.ndenumerate(m) if x != 0}


def to_dense(s: dict[tuple[int, int], Fraction], n: int) -> np.ndarray:
    out = zeros(n)
    for (i, j), x in s.items():
        out[i, j] = x
    return out


def sparse_matmul(a: dict, b: dict) -> dict:
    rows_b: dict[int, list[tuple[int, Fraction]]] = {}
    for (k, j), x in b.items():
        rows_b.setdefault(k, []).append((j, x))
    out: dict[tuple[int, int], Fraction] = {}
    for (i, k), x in a.items():
        for j, y in rows_b.get(k, ()):
            key = (i, j)
            v = out.get(key, 0) + x * y
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


class SparseSpan:
    """Reduced echelon basis over Q with sparse rows keyed by any sortable key.

    Every row has a 1 at its pivot and 0 at every other row's pivot, so a
    vector's coordinates are its values at the pivots.
    """

    def __init__(self):
        self.rows: list[dict] = []
        self.pivots: list = []
        self._row_of: dict = {}

    def __len__(self):
        return len(self.rows)

    def _reduce(self, vec: dict) -> tuple[dict, dict]:
        v = dict(vec)
        coeffs = {}
        for key in [k for k in vec if k in self._row_of]:
            f = v.get(key)
            if not f:
                continue
            r = self._row_of[key]
            coeffs[r] = f
            for k, x in self.rows[r].items():
                nv = v.get(k, 0) - f * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v, coeffs

    def add(self, vec: dict) -> bool:
        v, _ = self._reduce(vec)
        if not v:
            return False
        c = min(v)
        inv = 1 / v[c]
        v = {k: x * inv for k, x in v.items()}
        for r, row in enumerate(self.rows):
            f = row.get(c)
            if f:
                for k, x in v.items():
                    nv = row.get(k, 0) - f * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self._row_of[c] = len(self.rows)
        self.rows.append(v)
        self.pivots.append(c)
        return True

    def coords(self, vec: dict) -> dict[int, Fraction]:
        """Sparse coordinates {row index: coefficient}; raises if vec is outside."""
        resid, coeffs = self._reduce(vec)
        if resid:
            raise ValueError("vector is not in the span")
        return coeffs


@dataclass
class StructureAlgebra:
    """Basis b_0..b_(n-1) with b_i b_j = sum_l products[i][j][l] b_l."""

    products: list[list[list[Fraction]]]
    basis: list[np.ndarray] | None = field(default=None, repr=False)
    unit: list[Fraction] | None = None
    rounds: int = 0

    @property
    def dim(self) -> int:
        return len(self.products)

    @classmethod
    def from_structure_constants(cls, products, unit=None) -> "StructureAlgebra":
        prods = [[[Fraction(c) for c in row] for row in rows] for rows in products]
        return cls(prods, None, None if unit is None else [Fraction(c) for c in unit])

    def check_closed(self):
        n = self.dim
        for rows in self.products:
            if len(rows) != n or any(len(r) != n for r in rows):
                raise ValueError("structure constants are not closed over the basis")

    def multiply(self, a: Sequence, b: Sequence) -> list[Fraction]:
        n = self.dim
        out = [Fraction(0)] * n
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    c = ai * bj
                    for l, s in enumerate(self.products[i][j]):
                        if s:
                            out[l] += c * s
        return out

    def is_associative(self) -> bool:
        n = self.dim
        e = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                ij = self.products[i][j]
                for k in range(n):
                    if self.multiply(ij, e[k]) != self.multiply(e[i], self.products[j][k]):
                        return False
        return True


def span_closure(
    generators: Sequence[np.ndarray], strategy: str = "squaring", max_rounds: int = 64
) -> StructureAlgebra:
    """Unital algebra generated by square matrices of a common size.

    ``squaring``: each round multiplies all pairs of spanning elements (only
    pairs involving something new are recomputed), so r rounds cover words
    of length up to 2^r; ``rounds`` counts the rounds that enlarged the span.
    ``generators``: breadth-first left multiplication by the generators,
    cheaper when there are many basis elements; ``rounds`` is then the word
    length at which the span stabilised.
    """
    if not generators:
        raise ValueError("need at least one generator")
    if strategy not in ("squaring", "generators"):
        raise ValueError(f"unknown strategy {strategy!r}")
    n = generators[0].shape[0]
    span = SparseSpan()
    elements: list[dict] = []

    def offer(m: dict) -> bool:
        if span.add(m):
            elements.append(m)
            return True
        return False

    offer({(i, i): Fraction(1) for i in range(n)})
    gens = [to_sparse(g) for g in generators]
    for g in gens:
        offer(g)

    rounds = 0
    if strategy == "squaring":
        done = 0  # elements[:done] have had all pairwise products taken
        for _ in range(max_rounds):
            current = len(elements)
            grew = False
            for i in range(current):
                for j in range(current):
                    if i < done and j < done:
                        continue
                    grew |= offer(sparse_matmul(elements[i], elements[j]))
            done = current
            if not grew:
                break
            rounds += 1
        else:
            raise RuntimeError("span closure did not stabilise")
    else:
        frontier = list(elements)
        while frontier:
            rounds += 1
            if rounds > max_rounds * max(n, 1):
                raise RuntimeError("span closure did not stabilise")
            new = []
            for g in gens:
                for x in frontier:
                    prod = sparse_matmul(g, x)
                    if offer(prod):
                        new.append(prod)
            frontier = new
        rounds -= 1

    basis_sparse = span.rows
    dim = len(basis_sparse)
    products = []
    for x in basis_sparse:
        row = []
        for y in basis_sparse:
            c = span.coords(sparse_matmul(x, y))
            row.append([c.get(l, Fraction(0)) for l in range(dim)])
        products.append(row)
    unit_c = span.coords({(i, i): Fraction(1) for i in range(n)})
    unit = [unit_c.get(l, Fraction(0)) for l in range(dim)]
    basis = [to_dense(b, n) for b in basis_sparse]
    return StructureAlgebra(products, basis, unit, rounds)


def trace_form(alg: StructureAlgebra) -> list[list[Fraction]]:
    """T(b_i, b_j) = tr(L_(b_i) L_(b_j)) for the left regular representation.

    By associativity L_a L_b = L_(ab), so T(b_i, b_j) = sum_k c_ij^k tr(L_(b_k))
    with tr(L_(b_k)) = sum_j c_kj^j.
    """
    alg.check_closed()
    n = alg.dim
    c = alg.products
    tr = [sum((c[k][j][j] for j in range(n)), Fraction(0)) for k in range(n)]
    return [
        [sum((x * tr[k] for k, x in enumerate(c[i][j]) if x), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def is_semisimple(alg: StructureAlgebra) -> bool:
    """Dickson's criterion in characteristic zero."""
    t = trace_form(alg)
    return matrix_rank(t) == alg.dim
