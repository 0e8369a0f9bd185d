"""Positive-definite even lattices and the irreducible modules of Abar(L).

Vectors are plain tuples of coordinates in the basis alpha_1..alpha_d that
defines the Gram matrix: ints for lattice vectors, Fractions for vectors of
the dual lattice.

Sign convention: E_beta u_alpha = eps(beta, alpha) u_(alpha+beta), i.e. the
operator's lattice vector goes first in the cocycle.  With this order
E_b1 E_b2 = eps(b1, b2) E_(b1+b2) on the nose via the cocycle identity.
In the product relation the binomial factor in the Cartan element is applied
on the right, so it is evaluated at the weight of the source vector.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Sequence

import numpy as np

from .exactmath import Poly, binom_poly, poly_shift
from .exactmath.linalg import identity, inverse, is_zero_matrix, zeros
from .exactmath.rational import format_rational
from .rbar import block_diagonal
from .structure import StructureAlgebra, is_semisimple, span_closure

__all__ = [
    "LatticeError",
    "GramLattice",
    "Cocycle",
    "CosetData",
    "LatticeModule",
    "ModuleSum",
    "RelationReport",
    "validate_gram",
    "smith_normal_form",
    "discriminant_group",
    "short_vectors",
    "min_coset_reps",
    "delta_set",
    "make_cocycle",
    "g_alpha_beta",
    "build_module",
    "module_sum",
    "support_set",
    "verify_relations",
    "algebra_span",
    "module_equivalence",
    "lattice_report",
    "load_gram",
]


class LatticeError(ValueError):
    """Invalid lattice input; ``code`` names the failed condition."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class GramLattice:
    G: tuple[tuple[int, ...], ...]
    Ginv: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @property
    def d(self) -> int:
        return len(self.G)

    @property
    def det(self) -> int:
        return _int_det(self.G)

    def pair(self, u: Sequence, v: Sequence):
        return sum(u[i] * self.G[i][j] * v[j] for i in range(self.d) for j in range(self.d))

    def norm(self, v: Sequence):
        return self.pair(v, v)

    def is_dual(self, v: Sequence) -> bool:
        """v in L° iff G v is integral."""
        return all(
            Fraction(sum(self.G[i][j] * v[j] for j in range(self.d))).denominator == 1
            for i in range(self.d)
        )


def _int_det(m) -> int:
    # Bareiss fraction-free elimination.
    a = [list(row) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def validate_gram(G) -> GramLattice:
    rows = [list(r) for r in G]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise LatticeError("not_square", "Gram matrix must be a nonempty square matrix")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise LatticeError("not_integer", f"Gram entries must be integers, got {x!r}")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise LatticeError("not_symmetric", f"Gram matrix not symmetric at ({i},{j})")
    for i in range(n):
        if rows[i][i] % 2:
            raise LatticeError("odd_diagonal", f"odd diagonal entry {rows[i][i]} at {i}: lattice is not even")
    for k in range(1, n + 1):
        if _int_det([r[:k] for r in rows[:k]]) <= 0:
            raise LatticeError(
                "not_positive_definite", f"leading principal minor of order {k} is not positive"
            )
    G_t = tuple(tuple(r) for r in rows)
    Ginv = tuple(tuple(x for x in r) for r in inverse(rows))
    return GramLattice(G_t, Ginv)


def load_gram(path) -> GramLattice:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise LatticeError("bad_file", f"cannot read Gram file: {exc}") from exc
    if not isinstance(data, dict) or "gram" not in data:
        raise LatticeError("bad_file", 'Gram file must be a JSON object with a "gram" key')
    return validate_gram(data["gram"])


# ---------------------------------------------------------------------------
# discriminant group


def smith_normal_form(M) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Return (diagonal, U, V) with U M V = diag, U and V unimodular."""
    A = [list(r) for r in M]
    n, m = len(A), len(A[0])
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    diag = []
    for t in range(min(n, m)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, m) if A[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, n):
                add_row(i, t, -(A[i][t] // p))
                clean &= A[i][t] == 0
            for j in range(t + 1, m):
                add_col(j, t, -(A[t][j] // p))
                clean &= A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if A[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        diag.append(A[t][t])
    return diag, U, V


def _frac_part(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(x - math.floor(x) for x in v)


def discriminant_group(L: GramLattice) -> tuple[list[int], list[tuple[Fraction, ...]]]:
    """Invariant factors of L°/L (ones dropped) and one representative per coset.

    L° = G^-1 Z^d, so L°/L ~ Z^d / G Z^d ~ (+) Z/d_i with U G V = diag(d_i).
    """
    diag, U, _ = smith_normal_form(L.G)
    Uinv = inverse(U)
    d = L.d
    reps = set()
    for y in cartesian(*(range(di) for di in diag)):
        x = [sum(Uinv[i][j] * y[j] for j in range(d)) for i in range(d)]
        lam = [sum(L.Ginv[i][j] * x[j] for j in range(d)) for i in range(d)]
        reps.add(_frac_part(lam))
    return [di for di in diag if di != 1], sorted(reps)


# ---------------------------------------------------------------------------
# enumeration


def _ldl(G) -> tuple[list[list[Fraction]], list[Fraction]]:
    d = len(G)
    Lo = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    D = [Fraction(0)] * d
    for j in range(d):
        D[j] = G[j][j] - sum((Lo[j][k] ** 2 * D[k] for k in range(j)), Fraction(0))
        for i in range(j + 1, d):
            acc = sum((Lo[i][k] * Lo[j][k] * D[k] for k in range(j)), Fraction(0))
            Lo[i][j] = (G[i][j] - acc) / D[j]
    return Lo, D


def short_vectors(L: GramLattice, rep: Sequence, bound) -> list[tuple[Fraction, ...]]:
    """All mu in rep + L with <mu, mu> <= bound, in lexicographic order.

    Exact Fincke-Pohst: <y, y> = sum_i D_i (y_i + sum_(j>i) Lo_ji y_j)^2 from
    G = Lo D Lo^T, enumerated from the last coordinate down.
    """
    bound = Fraction(bound)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    d = L.d
    rep = [Fraction(x) for x in rep]
    Lo, D = _ldl(L.G)
    out = []
    y = [Fraction(0)] * d

    def recurse(i: int, remaining: Fraction):
        if i < 0:
            out.append(tuple(y))
            return
        centre = -sum((Lo[j][i] * y[j] for j in range(i + 1, d)), Fraction(0))
        t = remaining / D[i]
        s = centre - rep[i]
        r = math.isqrt(math.floor(t)) + 1
        for x in range(math.floor(s) - r, math.ceil(s) + r + 1):
            diff = x - s
            if diff * diff <= t:
                y[i] = rep[i] + x
                recurse(i - 1, remaining - D[i] * diff * diff)
        y[i] = Fraction(0)

    recurse(d - 1, bound)
    return sorted(out)


@dataclass(frozen=True)
class CosetData:
    coset: tuple[Fraction, ...]  # representative with coordinates in [0, 1)
    lam: tuple[Fraction, ...]  # chosen minimal representative (an element of S)
    min_norm: Fraction
    minimal_vectors: tuple[tuple[Fraction, ...], ...]


def min_coset_reps(L: GramLattice) -> list[CosetData]:
    out = []
    for coset in discriminant_group(L)[1]:
        vecs = short_vectors(L, coset, L.norm(coset))
        mn = min(L.norm(v) for v in vecs)
        minimal = tuple(v for v in vecs if L.norm(v) == mn)
        lam = coset if coset in minimal else minimal[0]
        out.append(CosetData(coset, lam, mn, minimal))
    return out


def _require_in_s(L: GramLattice, lam: Sequence) -> tuple[Fraction, ...]:
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != L.d:
        raise LatticeError("bad_vector", f"expected {L.d} coordinates")
    if not L.is_dual(lam):
        raise LatticeError("not_in_S", "not in S: vector is not in the dual lattice")
    n0 = L.norm(lam)
    if any(L.norm(v) < n0 for v in short_vectors(L, lam, n0)):
        raise LatticeError("not_in_S", "not in S: vector is not of minimal norm in its coset")
    return lam


def delta_set(L: GramLattice, lam: Sequence) -> list[tuple[int, ...]]:
    """Delta(lam) = {alpha in L : <lam+alpha, lam+alpha> = <lam, lam>}, zero first."""
    lam = _require_in_s(L, lam)
    n0 = L.norm(lam)
    deltas = sorted(
        tuple(int(a - b) for a, b in zip(v, lam))
        for v in short_vectors(L, lam, n0)
        if L.norm(v) == n0
    )
    zero = (0,) * L.d
    deltas.remove(zero)
    return [zero] + deltas


def support_set(L: GramLattice, cosets: list[CosetData] | None = None) -> list[tuple[int, ...]]:
    """All beta with <beta, beta> <= 4 max_lambda <lambda, lambda>.

    E_beta u != 0 forces <mu+beta, mu+beta> = <mu, mu> for a weight mu of
    minimal norm, hence |beta|^2 = -2<mu, beta> <= 2|mu||beta|; every other
    E_beta acts as zero.
    """
    cosets = cosets if cosets is not None else min_coset_reps(L)
    top = max(c.min_norm for c in cosets)
    return [tuple(int(x) for x in v) for v in short_vectors(L, (0,) * L.d, 4 * top)]


# ---------------------------------------------------------------------------
# cocycle


@dataclass(frozen=True)
class Cocycle:
    """Bimultiplicative eps with table[i][j] = (-1)^G_ij for i > j, +1 otherwise."""

    table: tuple[tuple[int, ...], ...]

    def __call__(self, a: Sequence[int], b: Sequence[int]) -> int:
        parity = 0
        d = len(self.table)
        for i in range(d):
            if not a[i]:
                continue
            for j in range(i):
                if self.table[i][j] == -1:
                    parity += a[i] * b[j]
        return -1 if parity % 2 else 1


def make_cocycle(L: GramLattice) -> Cocycle:
    d = L.d
    return Cocycle(
        tuple(tuple((-1) ** (L.G[i][j] % 2) if i > j else 1 for j in range(d)) for i in range(d))
    )


# ---------------------------------------------------------------------------
# polynomials attached to pairs of lattice vectors


def g_alpha_beta(L: GramLattice, alpha: Sequence[int], beta: Sequence[int]) -> Poly:
    """0 if <alpha, beta> >= 0, else C(x + <alpha,alpha>/2 - 1, -<alpha,beta> - 1).

    The defining binomial sum is evaluated too and must agree.
    """
    ab = L.pair(alpha, beta)
    if ab >= 0:
        return Poly()
    m = L.norm(alpha) // 2
    n = -ab
    closed = poly_shift(binom_poly(n - 1), m - 1)
    total = Poly()
    for r in range(m):
        total = total + binom_poly(n - 1 - r) * math.comb(m - 1, r)
    if total != closed:
        raise ArithmeticError(f"binomial sum disagrees with closed form for {alpha}, {beta}")
    return closed


# ---------------------------------------------------------------------------
# modules


@dataclass
class LatticeModule:
    """M^lambda with basis u_alpha, alpha in Delta(lambda)."""

    lattice: GramLattice = field(repr=False)
    cocycle: Cocycle = field(repr=False)
    lam: tuple[Fraction, ...]
    delta: list[tuple[int, ...]]
    h_action: list[np.ndarray] = field(repr=False)
    e_action: dict[tuple[int, ...], np.ndarray] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.delta)

    @property
    def weights(self) -> list[tuple[Fraction, ...]]:
        return [tuple(l + a for l, a in zip(self.lam, alpha)) for alpha in self.delta]

    def e_matrix(self, beta: Sequence[int]) -> np.ndarray:
        beta = tuple(int(b) for b in beta)
        if beta in self.e_action:
            return self.e_action[beta]
        L = self.lattice
        index = {a: i for i, a in enumerate(self.delta)}
        out = zeros(self.dim)
        n0 = L.norm(self.lam)
        for col, alpha in enumerate(self.delta):
            target = tuple(a + b for a, b in zip(alpha, beta))
            mu = tuple(l + t for l, t in zip(self.lam, target))
            if target in index and L.norm(mu) == n0:
                out[index[target], col] = Fraction(self.cocycle(beta, alpha))
        return out

    def cartan(self, v: Sequence) -> np.ndarray:
        """Diagonal action of the Cartan element v = sum v_i alpha_i."""
        out = zeros(self.dim)
        for i, mu in enumerate(self.weights):
            out[i, i] = Fraction(self.lattice.pair(mu, v))
        return out


def build_module(
    L: GramLattice,
    lam: Sequence,
    support: list[tuple[int, ...]] | None = None,
    cocycle: Cocycle | None = None,
) -> LatticeModule:
    lam = _require_in_s(L, lam)
    delta = delta_set(L, lam)
    cocycle = cocycle or make_cocycle(L)
    support = support if support is not None else support_set(L)
    mod = LatticeModule(L, cocycle, lam, delta, [], {})
    d = L.d
    mod.h_action = [mod.cartan([int(i == j) for j in range(d)]) for i in range(d)]
    mod.e_action = {beta: mod.e_matrix(beta) for beta in support}
    return mod


@dataclass
class ModuleSum:
    """Block-diagonal action on the direct sum of one M^lambda per coset."""

    lattice: GramLattice
    cocycle: Cocycle
    cosets: list[CosetData]
    modules: list[LatticeModule]
    support: list[tuple[int, ...]]
    _e_cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return sum(m.dim for m in self.modules)

    def weights(self) -> list[tuple[Fraction, ...]]:
        return [w for m in self.modules for w in m.weights]

    def e(self, beta: Sequence[int]) -> np.ndarray:
        beta = tuple(int(b) for b in beta)
        if beta not in self._e_cache:
            self._e_cache[beta] = block_diagonal([m.e_matrix(beta) for m in self.modules])
        return self._e_cache[beta]

    def cartan(self, v: Sequence) -> np.ndarray:
        return block_diagonal([m.cartan(v) for m in self.modules])

    def h(self, i: int) -> np.ndarray:
        return self.cartan([int(i == j) for j in range(self.lattice.d)])

    def binomial_cartan(self, alpha: Sequence[int], shift, r: int) -> np.ndarray:
        """Diagonal matrix of C(<mu, alpha> + shift, r) over the weights mu."""
        p = binom_poly(r)
        ws = self.weights()
        out = zeros(len(ws))
        for i, mu in enumerate(ws):
            out[i, i] = p(Fraction(self.lattice.pair(mu, alpha)) + shift)
        return out


def module_sum(L: GramLattice) -> ModuleSum:
    cosets = min_coset_reps(L)
    support = support_set(L, cosets)
    cocycle = make_cocycle(L)
    modules = [build_module(L, c.lam, support, cocycle) for c in cosets]
    return ModuleSum(L, cocycle, cosets, modules, support)


# ---------------------------------------------------------------------------
# relations of Abar(L)

RELATIONS = (
    "unit",
    "cartan_commute",
    "cartan_adjoint",
    "top_weight",
    "positive_pairing",
    "product",
)


@dataclass
class RelationReport:
    results: dict[str, dict] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.results.values())

    def to_json(self) -> dict:
        return {"passed": self.passed, "relations": self.results}


def _first_nonzero_column(m: np.ndarray):
    for (i, j), x in np.ndenumerate(m):
        if x != 0:
            return int(j)
    return None


def verify_relations(L: GramLattice, vectors: Iterable[Sequence[int]] | None = None,
                     rep: ModuleSum | None = None) -> RelationReport:
    """Check the defining relations of Abar(L) as matrix identities on the sum
    of all M^lambda.

    ``vectors`` defaults to the support set; every pair drawn from it is
    tested (E_(alpha+beta) is built on demand even outside the support).
    """
    rep = rep or module_sum(L)
    vecs = [tuple(v) for v in (vectors if vectors is not None else rep.support)]
    d, n = L.d, rep.dim
    eye = identity(n)
    report = RelationReport({name: {"pass": True, "checked": 0, "counterexample": None}
                             for name in RELATIONS})

    def record(name, diff, **where):
        entry = report.results[name]
        entry["checked"] += 1
        if entry["pass"] and not is_zero_matrix(diff):
            entry["pass"] = False
            entry["counterexample"] = {
                k: [format_rational(x) for x in v] if isinstance(v, tuple) else v
                for k, v in where.items()
            } | {"basis_index": _first_nonzero_column(diff)}

    record("unit", rep.e((0,) * d) - eye)
    hs = [rep.h(i) for i in range(d)]
    for i in range(d):
        for j in range(d):
            record("cartan_commute", hs[i] @ hs[j] - hs[j] @ hs[i], i=i, j=j)
    for a in vecs:
        Ea = rep.e(a)
        for i in range(d):
            basis_i = tuple(int(i == j) for j in range(d))
            coef = L.pair(basis_i, a)
            record("cartan_adjoint", hs[i] @ Ea - Ea @ hs[i] - Ea * coef, i=i, alpha=a)
        top = rep.cartan(a) - eye * Fraction(L.norm(a), 2)
        record("top_weight", top @ Ea, alpha=a)
    for a in vecs:
        Ea = rep.e(a)
        half = Fraction(L.norm(a), 2)
        for b in vecs:
            ab = L.pair(a, b)
            lhs = Ea @ rep.e(b)
            if ab > 0:
                record("positive_pairing", lhs, alpha=a, beta=b)
            else:
                s = tuple(x + y for x, y in zip(a, b))
                rhs = rep.e(s) @ rep.binomial_cartan(a, half, -ab) * rep.cocycle(a, b)
                record("product", lhs - rhs, alpha=a, beta=b)
    return report


def algebra_span(L: GramLattice, rep: ModuleSum | None = None) -> StructureAlgebra:
    """Unital span of the Cartan and E_beta images on the sum of all M^lambda."""
    rep = rep or module_sum(L)
    zero = (0,) * L.d
    gens = [rep.h(i) for i in range(L.d)] + [rep.e(b) for b in rep.support if b != zero]
    return span_closure(gens, strategy="generators")


def module_equivalence(L: GramLattice, l1: Sequence, l2: Sequence) -> bool:
    """M^l1 ~ M^l2 iff l2 - l1 lies in L (for minimal representatives)."""
    l1 = _require_in_s(L, l1)
    l2 = _require_in_s(L, l2)
    return all((b - a).denominator == 1 for a, b in zip(l1, l2))


def lattice_report(L: GramLattice, verify: bool = False) -> dict:
    factors, _ = discriminant_group(L)
    rep = module_sum(L)
    alg = algebra_span(L, rep)
    out = {
        "det": L.det,
        "invariant_factors": factors,
        "modules": [
            {
                "lambda": [format_rational(x) for x in c.lam],
                "dim": m.dim,
                "min_norm": format_rational(c.min_norm),
            }
            for c, m in zip(rep.cosets, rep.modules)
        ],
        "algebra_dim": alg.dim,
        "semisimple": None,
        "relations_verified": None,
    }
    if verify:
        out["semisimple"] = is_semisimple(alg)
        out["relations_verified"] = verify_relations(L, rep=rep).passed
    return out
