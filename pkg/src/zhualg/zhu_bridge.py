"""Polynomial identities behind the Zhu-algebra computations, and the
cross-check between Rbar_k and the rank-one lattice algebra.

The vertex-operator side is represented only through its polynomial
shadows: binomial identities and the reduction h(-r-1) = -h(-r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .exactmath import Poly, binom_poly, poly_affine, poly_shift, schur_specialize_alt
from .exactmath.linalg import identity, is_zero_matrix
from .exactmath.rational import format_rational
from .lattice import algebra_span, g_alpha_beta, module_sum, validate_gram
from .rbar import g_k, rbar_algebra, rbar_irreducibles
from .smith import _poly_of_matrix

__all__ = [
    "IdentityReport",
    "identity_vandermonde",
    "identity_ef",
    "identity_pal",
    "identity_schur",
    "identity_star_product",
    "identity_star_difference",
    "weight_reduction",
    "schur_vertex_coefficient",
    "rank_one_crosscheck",
    "CrosscheckReport",
    "identity_suite",
    "SUITES",
]


@dataclass(frozen=True)
class IdentityReport:
    name: str
    parameters: tuple
    lhs: Poly
    rhs: Poly

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "parameters": list(self.parameters),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "pass": self.passed,
        }


def identity_vandermonde(n: int, m: int) -> IdentityReport:
    """sum_{i=0}^n C(n, i) C(x, m-i) == C(x+n, m), stated for m >= n >= 0."""
    if not 0 <= n <= m:
        raise ValueError("outside stated range: need m >= n >= 0")
    lhs = Poly()
    for i in range(n + 1):
        lhs = lhs + binom_poly(m - i) * math.comb(n, i)
    return IdentityReport("vandermonde", (n, m), lhs, poly_shift(binom_poly(m), n))


def identity_ef(k: int) -> IdentityReport:
    """sum_{i=0}^{k-1} C(k-1, i) C(x, 2k-1-i) == C(x+k-1, 2k-1)."""
    if k < 1:
        raise ValueError("k must be positive")
    lhs = Poly()
    for i in range(k):
        lhs = lhs + binom_poly(2 * k - 1 - i) * math.comb(k - 1, i)
    return IdentityReport("ef", (k,), lhs, poly_shift(binom_poly(2 * k - 1), k - 1))


def identity_pal(k: int) -> IdentityReport:
    """C(x+k, 2k) - C(k-x, 2k) == C(x+k-1, 2k-1)."""
    if k < 1:
        raise ValueError("k must be positive")
    top = binom_poly(2 * k)
    lhs = poly_shift(top, k) - poly_affine(top, -1, k)
    return IdentityReport("pal", (k,), lhs, poly_shift(binom_poly(2 * k - 1), k - 1))


def identity_schur(r: int) -> IdentityReport:
    """p_r(x, -x, x, ...) == C(x, r)."""
    return IdentityReport("schur", (r,), schur_specialize_alt(r), binom_poly(r))


def weight_reduction(ns) -> tuple[int, int]:
    """Image of h(-n_1)...h(-n_r)1 under h(-n-1) = -h(-n): (sign, power of h)."""
    ns = list(ns)
    if any(n < 1 for n in ns):
        raise ValueError("mode indices must be positive")
    r = len(ns)
    return (-1) ** ((sum(ns) + r) % 2), r


def schur_vertex_coefficient(alpha_norm: int, beta_pairing: int, i: int) -> Poly:
    """Polynomial in h for the coefficient iota(a)_{i-1} iota(b), with <a,a> = alpha_norm
    and <a,b> = beta_pairing: zero once i-1 >= -<a,b>, else C(x, n-i) for n = -<a,b>."""
    if alpha_norm % 2:
        raise ValueError("alpha_norm must be even")
    if i < 0:
        raise ValueError("i must be nonnegative")
    if i - 1 >= -beta_pairing:
        return Poly()
    return schur_specialize_alt(-beta_pairing - i)


def identity_star_product(m: int, n: int) -> IdentityReport:
    """sum_{i=0}^m C(m, i) * coefficient(2m, -n, i) == C(x+m, n)."""
    lhs = Poly()
    for i in range(m + 1):
        lhs = lhs + schur_vertex_coefficient(2 * m, -n, i) * math.comb(m, i)
    return IdentityReport("star_product", (m, n), lhs, poly_shift(binom_poly(n), m))


def identity_star_difference(m: int, n: int) -> IdentityReport:
    """Pascal step of the star-product sum against g_alpha_beta.

    With <a,a> = 2m and <a,b> = -n, the sum S(x) = C(x+m, n) satisfies
    S(x) - S(x-1) = g_(a,b)(x), evaluated on the Gram matrix [[2m, -n], [-n, 2p]].
    """
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    star = identity_star_product(m, n).lhs
    p = n * n // (4 * m) + 1
    L = validate_gram([[2 * m, -n], [-n, 2 * p]])
    rhs = g_alpha_beta(L, (1, 0), (0, 1))
    return IdentityReport("star_difference", (m, n), star - poly_shift(star, -1), rhs)


def _star_reports(max_n: int, max_k: int) -> Iterator[IdentityReport]:
    for m in range(max_k + 1):
        for n in range(max_n + 1):
            yield identity_star_product(m, n)
            if m and n:
                yield identity_star_difference(m, n)


def identity_suite(max_n: int = 12, max_k: int = 8) -> Iterator[IdentityReport]:
    """Every identity family over the desk ranges n <= m <= max_n, k <= max_k."""
    for name in ("vandermonde", "ef", "pal", "schur", "star"):
        yield from SUITES[name](max_n, max_k)


SUITES: dict[str, Callable[[int, int], Iterator[IdentityReport]]] = {
    "vandermonde": lambda n, k: (identity_vandermonde(a, b) for b in range(n + 1) for a in range(b + 1)),
    "ef": lambda n, k: (identity_ef(j) for j in range(1, k + 1)),
    "pal": lambda n, k: (identity_pal(j) for j in range(1, k + 1)),
    "schur": lambda n, k: (identity_schur(r) for r in range(n + 1)),
    "star": _star_reports,
    "all": lambda n, k: identity_suite(n, k),
}


@dataclass
class CrosscheckReport:
    k: int
    rbar_dims: list[int]
    lattice_dims: list[int]
    rbar_algebra_dim: int
    lattice_algebra_dim: int
    rbar_spectra: list[list[Fraction]]
    lattice_spectra: list[list[Fraction]]
    generator_map_ok: bool
    mismatches: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        def spectra(s):
            return [[format_rational(x) for x in block] for block in s]

        return {
            "k": self.k,
            "rbar_dims": self.rbar_dims,
            "lattice_dims": self.lattice_dims,
            "rbar_algebra_dim": self.rbar_algebra_dim,
            "lattice_algebra_dim": self.lattice_algebra_dim,
            "rbar_spectra": spectra(self.rbar_spectra),
            "lattice_spectra": spectra(self.lattice_spectra),
            "generator_map_ok": self.generator_map_ok,
            "mismatches": self.mismatches,
            "pass": self.passed,
        }


def rank_one_crosscheck(k: int) -> CrosscheckReport:
    """Compare Rbar_k with Abar(Z alpha), <alpha, alpha> = 2k.

    Besides counts, dimensions and spectra, the images of
    A -> eps(alpha, -alpha) E_alpha, B -> E_-alpha, H -> alpha/2k on the lattice
    modules must satisfy the relations of R(g_k) and kill (1-2H)A.
    """
    if k < 1:
        raise ValueError("k must be positive")
    spec = rbar_irreducibles(k)
    r_alg = rbar_algebra(k, spec)
    L = validate_gram([[2 * k]])
    rep = module_sum(L)
    l_alg = algebra_span(L, rep)

    r_spectra = sorted(sorted(m.weights()) for m in spec.irreducibles)
    l_spectra = sorted(
        sorted(Fraction(L.pair(mu, (1,)), 2 * k) for mu in mod.weights) for mod in rep.modules
    )
    r_dims = sorted(spec.dims)
    l_dims = sorted(m.dim for m in rep.modules)

    mismatches = []
    if len(spec.irreducibles) != len(rep.modules):
        mismatches.append(f"irreducible counts {len(spec.irreducibles)} vs {len(rep.modules)}")
    if r_dims != l_dims:
        mismatches.append(f"dimension multisets {r_dims} vs {l_dims}")
    if r_alg.dim != l_alg.dim:
        mismatches.append(f"algebra dimensions {r_alg.dim} vs {l_alg.dim}")
    if r_spectra != l_spectra:
        mismatches.append("H-spectra differ")

    n = rep.dim
    A = rep.e((1,)) * rep.cocycle((1,), (-1,))
    B = rep.e((-1,))
    H = rep.cartan((1,)) * Fraction(1, 2 * k)
    gH = _poly_of_matrix(g_k(k), H)
    generator_map_ok = (
        is_zero_matrix(H @ A - A @ H - A)
        and is_zero_matrix(H @ B - B @ H + B)
        and is_zero_matrix(A @ B - B @ A - gH)
        and is_zero_matrix((identity(n) - H * 2) @ A)
    )
    if not generator_map_ok:
        mismatches.append("generator images violate the relations of Rbar_k")
    return CrosscheckReport(
        k, r_dims, l_dims, r_alg.dim, l_alg.dim, r_spectra, l_spectra, generator_map_ok, mismatches
    )
