"""The quotients Rbar_k of R(g_k) by the ideal generated by (1 - 2H)A.

Rbar_k is realised as the image of R(g_k) acting on the direct sum of its
irreducibles L(n/2k), -(k-1) <= n <= k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactmath import Poly
from .exactmath.linalg import identity, is_zero_matrix, zeros
from .exactmath.rational import format_rational
from .smith import SimpleModuleSpec, SmithAlgebra
from .structure import StructureAlgebra, is_semisimple, span_closure

__all__ = [
    "RbarError",
    "RbarSpec",
    "AlgebraReport",
    "g_k",
    "rbar_irreducibles",
    "rbar_algebra",
    "rbar_dimension",
    "check_ideal_relation",
    "block_diagonal",
    "rbar_report",
]


class RbarError(RuntimeError):
    """Raised when a constructed module fails an expected property."""

    def __init__(self, message: str, n: int | None = None):
        super().__init__(message if n is None else f"{message} (n={n})")
        self.n = n


def g_k(k: int) -> Poly:
    """2k x (4k^2x^2 - 1)(4k^2x^2 - 4)...(4k^2x^2 - (k-1)^2) / (2k-1)!"""
    if k < 1:
        raise ValueError("k must be positive")
    p = Poly([0, 2 * k])
    for m in range(1, k):
        p = p * Poly([-(m * m), 0, 4 * k * k])
    return p / math.factorial(2 * k - 1)


@dataclass
class RbarSpec:
    k: int
    g: Poly
    irreducibles: list[SimpleModuleSpec] = field(repr=False)

    @property
    def weights(self) -> list[Fraction]:
        return [m.lam for m in self.irreducibles]

    @property
    def dims(self) -> list[int]:
        return [m.dim for m in self.irreducibles]


def _ideal_generator_vanishes(module: SimpleModuleSpec) -> bool:
    n = module.dim
    return is_zero_matrix((identity(n) - module.H * 2) @ module.A)


def rbar_irreducibles(k: int) -> RbarSpec:
    alg = SmithAlgebra(g_k(k))
    mods = []
    for n in range(-(k - 1), k + 1):
        lam = Fraction(n, 2 * k)
        mod = alg.simple_module(lam, max_dim=2 * k + 2)
        expected = 2 if n == k else 1
        if mod.dim != expected:
            raise RbarError(f"L({lam}) has dimension {mod.dim}, expected {expected}", n)
        if not mod.satisfies_relations(alg.g):
            raise RbarError(f"L({lam}) violates the defining relations", n)
        if not _ideal_generator_vanishes(mod):
            raise RbarError(f"(1-2H)A does not vanish on L({lam})", n)
        mods.append(mod)
    return RbarSpec(k, alg.g, mods)


def check_ideal_relation(k: int, modules=None) -> bool:
    """True iff (1-2H)A acts as zero on every module.

    ``modules`` defaults to the irreducibles of Rbar_k; passing other
    R(g_k)-modules (e.g. a larger simple of R_k) tests them instead.
    """
    if modules is None:
        modules = rbar_irreducibles(k).irreducibles
    return all(_ideal_generator_vanishes(m) for m in modules)


def block_diagonal(blocks) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    out = zeros(size)
    pos = 0
    for b in blocks:
        d = b.shape[0]
        out[pos:pos + d, pos:pos + d] = b
        pos += d
    return out


def rbar_algebra(k: int, spec: RbarSpec | None = None) -> StructureAlgebra:
    spec = spec or rbar_irreducibles(k)
    mods = spec.irreducibles
    gens = [block_diagonal([getattr(m, name) for m in mods]) for name in ("A", "B", "H")]
    return span_closure(gens)


def rbar_dimension(k: int) -> int:
    return rbar_algebra(k).dim


@dataclass
class AlgebraReport:
    k: int
    irreducibles: list[tuple[Fraction, int]]
    algebra_dim: int
    semisimple: bool
    closure_rounds: int = 0

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "irreducibles": [
                {"weight": format_rational(w), "dim": d} for w, d in self.irreducibles
            ],
            "algebra_dim": self.algebra_dim,
            "semisimple": self.semisimple,
        }


def rbar_report(k: int) -> AlgebraReport:
    spec = rbar_irreducibles(k)
    alg = rbar_algebra(k, spec)
    return AlgebraReport(
        k,
        [(m.lam, m.dim) for m in spec.irreducibles],
        alg.dim,
        is_semisimple(alg),
        alg.rounds,
    )
