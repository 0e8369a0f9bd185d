"""The algebras R(g) = <A, B, H | HA-AH=A, HB-BH=-B, AB-BA=g(H)>.

Elements are kept in the PBW basis B^m H^n A^k.  Products use the closed
commutation rules

    A f(H) = f(H-1) A,    f(H) B = B f(H-1),    A B^m = B^m A + B^(m-1) h_(m-1)(H),

while :meth:`SmithAlgebra.normal_form` rewrites raw words with the three
defining relations and serves as an independent route for the same answers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exactmath import (
    Poly,
    binom_poly,
    is_squarefree,
    newton_coefficients,
    poly_gcd,
    poly_shift,
    rational_roots,
    squarefree_part,
)
from .exactmath.linalg import is_zero_matrix, zeros
from .exactmath.rational import as_rational, format_rational

__all__ = [
    "NcElement",
    "SmithAlgebra",
    "SimpleModuleSpec",
    "SemisimplicityReport",
    "SmithError",
    "new_smith",
]

GENERATORS = ("A", "B", "H")


class SmithError(ValueError):
    pass


class NcElement:
    """Finite Q-combination of PBW monomials, keyed by (m, n, k) for B^m H^n A^k."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                mono = tuple(int(e) for e in mono)
                if len(mono) != 3 or min(mono) < 0:
                    raise ValueError(f"bad PBW exponent triple {mono}")
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NcElement is immutable")

    @classmethod
    def monomial(cls, m: int = 0, n: int = 0, k: int = 0, c=1) -> "NcElement":
        return cls({(m, n, k): c})

    @classmethod
    def scalar(cls, c) -> "NcElement":
        return cls({(0, 0, 0): c})

    @classmethod
    def poly_in_h(cls, p: Poly) -> "NcElement":
        return cls({(0, n, 0): c for n, c in enumerate(p.coeffs)})

    def __eq__(self, other):
        if isinstance(other, NcElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "NcElement") -> "NcElement":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return NcElement(out)

    def __neg__(self):
        return NcElement({mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        # Scalars only; algebra products go through SmithAlgebra.mul.
        if isinstance(c, NcElement):
            raise TypeError("use SmithAlgebra.mul for products of elements")
        c = as_rational(c)
        return NcElement({mono: c * a for mono, a in self.terms.items()})

    __rmul__ = __mul__

    def degrees(self) -> set[int]:
        """Z-grading degrees (k - m) of the monomials present."""
        return {k - m for (m, _, k) in self.terms}

    def to_json(self) -> list:
        return [
            {"m": m, "n": n, "k": k, "c": format_rational(c)}
            for (m, n, k), c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data) -> "NcElement":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({(t["m"], t["n"], t["k"]): as_rational(t["c"]) for t in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, n, k), c in sorted(self.terms.items()):
            mono = "".join(
                s if e == 1 else f"{s}^{e}" for s, e in (("B", m), ("H", n), ("A", k)) if e
            )
            parts.append(f"{format_rational(c)}*{mono}" if mono else format_rational(c))
        return " + ".join(parts)


# Grouped form {(m, k): f} stands for sum of B^m f(H) A^k.
def _group(e: NcElement) -> dict[tuple[int, int], Poly]:
    coeffs: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (m, n, k), c in e.terms.items():
        coeffs.setdefault((m, k), {})[n] = c
    out = {}
    for key, d in coeffs.items():
        out[key] = Poly(d.get(i, 0) for i in range(max(d) + 1))
    return out


def _ungroup(grouped: Mapping[tuple[int, int], Poly]) -> NcElement:
    terms = {}
    for (m, k), p in grouped.items():
        for n, c in enumerate(p.coeffs):
            if c:
                terms[(m, n, k)] = c
    return NcElement(terms)


def _accumulate(target: dict, key, p: Poly):
    q = target.get(key)
    q = p if q is None else q + p
    if q.is_zero():
        target.pop(key, None)
    else:
        target[key] = q


@dataclass(frozen=True)
class SimpleModuleSpec:
    """The simple module L(lambda) with basis v, Bv, ..., B^(dim-1) v."""

    lam: Fraction
    dim: int
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    H: np.ndarray = field(repr=False)

    def weights(self) -> list[Fraction]:
        return [self.H[i, i] for i in range(self.dim)]

    def satisfies_relations(self, g: Poly) -> bool:
        A, B, H = self.A, self.B, self.H
        gH = _poly_of_matrix(g, H)
        return (
            is_zero_matrix(H @ A - A @ H - A)
            and is_zero_matrix(H @ B - B @ H + B)
            and is_zero_matrix(A @ B - B @ A - gH)
        )


def _poly_of_matrix(p: Poly, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    acc = zeros(n)
    eye = zeros(n)
    for i in range(n):
        eye[i, i] = Fraction(1)
    for c in reversed(p.coeffs):
        acc = acc @ m + eye * c
    return acc


@dataclass
class SemisimplicityReport:
    bound: int
    squarefree: dict[int, bool]
    coprime: dict[tuple[int, int], bool]

    @property
    def passed(self) -> bool:
        return all(self.squarefree.values()) and all(self.coprime.values())

    def failures(self) -> list[str]:
        out = [f"h_{j} has a repeated root" for j, ok in self.squarefree.items() if not ok]
        out += [f"h_{i} and h_{j} share a root" for (i, j), ok in self.coprime.items() if not ok]
        return out

    def to_json(self) -> dict:
        return {
            "max_j": self.bound,
            "squarefree_failures": [j for j, ok in self.squarefree.items() if not ok],
            "coprime_failures": [[i, j] for (i, j), ok in self.coprime.items() if not ok],
            "pairs_checked": len(self.coprime),
            "passed": self.passed,
        }


class SmithAlgebra:
    """R(g) for a polynomial g over Q, with companion u normalised by u(0) = 0."""

    def __init__(self, g: Poly):
        self.g = g
        # g = sum c_r C(x, r) and Delta C(x, r+1) = C(x, r), so u = 2 sum c_r C(x, r+1).
        u = Poly()
        for r, c in enumerate(newton_coefficients(g)):
            u = u + binom_poly(r + 1) * (2 * c)
        self.u = u
        self._h_cache: dict[int, Poly] = {}

    def __repr__(self):
        return f"SmithAlgebra(g={self.g})"

    # generators -----------------------------------------------------------
    @property
    def one(self) -> NcElement:
        return NcElement.scalar(1)

    @property
    def A(self) -> NcElement:
        return NcElement.monomial(k=1)

    @property
    def B(self) -> NcElement:
        return NcElement.monomial(m=1)

    @property
    def H(self) -> NcElement:
        return NcElement.monomial(n=1)

    def generator(self, name: str) -> NcElement:
        return {"A": self.A, "B": self.B, "H": self.H}[name]

    # polynomials ----------------------------------------------------------
    def h_sum(self, j: int) -> Poly:
        """h_j(x) = g(x) + g(x-1) + ... + g(x-j)."""
        if j < 0:
            raise ValueError("j must be nonnegative")
        if j not in self._h_cache:
            prev = self.h_sum(j - 1) if j > 0 else Poly()
            self._h_cache[j] = prev + poly_shift(self.g, -j)
        return self._h_cache[j]

    # multiplication -------------------------------------------------------
    def _left_mul_a(self, grouped: Mapping[tuple[int, int], Poly]) -> dict:
        # A B^m f(H) A^k = B^m f(H-1) A^(k+1) + B^(m-1) h_(m-1)(H) f(H) A^k
        out: dict[tuple[int, int], Poly] = {}
        for (m, k), f in grouped.items():
            _accumulate(out, (m, k + 1), poly_shift(f, -1))
            if m > 0:
                _accumulate(out, (m - 1, k), self.h_sum(m - 1) * f)
        return out

    def mul(self, a: NcElement, b: NcElement) -> NcElement:
        """Product a*b in PBW normal form."""
        if not a.terms or not b.terms:
            return NcElement()
        a_grouped = _group(a)
        powers = {0: _group(b)}
        top = max(k for (_, k) in a_grouped)
        for c in range(1, top + 1):
            powers[c] = self._left_mul_a(powers[c - 1])
        out: dict[tuple[int, int], Poly] = {}
        for (am, ak), f in a_grouped.items():
            # f(H) B^m q(H) A^k = B^m f(H-m) q(H) A^k
            for (m, k), q in powers[ak].items():
                _accumulate(out, (am + m, k), poly_shift(f, -m) * q)
        return _ungroup(out)

    def product(self, *factors: NcElement) -> NcElement:
        acc = self.one
        for f in factors:
            acc = self.mul(acc, f)
        return acc

    def power(self, a: NcElement, n: int) -> NcElement:
        return self.product(*([a] * n))

    def commutator(self, a: NcElement, b: NcElement) -> NcElement:
        return self.mul(a, b) - self.mul(b, a)

    def word(self, letters: Iterable[str]) -> NcElement:
        return self.product(*(self.generator(s) for s in letters))

    # rewriting ------------------------------------------------------------
    def normal_form(self, word: Sequence[str] | str, strategy: str = "leftmost") -> NcElement:
        """Rewrite a word in A, B, H to PBW form with the defining relations.

        Offending adjacent pairs are AH, HB and AB; ``strategy`` picks the
        leftmost or rightmost one at each step.  Every rule moves an A right
        past B/H or an H right past B, so the count of such inversions
        strictly drops (with the g(H) terms being shorter in A and B), which
        bounds the recursion.
        """
        letters = tuple(word)
        for s in letters:
            if s not in GENERATORS:
                raise ValueError(f"unknown generator {s!r}")
        if strategy not in ("leftmost", "rightmost"):
            raise ValueError(f"unknown strategy {strategy!r}")
        g_words = [(("H",) * n, c) for n, c in enumerate(self.g.coeffs) if c]
        memo: dict[tuple[str, ...], dict[tuple[str, ...], Fraction]] = {}

        def offending(w):
            idx = range(len(w) - 1)
            if strategy == "rightmost":
                idx = reversed(idx)
            for i in idx:
                if (w[i], w[i + 1]) in (("A", "H"), ("H", "B"), ("A", "B")):
                    return i
            return None

        def reduce(w):
            if w in memo:
                return memo[w]
            i = offending(w)
            if i is None:
                result = {w: Fraction(1)}
            else:
                pre, post = w[:i], w[i + 2:]
                pair = w[i] + w[i + 1]
                if pair == "AH":
                    replacements = [(("H", "A"), 1), (("A",), -1)]
                elif pair == "HB":
                    replacements = [(("B", "H"), 1), (("B",), -1)]
                else:
                    replacements = [(("B", "A"), 1)] + g_words
                result = {}
                for mid, c in replacements:
                    for nw, d in reduce(pre + mid + post).items():
                        result[nw] = result.get(nw, Fraction(0)) + c * d
                result = {nw: c for nw, c in result.items() if c}
            memo[w] = result
            return result

        terms = {}
        for w, c in reduce(letters).items():
            key = (w.count("B"), w.count("H"), w.count("A"))
            terms[key] = terms.get(key, Fraction(0)) + c
        return NcElement(terms)

    # center ---------------------------------------------------------------
    def omega(self) -> NcElement:
        """Omega = AB + BA + (u(H+1) + u(H))/2."""
        half = (poly_shift(self.u, 1) + self.u) / 2
        return self.mul(self.A, self.B) + self.mul(self.B, self.A) + NcElement.poly_in_h(half)

    def is_central(self, e: NcElement) -> bool:
        return not any(self.commutator(e, x) for x in (self.A, self.B, self.H))

    def casimir_factorization_check(self, r: int) -> bool:
        """2^(r+1) A^(r+1) B^(r+1) == prod_{i=0..r} (Omega - u(H-i))."""
        if r < 0:
            raise ValueError("r must be nonnegative")
        lhs = self.mul(self.power(self.A, r + 1), self.power(self.B, r + 1)) * 2 ** (r + 1)
        om = self.omega()
        rhs = self.one
        for i in range(r + 1):
            rhs = self.mul(rhs, om - NcElement.poly_in_h(poly_shift(self.u, -i)))
        return lhs == rhs

    def apply_to_highest_weight(self, e: NcElement, lam) -> dict[int, Fraction]:
        """e . v_lam in the Verma module, as {m: coefficient of B^m v_lam}."""
        lam = as_rational(lam)
        out: dict[int, Fraction] = {}
        for (m, n, k), c in e.terms.items():
            if k == 0:
                out[m] = out.get(m, Fraction(0)) + c * lam**n
        return {m: c for m, c in sorted(out.items()) if c}

    # modules --------------------------------------------------------------
    def simple_module(self, lam, max_dim: int) -> SimpleModuleSpec:
        """Finite-dimensional L(lam): dimension is the least j with h_(j-1)(lam) = 0."""
        if max_dim < 1:
            raise ValueError("max_dim must be positive")
        lam = as_rational(lam)
        dim = next((j for j in range(1, max_dim + 1) if self.h_sum(j - 1)(lam) == 0), None)
        if dim is None:
            raise SmithError(
                "no finite-dimensional simple with this highest weight within bound"
            )
        A, B, H = zeros(dim), zeros(dim), zeros(dim)
        for i in range(dim):
            H[i, i] = lam - i
            if i + 1 < dim:
                B[i + 1, i] = Fraction(1)
            if i > 0:
                A[i - 1, i] = self.h_sum(i - 1)(lam)
        return SimpleModuleSpec(lam, dim, A, B, H)

    def classify_simples(self, j: int) -> tuple[list[Fraction], int]:
        """Highest weights of the j-dimensional simples.

        Returns the rational weights and the number of non-rational ones.
        """
        if j < 1:
            raise ValueError("j must be positive")
        if self.g.is_zero():
            raise SmithError("no finite-dimensional simples to classify")
        cand = squarefree_part(self.h_sum(j - 1))
        for i in range(1, j):
            cand = cand // poly_gcd(cand, self.h_sum(i - 1))
        weights = sorted(set(rational_roots(cand))) if cand.degree > 0 else []
        return weights, cand.degree - len(weights)

    def semisimplicity_criterion(self, max_j: int) -> SemisimplicityReport:
        """Every h_j (j <= max_j) squarefree and every pair h_i, h_j coprime."""
        if self.g.is_zero():
            raise SmithError("criterion needs a nonzero g")
        hs = [self.h_sum(j) for j in range(max_j + 1)]
        squarefree = {j: is_squarefree(h) for j, h in enumerate(hs)}
        coprime = {
            (i, j): poly_gcd(hs[i], hs[j]).degree == 0
            for j in range(max_j + 1)
            for i in range(j)
        }
        return SemisimplicityReport(max_j, squarefree, coprime)


def new_smith(g) -> SmithAlgebra:
    if not isinstance(g, Poly):
        g = Poly(g)
    return SmithAlgebra(g)
