"""Sparse multivariate polynomials and the Schur polynomials p_r."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .poly import Poly
from .rational import as_rational, format_rational

__all__ = ["MultiPoly", "schur_poly", "schur_specialize_alt"]


def _trim(exps: Sequence[int]) -> tuple[int, ...]:
    exps = list(exps)
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


class MultiPoly:
    """Polynomial in x_1, x_2, ... stored as {exponent tuple: coefficient}.

    Exponent tuples have trailing zeros stripped, so the same monomial has
    one key regardless of how many variables are in play.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                key = _trim(exps)
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def variable(cls, n: int) -> "MultiPoly":
        """The variable x_n (1-based)."""
        return cls({(0,) * (n - 1) + (1,): 1})

    @classmethod
    def constant(cls, c) -> "MultiPoly":
        return cls({(): c})

    @property
    def nvars(self) -> int:
        return max((len(e) for e in self.terms), default=0)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(out)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = as_rational(other)
            return MultiPoly({e: c * a for e, a in self.terms.items()})
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                n = max(len(e1), len(e2))
                e = tuple((e1[i] if i < len(e1) else 0) + (e2[i] if i < len(e2) else 0)
                          for i in range(n))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def evaluate(self, values: Sequence):
        """Substitute x_n -> values[n-1]; values may be numbers or Polys."""
        acc = 0
        for exps, c in self.terms.items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    term = term * values[i] ** e
            acc = acc + term
        return acc

    def to_json(self) -> list:
        return [{"exp": list(e), "c": format_rational(c)} for e, c in sorted(self.terms.items())]

    def __repr__(self):
        return f"MultiPoly({dict(sorted(self.terms.items()))})"


@lru_cache(maxsize=None)
def schur_poly(r: int) -> MultiPoly:
    """p_r with exp(sum_n x_n y^n / n) = sum_r p_r y^r.

    Differentiating in y gives r p_r = sum_{n=1}^r x_n p_{r-n}.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return MultiPoly.constant(1)
    acc = MultiPoly()
    for n in range(1, r + 1):
        acc = acc + MultiPoly.variable(n) * schur_poly(r - n)
    return acc * Fraction(1, r)


@lru_cache(maxsize=None)
def schur_specialize_alt(r: int) -> Poly:
    """p_r(x, -x, x, -x, ...): substitute x_n -> (-1)^(n-1) x."""
    values = [Poly([0, (-1) ** (n - 1)]) for n in range(1, r + 1)]
    result = schur_poly(r).evaluate(values)
    return result if isinstance(result, Poly) else Poly([result])
