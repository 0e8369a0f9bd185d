"""Dense univariate polynomials over Q and the small toolkit built on them."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import as_rational, format_rational

__all__ = [
    "Poly",
    "X",
    "binom_poly",
    "poly_shift",
    "poly_affine",
    "poly_gcd",
    "is_squarefree",
    "squarefree_part",
    "rational_roots",
    "newton_coefficients",
]


class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of x**i.

    Trailing zeros are trimmed, so the zero polynomial has ``coeffs == ()``
    and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c=1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Poly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == Poly([other]).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rational(other)
            return Poly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c):
        c = as_rational(c)
        return Poly(a / c for a in self.coeffs)

    def __divmod__(self, other: "Poly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lead
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv
            if c:
                q[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return Poly(q), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        # Horner; works for any ring element that supports * and +.
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self / self.lead

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Poly":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, list):
            raise ValueError("polynomial JSON must be an array of coefficients")
        return cls(as_rational(c) for c in data)

    def __repr__(self):
        return f"Poly({self.to_json()})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{format_rational(a)}*{mono}"
            else:
                body = format_rational(a)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


X = Poly([0, 1])


def binom_poly(r: int) -> Poly:
    """C(x, r) = x(x-1)...(x-r+1)/r!, with C(x, 0) = 1 and C(x, r<0) = 0."""
    if r < 0:
        return Poly()
    p = Poly([1])
    for i in range(r):
        p = p * Poly([-i, 1])
    return p / math.factorial(r)


def poly_shift(p: Poly, c) -> Poly:
    """Return q with q(x) = p(x + c)."""
    return poly_affine(p, 1, c)


def poly_affine(p: Poly, a, b) -> Poly:
    """Return q with q(x) = p(a*x + b)."""
    return p.compose(Poly([b, a]))


def newton_coefficients(p: Poly) -> list[Fraction]:
    """Coefficients of p in the basis C(x, r): the forward differences at 0."""
    n = p.degree + 1
    values = [p(Fraction(i)) for i in range(n)]
    out = []
    for _ in range(n):
        out.append(values[0])
        values = [values[i + 1] - values[i] for i in range(len(values) - 1)]
    return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd undefined: both polynomials are zero")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_squarefree(p: Poly) -> bool:
    if p.is_zero():
        raise ValueError("squarefree test undefined for the zero polynomial")
    return poly_gcd(p, p.derivative()).degree == 0


def squarefree_part(p: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero():
        raise ValueError("squarefree part undefined for the zero polynomial")
    return (p // poly_gcd(p, p.derivative())).monic()


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _integer_coeffs(p: Poly) -> list[int]:
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints]


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of p, sorted, each repeated by its multiplicity."""
    if p.is_zero():
        raise ValueError("rational roots undefined for the zero polynomial")
    sq = squarefree_part(p)
    distinct = []
    if sq[0] == 0:
        distinct.append(Fraction(0))
        sq = sq // X
    if sq.degree >= 1:
        ints = _integer_coeffs(sq)
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if cand not in distinct and sq(cand) == 0:
                        distinct.append(cand)
    roots = []
    for r in distinct:
        lin = Poly([-r, 1])
        q = p
        while True:
            quo, rem = divmod(q, lin)
            if not rem.is_zero():
                break
            roots.append(r)
            q = quo
    return sorted(roots)
