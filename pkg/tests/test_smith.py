import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zhualg.exactmath import Poly, X, poly_shift
from zhualg.rbar import g_k
from zhualg.smith import NcElement, SmithAlgebra, SmithError, new_smith

G2 = g_k(2)
small_q = st.fractions(min_value=-3, max_value=3, max_denominator=3)
small_polys = st.lists(small_q, max_size=4).map(Poly)
words = st.text(alphabet="ABH", max_size=8)


def mono(m, n, k, c=1):
    return NcElement.monomial(m, n, k, c)


@st.composite
def elements(draw, max_terms=3, degree=None):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        m = draw(st.integers(0, 2))
        k = m + degree if degree is not None else draw(st.integers(0, 2))
        if k < 0:
            continue
        key = (m, draw(st.integers(0, 2)), k)
        terms[key] = draw(st.integers(-3, 3))
    return NcElement(terms)


# companion polynomial and shifted sums ------------------------------------------------


def test_u_for_sl2_like_g():
    alg = new_smith(Poly([0, 2]))
    assert alg.u == Poly([0, -2, 2])


def test_u_for_g2_matches_closed_form():
    alg = SmithAlgebra(G2)
    half = Poly([Fraction(-1, 2), 1])
    stated = half**4 * Fraction(16, 3) - half**2 * Fraction(10, 3)
    assert (alg.u - stated).degree <= 0


def test_u_for_zero_g():
    assert SmithAlgebra(Poly()).u.is_zero()


@given(small_polys)
def test_u_is_discrete_antiderivative(g):
    alg = SmithAlgebra(g)
    assert (poly_shift(alg.u, 1) - alg.u) / 2 == g
    assert alg.u(0) == 0
    if not g.is_zero():
        assert alg.u.degree == g.degree + 1


def test_h_sum_examples():
    alg = SmithAlgebra(Poly([0, 2]))
    for j in range(1, 12):
        assert alg.h_sum(j - 1) == Poly([-j * (j - 1), 2 * j])
    assert SmithAlgebra(G2).h_sum(0) == G2


@pytest.mark.parametrize("r", range(41))
def test_h_sum_g2_factorization(r):
    quad = Poly([8 * r * r + 8 * r - 1, -16 * r, 16])
    expected = Poly([-r, 2]) * quad * Fraction(r + 1, 3)
    assert SmithAlgebra(G2).h_sum(r) == expected


@given(small_polys)
@settings(max_examples=30)
def test_h_sum_telescopes(g):
    alg = SmithAlgebra(g)
    for j in range(21):
        assert alg.h_sum(j) == (poly_shift(alg.u, 1) - poly_shift(alg.u, -j)) / 2


# rewriting and multiplication ---------------------------------------------------


def test_normal_form_defining_relations():
    alg = SmithAlgebra(Poly([0, 2]))
    assert alg.normal_form("AB") == mono(1, 0, 1) + mono(0, 1, 0, 2)
    assert alg.normal_form(["A", "H"]) == mono(0, 1, 1) - mono(0, 0, 1)
    assert alg.normal_form("HB") == mono(1, 1, 0) - mono(1, 0, 0)
    assert alg.normal_form("") == alg.one


def test_nc_mul_example():
    alg = SmithAlgebra(Poly([0, 2]))
    got = alg.mul(alg.A, alg.word("BB"))
    assert got == mono(2, 0, 1) + mono(1, 1, 0, 4) - mono(1, 0, 0, 2)
    assert alg.mul(alg.one, got) == got


def test_nc_mul_associativity_example_g2():
    alg = SmithAlgebra(G2)
    ab = alg.mul(alg.A, alg.B)
    assert alg.mul(ab, alg.B) == alg.mul(alg.A, alg.word("BB"))
    assert alg.normal_form("ABB") == alg.mul(alg.A, alg.word("BB"))


@settings(max_examples=200, deadline=None)
@given(small_polys, words)
def test_rewriting_confluence(g, w):
    alg = SmithAlgebra(g)
    left = alg.normal_form(w, strategy="leftmost")
    assert left == alg.normal_form(w, strategy="rightmost")
    assert left == alg.word(w)


@settings(max_examples=100, deadline=None)
@given(small_polys, elements(), elements(), elements())
def test_associativity(g, a, b, c):
    alg = SmithAlgebra(g)
    assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))


@settings(max_examples=100, deadline=None)
@given(small_polys, st.integers(-2, 2), st.integers(-2, 2), st.data())
def test_grading_preserved(g, d1, d2, data):
    alg = SmithAlgebra(g)
    a = data.draw(elements(degree=d1))
    b = data.draw(elements(degree=d2))
    prod = alg.mul(a, b)
    assert prod.degrees() <= {d1 + d2}


def test_normal_form_rejects_unknown_letters():
    with pytest.raises(ValueError):
        SmithAlgebra(X).normal_form("AC")


def test_nc_element_json_round_trip():
    e = mono(2, 1, 0, Fraction(-3, 4)) + mono(0, 0, 3, 5)
    data = json.loads(json.dumps(e.to_json()))
    assert {"m", "n", "k", "c"} <= set(data[0])
    assert NcElement.from_json(data) == e


# central element -------------------------------------------------------------------


def test_omega_for_sl2_like_g():
    alg = SmithAlgebra(Poly([0, 2]))
    assert alg.omega() == mono(1, 0, 1, 2) + mono(0, 2, 0, 2) + mono(0, 1, 0, 2)


@settings(max_examples=10, deadline=None)
@given(st.lists(small_q, min_size=1, max_size=5).map(Poly))
def test_omega_central(g):
    alg = SmithAlgebra(g)
    assert alg.is_central(alg.omega())


def test_is_central_examples():
    alg = SmithAlgebra(Poly([0, 2]))
    assert not alg.is_central(alg.H)
    assert alg.is_central(alg.one)


@pytest.mark.parametrize("g", [Poly([0, 2]), G2, g_k(3), Poly([1, -1, 0, 2])])
def test_omega_acts_on_highest_weight_as_u(g):
    alg = SmithAlgebra(g)
    om = alg.omega()
    for lam in [Fraction(0), Fraction(1, 2), Fraction(-3, 4), Fraction(5)]:
        assert alg.apply_to_highest_weight(om, lam) == ({0: alg.u(lam + 1)} if alg.u(lam + 1) else {})


def test_casimir_examples():
    sl2 = SmithAlgebra(Poly([0, 2]))
    assert sl2.casimir_factorization_check(0)
    omega_minus_u = sl2.omega() - NcElement.poly_in_h(sl2.u)
    assert sl2.mul(sl2.A, sl2.B) * 2 == omega_minus_u
    alg = SmithAlgebra(G2)
    assert all(alg.casimir_factorization_check(r) for r in (1, 2, 3))


@settings(max_examples=5, deadline=None)
@given(st.lists(small_q, min_size=4, max_size=4).map(Poly))
def test_casimir_random_cubic(g):
    alg = SmithAlgebra(g)
    assert all(alg.casimir_factorization_check(r) for r in range(3))


# simple modules ----------------------------------------------------------------------


def test_simple_module_examples():
    sl2 = SmithAlgebra(Poly([0, 2]))
    assert sl2.simple_module(Fraction(1, 2), 5).dim == 2
    assert sl2.simple_module(0, 5).dim == 1
    alg = SmithAlgebra(G2)
    assert alg.simple_module(Fraction(1, 4), 5).dim == 1
    assert alg.simple_module(Fraction(1, 2), 5).dim == 2
    with pytest.raises(SmithError, match="within bound"):
        sl2.simple_module(Fraction(1, 3), 6)


@pytest.mark.parametrize("g", [Poly([0, 2]), G2, g_k(3)])
def test_simple_modules_satisfy_relations(g):
    alg = SmithAlgebra(g)
    for j in range(1, 6):
        weights, _ = alg.classify_simples(j)
        for lam in weights:
            mod = alg.simple_module(lam, j)
            assert mod.dim == j
            assert mod.weights() == [lam - i for i in range(j)]
            assert mod.satisfies_relations(g)


def verma_dimension(lowering_words, lam):
    """Least i >= 1 with A B^i v = 0 in V(lam); lowering_words[i-1] is the normal form of A B^i."""
    for i, e in enumerate(lowering_words, start=1):
        if not any(c for c in _apply(e, lam).values()):
            return i
    return None


def _apply(e, lam):
    out = {}
    for (m, n, k), c in e.terms.items():
        if k == 0:
            out[m] = out.get(m, 0) + c * lam**n
    return out


def brute_force_weights(alg, j, limit):
    """Scan lam over p/q, |p| <= 20, q <= 4, using raw-word rewriting only."""
    lowering = [alg.normal_form("A" + "B" * i) for i in range(1, limit + 1)]
    grid = {Fraction(p, q) for p in range(-20, 21) for q in range(1, 5)}
    return sorted(lam for lam in grid if verma_dimension(lowering, lam) == j)


def test_classify_matches_verma_oracle_for_sl2_like_g():
    alg = SmithAlgebra(Poly([0, 2]))
    for j in range(1, 11):
        weights, nonrational = alg.classify_simples(j)
        assert weights == [Fraction(j - 1, 2)]
        assert nonrational == 0
        assert brute_force_weights(alg, j, 11) == weights


def test_classify_g2():
    alg = SmithAlgebra(G2)
    assert alg.classify_simples(1) == ([Fraction(-1, 4), 0, Fraction(1, 4)], 0)
    assert alg.classify_simples(2) == ([Fraction(1, 2)], 2)
    assert brute_force_weights(alg, 1, 3) == [Fraction(-1, 4), 0, Fraction(1, 4)]
    assert brute_force_weights(alg, 2, 3) == [Fraction(1, 2)]


def test_classify_requires_nonzero_g():
    with pytest.raises(SmithError, match="no finite-dimensional simples"):
        SmithAlgebra(Poly()).classify_simples(1)


def test_classify_drops_weights_of_smaller_simples():
    # g = x(x-1): h_0 = g vanishes at 0 and 1, and h_1 = g(x) + g(x-1) shares no root
    alg = SmithAlgebra(Poly([0, -1, 1]))
    w1, _ = alg.classify_simples(1)
    assert w1 == [0, 1]
    w2, n2 = alg.classify_simples(2)
    assert not set(w1) & set(w2)


# semisimplicity hypotheses ---------------------------------------------------------


def test_criterion_g2():
    report = SmithAlgebra(G2).semisimplicity_criterion(40)
    assert report.passed
    assert report.to_json()["pairs_checked"] == 40 * 41 // 2


def test_criterion_sl2_like():
    assert SmithAlgebra(Poly([0, 2])).semisimplicity_criterion(10).passed


def test_criterion_reports_repeated_root():
    report = SmithAlgebra(Poly([1, -2, 1])).semisimplicity_criterion(2)
    assert not report.passed
    assert "h_0 has a repeated root" in report.failures()
