import json
from fractions import Fraction

import numpy as np
import pytest

from zhualg.exactmath import Poly, X
from zhualg.exactmath.linalg import frac_matrix
from zhualg.rbar import (
    RbarError,
    block_diagonal,
    check_ideal_relation,
    g_k,
    rbar_algebra,
    rbar_dimension,
    rbar_irreducibles,
    rbar_report,
)
from zhualg.smith import SmithAlgebra
from zhualg.structure import StructureAlgebra, is_semisimple, span_closure


def test_g_k_examples():
    assert g_k(1) == Poly([0, 2])
    assert g_k(2) == Poly([0, Fraction(-2, 3), 0, Fraction(32, 3)])
    expected = X * Poly([-1, 0, 36]) * Poly([-4, 0, 36]) * Fraction(1, 20)
    assert g_k(3) == expected
    with pytest.raises(ValueError):
        g_k(0)


@pytest.mark.parametrize("k", range(1, 7))
def test_g_k_roots(k):
    # roots m/2k for |m| < k; g_k is odd
    g = g_k(k)
    for m in range(-(k - 1), k):
        assert g(Fraction(m, 2 * k)) == 0
    assert g.degree == 2 * k - 1
    assert g(Fraction(1, 3)) == -g(Fraction(-1, 3))


def test_irreducibles_k1():
    spec = rbar_irreducibles(1)
    assert spec.weights == [0, Fraction(1, 2)]
    assert spec.dims == [1, 2]


def test_irreducibles_k2():
    spec = rbar_irreducibles(2)
    assert spec.weights == [Fraction(-1, 4), 0, Fraction(1, 4), Fraction(1, 2)]
    assert spec.dims == [1, 1, 1, 2]


@pytest.mark.parametrize("k", range(1, 5))
def test_irreducible_pattern(k):
    spec = rbar_irreducibles(k)
    assert len(spec.irreducibles) == 2 * k
    assert spec.weights == [Fraction(n, 2 * k) for n in range(-(k - 1), k + 1)]
    for mod in spec.irreducibles:
        assert mod.dim == (2 if mod.lam == Fraction(1, 2) else 1)
        assert mod.satisfies_relations(spec.g)
        for w in mod.weights():
            assert -k <= 2 * k * w <= k


@pytest.mark.parametrize("k", [1, 2, 3])
def test_ideal_relation_holds(k):
    assert check_ideal_relation(k)


def test_ideal_relation_fails_on_larger_simple():
    # L(1) of R_1 is 3-dimensional and is not a module for the quotient
    l1 = SmithAlgebra(g_k(1)).simple_module(1, 5)
    assert l1.dim == 3
    assert not check_ideal_relation(1, [l1])


def test_rbar_error_carries_n():
    err = RbarError("bad module", n=3)
    assert err.n == 3
    assert "n=3" in str(err)


def test_block_diagonal():
    a = frac_matrix([[1, 2], [3, 4]])
    b = frac_matrix([[5]])
    m = block_diagonal([a, b])
    assert m.shape == (3, 3)
    assert m[2, 2] == 5 and m[0, 2] == 0 and m[1, 0] == 3


@pytest.mark.parametrize("k,dim", [(1, 5), (2, 7), (3, 9), (4, 11)])
def test_rbar_dimension(k, dim):
    assert rbar_dimension(k) == dim


@pytest.mark.parametrize("k", range(1, 5))
def test_span_closure_rounds_and_semisimplicity(k):
    spec = rbar_irreducibles(k)
    alg = rbar_algebra(k, spec)
    assert alg.dim == sum(d * d for d in spec.dims)
    assert alg.rounds <= 3
    assert is_semisimple(alg)
    assert alg.is_associative()


def test_span_is_faithful():
    # the unit is in the span and every basis matrix is nonzero on the module sum
    alg = rbar_algebra(2)
    assert any(alg.unit)
    assert all(any(x != 0 for x in np.ravel(b)) for b in alg.basis)


def test_report_json():
    report = rbar_report(2)
    data = report.to_json()
    assert data == {
        "k": 2,
        "irreducibles": [
            {"weight": "-1/4", "dim": 1},
            {"weight": "0", "dim": 1},
            {"weight": "1/4", "dim": 1},
            {"weight": "1/2", "dim": 2},
        ],
        "algebra_dim": 7,
        "semisimple": True,
    }
    assert json.loads(json.dumps(data)) == data


# generic algebra machinery ------------------------------------------------------------


def test_nilpotent_algebra_not_semisimple():
    # basis {1, n} with n^2 = 0
    products = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    alg = StructureAlgebra.from_structure_constants(products, unit=[1, 0])
    assert alg.is_associative()
    assert not is_semisimple(alg)


def test_matrix_algebra_is_semisimple():
    e = [frac_matrix([[int(i == a and j == b) for j in range(2)] for i in range(2)]) for a in range(2) for b in range(2)]
    alg = span_closure(e)
    assert alg.dim == 4
    assert is_semisimple(alg)


def test_upper_triangular_not_semisimple():
    alg = span_closure([frac_matrix([[0, 1], [0, 0]]), frac_matrix([[1, 0], [0, 0]])])
    assert alg.dim == 3
    assert not is_semisimple(alg)


def test_span_closure_strategies_agree():
    gens = [block_diagonal([m.A for m in rbar_irreducibles(3).irreducibles])]
    gens.append(block_diagonal([m.B for m in rbar_irreducibles(3).irreducibles]))
    assert span_closure(gens, "squaring").dim == span_closure(gens, "generators").dim


def test_check_closed_rejects_ragged():
    alg = StructureAlgebra.from_structure_constants([[[1, 0]], [[0, 1]]])
    with pytest.raises(ValueError):
        is_semisimple(alg)
