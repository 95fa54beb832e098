"""Tests for exact matrices, determinants and the Smith normal form."""

from itertools import combinations
from math import gcd

import pytest
import sympy

from core.errors import PreconditionError, RingMismatchError
from core.laurent import LaurentPoly
from core.linalg_exact import (
    ExactMatrix,
    Ring,
    cokernel_invariants,
    det,
    det_bareiss,
    det_cofactor,
    evaluate_at,
    identity,
    mul,
    pow as matrix_pow,
    smith_normal_form,
    transpose,
)

T = sympy.Symbol("t")


def random_int_matrix(rng, size: int, bound: int = 9) -> ExactMatrix:
    return ExactMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)])


def random_laurent_matrix(rng, size: int) -> ExactMatrix:
    rows = []
    for _ in range(size):
        rows.append([LaurentPoly({e: rng.randint(-2, 2) for e in (-1, 0, 1)})
                     for _ in range(size)])
    return ExactMatrix.from_rows(rows, Ring.LAURENT)


def laurent_to_sympy(p: LaurentPoly) -> sympy.Expr:
    return sum((c * T ** e for e, c in p.terms().items()), sympy.Integer(0))


def determinantal_divisors(m: ExactMatrix):
    """d_k = gcd of all k x k minors, computed with sympy."""
    matrix = sympy.Matrix(m.to_lists())
    divisors = []
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for rows in combinations(range(m.rows), k):
            for cols in combinations(range(m.cols), k):
                g = gcd(g, int(matrix.extract(list(rows), list(cols)).det()))
        divisors.append(g)
    return divisors


def test_shape_and_ring_are_checked():
    with pytest.raises(RingMismatchError):
        ExactMatrix(Ring.INT, 2, 2, ((1, 2), (3,)))
    with pytest.raises(RingMismatchError):
        ExactMatrix(Ring.INT, 1, 1, ((LaurentPoly.t(),),))
    a = identity(2)
    b = identity(2, Ring.LAURENT)
    with pytest.raises(RingMismatchError):
        mul(a, b)
    with pytest.raises(RingMismatchError):
        mul(identity(2), identity(3))


def test_product_and_transpose():
    a = ExactMatrix.from_rows([[1, 2], [3, 4]])
    b = ExactMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b).to_lists() == [[2, 1], [4, 3]]
    assert transpose(a).to_lists() == [[1, 3], [2, 4]]
    assert (a - a) == ExactMatrix.from_rows([[0, 0], [0, 0]])


def test_power_by_squaring():
    a = ExactMatrix.from_rows([[1, 1], [0, 1]])
    assert matrix_pow(a, 0) == identity(2)
    assert matrix_pow(a, 13).to_lists() == [[1, 13], [0, 1]]
    with pytest.raises(PreconditionError):
        matrix_pow(a, -1)


def test_evaluate_at_units_only():
    t = LaurentPoly.t()
    m = ExactMatrix.from_rows([[t, -t], [1, t ** -1]], Ring.LAURENT)
    assert evaluate_at(m, -1).to_lists() == [[-1, 1], [1, -1]]
    with pytest.raises(PreconditionError):
        evaluate_at(m, 2)


def test_bareiss_matches_sympy(rng):
    for size in range(1, 7):
        for _ in range(10):
            m = random_int_matrix(rng, size)
            assert det_bareiss(m) == sympy.Matrix(m.to_lists()).det()


def test_bareiss_needs_row_swap():
    m = ExactMatrix.from_rows([[0, 2, 1], [3, 0, 1], [1, 1, 0]])
    assert det_bareiss(m) == sympy.Matrix(m.to_lists()).det()
    singular = ExactMatrix.from_rows([[0, 1], [0, 2]])
    assert det_bareiss(singular) == 0


def test_laurent_determinants_agree(rng):
    for _ in range(3):
        m = random_laurent_matrix(rng, 5)
        expected = sympy.Matrix(
            [[laurent_to_sympy(v) for v in row] for row in m.entries]).det(method="berkowitz")
        value = det_bareiss(m)
        assert value == det_cofactor(m)
        assert sympy.expand(laurent_to_sympy(value) - expected) == 0


def test_determinant_is_multiplicative(rng):
    for _ in range(200):
        size = rng.randint(1, 6)
        a, b = random_int_matrix(rng, size), random_int_matrix(rng, size)
        assert det(mul(a, b)) == det(a) * det(b)
    for _ in range(5):
        a, b = random_laurent_matrix(rng, 3), random_laurent_matrix(rng, 3)
        assert det(mul(a, b)) == det(a) * det(b)


def test_det_dispatches_by_ring_and_size(rng):
    small = random_laurent_matrix(rng, 3)
    assert det(small) == det_cofactor(small)
    assert det(identity(0)) == 1


def test_smith_normal_form_transforms(rng):
    for _ in range(15):
        m = random_int_matrix(rng, rng.randint(2, 4), bound=6)
        form = smith_normal_form(m)
        assert mul(mul(form.U, m), form.V) == form.D
        assert abs(det_bareiss(form.U)) == 1
        assert abs(det_bareiss(form.V)) == 1
        for i in range(m.rows):
            for j in range(m.cols):
                if i != j:
                    assert form.D[i, j] == 0
        diagonal = form.diagonal
        assert all(d >= 0 for d in diagonal)
        for a, b in zip(diagonal, diagonal[1:]):
            assert (b == 0) if a == 0 else (b % a == 0)


def test_smith_normal_form_matches_minors(rng):
    for _ in range(10):
        m = random_int_matrix(rng, 3, bound=8)
        diagonal = smith_normal_form(m).diagonal
        product = 1
        for d, expected in zip(diagonal, determinantal_divisors(m)):
            product *= d
            assert product == expected


def test_cokernel_invariants():
    assert cokernel_invariants(ExactMatrix.from_rows([[2, 0], [0, 3]])) == [6]
    assert cokernel_invariants(ExactMatrix.from_rows([[2, 4], [6, 8]])) == [2, 4]
    assert cokernel_invariants(ExactMatrix.from_rows([[0, 0], [0, 0]])) == [0, 0]
    assert cokernel_invariants(identity(3)) == []
    with pytest.raises(RingMismatchError):
        smith_normal_form(identity(2, Ring.LAURENT))
