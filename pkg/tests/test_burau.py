"""Tests for the reduced Burau representation and knot invariants."""

import pytest
import sympy

from core.braid_core import (
    BraidWord,
    beta_family,
    compose,
    delta,
    delta_rev,
    full_twist,
    inverse,
    markov_stabilize,
)
from core.burau import (
    alexander_polynomial,
    burau_at_minus1,
    burau_generator,
    burau_word,
    closed_form_delta,
    closed_form_delta_rev,
    closed_form_power,
    closed_form_squared,
    h1_group_structure,
    knot_determinant,
)
from core.errors import GeneratorIndexError, NotAKnotError, PreconditionError
from core.laurent import LaurentPoly, normalize_symmetric
from core.linalg_exact import (
    ExactMatrix,
    Ring,
    det,
    evaluate_at,
    identity,
    mul,
    pow as matrix_pow,
    sub,
)

TREFOIL = LaurentPoly({-1: 1, 0: -1, 1: 1})
FIGURE_EIGHT = LaurentPoly({-1: -1, 0: 3, 1: -1})


def product_of_generators(w: BraidWord) -> ExactMatrix:
    result = identity(w.strands - 1, Ring.LAURENT)
    for e in w.letters:
        result = mul(result, burau_generator(abs(e), 1 if e > 0 else -1, w.strands))
    return result


class TestGenerators:

    def test_generator_rows(self):
        t = LaurentPoly.t()
        assert burau_generator(1, 1, 3) == ExactMatrix.from_rows([[-t, 1], [0, 1]], Ring.LAURENT)
        assert burau_generator(2, 1, 3) == ExactMatrix.from_rows([[1, 0], [t, -t]], Ring.LAURENT)
        assert burau_generator(1, 1, 2) == ExactMatrix.from_rows([[-t]], Ring.LAURENT)

    def test_generator_inverse(self):
        for n in range(2, 6):
            for i in range(1, n):
                product = mul(burau_generator(i, 1, n), burau_generator(i, -1, n))
                assert product == identity(n - 1, Ring.LAURENT)

    def test_generator_errors(self):
        with pytest.raises(GeneratorIndexError):
            burau_generator(3, 1, 3)
        with pytest.raises(PreconditionError):
            burau_generator(1, 2, 3)


class TestProducts:

    def test_braid_relations(self):
        for n in range(3, 7):
            for i in range(1, n - 1):
                lhs = burau_word(BraidWord(n, (i, i + 1, i)))
                rhs = burau_word(BraidWord(n, (i + 1, i, i + 1)))
                assert lhs == rhs
            for i in range(1, n - 2):
                for j in range(i + 2, n):
                    assert burau_word(BraidWord(n, (i, j))) == burau_word(BraidWord(n, (j, i)))

    def test_column_updates_match_matrix_products(self, make_word):
        for _ in range(20):
            w = make_word(5, 12)
            assert burau_word(w) == product_of_generators(w)

    def test_word_times_inverse_is_identity(self, make_word):
        for _ in range(10):
            w = make_word(4, 10)
            assert burau_word(compose(w, inverse(w))) == identity(3, Ring.LAURENT)

    def test_integer_route_matches_specialization(self, make_word):
        for _ in range(20):
            w = make_word(6, 15)
            assert burau_at_minus1(w) == evaluate_at(burau_word(w), -1)

    def test_full_twist_is_scalar(self):
        for n in range(2, 6):
            twist = burau_word(full_twist(n))
            scalar = LaurentPoly.monomial(1, n)
            expected = ExactMatrix.from_rows(
                [[scalar if i == j else 0 for j in range(n - 1)] for i in range(n - 1)],
                Ring.LAURENT)
            assert twist == expected

    def test_delta_at_minus_one_small_case(self):
        assert burau_at_minus1(delta(3)).to_lists() == [[0, 1], [-1, 1]]


class TestAlexander:

    def test_trefoil(self):
        assert alexander_polynomial(BraidWord(2, (1, 1, 1))) == TREFOIL
        assert alexander_polynomial(BraidWord(3, (1, 2, 1, 2))) == TREFOIL

    def test_trefoil_against_seifert_form(self):
        t = sympy.Symbol("t")
        seifert = sympy.Matrix([[-1, 1], [0, -1]])
        poly = sympy.Poly(sympy.expand((seifert - t * seifert.T).det()), t)
        expected = normalize_symmetric(LaurentPoly(
            {monom[0]: int(coeff) for monom, coeff in poly.terms()}))
        assert expected == TREFOIL
        assert alexander_polynomial(BraidWord(3, (1, 2, 1, 2))) == expected
        assert knot_determinant(BraidWord(3, (1, 2, 1, 2))) == 3

    def test_figure_eight(self):
        assert alexander_polynomial(BraidWord(3, (1, -2, 1, -2))) == FIGURE_EIGHT

    def test_unknot(self):
        assert alexander_polynomial(delta(5)) == LaurentPoly.one()
        assert alexander_polynomial(BraidWord(2, (1,))) == LaurentPoly.one()

    def test_invariant_under_markov_moves(self):
        w = BraidWord(3, (1, -2, 1, -2))
        assert alexander_polynomial(markov_stabilize(w, 1)) == FIGURE_EIGHT
        assert alexander_polynomial(markov_stabilize(w, -1)) == FIGURE_EIGHT

    def test_invariant_under_conjugation(self):
        w = BraidWord(3, (1, 1, 1, 2))
        g = BraidWord(3, (2, -1))
        assert alexander_polynomial(compose(compose(g, w), inverse(g))) == alexander_polynomial(w)

    def test_symmetric_and_positive_at_one(self):
        for n, m in ((3, 2), (4, 2), (5, 3), (3, 5)):
            poly = alexander_polynomial(beta_family(n, m))
            assert poly.min_degree == -poly.max_degree
            assert poly.evaluate(1) == 1

    def test_links_are_rejected(self):
        with pytest.raises(NotAKnotError) as info:
            alexander_polynomial(BraidWord(2, (1, 1)))
        assert info.value.components == 2


class TestDeterminants:

    def test_known_determinants(self):
        assert knot_determinant(BraidWord(2, (1, 1, 1))) == 3
        assert knot_determinant(BraidWord(3, (1, -2, 1, -2))) == 5
        for n in range(3, 10, 2):
            assert knot_determinant(delta(n)) == 1

    def test_routes_agree(self):
        for w in (BraidWord(3, (1, -2, 1, -2)), beta_family(5, 3), beta_family(3, 5),
                  BraidWord(4, (1, -2, 1, -2, 3))):
            assert knot_determinant(w) == abs(alexander_polynomial(w).evaluate(-1))

    def test_odd_route_is_det_of_identity_minus_fstar(self):
        w = beta_family(5, 3)
        value = det(sub(identity(4), burau_at_minus1(w)))
        assert knot_determinant(w) == abs(value) == 7

    def test_group_structure(self):
        assert h1_group_structure(BraidWord(3, (1, 2, 1, 2))) == [3]
        assert h1_group_structure(delta(5)) == []
        assert h1_group_structure(beta_family(3, 5)) == [7]
        with pytest.raises(PreconditionError):
            h1_group_structure(BraidWord(2, (1, 1, 1)))


class TestClosedForms:

    @pytest.mark.parametrize("n", range(3, 22))
    def test_delta_and_reverse(self, n):
        assert burau_at_minus1(delta(n)) == closed_form_delta(n)
        assert burau_at_minus1(delta_rev(n)) == closed_form_delta_rev(n)

    @pytest.mark.parametrize("n", range(3, 22, 2))
    def test_squared_product(self, n):
        product = burau_at_minus1(compose(delta(n), delta_rev(n)))
        assert matrix_pow(product, 2) == closed_form_squared(n)

    @pytest.mark.parametrize("n", range(3, 14, 2))
    def test_family_powers(self, n):
        for l in range(0, 6):
            assert burau_at_minus1(beta_family(n, 2 * l + 1)) == closed_form_power(n, l)

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            closed_form_delta(2)
        with pytest.raises(PreconditionError):
            closed_form_squared(6)
        with pytest.raises(PreconditionError):
            closed_form_power(4, 1)
        with pytest.raises(PreconditionError):
            closed_form_power(5, -1)

    @pytest.mark.parametrize("k,expected", [(1, 7), (2, 23), (3, 47), (4, 79), (5, 119)])
    def test_h1_order_formula(self, k, expected):
        for n, l in ((2 * k + 1, k + 1), (2 * k + 3, k)):
            matrix = closed_form_power(n, l)
            assert abs(det(sub(identity(n - 1), matrix))) == expected


class TestRandomWords:

    def test_homomorphism_and_braid_relations(self, rng, make_word):
        for _ in range(1000):
            n = rng.randint(2, 6)
            a, b = make_word(n, 12), make_word(n, 12)
            assert burau_word(compose(a, b)) == mul(burau_word(a), burau_word(b))
            if n > 2:
                i = rng.randint(1, n - 2)
                lhs = compose(compose(a, BraidWord(n, (i, i + 1, i))), b)
                rhs = compose(compose(a, BraidWord(n, (i + 1, i, i + 1))), b)
                assert burau_word(lhs) == burau_word(rhs)

    def test_determinant_one_at_minus_one(self, rng, make_word):
        for _ in range(500):
            w = make_word(rng.randint(2, 7), 25)
            assert det(burau_at_minus1(w)) == 1

    def test_knot_invariants_under_markov_moves_and_conjugation(self, make_word,
                                                                make_knot_word):
        for _ in range(200):
            w = make_knot_word(5, 10)
            poly = alexander_polynomial(w)
            determinant = knot_determinant(w)
            assert determinant % 2 == 1
            assert determinant == abs(poly.evaluate(-1))
            g = make_word(w.strands, 6)
            for moved in (markov_stabilize(w, 1), markov_stabilize(w, -1),
                          compose(compose(g, w), inverse(g))):
                assert alexander_polynomial(moved) == poly
                assert knot_determinant(moved) == determinant
