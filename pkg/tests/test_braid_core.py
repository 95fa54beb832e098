"""Tests for braid words, the expression parser and Markov moves."""

import pytest

from core.braid_core import (
    BraidWord,
    Concat,
    Delta,
    DeltaRev,
    Family,
    Generator,
    Inverse,
    MAX_WORD_LENGTH,
    Power,
    beta_family,
    closure_component_count,
    compose,
    conjugate,
    cycle_type,
    delta,
    delta_rev,
    exponent_sum,
    flatten,
    free_reduce,
    full_twist,
    inverse,
    is_positive_word,
    markov_destabilize,
    markov_stabilize,
    parse_expr,
    parse_word,
    permutation,
    power,
    render,
    self_linking_number,
)
from core.errors import (
    BraidSyntaxError,
    GeneratorIndexError,
    PreconditionError,
    StrandMismatchError,
    UsageError,
)


class TestParser:

    def test_generators_and_inverses(self):
        assert parse_word("s1 s2^-1 s1", 3).letters == (1, -2, 1)

    def test_distinguished_braids(self):
        assert parse_word("d", 4) == delta(4)
        assert parse_word("dR", 4) == delta_rev(4)
        assert parse_word("D2", 4) == full_twist(4)
        assert parse_word("(d dR)^2 d", 3) == beta_family(3, 3)
        assert parse_word("beta(5,3)", 5) == beta_family(5, 3)
        assert parse_word("(d dR)^2 d", 5) == beta_family(5, 3)

    def test_family_embeds_in_more_strands(self):
        w = parse_word("beta(3,2)", 5)
        assert w.strands == 5
        assert w.letters == beta_family(3, 2).letters

    def test_negative_and_zero_powers(self):
        assert parse_word("(s1 s2)^-2", 3).letters == (-2, -1, -2, -1)
        assert parse_word("s1^0", 3).letters == ()

    def test_tree_shape(self):
        expr = parse_expr("(d dR)^2 d", 3)
        assert expr == Concat((Power(Concat((Delta(), DeltaRev())), 2), Delta()))
        assert parse_expr("beta(3,2)", 3) == Family(3, 2)
        assert parse_expr("s2", 3) == Generator(2)

    @pytest.mark.parametrize("text", [
        "s1 s2^-1", "(d dR)^2 d", "D2^-1 s1", "beta(3,2) (s1 s2)^3", "((s1)^2)^-1",
    ])
    def test_render_reparses_to_same_tree(self, text):
        expr = parse_expr(text, 4)
        assert parse_expr(render(expr), 4) == expr

    def test_render_is_canonical(self):
        assert render(parse_expr("  s1   s2^-1 ", 3)) == "s1 s2^-1"
        assert render(parse_expr("(d dR)^2 d", 3)) == "(d dR)^2 d"

    @pytest.mark.parametrize("text,position", [
        ("s1 x", 3),
        ("s1 (s2", 6),
        ("s1^", 3),
        ("beta(3)", 6),
        ("s", 1),
    ])
    def test_syntax_errors_carry_position(self, text, position):
        with pytest.raises(BraidSyntaxError) as info:
            parse_expr(text, 3)
        assert info.value.position == position
        assert isinstance(info.value, UsageError)

    def test_inverse_node_is_power_sugar(self):
        expr = Inverse(Concat((Generator(1), Delta())))
        assert render(expr) == "(s1 d)^-1"
        reparsed = parse_expr(render(expr), 3)
        assert reparsed == Power(Concat((Generator(1), Delta())), -1)
        assert flatten(reparsed, 3) == flatten(expr, 3)
        assert flatten(Inverse(Generator(2)), 3).letters == (-2,)

    @pytest.mark.parametrize("text", [
        "s1^1000000000000", "(s1 s2)^-99999999", "(s1^100000)^100000", "beta(3,100000000)",
    ])
    def test_oversized_words_are_usage_errors(self, text):
        with pytest.raises(UsageError) as info:
            parse_word(text, 3)
        assert str(MAX_WORD_LENGTH) in str(info.value)

    def test_huge_strand_counts_are_usage_errors(self):
        with pytest.raises(UsageError):
            full_twist(10 ** 5)
        with pytest.raises(UsageError):
            delta(10 ** 9)

    def test_empty_expression(self):
        with pytest.raises(BraidSyntaxError):
            parse_expr("   ", 3)

    def test_generator_index_out_of_range(self):
        with pytest.raises(GeneratorIndexError) as info:
            parse_expr("s1 s3", 3)
        assert info.value.index == 3
        assert info.value.position == 3
        with pytest.raises(GeneratorIndexError):
            parse_expr("s0", 3)
        with pytest.raises(GeneratorIndexError):
            parse_expr("beta(5,3)", 3)

    def test_too_few_strands(self):
        with pytest.raises(PreconditionError):
            parse_expr("s1", 1)


class TestWords:

    def test_word_validates_letters(self):
        with pytest.raises(GeneratorIndexError):
            BraidWord(3, (1, 3))
        with pytest.raises(GeneratorIndexError):
            BraidWord(3, (0,))
        with pytest.raises(PreconditionError):
            BraidWord(1, ())

    def test_compose_requires_matching_strands(self):
        with pytest.raises(StrandMismatchError):
            compose(delta(3), delta(4))

    def test_inverse_and_power(self):
        w = BraidWord(4, (1, -3, 2))
        assert inverse(w).letters == (-2, 3, -1)
        assert power(w, 2).letters == (1, -3, 2, 1, -3, 2)
        assert power(w, -1) == inverse(w)
        assert free_reduce(compose(w, inverse(w))).letters == ()

    def test_exponent_sum_is_additive(self, rng, make_word):
        for _ in range(200):
            n = rng.randint(2, 6)
            a, b = make_word(n, 15), make_word(n, 15)
            assert exponent_sum(compose(a, b)) == exponent_sum(a) + exponent_sum(b)
            assert exponent_sum(inverse(a)) == -exponent_sum(a)

    def test_free_reduce_examples(self):
        assert free_reduce(BraidWord(3, (1, 2, -2, -1))).letters == ()
        assert free_reduce(BraidWord(3, (1, 2, 1))).letters == (1, 2, 1)
        assert free_reduce(BraidWord(3, (2, 1, -1, 1, -2))).letters == (2, 1, -2)

    def test_free_reduce_is_idempotent_and_shortening(self, rng, make_word):
        for _ in range(300):
            w = make_word(rng.randint(2, 5), 20)
            reduced = free_reduce(w)
            assert len(reduced) <= len(w)
            assert free_reduce(reduced) == reduced
            assert exponent_sum(reduced) == exponent_sum(w)
            assert all(x != -y for x, y in zip(reduced.letters, reduced.letters[1:]))

    def test_conjugate(self):
        w, g = BraidWord(3, (1,)), BraidWord(3, (2,))
        assert conjugate(w, g).letters == (2, 1, -2)

    def test_exponent_sum_and_self_linking(self):
        w = BraidWord(3, (1, 1, -2, 1))
        assert exponent_sum(w) == 2
        assert self_linking_number(w) == -1
        assert not is_positive_word(w)
        assert is_positive_word(delta(5))

    def test_str(self):
        assert str(BraidWord(3, (1, -2))) == "s1 s2^-1"
        assert "empty" in str(BraidWord(3))

    def test_beta_family_lengths(self):
        for n in range(2, 8):
            for m in range(1, 5):
                assert len(beta_family(n, m)) == (n - 1) * (2 * m - 1)
        with pytest.raises(PreconditionError):
            beta_family(3, 0)


class TestPermutations:

    def test_permutation_is_a_homomorphism(self, rng, make_word):
        for _ in range(1000):
            n = rng.randint(2, 7)
            a, b = make_word(n, 12), make_word(n, 12)
            assert permutation(compose(a, b)) == permutation(a) * permutation(b)

    def test_component_counts(self):
        assert closure_component_count(BraidWord(2, (1, 1, 1))) == 1
        assert closure_component_count(BraidWord(2, (1, 1))) == 2
        assert closure_component_count(full_twist(4)) == 4
        for n in range(2, 10):
            assert closure_component_count(delta(n)) == 1

    def test_cycle_type(self):
        assert cycle_type(BraidWord(4)) == [1, 1, 1, 1]
        assert cycle_type(BraidWord(5, (1, 3))) == [2, 2, 1]
        assert cycle_type(delta(6)) == [6]

    def test_family_closures_are_knots_for_odd_pairs(self):
        for k in range(1, 6):
            assert closure_component_count(beta_family(2 * k + 1, 2 * k + 3)) == 1
            assert closure_component_count(beta_family(2 * k + 3, 2 * k + 1)) == 1


class TestMarkov:

    def test_stabilize_adds_top_generator(self):
        w = BraidWord(3, (1, 2))
        assert markov_stabilize(w, 1) == BraidWord(4, (1, 2, 3))
        assert markov_stabilize(w, -1) == BraidWord(4, (1, 2, -3))
        with pytest.raises(PreconditionError):
            markov_stabilize(w, 2)

    def test_destabilize_undoes_stabilize(self, make_word):
        for _ in range(20):
            w = make_word(4, 12)
            for sign in (1, -1):
                assert markov_destabilize(markov_stabilize(w, sign)) == w

    def test_destabilize_rotates_top_letter_to_the_end(self):
        w = BraidWord(4, (1, 3, 2))
        assert markov_destabilize(w) == BraidWord(3, (2, 1))

    def test_destabilize_not_applicable(self):
        assert markov_destabilize(BraidWord(3, (2, 2, 1))) is None
        assert markov_destabilize(BraidWord(3, (1,))) is None
        assert markov_destabilize(BraidWord(2, (1,))) is None

    def test_stabilization_keeps_knots(self):
        w = BraidWord(3, (1, -2, 1, -2))
        assert closure_component_count(markov_stabilize(w, 1)) == 1
        assert self_linking_number(markov_stabilize(w, 1)) == self_linking_number(w)
        assert self_linking_number(markov_stabilize(w, -1)) == self_linking_number(w) - 2
