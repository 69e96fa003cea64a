"""Unit tests for operation words, linear combinations and the parser"""

import math

import pytest

from core.errors import DomainError, InputError, ParseError, PrimeMismatchError
from core.grammar import parse
from core.op_terms import LinComb, OpLetter, OpWord, degree, excess, is_admissible, weight


def random_letters(rng, p, side, max_length=5, bound=20):
    letters = []
    for _ in range(rng.randint(0, max_length)):
        eps = 0 if p == 2 else rng.randint(0, 1)
        low = 0 if side == "A" else -bound
        letters.append(OpLetter(eps, rng.randint(low, bound)))
    return tuple(letters)


def random_lincomb(rng, p, side, terms=3, **kwargs):
    return LinComb(
        p, side, {random_letters(rng, p, side, **kwargs): rng.randint(1, p - 1) for _ in range(terms)}
    )


class TestStatistics:
    """Tests for degree, weight, excess and admissibility"""

    def test_degree(self):
        assert degree(OpWord.of(2, "B", 5, 1)) == 6
        assert degree(OpWord.of(3, "B", (1, 2))) == 7
        assert degree(OpWord.of(2, "B")) == 0
        assert degree(OpWord.of(3, "A", (1, 2))) == 9

    def test_weight(self):
        assert weight(OpWord.of(2, "B")) == 1
        assert weight(OpWord.of(2, "B", 5, 1)) == 4
        assert weight(OpWord.of(3, "B", (0, 4), (1, 1), (0, 0))) == 27

    def test_weight_rejects_side_a(self):
        with pytest.raises(DomainError):
            weight(OpWord.of(2, "A", 3))

    def test_excess(self):
        assert excess(OpWord.of(2, "B", 3, 1)) == 2
        assert excess(OpWord.of(2, "B", 0, 0)) == 0
        assert excess(OpWord.of(3, "B", (0, 2), (1, 1))) == 1
        assert excess(OpWord.of(2, "B")) == math.inf

    def test_excess_rejects_side_a(self):
        with pytest.raises(DomainError):
            excess(OpWord.of(2, "A", 3, 1))

    @pytest.mark.parametrize(
        "p,side,letters,expected",
        [
            (2, "B", (1, 3), True),
            (2, "B", (5, 1), False),
            (2, "A", (3, 1), True),
            (2, "A", (2, 2), False),
            (2, "B", (), True),
            (3, "B", ((0, 3), (1, 1)), False),
            (3, "B", ((0, 2), (1, 1)), True),
            (3, "A", ((0, 3), (1, 1)), False),
            (3, "A", ((0, 4), (1, 1)), True),
            (3, "A", ((1, 1), (1, 0)), True),
        ],
    )
    def test_is_admissible(self, p, side, letters, expected):
        assert is_admissible(OpWord.of(p, side, *letters)) is expected

    def test_degree_additive_and_weight_multiplicative(self, rng):
        for _ in range(100):
            p = rng.choice([2, 3, 5])
            u = OpWord(p, "B", random_letters(rng, p, "B"))
            v = OpWord(p, "B", random_letters(rng, p, "B"))
            assert (u * v).degree() == u.degree() + v.degree()
            assert (u * v).weight() == u.weight() * v.weight()

    def test_letter_invariants(self):
        with pytest.raises(InputError):
            OpWord.of(2, "B", (1, 2))
        with pytest.raises(InputError):
            OpWord.of(2, "A", -1)


class TestLinComb:
    """Tests for canonical linear combinations"""

    def test_coefficients_reduced_and_zeros_dropped(self):
        x = LinComb(3, "B", {((0, 1),): 4, ((0, 2),): 3})
        assert x.coefficient([(0, 1)]) == 1
        assert len(x) == 1

    def test_side_a_normalization(self):
        assert LinComb(2, "A", {((0, 0), (0, 2)): 1}) == LinComb(2, "A", {((0, 2),): 1})
        assert LinComb(2, "A", {((0, 3), (0, -1)): 1}).is_zero()
        assert LinComb(3, "A", {((1, 0),): 1}).coefficient([(1, 0)]) == 1

    def test_addition_and_composition(self):
        x = parse("Q^1", 2, "B")
        y = parse("Q^2", 2, "B")
        assert (x + x).is_zero()
        assert x * y == parse("Q^1 Q^2", 2, "B")
        assert (x + y) * (x + y) == parse("Q^1 Q^1 + Q^1 Q^2 + Q^2 Q^1 + Q^2 Q^2", 2, "B")
        assert 2 * parse("P^1", 3, "B") == parse("2 P^1", 3, "B")
        assert -parse("P^1", 3, "B") == parse("2 P^1", 3, "B")

    def test_prime_mismatch(self):
        with pytest.raises(PrimeMismatchError):
            parse("Q^1", 2, "B") + parse("P^1", 3, "B")
        with pytest.raises(PrimeMismatchError):
            parse("Sq^1", 2, "A") * parse("Q^1", 2, "B")

    def test_canonical_order(self):
        x = parse("Q^1 Q^0 + Q^2 + Q^-1", 2, "B")
        assert str(x) == "Q^-1 + Q^2 + Q^1 Q^0"

    def test_printing(self):
        assert str(LinComb.zero(2, "B")) == "0"
        assert str(LinComb.one(3, "B").scale(2)) == "2"
        assert str(parse("2 P^3 + b P^3", 3, "B")) == "2 P^3 + b P^3"

    def test_weight_components(self):
        x = parse("Q^1 + Q^2 Q^1 + Q^0 Q^0", 2, "B")
        parts = x.weight_components()
        assert sorted(parts) == [2, 4]
        assert parts[2] == parse("Q^1", 2, "B")
        assert parts[4] == parse("Q^2 Q^1 + Q^0 Q^0", 2, "B")

    def test_document_round_trip(self, rng):
        for _ in range(50):
            p = rng.choice([2, 3, 5])
            x = random_lincomb(rng, p, "B")
            assert LinComb.from_document(x.to_document()) == x


class TestParser:
    """Tests for the expression grammar"""

    def test_single_word(self):
        x = parse("Q^5 Q^1", 2, "B")
        assert x.words() == [OpWord.of(2, "B", 5, 1)]
        assert x.coefficient([(0, 5), (0, 1)]) == 1

    def test_odd_prime_terms(self):
        x = parse("2 P^3 + b P^3", 3, "B")
        assert x.coefficient([(0, 3)]) == 2
        assert x.coefficient([(1, 3)]) == 1

    def test_steenrod_terms(self):
        assert len(parse("Sq^2 Sq^2 + Sq^4", 2, "A")) == 2

    def test_whitespace_insensitive(self):
        assert parse("Q ^ 5Q^1", 2, "B") == parse("Q^5 Q^1", 2, "B")
        assert parse("  b P^1 -P^2", 3, "B") == parse("bP^1 + 2 P^2", 3, "B")

    def test_negative_indices(self):
        assert parse("Q^-3 Q^-1", 2, "B").words() == [OpWord.of(2, "B", -3, -1)]

    @pytest.mark.parametrize(
        "text,p,side",
        [
            ("b P^2", 2, "B"),
            ("P^1", 2, "B"),
            ("Q^1", 2, "A"),
            ("Sq^1", 3, "A"),
            ("Sq^-1", 2, "A"),
            ("Q^1 x", 2, "B"),
            ("Q^1 +", 2, "B"),
            ("Q^", 2, "B"),
            ("", 2, "B"),
        ],
    )
    def test_rejects(self, text, p, side):
        with pytest.raises(ParseError):
            parse(text, p, side)

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse("Q^1 Q^2 + b P^2", 2, "B")
        assert info.value.position == 10
        assert info.value.caret().endswith(" " * 10 + "^")

    @pytest.mark.parametrize("p,side", [(2, "B"), (3, "B"), (5, "B"), (2, "A"), (3, "A")])
    def test_round_trip(self, rng, p, side):
        for _ in range(200):
            x = random_lincomb(rng, p, side)
            assert parse(str(x), p, side) == x
