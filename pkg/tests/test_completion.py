"""
Tests for completion stages, structure maps and suspension
"""

import math

import pytest

from core.completion import (
    WindowSpec,
    completion_basis,
    excess_filtration,
    structure_map,
    suspension_image,
    truncate,
)
from core.equivariant_arith import op_pattern
from core.errors import InputError, InvalidWindowError
from core.free_allowable import FreeAllowableAlgebra
from core.grammar import parse
from core.op_terms import LinComb


def labels(words):
    return [str(w) for w in words]


class TestWindowSpec:
    """Tests for window validation"""

    def test_raised(self):
        w = WindowSpec(3, 0, 2)
        assert w.raised() == WindowSpec(3, 1, 2)
        assert w.raised(3).excess_floor == 3

    @pytest.mark.parametrize("cap,weight", [(0, None), (-1, None), (2, 0)])
    def test_rejects(self, cap, weight):
        with pytest.raises(InvalidWindowError):
            WindowSpec(0, 0, cap, weight)


class TestCompletionBasis:
    """Tests for stage bases"""

    @pytest.mark.parametrize(
        "window,expected",
        [
            (WindowSpec(0, -1, 2), ["Q^0", "Q^0 Q^0"]),
            (WindowSpec(0, 1, 2), []),
            (WindowSpec(3, 0, 2), ["Q^3", "Q^2 Q^1"]),
            (WindowSpec(3, 2, 2), ["Q^3"]),
            (WindowSpec(-2, -3, 2), ["Q^-2", "Q^-2 Q^0"]),
        ],
    )
    def test_examples(self, window, expected):
        assert labels(completion_basis(window, 2)) == expected

    def test_weight_filter(self):
        assert labels(completion_basis(WindowSpec(3, 0, 2, weight=4), 2)) == ["Q^2 Q^1"]
        assert labels(completion_basis(WindowSpec(3, 0, 2, weight=2), 2)) == ["Q^3"]
        assert completion_basis(WindowSpec(3, 0, 2, weight=8), 2) == []

    def test_weight_must_be_prime_power(self):
        with pytest.raises(InvalidWindowError):
            completion_basis(WindowSpec(3, 0, 2, weight=3), 2)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_words_belong_to_window(self, p):
        for degree in range(-8, 9):
            for floor in (-4, 0, 2):
                for word in completion_basis(WindowSpec(degree, floor, 2), p):
                    assert word.is_admissible()
                    assert word.degree() == degree
                    assert word.excess() >= floor
                    assert 1 <= len(word) <= 2

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_single_letters_match_op_pattern(self, p):
        for k in range(-12, 13):
            words = completion_basis(WindowSpec(k, -100, 1), p)
            assert len(words) == op_pattern(p, k)


class TestStructureMap:
    """Tests for projections between stages"""

    def test_identity(self):
        projection = structure_map(WindowSpec(0, -1, 2), WindowSpec(0, 0, 2), 2)
        assert projection.is_identity()
        assert projection.surjective

    def test_projection_kills_low_excess(self):
        projection = structure_map(WindowSpec(3, 1, 2), p=2)
        assert projection.target == WindowSpec(3, 2, 2)
        assert not projection.is_identity()
        assert projection.surjective
        assert projection(parse("Q^3 + Q^2 Q^1", 2, "B")) == parse("Q^3", 2, "B")

    def test_projection_rejects_foreign_words(self):
        projection = structure_map(WindowSpec(3, 1, 2), p=2)
        with pytest.raises(InputError):
            projection(parse("Q^5 Q^1", 2, "B"))

    @pytest.mark.parametrize("p", [2, 3])
    def test_always_surjective(self, p):
        for degree in range(-4, 5):
            for floor in range(-3, 3):
                for cap in (1, 2, 3):
                    assert structure_map(WindowSpec(degree, floor, cap), p=p).surjective

    @pytest.mark.parametrize(
        "target",
        [WindowSpec(4, 1, 2), WindowSpec(3, 1, 3), WindowSpec(3, 1, 2, weight=4), WindowSpec(3, -1, 2)],
    )
    def test_incompatible_windows(self, target):
        with pytest.raises(InvalidWindowError):
            structure_map(WindowSpec(3, 0, 2), target, 2)

    def test_document(self):
        doc = structure_map(WindowSpec(3, 1, 2), p=2).to_document()
        assert doc["surjective"] is True
        assert doc["target"]["excess_floor"] == 2
        assert {"word": "Q^2 Q^1", "image": None} in doc["images"]


class TestExcessFiltration:
    """Tests for excess_filtration and truncate"""

    def test_filtration(self, engine):
        assert excess_filtration(parse("Q^5 Q^1", 2, "B"), engine) == 0
        assert excess_filtration(parse("Q^3", 2, "B"), engine) == 3
        assert excess_filtration(LinComb.zero(2, "B"), engine) == math.inf
        assert excess_filtration(LinComb.one(2, "B"), engine) == math.inf

    def test_truncate(self, engine):
        x = parse("Q^3 + Q^2 Q^1", 2, "B")
        assert truncate(x, 2, engine) == parse("Q^3", 2, "B")
        assert truncate(x, 0, engine) == x
        assert truncate(parse("Q^5 Q^1", 2, "B"), 1, engine).is_zero()


class TestSuspension:
    """Tests for suspension_image"""

    def test_products_die(self, engine):
        algebra = FreeAllowableAlgebra({"x": -2}, 2, engine)
        image = suspension_image(algebra.parse("Q^-1 x + Q^0 x + x x"))
        assert image.generators["x"].degree == -1
        assert str(image) == "Q^-1 x + Q^0 x"

    def test_generator_survives(self, engine):
        algebra = FreeAllowableAlgebra({"x": -3}, 2, engine)
        assert str(suspension_image(algebra.generator("x"))) == "x"

    def test_bockstein_boundary_dies(self, engine):
        algebra = FreeAllowableAlgebra({"x": -1}, 3, engine)
        element = algebra.parse("b P^0 x + P^0 x")
        assert len(element) == 2
        assert str(suspension_image(element)) == "P^0 x"

    def test_needs_single_generator(self, engine):
        algebra = FreeAllowableAlgebra({"x": -1, "y": -1}, 2, engine)
        with pytest.raises(InputError):
            suspension_image(algebra.generator("x"))
