"""
Tests for free-group automorphisms, the braid action and the monodromy psi.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibernorm.core.analysis import growth_ratios
from fibernorm.core.automorphisms import (
    FIBER_ALPHABET,
    PSI,
    PSI_INVERSE,
    SIGMA_1,
    SIGMA_1_INVERSE,
    SIGMA_2,
    SIGMA_2_INVERSE,
    FreeAutomorphism,
    apply,
    braid_generator,
    compose,
    invert,
    power,
)
from fibernorm.core.exceptions import (
    BudgetExceededError,
    FibernormValidationError,
    InversionUnavailableError,
    UnknownGeneratorError,
)
from fibernorm.core.words import Word, concat

fiber_words = st.lists(st.integers(min_value=0, max_value=5), max_size=30).map(
    lambda letters: Word(FIBER_ALPHABET, bytes(letters))
)


def w(text: str) -> Word:
    return Word.parse(text, FIBER_ALPHABET)


class TestPsi:
    def test_images_letter_for_letter(self):
        assert str(apply(PSI, w("x"))) == "y z y^-1"
        assert str(apply(PSI, w("y"))) == "y z^-1 y^-1 x y z y^-1"
        assert str(apply(PSI, w("z"))) == "y"

    def test_fixes_boundary_word(self):
        assert apply(PSI, w("x y z")) == w("x y z")

    def test_inverse(self):
        assert compose(PSI, invert(PSI)).is_identity()
        assert compose(PSI_INVERSE, PSI).is_identity()
        assert PSI_INVERSE.braid == (2, -1)

    def test_braid_factorization(self):
        assert PSI == compose(SIGMA_2_INVERSE, SIGMA_1)
        assert PSI.braid == (1, -2)

    def test_power(self):
        assert apply(power(PSI, 2), w("x")) == apply(PSI, apply(PSI, w("x")))
        assert power(PSI, 0).is_identity()
        assert compose(power(PSI, 3), power(PSI, -3)).is_identity()

    def test_iterate(self):
        images = PSI.iterate(w("z"))
        assert [str(next(images)) for _ in range(3)] == ["z", "y", "y z^-1 y^-1 x y z y^-1"]

    def test_growth_converges_to_golden_square(self):
        ratios = growth_ratios(PSI, "y", 16)
        for ratio in ratios[10:16]:
            assert 2.608 <= ratio <= 2.628

    def test_budget(self):
        with pytest.raises(BudgetExceededError) as exc:
            for _ in PSI.iterate(w("y"), max_letters=100):
                pass
        assert exc.value.limit == 100
        assert exc.value.attempted > 100
        assert exc.value.reason_line.startswith("reason=budget-exceeded limit=100 ")


class TestBraidGenerators:
    def test_sigma_1(self):
        assert str(SIGMA_1.image("x")) == "y"
        assert str(SIGMA_1.image("y")) == "y^-1 x y"
        assert str(SIGMA_1.image("z")) == "z"

    def test_sigma_2_inverse(self):
        assert str(SIGMA_2_INVERSE.image("y")) == "y z y^-1"
        assert str(SIGMA_2_INVERSE.image("z")) == "y"

    @pytest.mark.parametrize("sigma,inverse", [(SIGMA_1, SIGMA_1_INVERSE), (SIGMA_2, SIGMA_2_INVERSE)])
    def test_generators_invert(self, sigma, inverse):
        assert compose(sigma, inverse).is_identity()
        assert compose(inverse, sigma).is_identity()

    def test_braid_relation(self):
        left = FreeAutomorphism.from_braid((1, 2, 1), FIBER_ALPHABET)
        right = FreeAutomorphism.from_braid((2, 1, 2), FIBER_ALPHABET)
        assert left == right

    def test_out_of_range(self):
        with pytest.raises(FibernormValidationError):
            braid_generator(3, FIBER_ALPHABET)
        with pytest.raises(FibernormValidationError):
            braid_generator(0, FIBER_ALPHABET)


class TestConstruction:
    def test_images_must_cover_alphabet(self):
        with pytest.raises(UnknownGeneratorError):
            FreeAutomorphism(FIBER_ALPHABET, {"x": "y", "y": "x"})

    def test_trivial_image_rejected(self):
        with pytest.raises(FibernormValidationError):
            FreeAutomorphism(FIBER_ALPHABET, {"x": "x x^-1", "y": "y", "z": "z"})

    def test_inversion_without_braid(self):
        bare = FreeAutomorphism(FIBER_ALPHABET, PSI.images)
        assert not bare.has_inverse()
        with pytest.raises(InversionUnavailableError):
            bare.invert()

    def test_supplied_inverse(self):
        bare = FreeAutomorphism(FIBER_ALPHABET, PSI.images, inverse=PSI_INVERSE.images)
        assert bare.invert() == PSI_INVERSE

    def test_wrong_supplied_inverse(self):
        with pytest.raises(FibernormValidationError):
            FreeAutomorphism(FIBER_ALPHABET, PSI.images, inverse=PSI.images)


class TestProperties:
    @given(fiber_words, fiber_words)
    @settings(max_examples=50)
    def test_homomorphism(self, u, v):
        assert apply(PSI, concat(u, v)) == concat(apply(PSI, u), apply(PSI, v))

    @given(fiber_words)
    @settings(max_examples=50)
    def test_inverse_round_trip(self, word):
        assert apply(PSI_INVERSE, apply(PSI, word)) == word
