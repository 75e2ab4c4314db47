"""
Tests for the mapping-torus group: normal forms, equality, membership and rewriting.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibernorm.core.automorphisms import FIBER_ALPHABET, PSI, SIGMA_1
from fibernorm.core.exceptions import (
    AlphabetMismatchError,
    BudgetExceededError,
    FibernormValidationError,
    ZeroClassError,
)
from fibernorm.core.mapping_torus import (
    CANONICAL_TORUS,
    OBFUSCATION_SLACK,
    TORUS_ALPHABET,
    MappingTorus,
    conjugate_by_stable,
    equal,
    evaluate_class,
    is_member,
    normal_form,
    obfuscate,
    parse_words,
)
from fibernorm.core.words import Alphabet, Word
from fibernorm.models.classes import CohomologyClass
from fibernorm.models.torus import TorusElement

CANONICAL = CohomologyClass(a=1, b=0)

# short raw words over {t, x, y, z}; few t-letters keep fibers small
torus_words = st.lists(st.integers(min_value=0, max_value=7), max_size=10).map(
    lambda letters: Word(TORUS_ALPHABET, bytes(letters))
)


def fiber(text: str) -> Word:
    return Word.parse(text, FIBER_ALPHABET)


def random_raw_word(rng: random.Random, max_length: int) -> Word:
    length = rng.randint(0, max_length)
    return Word(TORUS_ALPHABET, bytes(rng.choices(range(8), k=length)))


class TestNormalForm:
    def test_alphabet_has_stable_letter_first(self):
        assert TORUS_ALPHABET.names == ("t", "x", "y", "z")

    def test_pure_fiber_word(self):
        assert normal_form("x y y^-1 z") == TorusElement(t_exp=0, fiber=fiber("x z"))

    def test_conjugation_by_t_applies_psi(self):
        nf = normal_form("t^-1 x t")
        assert nf.t_exp == 0
        assert str(nf.fiber) == "y z y^-1"

    def test_letters_move_left_past_t(self):
        assert normal_form("x t") == TorusElement(t_exp=1, fiber=PSI.image("x"))
        assert normal_form("t x") == TorusElement(t_exp=1, fiber=fiber("x"))

    def test_t_inverse_applies_psi_inverse(self):
        assert normal_form("t x t^-1") == TorusElement(
            t_exp=0, fiber=PSI.invert().image("x")
        )

    def test_relators_are_trivial(self, torus):
        for relator in torus.relators():
            assert normal_form(relator).is_identity()

    def test_equal(self):
        assert equal("t^-1 z t", "y")
        assert not equal("t^-1 z t", "z")
        assert equal("t^-2 x t^2", "t^-1 y z y^-1 t")

    def test_to_word(self, torus):
        element = normal_form("x t y t^-2 z")
        assert normal_form(torus.to_word(element)) == element

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            normal_form("x t^12", max_letters=50)

    def test_budget_on_input_letters(self):
        word = Word.parse("x^30 x^-30 y", TORUS_ALPHABET)
        with pytest.raises(BudgetExceededError) as exc:
            normal_form(word, max_letters=50)
        assert exc.value.attempted == 61
        with pytest.raises(BudgetExceededError):
            normal_form("x^30 x^-30 y", max_letters=50)

    def test_fiber_words_are_coerced(self, torus):
        assert str(torus.word(fiber("x y^-1"))) == "x y^-1"
        with pytest.raises(AlphabetMismatchError):
            torus.word(Word.parse("a", Alphabet(("a",))))

    @given(torus_words, torus_words)
    @settings(max_examples=50, deadline=None)
    def test_multiply_matches_concatenation(self, u, v):
        torus_nf = normal_form(Word.join([u, v]))
        assert torus_nf == CANONICAL_TORUS.multiply(normal_form(u), normal_form(v))

    @given(torus_words)
    @settings(max_examples=50, deadline=None)
    def test_invert_element(self, w):
        torus = CANONICAL_TORUS
        element = normal_form(w)
        assert torus.multiply(element, torus.invert_element(element)).is_identity()
        assert torus.invert_element(element) == normal_form(w.inverse())

    def test_conjugate_element(self, torus):
        element = normal_form("x z^-1")
        assert torus.conjugate_element(element) == normal_form("t^-1 x z^-1 t")
        by = normal_form("t y")
        assert torus.conjugate_element(element, by) == normal_form("y^-1 t^-1 x z^-1 t y")


class TestConjugation:
    def test_literal_conjugate(self):
        word = conjugate_by_stable("x", 2)
        assert word.raw_length == 1 + 2 * 2
        assert str(word) == "t^-2 x t^2"

    def test_negative_exponent(self):
        assert str(conjugate_by_stable("y", -3)) == "t^3 y t^-3"

    def test_other_stable_word(self, torus):
        word = torus.conjugate_by_stable("x", 1, "t x")
        assert word.raw_length == 5
        assert equal(word, "x^-1 t^-1 x t x")


class TestObfuscation:
    @pytest.mark.parametrize("seed", range(5))
    def test_same_element_within_budget(self, seed):
        word = conjugate_by_stable("y", 4)
        obfuscated = obfuscate(word, seed, 2.0)
        assert equal(obfuscated, word)
        assert obfuscated.raw_length <= 2 * word.length() + OBFUSCATION_SLACK

    def test_blowup_one_is_identity(self):
        word = Word.parse("t^-1 x t", TORUS_ALPHABET)
        assert obfuscate(word, 0, 1.0) is word

    def test_blowup_below_one(self):
        with pytest.raises(FibernormValidationError):
            obfuscate("x", 0, 0.5)

    def test_deterministic(self):
        word = conjugate_by_stable("z", 3)
        assert obfuscate(word, 11).code == obfuscate(word, 11).code

    def test_thousand_random_words(self):
        rng = random.Random(2024)
        for seed in range(1000):
            word = random_raw_word(rng, 12)
            obfuscated = obfuscate(word, seed, 2.0)
            assert normal_form(obfuscated) == normal_form(word)

    def test_relator_insertions(self, torus):
        word = conjugate_by_stable("x", 2)
        padded = torus.random_relator_insertions(word, seed=3, count=4)
        assert padded.raw_length >= word.raw_length + 4 * 4
        assert equal(padded, word)


class TestMembership:
    def test_evaluate_class(self):
        assert evaluate_class(CANONICAL, "t^-3 x t^3") == 0
        assert evaluate_class(CANONICAL, "t x") == 1
        assert evaluate_class(CohomologyClass(a=2, b=1), "t x y") == 4
        assert evaluate_class(CohomologyClass(a=3, b=-1), "t x^-1 z") == 3

    def test_reads_raw_letters(self):
        assert evaluate_class(CohomologyClass(a=1, b=1), "t t^-1 x") == 1

    def test_is_member(self):
        assert is_member(CANONICAL, "t^-5 y t^5")
        assert not is_member(CANONICAL, "t^-5 y t^4")
        assert is_member(CohomologyClass(a=2, b=1), "t x^-2")

    def test_zero_class(self):
        with pytest.raises(ZeroClassError):
            is_member(CohomologyClass(a=0, b=0), "x")

    def test_parse_words(self):
        words = parse_words(["t x", "1"])
        assert [str(word) for word in words] == ["t x", "1"]

    @given(torus_words, st.integers(min_value=-6, max_value=6), st.integers(min_value=-6, max_value=6))
    @settings(max_examples=100, deadline=None)
    def test_evaluation_agrees_with_normal_form(self, w, a, b):
        element = normal_form(w)
        fiber_sum = sum(element.fiber.exponent_sums().values())
        assert evaluate_class(CohomologyClass(a=a, b=b), w) == a * element.t_exp + b * fiber_sum

    @given(torus_words)
    @settings(max_examples=100, deadline=None)
    def test_membership_agrees_with_normal_form(self, w):
        assert is_member(CANONICAL, w) == (normal_form(w).t_exp == 0)

    @pytest.mark.parametrize("a", range(-4, 5))
    @pytest.mark.parametrize("b", range(-4, 5))
    def test_relators_lie_in_every_kernel(self, torus, a, b):
        for relator in torus.relators():
            assert evaluate_class(CohomologyClass(a=a, b=b), relator) == 0
            if (a, b) != (0, 0):
                assert is_member(CohomologyClass(a=a, b=b), relator)


class TestOtherTori:
    def test_custom_stable_letter(self):
        torus = MappingTorus(SIGMA_1, stable="s")
        assert torus.alphabet.names == ("s", "x", "y", "z")
        assert torus.normal_form("s^-1 x s") == TorusElement(t_exp=0, fiber=fiber("y"))
        assert torus.presentation() == (
            "<s, x, y, z | s^-1 x s = y, s^-1 y s = y^-1 x y, s^-1 z s = z>"
        )

    def test_stable_letter_clash(self):
        with pytest.raises(FibernormValidationError):
            MappingTorus(PSI, stable="x")


class TestTorusElement:
    def test_serialization(self):
        element = normal_form("t^2 x")
        assert element.model_dump() == {"t_exp": 2, "fiber": "x"}
        assert TorusElement.parse({"t_exp": 2, "fiber": "x"}, FIBER_ALPHABET) == element
        assert str(element) == "(2, x)"

    def test_hashable(self):
        assert len({normal_form("t^-1 z t"), normal_form("y")}) == 1
