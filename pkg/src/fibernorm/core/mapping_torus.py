"""
The mapping-torus group F ⋊_psi Z and its word problem.

Presentation: <t, fiber generators | t^-1 g t = psi(g)>. Elements are kept
in the normal form t^k · w with w a reduced fiber word; t-letters are pushed
to the LEFT using

    g t    = t psi(g)
    g t^-1 = t^-1 psi^-1(g)

so a left-to-right scan applies psi (or psi^-1) to the fiber accumulated so
far whenever it meets t (or t^-1). Fiber length grows exponentially in the
number of t-letters; every call takes a letter budget.
"""

import math
import random
from collections.abc import Iterable

from ..models.classes import CohomologyClass
from ..models.torus import TorusElement
from .automorphisms import PSI, FreeAutomorphism
from .config import DEFAULT_MAX_LETTERS
from .exceptions import (
    AlphabetMismatchError,
    BudgetExceededError,
    FibernormValidationError,
    ZeroClassError,
)
from .words import Alphabet, Word, invert_code, join_reduced_codes

# Extra letters obfuscation may always spend on top of blowup * length
OBFUSCATION_SLACK = 12


class MappingTorus:
    """
    Fundamental group of the mapping torus of a free-group automorphism.

    The stable letter comes first in the torus alphabet, followed by the
    fiber generators in order.
    """

    def __init__(self, monodromy: FreeAutomorphism, stable: str = "t"):
        if stable in monodromy.alphabet:
            raise FibernormValidationError(
                f"Stable letter {stable!r} clashes with a fiber generator"
            )
        self.monodromy = monodromy
        self.inverse_monodromy = monodromy.invert()
        self.fiber_alphabet = monodromy.alphabet
        self.stable = stable
        self.alphabet = self.fiber_alphabet.extend(stable)

        self._t = self.alphabet.code(stable)
        self._t_inv = self._t ^ 1
        self._to_torus = self.fiber_alphabet.translation_to(self.alphabet)
        to_fiber = bytearray(range(256))
        for i, name in enumerate(self.fiber_alphabet):
            j = self.alphabet.index(name)
            to_fiber[2 * j] = 2 * i
            to_fiber[2 * j + 1] = 2 * i + 1
        self._to_fiber = bytes(to_fiber)

        # torus code of a fiber letter -> torus code of psi^{+-1}(letter)
        self._forward: dict[int, bytes] = {}
        self._backward: dict[int, bytes] = {}
        for name in self.fiber_alphabet:
            code = self.alphabet.code(name)
            image = self.monodromy.image(name).code.translate(self._to_torus)
            preimage = self.inverse_monodromy.image(name).code.translate(self._to_torus)
            self._forward[code] = image
            self._forward[code | 1] = invert_code(image)
            self._backward[code] = preimage
            self._backward[code | 1] = invert_code(preimage)

    # ------------------------------------------------------------------
    # Words
    # ------------------------------------------------------------------

    def word(self, value: Word | str, *, max_letters: int = DEFAULT_MAX_LETTERS) -> Word:
        """Coerce a serialized word or a fiber word into the torus alphabet."""
        if isinstance(value, Word):
            if value.alphabet == self.alphabet:
                return value
            if value.alphabet == self.fiber_alphabet:
                return Word(self.alphabet, value.code.translate(self._to_torus),
                            reduced=value.is_reduced)
            raise AlphabetMismatchError(
                f"Word over {value.alphabet!r} is not a word in {self.alphabet!r}"
            )
        return Word.parse(value, self.alphabet, max_letters=max_letters)

    def stable_word(self, exponent: int = 1) -> Word:
        return Word.generator(self.alphabet, self.stable, exponent)

    def relators(self) -> list[Word]:
        """Defining relators t^-1 g t psi(g)^-1, one per fiber generator."""
        t = bytes((self._t,))
        t_inv = bytes((self._t_inv,))
        return [
            Word(self.alphabet, t_inv + bytes((self.alphabet.code(g),)) + t
                 + invert_code(self._forward[self.alphabet.code(g)]))
            for g in self.fiber_alphabet
        ]

    def presentation(self) -> str:
        generators = ", ".join(self.alphabet)
        relations = ", ".join(
            f"{self.stable}^-1 {g} {self.stable} = {self.monodromy.image(g)}"
            for g in self.fiber_alphabet
        )
        return f"<{generators} | {relations}>"

    # ------------------------------------------------------------------
    # Normal forms
    # ------------------------------------------------------------------

    def normal_form(
        self, w: Word | str, *, max_letters: int = DEFAULT_MAX_LETTERS
    ) -> TorusElement:
        """Normal form t^k · fiber of w; k is the t-exponent sum of w."""
        word = self.word(w, max_letters=max_letters)
        if word.raw_length > max_letters:
            raise BudgetExceededError(max_letters, word.raw_length, "normalizing a word")
        code = word.reduce().code
        t_exp = 0
        fiber = bytearray()
        to_fiber = self._to_fiber
        for letter in code:
            if letter == self._t:
                fiber = bytearray(self.monodromy.apply_code(fiber, max_letters=max_letters))
                t_exp += 1
            elif letter == self._t_inv:
                fiber = bytearray(
                    self.inverse_monodromy.apply_code(fiber, max_letters=max_letters)
                )
                t_exp -= 1
            else:
                f = to_fiber[letter]
                if fiber and fiber[-1] == f ^ 1:
                    fiber.pop()
                else:
                    fiber.append(f)
                    if len(fiber) > max_letters:
                        raise BudgetExceededError(max_letters, len(fiber), "normalizing a word")
        return TorusElement(
            t_exp=t_exp, fiber=Word(self.fiber_alphabet, bytes(fiber), reduced=True)
        )

    def equal(
        self, u: Word | str, v: Word | str, *, max_letters: int = DEFAULT_MAX_LETTERS
    ) -> bool:
        return (
            self.normal_form(u, max_letters=max_letters)
            == self.normal_form(v, max_letters=max_letters)
        )

    def to_word(self, element: TorusElement) -> Word:
        """The reduced torus word t^k · fiber spelling a normal form."""
        k = element.t_exp
        prefix = bytes((self._t if k >= 0 else self._t_inv,)) * abs(k)
        return Word(
            self.alphabet, prefix + element.fiber.code.translate(self._to_torus), reduced=True
        )

    def twist(
        self, fiber: Word, n: int, *, max_letters: int = DEFAULT_MAX_LETTERS
    ) -> Word:
        """psi^n(fiber) for any integer n, one application at a time."""
        automorphism = self.monodromy if n >= 0 else self.inverse_monodromy
        code = fiber.reduce().code
        for _ in range(abs(n)):
            code = automorphism.apply_code(code, max_letters=max_letters)
        return Word(self.fiber_alphabet, code, reduced=True)

    def multiply(
        self, left: TorusElement, right: TorusElement, *, max_letters: int = DEFAULT_MAX_LETTERS
    ) -> TorusElement:
        """(t^a h)(t^b f) = t^(a+b) psi^b(h) f."""
        moved = self.twist(left.fiber, right.t_exp, max_letters=max_letters)
        code = join_reduced_codes(moved.code, right.fiber.code)
        if len(code) > max_letters:
            raise BudgetExceededError(max_letters, len(code), "multiplying normal forms")
        return TorusElement(
            t_exp=left.t_exp + right.t_exp,
            fiber=Word(self.fiber_alphabet, code, reduced=True),
        )

    def invert_element(
        self, element: TorusElement, *, max_letters: int = DEFAULT_MAX_LETTERS
    ) -> TorusElement:
        """(t^k f)^-1 = t^-k psi^-k(f^-1)."""
        fiber = self.twist(element.fiber.inverse(), -element.t_exp, max_letters=max_letters)
        return TorusElement(t_exp=-element.t_exp, fiber=fiber)

    def conjugate_element(
        self,
        element: TorusElement,
        by: TorusElement | None = None,
        *,
        max_letters: int = DEFAULT_MAX_LETTERS,
    ) -> TorusElement:
        """Normal form of T^-1 · element · T, where T defaults to the stable letter."""
        if by is None:
            by = TorusElement(t_exp=1, fiber=Word.identity(self.fiber_alphabet))
        inverse = self.invert_element(by, max_letters=max_letters)
        step = self.multiply(inverse, element, max_letters=max_letters)
        return self.multiply(step, by, max_letters=max_letters)

    # ------------------------------------------------------------------
    # Cohomology classes
    # ------------------------------------------------------------------

    def evaluate_class(
        self, phi: CohomologyClass, w: Word | str, *, max_letters: int = DEFAULT_MAX_LETTERS
    ) -> int:
        """
        phi(w) = a·(t-exponent sum) + b·(fiber exponent sum), read off the raw
        letters in linear time.
        """
        code = self.word(w, max_letters=max_letters).code
        t_sum = code.count(self._t) - code.count(self._t_inv)
        fiber_sum = 0
        for name in self.fiber_alphabet:
            letter = self.alphabet.code(name)
            fiber_sum += code.count(letter) - code.count(letter | 1)
        return phi.a * t_sum + phi.b * fiber_sum

    def is_member(
        self, phi: CohomologyClass, w: Word | str, *, max_letters: int = DEFAULT_MAX_LETTERS
    ) -> bool:
        """Membership of w in ker phi, the fiber subgroup of phi."""
        if phi.is_zero():
            raise ZeroClassError("The zero class has no fiber; membership is undefined")
        return self.evaluate_class(phi, w, max_letters=max_letters) == 0

    # ------------------------------------------------------------------
    # Rewriting
    # ------------------------------------------------------------------

    def conjugate_by_stable(
        self, w: Word | str, n: int, stable_word: Word | str | None = None
    ) -> Word:
        """Literal T^-n · w · T^n, unnormalized (T is the stable letter by default)."""
        w = self.word(w)
        if stable_word is None:
            stable_code = bytes((self._t,))
        else:
            stable_code = self.word(stable_word).code
        left = invert_code(stable_code) if n >= 0 else stable_code
        right = stable_code if n >= 0 else invert_code(stable_code)
        return Word(self.alphabet, left * abs(n) + w.code + right * abs(n))

    def obfuscate(self, w: Word | str, seed: int, blowup: float = 2.0) -> Word:
        """
        Re-spell w as a different word for the same group element.

        Fiber letters are replaced at random by ``t psi(g) t^-1`` or
        ``t^-1 psi^-1(g) t`` and conjugated relators are inserted between
        letters. The result has at most
        floor(blowup · length(w)) + OBFUSCATION_SLACK letters; blowup 1
        returns w unchanged.
        """
        if blowup < 1:
            raise FibernormValidationError(f"blowup must be >= 1, got {blowup}")
        w = self.word(w)
        if blowup == 1:
            return w
        code = w.reduce().code
        rng = random.Random(seed)
        spare = math.floor(blowup * len(code)) + OBFUSCATION_SLACK - len(code)
        relators = [r.code for r in self.relators()]
        relators += [invert_code(r) for r in relators]
        t, t_inv = bytes((self._t,)), bytes((self._t_inv,))

        out: list[bytes] = []
        for position in range(len(code) + 1):
            if spare > 0 and rng.random() < 0.25:
                relator = rng.choice(relators)
                if len(relator) <= spare:
                    out.append(relator)
                    spare -= len(relator)
            if position == len(code):
                break
            letter = code[position]
            if letter in self._forward and rng.random() < 0.5:
                if rng.random() < 0.5:
                    segment = t + self._forward[letter] + t_inv
                else:
                    segment = t_inv + self._backward[letter] + t
                if len(segment) - 1 <= spare:
                    out.append(segment)
                    spare -= len(segment) - 1
                    continue
            out.append(bytes((letter,)))
        return Word(self.alphabet, b"".join(out))

    def random_relator_insertions(self, w: Word | str, seed: int, count: int) -> Word:
        """w with ``count`` defining relators (or their inverses) spliced in at random."""
        code = self.word(w).code
        rng = random.Random(seed)
        relators = [r.code for r in self.relators()]
        for _ in range(count):
            relator = rng.choice(relators)
            if rng.random() < 0.5:
                relator = invert_code(relator)
            cut = rng.randint(0, len(code))
            code = code[:cut] + relator + code[cut:]
        return Word(self.alphabet, code)

    def __repr__(self) -> str:
        return f"MappingTorus({self.presentation()})"


# ============================================================================
# The canonical manifold: mapping torus of the simplest pseudo-Anosov braid
# ============================================================================

CANONICAL_TORUS = MappingTorus(PSI, "t")
TORUS_ALPHABET: Alphabet = CANONICAL_TORUS.alphabet


def normal_form(w: Word | str, *, max_letters: int = DEFAULT_MAX_LETTERS) -> TorusElement:
    return CANONICAL_TORUS.normal_form(w, max_letters=max_letters)


def equal(u: Word | str, v: Word | str, *, max_letters: int = DEFAULT_MAX_LETTERS) -> bool:
    return CANONICAL_TORUS.equal(u, v, max_letters=max_letters)


def evaluate_class(phi: CohomologyClass, w: Word | str) -> int:
    return CANONICAL_TORUS.evaluate_class(phi, w)


def is_member(phi: CohomologyClass, w: Word | str) -> bool:
    return CANONICAL_TORUS.is_member(phi, w)


def conjugate_by_stable(w: Word | str, n: int) -> Word:
    return CANONICAL_TORUS.conjugate_by_stable(w, n)


def obfuscate(w: Word | str, seed: int, blowup: float = 2.0) -> Word:
    return CANONICAL_TORUS.obfuscate(w, seed, blowup)


def parse_words(texts: Iterable[str]) -> list[Word]:
    return [CANONICAL_TORUS.word(text) for text in texts]
