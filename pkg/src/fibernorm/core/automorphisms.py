"""
Free-group automorphisms and the braid action on a punctured disk.

CONVENTION: braid words act leftmost-letter-first. The braid
``beta = sigma_1 sigma_2^-1`` is therefore the automorphism
``compose(SIGMA_2_INVERSE, SIGMA_1)``, i.e. apply sigma_1, then sigma_2^-1.
This is the only convention that reproduces
``beta: (x, y, z) -> (y z y^-1, y z^-1 y^-1 x y z y^-1, y)``.

Braid words are sequences of nonzero integers: ``i`` is sigma_i and ``-i``
is its inverse, on generators x_1..x_n of the punctured-disk free group.
"""

from collections.abc import Iterator, Mapping, Sequence

from .config import DEFAULT_MAX_LETTERS
from .exceptions import (
    AlphabetMismatchError,
    BudgetExceededError,
    FibernormValidationError,
    InversionUnavailableError,
    UnknownGeneratorError,
)
from .words import Alphabet, Word, invert_code


def substitute_code(code: bytes, table: Sequence[bytes | None], max_letters: int) -> bytes:
    """
    Replace every letter of a reduced code by its image and freely reduce.

    Images are reduced, so cancellation only happens where an image meets
    the accumulated prefix.
    """
    out = bytearray()
    for letter in code:
        image = table[letter]
        if image is None:
            raise UnknownGeneratorError(f"No image for letter code {letter}")
        k = 0
        n = len(image)
        while k < n and out and out[-1] == image[k] ^ 1:
            out.pop()
            k += 1
        if k < n:
            out += image[k:] if k else image
        if len(out) > max_letters:
            raise BudgetExceededError(max_letters, len(out), "applying an automorphism")
    return bytes(out)


class FreeAutomorphism:
    """
    Generator-to-word map on a free group.

    An inverse is available when the automorphism carries a braid
    factorization or was built with explicit inverse images.
    """

    __slots__ = ("alphabet", "_images", "_table", "braid", "_inverse", "name")

    def __init__(
        self,
        alphabet: Alphabet,
        images: Mapping[str, Word | str],
        *,
        braid: Sequence[int] | None = None,
        inverse: "FreeAutomorphism | Mapping[str, Word | str] | None" = None,
        name: str | None = None,
    ):
        missing = [g for g in alphabet if g not in images]
        extra = [g for g in images if g not in alphabet]
        if missing or extra:
            raise UnknownGeneratorError(
                f"Images must cover exactly {alphabet.names}; missing={missing} extra={extra}"
            )

        self.alphabet = alphabet
        self._images = {g: _as_word(images[g], alphabet).reduce() for g in alphabet}
        if any(w.is_identity() for w in self._images.values()):
            raise FibernormValidationError("A generator image is trivial; not an automorphism")

        table: list[bytes | None] = [None] * 256
        for i, g in enumerate(alphabet):
            code = self._images[g].code
            table[2 * i] = code
            table[2 * i + 1] = invert_code(code)
        self._table = table

        self.braid = tuple(braid) if braid is not None else None
        self.name = name
        self._inverse: FreeAutomorphism | None = None
        if inverse is not None:
            if not isinstance(inverse, FreeAutomorphism):
                inverse = FreeAutomorphism(alphabet, inverse)
            if not compose(self, inverse).is_identity():
                raise FibernormValidationError("Supplied inverse does not invert the automorphism")
            self._link_inverse(inverse)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "FreeAutomorphism":
        return cls(alphabet, {g: Word.generator(alphabet, g) for g in alphabet}, braid=(), name="id")

    @classmethod
    def from_braid(
        cls, braid: Sequence[int], alphabet: Alphabet, name: str | None = None
    ) -> "FreeAutomorphism":
        """Automorphism of a braid word, leftmost letter applied first."""
        result = cls.identity(alphabet)
        for letter in braid:
            result = compose(braid_generator(letter, alphabet), result)
        result.name = name
        return result

    # ------------------------------------------------------------------
    # Action
    # ------------------------------------------------------------------

    def image(self, generator: str) -> Word:
        try:
            return self._images[generator]
        except KeyError:
            raise UnknownGeneratorError(
                f"Generator {generator!r} not in alphabet {self.alphabet.names}"
            ) from None

    @property
    def images(self) -> dict[str, Word]:
        return dict(self._images)

    def apply(self, w: Word, *, max_letters: int = DEFAULT_MAX_LETTERS) -> Word:
        if w.alphabet != self.alphabet:
            w = w.over(self.alphabet)
        code = substitute_code(w.reduce().code, self._table, max_letters)
        return Word(self.alphabet, code, reduced=True)

    __call__ = apply

    def apply_code(self, code: bytes, *, max_letters: int = DEFAULT_MAX_LETTERS) -> bytes:
        """Substitute into a reduced byte code over this alphabet."""
        return substitute_code(code, self._table, max_letters)

    def iterate(self, w: Word, *, max_letters: int = DEFAULT_MAX_LETTERS) -> Iterator[Word]:
        """Yield w, a(w), a(a(w)), ... reducing after every application."""
        current = w.reduce() if w.alphabet == self.alphabet else w.over(self.alphabet).reduce()
        while True:
            yield current
            current = self.apply(current, max_letters=max_letters)

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def invert(self) -> "FreeAutomorphism":
        if self._inverse is not None:
            return self._inverse
        if self.braid is None:
            raise InversionUnavailableError(
                f"{self!r} has no braid factorization and no supplied inverse; "
                "general free-group inversion is not supported"
            )
        inverse_braid = tuple(-letter for letter in reversed(self.braid))
        inverse = FreeAutomorphism.from_braid(inverse_braid, self.alphabet)
        self._link_inverse(inverse)
        return inverse

    def has_inverse(self) -> bool:
        return self._inverse is not None or self.braid is not None

    def power(self, n: int) -> "FreeAutomorphism":
        if n == 0:
            return FreeAutomorphism.identity(self.alphabet)
        if n < 0:
            return self.invert().power(-n)
        result = self
        for _ in range(n - 1):
            result = compose(self, result)
        return result

    def is_identity(self) -> bool:
        return all(
            self._images[g] == Word.generator(self.alphabet, g) for g in self.alphabet
        )

    def _link_inverse(self, inverse: "FreeAutomorphism") -> None:
        self._inverse = inverse
        inverse._inverse = self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeAutomorphism):
            return NotImplemented
        return self.alphabet == other.alphabet and self._images == other._images

    def __hash__(self) -> int:
        return hash((self.alphabet, tuple(self._images[g] for g in self.alphabet)))

    def __repr__(self) -> str:
        body = ", ".join(f"{g}->{self._images[g]}" for g in self.alphabet)
        label = f"{self.name}: " if self.name else ""
        return f"FreeAutomorphism({label}{body})"


def _as_word(value: Word | str, alphabet: Alphabet) -> Word:
    if isinstance(value, Word):
        return value.over(alphabet)
    return Word.parse(value, alphabet)


def compose(f: FreeAutomorphism, g: FreeAutomorphism) -> FreeAutomorphism:
    """The automorphism w -> f(g(w))."""
    if f.alphabet != g.alphabet:
        raise AlphabetMismatchError(f"Cannot compose over {f.alphabet!r} and {g.alphabet!r}")
    images = {s: f.apply(g.image(s)) for s in f.alphabet}
    braid = g.braid + f.braid if f.braid is not None and g.braid is not None else None
    result = FreeAutomorphism(f.alphabet, images, braid=braid)
    if braid is None and f._inverse is not None and g._inverse is not None:
        f_inv, g_inv = f._inverse, g._inverse
        inverse_images = {s: g_inv.apply(f_inv.image(s)) for s in f.alphabet}
        result._link_inverse(FreeAutomorphism(f.alphabet, inverse_images))
    return result


def invert(a: FreeAutomorphism) -> FreeAutomorphism:
    return a.invert()


def power(a: FreeAutomorphism, n: int) -> FreeAutomorphism:
    return a.power(n)


def apply(a: FreeAutomorphism, w: Word, *, max_letters: int = DEFAULT_MAX_LETTERS) -> Word:
    return a.apply(w, max_letters=max_letters)


def braid_generator(letter: int, alphabet: Alphabet) -> FreeAutomorphism:
    """
    sigma_i (letter i) or its inverse (letter -i) on x_1..x_n:

        sigma_i:    x_i -> x_{i+1},            x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
        sigma_i^-1: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
    """
    index = abs(letter)
    if letter == 0 or index >= len(alphabet):
        raise FibernormValidationError(
            f"Braid letter {letter} out of range for {len(alphabet)} strands"
        )
    left, right = alphabet.names[index - 1], alphabet.names[index]
    images: dict[str, Word | str] = {g: Word.generator(alphabet, g) for g in alphabet}
    if letter > 0:
        images[left] = right
        images[right] = f"{right}^-1 {left} {right}"
    else:
        images[left] = f"{left} {right} {left}^-1"
        images[right] = left
    return FreeAutomorphism(alphabet, images, braid=(letter,))


# ============================================================================
# The thrice-punctured disk and the simplest pseudo-Anosov braid
# ============================================================================

FIBER_ALPHABET = Alphabet(("x", "y", "z"))

SIGMA_1 = braid_generator(1, FIBER_ALPHABET)
SIGMA_1_INVERSE = braid_generator(-1, FIBER_ALPHABET)
SIGMA_2 = braid_generator(2, FIBER_ALPHABET)
SIGMA_2_INVERSE = braid_generator(-2, FIBER_ALPHABET)

# beta = sigma_1 sigma_2^-1
PSI = FreeAutomorphism.from_braid((1, -2), FIBER_ALPHABET, name="psi")
PSI_INVERSE = PSI.invert()
