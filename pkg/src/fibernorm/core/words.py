"""
Free-group words over named alphabets.

Letters are stored one byte each: generator ``i`` of an alphabet is code
``2*i`` and its inverse is code ``2*i + 1``, so inverting a letter is
``code ^ 1`` and inverting a word is a reverse plus a byte translation.

Serialization (both directions) uses space-separated tokens, ``name`` or
``name^k`` for a nonzero integer ``k``, with parenthesised groups allowed on
input (``(y z y^-1)^-1``). The empty word serializes as ``1``. Output is
always the reduced word with runs coalesced into exponents.
"""

import re
from collections.abc import Iterable
from itertools import groupby

from .config import DEFAULT_MAX_LETTERS
from .exceptions import (
    AlphabetMismatchError,
    BudgetExceededError,
    FibernormValidationError,
    UnknownGeneratorError,
    WordSyntaxError,
)

MAX_GENERATORS = 128

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<open>\()|(?P<close>\))|(?P<pow>\^\s*[-+]?\d+)"
    r"|(?P<name>[a-z][a-z0-9_]*)|(?P<one>1(?![0-9])))"
)
_FLIP = bytes(code ^ 1 for code in range(256))


class Alphabet:
    """Ordered, immutable set of generator names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(names) > MAX_GENERATORS:
            raise FibernormValidationError(
                f"alphabets hold at most {MAX_GENERATORS} generators, got {len(names)}"
            )
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise FibernormValidationError(
                    f"Invalid generator name {name!r}: use a lowercase identifier"
                )
        if len(set(names)) != len(names):
            raise FibernormValidationError(f"Duplicate generator names in {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGeneratorError(
                f"Generator {name!r} not in alphabet {self.names}"
            ) from None

    def code(self, name: str, sign: int = 1) -> int:
        """Byte code of ``name`` (sign > 0) or its inverse (sign < 0)."""
        return 2 * self.index(name) + (0 if sign > 0 else 1)

    def letter(self, code: int) -> tuple[str, int]:
        """Decode a byte code back into ``(name, ±1)``."""
        return self.names[code >> 1], -1 if code & 1 else 1

    def translation_to(self, other: "Alphabet") -> bytes:
        """Byte table re-encoding words over this alphabet into ``other``."""
        table = bytearray(range(256))
        for i, name in enumerate(self.names):
            j = other.index(name)
            table[2 * i] = 2 * j
            table[2 * i + 1] = 2 * j + 1
        return bytes(table)

    def extend(self, *names: str) -> "Alphabet":
        """New alphabet with ``names`` prepended (stable letters come first)."""
        return Alphabet(names + self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __iter__(self):
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({', '.join(self.names)})"


# ============================================================================
# Byte-level helpers (shared with automorphisms and the mapping torus)
# ============================================================================

def invert_code(code: bytes) -> bytes:
    return code[::-1].translate(_FLIP)


def free_reduce_code(code: bytes) -> bytes:
    stack = bytearray()
    for letter in code:
        if stack and stack[-1] == letter ^ 1:
            stack.pop()
        else:
            stack.append(letter)
    return bytes(stack)


def join_reduced_codes(left: bytes, right: bytes) -> bytes:
    """Product of two reduced codes; cancellation only happens at the seam."""
    k = 0
    limit = min(len(left), len(right))
    while k < limit and left[-1 - k] == right[k] ^ 1:
        k += 1
    return left[: len(left) - k] + right[k:]


def _power_code(code: bytes, exponent: int) -> bytes:
    if exponent >= 0:
        return code * exponent
    return invert_code(code) * (-exponent)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN_RE.match(stripped, pos)
        if match is None or match.end() == pos:
            raise WordSyntaxError(f"Unexpected input at position {pos} in {text!r}")
        tokens.append((match.lastgroup, match.group(match.lastgroup)))
        pos = match.end()
    return tokens


def _parse_sequence(
    tokens: list[tuple[str, str]], pos: int, alphabet: Alphabet, text: str, max_letters: int
) -> tuple[bytes, int]:
    """Letters of one group, counted before any power is expanded."""
    parts = []
    total = 0
    while pos < len(tokens):
        kind, value = tokens[pos]
        if kind == "close":
            break
        if kind == "open":
            atom, pos = _parse_sequence(tokens, pos + 1, alphabet, text, max_letters)
            if pos >= len(tokens) or tokens[pos][0] != "close":
                raise WordSyntaxError(f"Unbalanced parenthesis in {text!r}")
        elif kind == "name":
            atom = bytes((alphabet.code(value),))
        elif kind == "one":
            atom = b""
        else:
            raise WordSyntaxError(f"Exponent without a base in {text!r}")
        pos += 1

        exponent = 1
        if pos < len(tokens) and tokens[pos][0] == "pow":
            exponent = int(tokens[pos][1][1:].replace(" ", ""))
            if exponent == 0:
                raise WordSyntaxError(f"Zero exponent in {text!r}")
            pos += 1
        size = len(atom) * abs(exponent)
        if total + size > max_letters:
            raise BudgetExceededError(max_letters, total + size, "parsing a word")
        if exponent != 1:
            atom = _power_code(atom, exponent)
        parts.append(atom)
        total += size
    return b"".join(parts), pos


class Word:
    """
    Element of the free group on an alphabet, kept as the literal letter
    sequence it was built from.

    Equality and hashing are free-group equality (reduced forms compare);
    ``raw_length`` is the literal letter count and ``length()`` the reduced one.
    """

    __slots__ = ("alphabet", "_code", "_reduced")

    def __init__(self, alphabet: Alphabet, code: bytes = b"", *, reduced: bool = False):
        self.alphabet = alphabet
        self._code = bytes(code)
        self._reduced = reduced or len(self._code) < 2

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Word":
        return cls(alphabet, b"", reduced=True)

    @classmethod
    def generator(cls, alphabet: Alphabet, name: str, exponent: int = 1) -> "Word":
        code = bytes((alphabet.code(name),))
        return cls(alphabet, _power_code(code, exponent), reduced=True)

    @classmethod
    def parse(
        cls, text: str, alphabet: Alphabet, *, max_letters: int = DEFAULT_MAX_LETTERS
    ) -> "Word":
        """Parse the token serialization; the result is NOT reduced."""
        tokens = _tokenize(text)
        code, pos = _parse_sequence(tokens, 0, alphabet, text, max_letters)
        if pos != len(tokens):
            raise WordSyntaxError(f"Unbalanced parenthesis in {text!r}")
        return cls(alphabet, code)

    @classmethod
    def from_letters(cls, alphabet: Alphabet, letters: Iterable[tuple[str, int]]) -> "Word":
        """Build from ``(name, exponent)`` pairs without reducing."""
        parts = []
        for name, exponent in letters:
            if exponent == 0:
                raise FibernormValidationError(f"Zero exponent for {name!r}")
            parts.append(_power_code(bytes((alphabet.code(name),)), exponent))
        return cls(alphabet, b"".join(parts))

    @classmethod
    def join(cls, words: Iterable["Word"]) -> "Word":
        """Literal concatenation, no reduction (raw lengths add up)."""
        words = list(words)
        if not words:
            raise FibernormValidationError("join() needs at least one word")
        alphabet = words[0].alphabet
        for word in words[1:]:
            _check_same_alphabet(alphabet, word.alphabet)
        return cls(alphabet, b"".join(word._code for word in words))

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def code(self) -> bytes:
        return self._code

    @property
    def letters(self) -> tuple[tuple[str, int], ...]:
        return tuple(self.alphabet.letter(c) for c in self._code)

    @property
    def raw_length(self) -> int:
        return len(self._code)

    @property
    def is_reduced(self) -> bool:
        return self._reduced

    def length(self) -> int:
        return len(self.reduce()._code)

    def is_identity(self) -> bool:
        return not self.reduce()._code

    def exponent_sum(self, name: str) -> int:
        code = self.alphabet.code(name)
        return self._code.count(code) - self._code.count(code | 1)

    def exponent_sums(self) -> dict[str, int]:
        return {name: self.exponent_sum(name) for name in self.alphabet}

    # ------------------------------------------------------------------
    # Group operations
    # ------------------------------------------------------------------

    def reduce(self) -> "Word":
        if self._reduced:
            return self
        return Word(self.alphabet, free_reduce_code(self._code), reduced=True)

    def inverse(self) -> "Word":
        return Word(self.alphabet, invert_code(self._code), reduced=self._reduced)

    def concat(self, other: "Word") -> "Word":
        _check_same_alphabet(self.alphabet, other.alphabet)
        code = join_reduced_codes(self.reduce()._code, other.reduce()._code)
        return Word(self.alphabet, code, reduced=True)

    def cyclic_reduce(self) -> "Word":
        code = self.reduce()._code
        i, j = 0, len(code) - 1
        while i < j and code[i] == code[j] ^ 1:
            i += 1
            j -= 1
        return Word(self.alphabet, code[i : j + 1], reduced=True)

    def cyclically_equal(self, other: "Word") -> bool:
        """Equal as cyclic words: cyclic reductions agree up to rotation."""
        _check_same_alphabet(self.alphabet, other.alphabet)
        mine = self.cyclic_reduce()._code
        theirs = other.cyclic_reduce()._code
        return len(mine) == len(theirs) and theirs in mine + mine

    def over(self, alphabet: Alphabet) -> "Word":
        """Re-encode into another alphabet containing all of this one's names."""
        if alphabet == self.alphabet:
            return self
        table = self.alphabet.translation_to(alphabet)
        return Word(alphabet, self._code.translate(table), reduced=self._reduced)

    def __mul__(self, other: "Word") -> "Word":
        return self.concat(other)

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, exponent: int) -> "Word":
        return Word(self.alphabet, _power_code(self.reduce()._code, exponent)).reduce()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.alphabet == other.alphabet and self.reduce()._code == other.reduce()._code

    def __hash__(self) -> int:
        return hash((self.alphabet, self.reduce()._code))

    def __str__(self) -> str:
        code = self.reduce()._code
        if not code:
            return "1"
        tokens = []
        for letter, run in groupby(code):
            name, sign = self.alphabet.letter(letter)
            exponent = sign * sum(1 for _ in run)
            tokens.append(name if exponent == 1 else f"{name}^{exponent}")
        return " ".join(tokens)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def _check_same_alphabet(left: Alphabet, right: Alphabet) -> None:
    if left != right:
        raise AlphabetMismatchError(f"Alphabet mismatch: {left!r} vs {right!r}")


# ============================================================================
# Function-style API
# ============================================================================

def reduce(w: Word) -> Word:
    return w.reduce()


def concat(u: Word, v: Word) -> Word:
    return u.concat(v)


def inverse(w: Word) -> Word:
    return w.inverse()


def length(w: Word) -> int:
    return w.length()


def cyclic_reduce(w: Word) -> Word:
    return w.cyclic_reduce()


def random_reduced_word(alphabet: Alphabet, length: int, rng) -> Word:
    """Uniform freely reduced word of exactly ``length`` letters (``rng`` is a random.Random)."""
    if length and not len(alphabet):
        raise FibernormValidationError("Cannot draw letters from an empty alphabet")
    letters = 2 * len(alphabet)
    code = bytearray()
    for _ in range(length):
        letter = rng.randrange(letters)
        while code and letter == code[-1] ^ 1:
            letter = rng.randrange(letters)
        code.append(letter)
    return Word(alphabet, bytes(code), reduced=True)
