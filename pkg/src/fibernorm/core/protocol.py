"""
Symmetric and public-key agreement on the fibered 3-manifold.

Symmetric: Alice and Bob share a fibered class; Alice announces N in the
clear and both compute l_max = max_s |psi^N(s)| over the fiber generators.

Public: both parties obtain a platform secret g from an outside exchange,
map it to the fibered class f(g), and Alice sends a set of torus words in
which only the conjugates t^-N s t^N of the fiber generators lie in the
fiber. Bob keeps the fiber members, recovers N by conjugating his own
generators until they match, and computes the same l_max.
"""

import json
import random
from collections.abc import Iterator
from pathlib import Path
from typing import Protocol

from fastmcp.utilities.logging import get_logger
from pydantic import ValidationError

from ..models.classes import CohomologyClass
from ..models.fibrations import FibrationEntry, PlatformSecret
from ..models.protocol import (
    ChannelMessage,
    PublicSession,
    SessionReport,
    SharedKey,
    Transcript,
)
from ..models.torus import TorusElement
from .config import DEFAULT_MAX_LETTERS, DEFAULT_N_MAX
from .database import (
    FibrationDatabase,
    entry_automorphism,
    generator_words,
    keymap,
    require_full_data,
    stable_word,
)
from .exceptions import (
    DatabaseError,
    FibernormValidationError,
    RecoveryFailureError,
    TranscriptError,
)
from .mapping_torus import CANONICAL_TORUS, TORUS_ALPHABET
from .words import Word, random_reduced_word

logger = get_logger(__name__)


# ============================================================================
# Keys
# ============================================================================

def lmax(
    entry: FibrationEntry, n: int, *, max_letters: int = DEFAULT_MAX_LETTERS
) -> SharedKey:
    """Longest reduced image psi^N(s) over the fiber generators; ties go to the earlier generator."""
    if n < 0:
        raise FibernormValidationError(f"N must be nonnegative, got {n}")
    automorphism = entry_automorphism(entry)
    best_length, best_generator = -1, None
    for s in automorphism.alphabet:
        code = Word.generator(automorphism.alphabet, s).code
        for _ in range(n):
            code = automorphism.apply_code(code, max_letters=max_letters)
        if len(code) > best_length:
            best_length, best_generator = len(code), s
    return SharedKey(l_max=best_length, s_max=best_generator, N=n)


def symmetric_session(
    entry: FibrationEntry, n: int, *, max_letters: int = DEFAULT_MAX_LETTERS
) -> tuple[SharedKey, SharedKey, Transcript]:
    """Alice picks N and sends it in the clear; both sides compute l_max."""
    require_full_data(entry)
    alice = lmax(entry, n, max_letters=max_letters)
    transcript = Transcript(scheme="symmetric", N=n)
    bob = lmax(entry, transcript.N, max_letters=max_letters)
    return alice, bob, transcript


# ============================================================================
# Public-key scheme: Alice
# ============================================================================

def _decoy(phi: CohomologyClass, n: int, rng: random.Random) -> Word:
    low, high = max(1, 2 * n), max(1, 4 * n)
    while True:
        word = random_reduced_word(TORUS_ALPHABET, rng.randint(low, high), rng)
        if CANONICAL_TORUS.evaluate_class(phi, word) != 0:
            return word


def alice_prepare(
    entry: FibrationEntry,
    n: int,
    decoy_total: int,
    seed: int,
    *,
    obfuscate: bool = True,
    blowup: float = 2.0,
) -> ChannelMessage:
    """
    The conjugates t_phi^-N s t_phi^N of every fiber generator s, plus
    decoy_total - rank random words outside the fiber, shuffled.
    """
    data = require_full_data(entry)
    rank = len(data.generators)
    if decoy_total <= rank:
        raise FibernormValidationError(
            f"decoy_total must exceed the fiber rank {rank}, got {decoy_total}"
        )
    if n < 0:
        raise FibernormValidationError(f"N must be nonnegative, got {n}")

    rng = random.Random(seed)
    stable = stable_word(entry)
    elements: list[str] = []
    for word in generator_words(entry).values():
        conjugate = CANONICAL_TORUS.conjugate_by_stable(word, n, stable)
        if obfuscate:
            conjugate = CANONICAL_TORUS.obfuscate(conjugate, rng.getrandbits(32), blowup)
        elements.append(str(conjugate))
    decoy_count = decoy_total - rank
    elements.extend(str(_decoy(entry.phi, n, rng)) for _ in range(decoy_count))
    rng.shuffle(elements)
    return ChannelMessage(elements=tuple(elements), decoy_count=decoy_count)


# ============================================================================
# Public-key scheme: Bob
# ============================================================================

def fiber_members(
    entry: FibrationEntry, msg: ChannelMessage, *, max_letters: int = DEFAULT_MAX_LETTERS
) -> list[Word]:
    """Channel elements in ker phi; a linear-time exponent-sum test per element."""
    words = [CANONICAL_TORUS.word(element, max_letters=max_letters) for element in msg.elements]
    return [w for w in words if CANONICAL_TORUS.is_member(entry.phi, w)]


def _matching_exponents(
    entry: FibrationEntry,
    msg: ChannelMessage,
    n_max: int,
    max_letters: int,
) -> Iterator[int]:
    members = fiber_members(entry, msg, max_letters=max_letters)
    logger.debug(f"{entry.phi}: {len(members)} of {len(msg.elements)} elements lie in the fiber")
    if not members:
        return
    targets = {CANONICAL_TORUS.normal_form(w, max_letters=max_letters) for w in members}
    stable: TorusElement = CANONICAL_TORUS.normal_form(stable_word(entry), max_letters=max_letters)
    candidates = [
        CANONICAL_TORUS.normal_form(w, max_letters=max_letters)
        for w in generator_words(entry).values()
    ]
    for n in range(1, n_max + 1):
        candidates = [
            CANONICAL_TORUS.conjugate_element(c, stable, max_letters=max_letters)
            for c in candidates
        ]
        if all(c in targets for c in candidates):
            logger.debug(f"{entry.phi}: exponent {n} matches")
            yield n


def bob_recover(
    entry: FibrationEntry,
    msg: ChannelMessage,
    n_max: int = DEFAULT_N_MAX,
    *,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> SharedKey:
    """Recover Alice's N as the first n <= n_max whose conjugates all appear, then derive l_max."""
    require_full_data(entry)
    for n in _matching_exponents(entry, msg, n_max, max_letters):
        return lmax(entry, n, max_letters=max_letters)
    raise RecoveryFailureError(
        f"No exponent 1..{n_max} reproduces the fiber members for {entry.phi}"
    )


def candidate_exponents(
    entry: FibrationEntry,
    msg: ChannelMessage,
    n_max: int = DEFAULT_N_MAX,
    *,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> list[int]:
    """Every n <= n_max that matches; a single entry when psi is not periodic."""
    require_full_data(entry)
    return list(_matching_exponents(entry, msg, n_max, max_letters))


# ============================================================================
# Platform secrets
# ============================================================================

class PlatformOracle(Protocol):
    """Source of the shared platform secret g (the outside key exchange)."""

    def share(self) -> PlatformSecret:
        ...


class SeededPlatformOracle:
    """Deterministic stand-in for the outside exchange: a seeded token of a fixed length."""

    def __init__(self, length: int, seed: int = 0):
        self.length = length
        self.seed = seed

    def share(self) -> PlatformSecret:
        token = random.Random(self.seed).randbytes(32)
        return PlatformSecret.from_bytes(token, length=self.length)


def public_session(
    db: FibrationDatabase,
    oracle: PlatformOracle,
    n: int,
    decoy_total: int,
    seed: int,
    *,
    n_max: int = DEFAULT_N_MAX,
    obfuscate: bool = True,
    blowup: float = 2.0,
    max_letters: int = DEFAULT_MAX_LETTERS,
) -> PublicSession:
    """One full run: secret -> class -> Alice's message -> Bob's recovery."""
    secret = oracle.share()
    phi = keymap(secret)
    entry = db.lookup(phi)
    if entry is None:
        raise DatabaseError(f"Class {phi} for |g| = {secret.length} is not in the database")
    require_full_data(entry)
    logger.debug(f"Platform secret of length {secret.length} selects {phi}")

    alice = lmax(entry, n, max_letters=max_letters)
    msg = alice_prepare(entry, n, decoy_total, seed, obfuscate=obfuscate, blowup=blowup)
    transcript = Transcript(scheme="public", elements=msg.elements)

    received = transcript.message()
    bob = bob_recover(entry, received, n_max, max_letters=max_letters)
    report = SessionReport(
        scheme="public",
        phi=phi,
        alice=alice,
        bob=bob,
        secret=secret,
        members=len(fiber_members(entry, received, max_letters=max_letters)),
    )
    return PublicSession(transcript=transcript, report=report)


# ============================================================================
# Files
# ============================================================================

def transcript_write(transcript: Transcript, path: str | Path) -> None:
    Path(path).write_text(transcript.model_dump_json(indent=2) + "\n", encoding="utf-8")


def transcript_read(path: str | Path) -> Transcript:
    path = Path(path)
    try:
        return Transcript.model_validate(json.loads(path.read_text(encoding="utf-8")))
    except OSError as e:
        raise TranscriptError(f"Cannot read transcript {path}: {e}") from e
    except (json.JSONDecodeError, ValidationError) as e:
        raise TranscriptError(f"Malformed transcript {path}: {e}") from e


def report_write(report: SessionReport, path: str | Path) -> None:
    """Private key report; keep it away from anything published."""
    Path(path).write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
