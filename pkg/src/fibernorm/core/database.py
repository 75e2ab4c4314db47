"""
Public database of fibered classes and the keymap from platform secrets.

The file format is versioned JSON:

    {"version": 1, "manifold": "simplest-pA-braid",
     "entries": [{"phi": [a, b], "rank": r, "stretch": lambda, "full_data": {...} | null}]}

Only the canonical class (1, 0) ships with a fiber presentation; other
entries are metadata unless a user supplies the full data.
"""

import json
import math
from collections.abc import Iterable, Iterator
from functools import cached_property
from pathlib import Path

from fastmcp.utilities.logging import get_logger
from pydantic import ValidationError

from ..models.classes import CohomologyClass
from ..models.fibrations import (
    AutomorphismData,
    DatabaseFile,
    FibrationEntry,
    FullFiberData,
    PlatformSecret,
)
from .automorphisms import PSI, FreeAutomorphism
from .exceptions import (
    DatabaseInvariantError,
    FibernormException,
    FibernormValidationError,
    MalformedDatabaseError,
    MetadataOnlyEntryError,
)
from .mapping_torus import CANONICAL_TORUS
from .norm import fiber_rank, in_cone_over_F, is_primitive, stretch_factor
from .words import Alphabet, Word

logger = get_logger(__name__)

CANONICAL_CLASS = CohomologyClass(a=1, b=0)
STRETCH_TOLERANCE = 1e-6
MANIFOLD_NAME = "simplest-pA-braid"

SHIPPED_DATABASE = Path(__file__).resolve().parent.parent / "data" / "canonical.json"


# ============================================================================
# Keymap
# ============================================================================

def keymap_denominator(length: int) -> int:
    """
    Smallest D > 0 making D · (1/2, (L-1)/(2(L+1))) integral.

    Both coordinates are reduced fractions here, so D is the lcm of their
    denominators; it divides lcm(2, L+1) but can be smaller (L = 3 gives 4).
    """
    if length < 1:
        raise FibernormValidationError("|g| = 0 gives no fibration; the secret needs length >= 1")
    numerator, denominator = length - 1, 2 * (length + 1)
    g = math.gcd(numerator, denominator)
    return math.lcm(2, denominator // g)


def keymap(g: PlatformSecret | int) -> CohomologyClass:
    """The fibered class f(g) = D(g) · (1/2, |g|/(|g|+1) - 1/2)."""
    length = g.length if isinstance(g, PlatformSecret) else g
    d = keymap_denominator(length)
    return CohomologyClass(
        a=d // 2,
        b=d * (length - 1) // (2 * (length + 1)),
    )


# ============================================================================
# Entries
# ============================================================================

def canonical_entry() -> FibrationEntry:
    """phi = (1, 0): fiber <x, y, z>, monodromy psi, stable letter t."""
    return FibrationEntry(
        phi=CANONICAL_CLASS,
        rank=3,
        stretch=stretch_factor(CANONICAL_CLASS),
        full_data=FullFiberData(
            generators=PSI.alphabet.names,
            automorphism=AutomorphismData(
                images={g: str(PSI.image(g)) for g in PSI.alphabet},
                braid=PSI.braid,
            ),
            stable_letter=CANONICAL_TORUS.stable,
        ),
    )


def metadata_entry(phi: CohomologyClass) -> FibrationEntry:
    return FibrationEntry(phi=phi, rank=fiber_rank(phi), stretch=stretch_factor(phi))


def require_full_data(entry: FibrationEntry) -> FullFiberData:
    if entry.full_data is None:
        raise MetadataOnlyEntryError(
            f"Entry {entry.phi} carries no fiber presentation; "
            "keys can only be computed for entries with full_data"
        )
    return entry.full_data


def entry_automorphism(entry: FibrationEntry) -> FreeAutomorphism:
    """Monodromy of an entry, with its inverse attached."""
    data = require_full_data(entry)
    alphabet = Alphabet(data.generators)
    spec = data.automorphism
    if spec.braid is not None:
        automorphism = FreeAutomorphism.from_braid(spec.braid, alphabet)
        if automorphism != FreeAutomorphism(alphabet, spec.images):
            raise DatabaseInvariantError(
                f"Entry {entry.phi}: braid {list(spec.braid)} does not produce the stored images"
            )
        return automorphism
    return FreeAutomorphism(alphabet, spec.images, inverse=spec.inverse_images)


def stable_word(entry: FibrationEntry) -> Word:
    """The entry's stable letter as a word in {t, x, y, z}."""
    return CANONICAL_TORUS.word(require_full_data(entry).stable_letter)


def generator_words(entry: FibrationEntry) -> dict[str, Word]:
    """Fiber generators as words in {t, x, y, z}; names double as words when none are given."""
    data = require_full_data(entry)
    if data.generator_words is not None:
        return {s: CANONICAL_TORUS.word(data.generator_words[s]) for s in data.generators}
    return {s: CANONICAL_TORUS.word(s) for s in data.generators}


def validate_entry(entry: FibrationEntry, tolerance: float = STRETCH_TOLERANCE) -> None:
    """Raise DatabaseInvariantError if the entry contradicts its class."""
    phi = entry.phi
    if not is_primitive(phi) or not in_cone_over_F(phi):
        raise DatabaseInvariantError(f"{phi} is not a primitive class in the cone over F")
    if entry.rank != fiber_rank(phi):
        raise DatabaseInvariantError(
            f"{phi}: rank {entry.rank} != ||phi||_T + 1 = {fiber_rank(phi)}"
        )
    expected = stretch_factor(phi)
    if abs(entry.stretch - expected) > tolerance:
        raise DatabaseInvariantError(
            f"{phi}: stretch {entry.stretch} differs from {expected:.12f}"
        )
    if entry.full_data is None:
        return

    data = entry.full_data
    if len(data.generators) != entry.rank:
        raise DatabaseInvariantError(
            f"{phi}: {len(data.generators)} generators for a rank-{entry.rank} fiber"
        )
    try:
        automorphism = entry_automorphism(entry)
        if set(automorphism.alphabet) != set(data.generators):
            raise DatabaseInvariantError(f"{phi}: automorphism alphabet differs from generators")
        if not automorphism.has_inverse():
            raise DatabaseInvariantError(f"{phi}: monodromy has no braid and no inverse")
        if CANONICAL_TORUS.evaluate_class(phi, stable_word(entry)) != 1:
            raise DatabaseInvariantError(f"{phi}: stable letter does not evaluate to 1")
        for name, word in generator_words(entry).items():
            if not CANONICAL_TORUS.is_member(phi, word):
                raise DatabaseInvariantError(f"{phi}: generator {name} is not in ker phi")
    except DatabaseInvariantError:
        raise
    except (FibernormException, KeyError) as e:
        raise DatabaseInvariantError(f"{phi}: unusable full_data: {e}") from e


# ============================================================================
# Database
# ============================================================================

class FibrationDatabase:
    """Immutable collection of entries, looked up by exact class."""

    def __init__(
        self,
        entries: Iterable[FibrationEntry],
        manifold: str = MANIFOLD_NAME,
        *,
        validate: bool = True,
    ):
        self.manifold = manifold
        self._entries = tuple(entries)
        self._index: dict[tuple[int, int], FibrationEntry] = {}
        for entry in self._entries:
            if entry.phi.pair in self._index:
                raise DatabaseInvariantError(f"Duplicate entry for {entry.phi}")
            if validate:
                validate_entry(entry)
            self._index[entry.phi.pair] = entry

    @property
    def entries(self) -> tuple[FibrationEntry, ...]:
        return self._entries

    @cached_property
    def full_entries(self) -> tuple[FibrationEntry, ...]:
        return tuple(e for e in self._entries if e.full_data is not None)

    def lookup(self, phi: CohomologyClass) -> FibrationEntry | None:
        return self._index.get(phi.pair)

    def without(self, phi: CohomologyClass) -> "FibrationDatabase":
        return FibrationDatabase(
            (e for e in self._entries if e.phi != phi), self.manifold, validate=False
        )

    def to_model(self) -> DatabaseFile:
        return DatabaseFile(manifold=self.manifold, entries=self._entries)

    def __contains__(self, phi: object) -> bool:
        return isinstance(phi, CohomologyClass) and phi.pair in self._index

    def __iter__(self) -> Iterator[FibrationEntry]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FibrationDatabase):
            return NotImplemented
        return self.manifold == other.manifold and self._entries == other._entries

    def __repr__(self) -> str:
        return (
            f"FibrationDatabase({self.manifold}, {len(self)} entries, "
            f"{len(self.full_entries)} with full data)"
        )


def load(path: str | Path) -> FibrationDatabase:
    """Read a database file and re-verify every entry."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        model = DatabaseFile.model_validate(raw)
    except OSError as e:
        raise MalformedDatabaseError(f"Cannot read database {path}: {e}") from e
    except (json.JSONDecodeError, ValidationError) as e:
        raise MalformedDatabaseError(f"Malformed database {path}: {e}") from e

    db = FibrationDatabase(model.entries, model.manifold)
    logger.debug(f"Loaded {len(db)} entries ({len(db.full_entries)} full) from {path}")
    return db


def save(db: FibrationDatabase, path: str | Path) -> None:
    payload = {
        "version": 1,
        "manifold": db.manifold,
        "entries": [entry.model_dump_file() for entry in db],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_shipped() -> FibrationDatabase:
    """The database bundled with the package (the canonical class and its neighbours)."""
    return load(SHIPPED_DATABASE)


def _primitive_cone_classes(max_a: int | None = None) -> Iterator[CohomologyClass]:
    a = 1
    while max_a is None or a <= max_a:
        for b in range(-(a - 1), a):
            if math.gcd(a, b) == 1:
                yield CohomologyClass(a=a, b=b)
        a += 1


def _entry_for(phi: CohomologyClass) -> FibrationEntry:
    return canonical_entry() if phi == CANONICAL_CLASS else metadata_entry(phi)


def generate_metadata_db(max_a: int) -> FibrationDatabase:
    """
    All primitive (a, b) with 1 <= a <= max_a and |b| < a.

    Only the canonical class carries full data. Entries are ordered by a,
    then b from -(a-1) upward.
    """
    if max_a < 1:
        raise FibernormValidationError(f"max_a must be >= 1, got {max_a}")
    db = FibrationDatabase(_entry_for(phi) for phi in _primitive_cone_classes(max_a))
    logger.debug(f"Generated metadata database with {len(db)} entries (max_a={max_a})")
    return db


def generate_sized_db(count: int) -> FibrationDatabase:
    """The first ``count`` entries of the generated enumeration."""
    if count < 1:
        raise FibernormValidationError(f"count must be >= 1, got {count}")
    classes = _primitive_cone_classes()
    return FibrationDatabase(_entry_for(next(classes)) for _ in range(count))
