"""
Tests for the keymap and the fibration database (validation, files, generation).
"""

import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fibernorm.core.database import (
    CANONICAL_CLASS,
    FibrationDatabase,
    canonical_entry,
    entry_automorphism,
    generate_metadata_db,
    generate_sized_db,
    generator_words,
    keymap,
    keymap_denominator,
    load,
    metadata_entry,
    require_full_data,
    save,
    stable_word,
    validate_entry,
)
from fibernorm.core.automorphisms import PSI, PSI_INVERSE
from fibernorm.core.exceptions import (
    DatabaseInvariantError,
    FibernormValidationError,
    MalformedDatabaseError,
    MetadataOnlyEntryError,
)
from fibernorm.core.norm import in_cone_over_F, is_primitive
from fibernorm.models.classes import CohomologyClass
from fibernorm.models.fibrations import (
    AutomorphismData,
    FibrationEntry,
    FullFiberData,
    PlatformSecret,
)


def phi(a: int, b: int) -> CohomologyClass:
    return CohomologyClass(a=a, b=b)


class TestKeymap:
    @pytest.mark.parametrize("length,expected,d", [
        (1, (1, 0), 2),
        (2, (3, 1), 6),
        (3, (2, 1), 4),
        (5, (3, 2), 6),
    ])
    def test_small_lengths(self, length, expected, d):
        assert keymap(length).pair == expected
        assert keymap_denominator(length) == d

    def test_platform_secret(self):
        secret = PlatformSecret.from_bytes(b"abc", length=3)
        assert keymap(secret) == phi(2, 1)
        assert len(secret.token) == 64

    def test_secret_length_defaults_to_bytes(self):
        assert PlatformSecret.from_bytes(b"\x00\x01").length == 2

    def test_empty_secret(self):
        with pytest.raises(FibernormValidationError):
            keymap(0)

    def test_all_lengths_up_to_ten_thousand(self):
        for length in range(1, 10_001):
            cls = keymap(length)
            d = keymap_denominator(length)
            assert is_primitive(cls)
            assert in_cone_over_F(cls)
            assert d <= math.lcm(2, length + 1)
            assert 2 * cls.a == d

    @given(st.integers(min_value=1, max_value=10**9))
    def test_class_is_on_the_ray(self, length):
        cls = keymap(length)
        # b / a == (L - 1) / (L + 1)
        assert cls.b * (length + 1) == cls.a * (length - 1)


class TestEntries:
    def test_canonical_entry(self, entry):
        assert entry.phi == CANONICAL_CLASS
        assert entry.rank == 3
        assert abs(entry.stretch - 2.618033988749895) < 1e-9
        assert entry.has_full_data
        validate_entry(entry)

    def test_entry_automorphism(self, entry):
        automorphism = entry_automorphism(entry)
        assert automorphism == PSI
        assert automorphism.invert() == PSI_INVERSE

    def test_stable_and_generator_words(self, entry):
        assert str(stable_word(entry)) == "t"
        assert [str(w) for w in generator_words(entry).values()] == ["x", "y", "z"]

    def test_metadata_entry(self):
        entry = metadata_entry(phi(2, 1))
        assert entry.rank == 5
        assert abs(entry.stretch - 1.722083805739) < 1e-9
        with pytest.raises(MetadataOnlyEntryError):
            require_full_data(entry)

    def test_wrong_rank(self):
        entry = FibrationEntry(phi=phi(2, 1), rank=4, stretch=1.7220838)
        with pytest.raises(DatabaseInvariantError):
            validate_entry(entry)

    def test_wrong_stretch(self):
        entry = FibrationEntry(phi=phi(2, 1), rank=5, stretch=1.73)
        with pytest.raises(DatabaseInvariantError):
            validate_entry(entry)

    @pytest.mark.parametrize("a,b", [(2, 0), (1, 1), (-1, 0)])
    def test_class_outside_primitive_cone(self, a, b):
        entry = FibrationEntry(phi=phi(a, b), rank=3, stretch=2.618033988749895)
        with pytest.raises(DatabaseInvariantError):
            validate_entry(entry)

    def test_braid_must_match_images(self, entry):
        data = entry.full_data.model_copy(update={
            "automorphism": AutomorphismData(images=entry.full_data.automorphism.images, braid=(2, -1)),
        })
        broken = entry.model_copy(update={"full_data": data})
        with pytest.raises(DatabaseInvariantError):
            validate_entry(broken)

    def test_stable_letter_must_evaluate_to_one(self, entry):
        data = entry.full_data.model_copy(update={"stable_letter": "t^2"})
        with pytest.raises(DatabaseInvariantError):
            validate_entry(entry.model_copy(update={"full_data": data}))

    def test_generators_must_lie_in_the_fiber(self, entry):
        data = entry.full_data.model_copy(
            update={"generator_words": {"x": "t x", "y": "y", "z": "z"}}
        )
        with pytest.raises(DatabaseInvariantError):
            validate_entry(entry.model_copy(update={"full_data": data}))

    def test_inverse_images_instead_of_braid(self, entry):
        data = FullFiberData(
            generators=("x", "y", "z"),
            automorphism=AutomorphismData(
                images={g: str(PSI.image(g)) for g in "xyz"},
                inverse_images={g: str(PSI_INVERSE.image(g)) for g in "xyz"},
            ),
            stable_letter="t",
        )
        validate_entry(entry.model_copy(update={"full_data": data}))

    def test_phi_accepts_a_pair(self):
        entry = FibrationEntry.model_validate({"phi": [2, -1], "rank": 5, "stretch": 1.7220838})
        assert entry.phi == phi(2, -1)
        assert entry.model_dump_file()["phi"] == [2, -1]


class TestDatabase:
    def test_shipped(self, shipped_db):
        assert len(shipped_db) == 3
        assert [e.phi for e in shipped_db.full_entries] == [CANONICAL_CLASS]
        assert phi(2, 1) in shipped_db
        assert shipped_db.lookup(phi(3, 1)) is None

    def test_generate(self, small_db):
        pairs = [e.phi.pair for e in small_db]
        assert pairs == [(1, 0), (2, -1), (2, 1), (3, -2), (3, -1), (3, 1), (3, 2),
                         (4, -3), (4, -1), (4, 1), (4, 3)]
        assert len(small_db.full_entries) == 1

    def test_generated_entries_validate(self):
        db = generate_metadata_db(12)
        for entry in db:
            validate_entry(entry)

    def test_sized(self):
        db = generate_sized_db(5)
        assert len(db) == 5
        assert db.entries[-1].phi == phi(3, -1)
        with pytest.raises(FibernormValidationError):
            generate_sized_db(0)

    def test_without(self, small_db):
        smaller = small_db.without(CANONICAL_CLASS)
        assert CANONICAL_CLASS not in smaller
        assert len(smaller) == len(small_db) - 1
        assert not smaller.full_entries

    def test_duplicates_rejected(self, entry):
        with pytest.raises(DatabaseInvariantError):
            FibrationDatabase([entry, entry])

    def test_save_and_load(self, small_db, tmp_path):
        path = tmp_path / "db.json"
        save(small_db, path)
        raw = json.loads(path.read_text())
        assert raw["version"] == 1
        assert raw["entries"][0]["phi"] == [1, 0]
        assert raw["entries"][1]["full_data"] is None
        assert load(path) == small_db

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "db.json"
        path.write_text("{not json")
        with pytest.raises(MalformedDatabaseError):
            load(path)

    def test_schema_violation(self, tmp_path):
        path = tmp_path / "db.json"
        path.write_text(json.dumps({"version": 2, "entries": []}))
        with pytest.raises(MalformedDatabaseError):
            load(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(MalformedDatabaseError):
            load(tmp_path / "absent.json")

    def test_invariant_violation_on_load(self, tmp_path):
        path = tmp_path / "db.json"
        path.write_text(json.dumps({
            "version": 1,
            "entries": [{"phi": [2, 1], "rank": 5, "stretch": 2.0, "full_data": None}],
        }))
        with pytest.raises(DatabaseInvariantError):
            load(path)
