"""
Tests for key computation and the symmetric and public-key schemes.
"""

import json
import math

import pytest

from fibernorm.core.database import metadata_entry
from fibernorm.core.exceptions import (
    BudgetExceededError,
    DatabaseError,
    FibernormValidationError,
    MetadataOnlyEntryError,
    RecoveryFailureError,
    TranscriptError,
)
from fibernorm.core.mapping_torus import CANONICAL_TORUS
from fibernorm.core.protocol import (
    SeededPlatformOracle,
    alice_prepare,
    bob_recover,
    candidate_exponents,
    fiber_members,
    lmax,
    public_session,
    report_write,
    symmetric_session,
    transcript_read,
    transcript_write,
)
from fibernorm.models.classes import CohomologyClass
from fibernorm.models.protocol import ChannelMessage, SharedKey, Transcript

LOG_GOLDEN_SQUARE = math.log((3 + math.sqrt(5)) / 2)


class TestLmax:
    def test_zero_exponent(self, entry):
        assert lmax(entry, 0) == SharedKey(l_max=1, s_max="x", N=0)

    def test_first_exponent(self, entry):
        assert lmax(entry, 1) == SharedKey(l_max=7, s_max="y", N=1)

    def test_grows(self, entry):
        lengths = [lmax(entry, n).l_max for n in range(8)]
        assert lengths == sorted(lengths)
        assert lengths[7] > 2 * lengths[6]

    def test_negative(self, entry):
        with pytest.raises(FibernormValidationError):
            lmax(entry, -1)

    def test_metadata_entry(self):
        with pytest.raises(MetadataOnlyEntryError):
            lmax(metadata_entry(CohomologyClass(a=2, b=1)), 3)

    def test_key_prints_as_length(self, entry):
        assert str(lmax(entry, 1)) == "7"


class TestSymmetric:
    @pytest.mark.parametrize("n", [0, 1, 6])
    def test_keys_agree(self, entry, n):
        alice, bob, transcript = symmetric_session(entry, n)
        assert alice == bob
        assert transcript.N == n
        assert transcript.elements is None

    def test_needs_full_data(self):
        with pytest.raises(MetadataOnlyEntryError):
            symmetric_session(metadata_entry(CohomologyClass(a=2, b=1)), 2)


class TestAlice:
    def test_message_shape(self, entry):
        msg = alice_prepare(entry, 4, 10, seed=1)
        assert len(msg.elements) == 10
        assert msg.decoy_count == 7
        assert len(fiber_members(entry, msg)) == 3

    def test_decoys_are_outside_the_fiber(self, entry):
        msg = alice_prepare(entry, 3, 20, seed=2)
        values = [CANONICAL_TORUS.evaluate_class(entry.phi, e) for e in msg.elements]
        assert sum(1 for v in values if v == 0) == 3

    def test_literal_conjugates(self, entry):
        msg = alice_prepare(entry, 4, 5, seed=0, obfuscate=False)
        for s in "xyz":
            assert f"t^-4 {s} t^4" in msg.elements

    def test_obfuscated_conjugates_are_the_same_elements(self, entry):
        msg = alice_prepare(entry, 4, 5, seed=0)
        members = {CANONICAL_TORUS.normal_form(w) for w in fiber_members(entry, msg)}
        expected = {CANONICAL_TORUS.normal_form(f"t^-4 {s} t^4") for s in "xyz"}
        assert members == expected

    def test_seeded(self, entry):
        assert alice_prepare(entry, 5, 12, seed=9) == alice_prepare(entry, 5, 12, seed=9)
        assert alice_prepare(entry, 5, 12, seed=9) != alice_prepare(entry, 5, 12, seed=10)

    def test_needs_more_elements_than_generators(self, entry):
        with pytest.raises(FibernormValidationError):
            alice_prepare(entry, 2, 3, seed=0)

    def test_public_view_hides_decoy_count(self, entry):
        msg = alice_prepare(entry, 2, 6, seed=0)
        assert msg.public_view().decoy_count is None
        assert "decoy_count" not in msg.model_dump()


class TestBob:
    @pytest.mark.parametrize("n", range(1, 11))
    @pytest.mark.parametrize("decoys", [10, 50])
    def test_recovers_alice_key(self, entry, n, decoys):
        for seed in (0, 1, 2):
            alice = lmax(entry, n)
            msg = alice_prepare(entry, n, decoys, seed).public_view()
            assert bob_recover(entry, msg, 16) == alice

    @pytest.mark.parametrize("n", range(1, 11))
    @pytest.mark.parametrize("decoys", [10, 50])
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_recovered_exponent_is_unique(self, entry, n, decoys, seed):
        msg = alice_prepare(entry, n, decoys, seed).public_view()
        assert candidate_exponents(entry, msg, 16) == [n]

    def test_exponent_beyond_cap(self, entry):
        msg = alice_prepare(entry, 6, 10, seed=0)
        with pytest.raises(RecoveryFailureError):
            bob_recover(entry, msg, 5)

    def test_zero_exponent_is_not_searched(self, entry):
        msg = alice_prepare(entry, 0, 10, seed=0)
        with pytest.raises(RecoveryFailureError):
            bob_recover(entry, msg, 4)

    def test_oversized_element_stops_at_budget(self, entry):
        msg = ChannelMessage(elements=("t^-2 x^30000000 t^2",))
        with pytest.raises(BudgetExceededError) as exc:
            bob_recover(entry, msg, 4, max_letters=1000)
        assert exc.value.attempted == 30_000_002
        with pytest.raises(BudgetExceededError):
            fiber_members(entry, msg, max_letters=1000)

    def test_no_members(self, entry):
        msg = ChannelMessage(elements=("t x", "t^2 y^-1"))
        with pytest.raises(RecoveryFailureError):
            bob_recover(entry, msg, 4)


class TestPublicSession:
    def test_round_trip(self, small_db):
        session = public_session(small_db, SeededPlatformOracle(1, seed=4), 5, 10, seed=4)
        report = session.report
        assert report.keys_match
        assert report.phi == CohomologyClass(a=1, b=0)
        assert report.members == 3
        assert report.secret.length == 1
        assert report.alice.N == 5
        assert session.transcript.N is None
        assert len(session.transcript.elements) == 10

    def test_key_dwarfs_the_transcript(self, small_db):
        n = 12
        session = public_session(small_db, SeededPlatformOracle(1), n, 50, seed=0)
        key = session.report.bob
        assert session.report.keys_match
        assert key.l_max > 10 * session.transcript.message().letter_count
        assert LOG_GOLDEN_SQUARE - 0.03 <= math.log(key.l_max) / n <= LOG_GOLDEN_SQUARE + 0.15

    def test_class_missing_from_database(self, small_db):
        # |g| = 9 maps to (5, 4), beyond max_a = 4
        with pytest.raises(DatabaseError):
            public_session(small_db, SeededPlatformOracle(9), 3, 10, seed=0)

    def test_class_without_fiber_data(self, small_db):
        with pytest.raises(MetadataOnlyEntryError):
            public_session(small_db, SeededPlatformOracle(3), 3, 10, seed=0)

    def test_oracle_is_deterministic(self):
        assert SeededPlatformOracle(4, seed=1).share() == SeededPlatformOracle(4, seed=1).share()
        assert SeededPlatformOracle(4, seed=1).share() != SeededPlatformOracle(4, seed=2).share()


class TestFiles:
    def test_transcript_carries_no_private_data(self, small_db, tmp_path):
        session = public_session(small_db, SeededPlatformOracle(1), 3, 8, seed=1)
        transcript_path = tmp_path / "transcript.json"
        report_path = tmp_path / "report.json"
        transcript_write(session.transcript, transcript_path)
        report_write(session.report, report_path)

        published = json.loads(transcript_path.read_text())
        assert published["scheme"] == "public"
        assert published["N"] is None
        assert "decoy_count" not in transcript_path.read_text()
        assert "token" not in transcript_path.read_text()
        assert transcript_read(transcript_path) == session.transcript

        private = json.loads(report_path.read_text())
        assert private["alice"] == private["bob"]
        assert private["alice"]["N"] == 3

    def test_malformed_transcript(self, tmp_path):
        path = tmp_path / "transcript.json"
        path.write_text(json.dumps({"scheme": "public", "N": 3}))
        with pytest.raises(TranscriptError):
            transcript_read(path)
        with pytest.raises(TranscriptError):
            transcript_read(tmp_path / "absent.json")

    def test_transcript_payload_rules(self):
        with pytest.raises(ValueError):
            Transcript(scheme="symmetric", elements=("x",))
        with pytest.raises(ValueError):
            Transcript(scheme="symmetric", N=2).message()

    def test_letter_count(self):
        msg = ChannelMessage(elements=("t^-2 x t^2", "y^-3", "1"))
        assert msg.letter_count == 8
