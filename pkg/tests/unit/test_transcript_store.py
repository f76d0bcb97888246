"""Test transcript files, replay and the TranscriptStore index."""
import json

import pytest

from coset_qkd.errors import ValidationError
from coset_qkd.qkd import (
    ChannelModel, TranscriptStore, make_header, read_transcript, replay_transcript, run_session,
    write_transcript,
)
from coset_qkd.rng import child_seed


@pytest.fixture(scope="module")
def identity_run(desk16):
    return run_session(desk16, ChannelModel.identity(), 42)


class TestTranscriptFiles:
    """Test suite for writing, reading and replaying transcripts."""

    def test_header(self, desk16):
        """The header names params, channel, seed and trial."""
        header = make_header(desk16, ChannelModel.agwn(0.1, 0.0), 42, trial=3)
        assert header["kind"] == "header"
        assert header["seed"] == 42
        assert header["trial"] == 3
        assert ChannelModel.parse(header["channel"]) == ChannelModel.agwn(0.1, 0.0)

    def test_integer_seed_required(self, desk16):
        """Seed sequences and bools cannot be written to a header."""
        with pytest.raises(ValidationError):
            make_header(desk16, ChannelModel.identity(), child_seed(1, 0))
        with pytest.raises(ValidationError):
            make_header(desk16, ChannelModel.identity(), True)

    def test_write_and_read(self, tmp_path, desk16, identity_run):
        """One header line, then one record per message."""
        path = tmp_path / "run.jsonl"
        write_transcript(path, make_header(desk16, ChannelModel.identity(), 42), identity_run)
        header, records = read_transcript(path)
        assert header["seed"] == 42
        assert records == identity_run.transcript_records()
        assert len(path.read_text().splitlines()) == len(records) + 1

    def test_replay_matches(self, tmp_path, desk16, identity_run):
        """Replaying an untouched transcript reproduces every record."""
        path = tmp_path / "run.jsonl"
        write_transcript(path, make_header(desk16, ChannelModel.identity(), 42), identity_run)
        report = replay_transcript(path)
        assert report.matches
        assert report.first_divergence is None
        assert report.recorded == report.replayed == len(identity_run.transcript)
        assert report.accepted == identity_run.accepted

    def test_replay_trial_seed(self, tmp_path, desk16):
        """A trial index in the header replays on child_seed(seed, trial)."""
        result = run_session(desk16, ChannelModel.identity(), child_seed(9, 4))
        path = tmp_path / "trial.jsonl"
        write_transcript(path, make_header(desk16, ChannelModel.identity(), 9, trial=4), result)
        assert replay_transcript(path).matches

    def test_replay_detects_truncation(self, tmp_path, desk16, identity_run):
        """Dropping the last record is reported at that index."""
        path = tmp_path / "run.jsonl"
        write_transcript(path, make_header(desk16, ChannelModel.identity(), 42), identity_run)
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[:-1]) + "\n")
        report = replay_transcript(path)
        assert not report.matches
        assert report.first_divergence == len(lines) - 2
        assert report.recorded == report.replayed - 1

    def test_replay_detects_other_seed(self, tmp_path, desk16, identity_run):
        """A header naming another seed does not reproduce the records."""
        path = tmp_path / "run.jsonl"
        write_transcript(path, make_header(desk16, ChannelModel.identity(), 43), identity_run)
        assert not replay_transcript(path).matches

    def test_bad_files(self, tmp_path):
        """Missing headers, broken JSON and missing files are validation errors."""
        no_header = tmp_path / "a.jsonl"
        no_header.write_text(json.dumps({"kind": "record"}) + "\n")
        broken = tmp_path / "b.jsonl"
        broken.write_text("{not json\n")
        for path in (no_header, broken, tmp_path / "missing.jsonl"):
            with pytest.raises(ValidationError):
                read_transcript(path)

    @pytest.mark.parametrize("drop,replace", [
        ("params", {}),
        ("channel", {}),
        ("seed", {}),
        (None, {"seed": "42"}),
        (None, {"trial": 1.5}),
        (None, {"params": ["n=16"]}),
    ])
    def test_malformed_header(self, tmp_path, desk16, identity_run, drop, replace):
        """Headers missing or mistyping params, channel, seed or trial are rejected before replay."""
        header = make_header(desk16, ChannelModel.identity(), 42)
        if drop:
            del header[drop]
        header.update(replace)
        path = tmp_path / "bad_header.jsonl"
        write_transcript(path, header, identity_run)
        with pytest.raises(ValidationError):
            read_transcript(path)
        with pytest.raises(ValidationError):
            replay_transcript(path)

    def test_corrupt_abort_record(self, tmp_path, desk16, identity_run):
        """A non-UTF-8 abort record makes replay fail with a validation error."""
        path = tmp_path / "session.jsonl"
        write_transcript(path, make_header(desk16, ChannelModel.identity(), 42), identity_run)
        lines = path.read_text().splitlines()
        bad = {"stage": "reconciliation", "sender": "bob", "type": "abort", "payload": "ff"}
        path.write_text("\n".join(lines + [json.dumps(bad)]) + "\n")
        with pytest.raises(ValidationError):
            replay_transcript(path)


class TestTranscriptStore:
    """Test suite for TranscriptStore."""

    def test_save(self, temp_workdir, desk16, identity_run):
        """Saving writes the file and returns its entry."""
        store = TranscriptStore(temp_workdir)
        entry = store.save(desk16, ChannelModel.identity(), 42, identity_run)
        assert entry.path.exists()
        assert entry.path.parent == temp_workdir / "transcripts"
        assert entry.seed == 42
        assert entry.trial is None
        assert entry.accepted == identity_run.accepted
        assert entry.records == len(identity_run.transcript)

    def test_id_format(self, temp_workdir, desk16, identity_run):
        """Ids are a 4-digit index, the seed and a header digest."""
        store = TranscriptStore(temp_workdir)
        entry = store.save(desk16, ChannelModel.identity(), 42, identity_run)
        index, seed, digest = entry.transcript_id.split("_")
        assert index == "0001"
        assert seed == "seed42"
        assert len(digest) == 8
        assert store.get(entry.transcript_id) == entry

    def test_get_missing(self, temp_workdir):
        """Unknown ids return None."""
        assert TranscriptStore(temp_workdir).get("0009_seed1_deadbeef") is None

    def test_manifest_reload(self, temp_workdir, desk16, identity_run):
        """A new store reads the manifest and continues the numbering."""
        first = TranscriptStore(temp_workdir)
        saved = first.save(desk16, ChannelModel.identity(), 42, identity_run)
        manifest = json.loads((temp_workdir / "transcripts" / "manifest.json").read_text())
        assert saved.transcript_id in manifest

        second = TranscriptStore(temp_workdir)
        assert [e.transcript_id for e in second.entries()] == [saved.transcript_id]
        entry = second.save(desk16, ChannelModel.identity(), 7, identity_run, trial=1)
        assert entry.transcript_id.startswith("0002_seed7_")
        assert [e.transcript_id for e in second.entries()] == [saved.transcript_id, entry.transcript_id]

    def test_missing_file_skipped(self, temp_workdir, desk16, identity_run):
        """Manifest entries whose file is gone are dropped on load."""
        store = TranscriptStore(temp_workdir)
        entry = store.save(desk16, ChannelModel.identity(), 42, identity_run)
        entry.path.unlink()
        assert TranscriptStore(temp_workdir).entries() == []

    def test_stored_file_replays(self, temp_workdir, desk16, identity_run):
        """Stored transcripts are ordinary replayable files."""
        entry = TranscriptStore(temp_workdir).save(desk16, ChannelModel.identity(), 42, identity_run)
        assert replay_transcript(entry.path).matches
