"""Transcript persistence and replay.

A transcript file is JSON lines: one header record naming everything needed to
re-run the session, then one record per protocol message.
"""
import hashlib
import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from coset_qkd.errors import ValidationError
from coset_qkd.qkd.channel import ChannelModel
from coset_qkd.qkd.messages import message_from_record
from coset_qkd.qkd.params import ProtocolParams
from coset_qkd.qkd.session import SessionResult, run_session
from coset_qkd.rng import child_seed

logger = logging.getLogger(__name__)

HEADER_KIND = "header"


def make_header(params: ProtocolParams, channel: ChannelModel, seed: int,
                trial: Optional[int] = None) -> Dict[str, object]:
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ValidationError(f"transcripts need an integer seed, got {seed!r}")
    return {
        "kind": HEADER_KIND,
        "params": params.to_mapping(),
        "channel": channel.describe(),
        "seed": seed,
        "trial": trial,
    }


def session_seed(seed: int, trial: Optional[int]):
    """Seed passed to run_session; Monte-Carlo trial t runs on child_seed(seed, t)."""
    return seed if trial is None else child_seed(seed, trial)


def write_transcript(path: Path, header: Dict[str, object], result: SessionResult):
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps(record, sort_keys=True) for record in result.transcript_records()]
    Path(path).write_text("\n".join(lines) + "\n")


def read_transcript(path: Path) -> Tuple[Dict[str, object], List[Dict[str, str]]]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ValidationError(f"cannot read transcript {path}: {e}")
    try:
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as e:
        raise ValidationError(f"transcript {path} is not JSON lines: {e}")
    if not rows or not isinstance(rows[0], dict) or rows[0].get("kind") != HEADER_KIND:
        raise ValidationError(f"transcript {path} has no header record")
    header = rows[0]
    if not isinstance(header.get("params"), dict):
        raise ValidationError(f"transcript {path} header has no params mapping")
    if not isinstance(header.get("channel"), str):
        raise ValidationError(f"transcript {path} header has no channel")
    if not _is_int(header.get("seed")):
        raise ValidationError(f"transcript {path} header needs an integer seed, got {header.get('seed')!r}")
    if header.get("trial") is not None and not _is_int(header["trial"]):
        raise ValidationError(f"transcript {path} header has a non-integer trial {header['trial']!r}")
    return header, rows[1:]


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass
class ReplayReport:
    path: Path
    matches: bool
    recorded: int                         # records in the file
    replayed: int                         # records produced by the re-run
    first_divergence: Optional[int]       # record index, None when identical
    accepted: bool


def replay_transcript(path: Path) -> ReplayReport:
    """Re-run the session named in the header and compare record by record."""
    header, records = read_transcript(path)
    for record in records:
        message_from_record(record)
    params = ProtocolParams.from_mapping(header["params"])
    channel = ChannelModel.parse(header["channel"])
    result = run_session(params, channel, session_seed(header["seed"], header.get("trial")))
    replayed = result.transcript_records()
    divergence = None
    for i in range(max(len(records), len(replayed))):
        if i >= len(records) or i >= len(replayed) or records[i] != replayed[i]:
            divergence = i
            break
    if divergence is not None:
        logger.warning(f"transcript {path} diverges at record {divergence}")
    return ReplayReport(Path(path), divergence is None, len(records), len(replayed),
                        divergence, result.accepted)


@dataclass
class TranscriptEntry:
    """One stored transcript."""
    transcript_id: str        # e.g. "0003_seed42_1a2b3c4d"
    path: Path
    seed: int
    trial: Optional[int]
    accepted: bool
    records: int
    timestamp: float = 0.0


class TranscriptStore:
    """Keeps transcripts under <workdir>/transcripts with a manifest.json index."""

    def __init__(self, workdir: Path):
        self.workdir = Path(workdir) / "transcripts"
        self.workdir.mkdir(parents=True, exist_ok=True)
        self._entries: Dict[str, TranscriptEntry] = {}
        self._index = 0
        self._manifest_file = self.workdir / "manifest.json"
        self._load_manifest()
        logger.debug(f"TranscriptStore initialized at {self.workdir}")

    def save(self, params: ProtocolParams, channel: ChannelModel, seed: int,
             result: SessionResult, trial: Optional[int] = None) -> TranscriptEntry:
        header = make_header(params, channel, seed, trial)
        self._index += 1
        transcript_id = self._make_id(self._index, header)
        path = self.workdir / f"{transcript_id}.jsonl"
        write_transcript(path, header, result)
        entry = TranscriptEntry(transcript_id, path, seed, trial, result.accepted,
                                len(result.transcript), time.time())
        self._entries[transcript_id] = entry
        self._save_manifest()
        logger.debug(f"Saved transcript {transcript_id} -> {path}")
        return entry

    def get(self, transcript_id: str) -> Optional[TranscriptEntry]:
        return self._entries.get(transcript_id)

    def entries(self) -> List[TranscriptEntry]:
        return sorted(self._entries.values(), key=lambda e: e.transcript_id)

    def _make_id(self, index: int, header: Dict[str, object]) -> str:
        digest = hashlib.md5(json.dumps(header, sort_keys=True).encode()).hexdigest()[:8]
        return f"{index:04d}_seed{header['seed']}_{digest}"

    def _load_manifest(self):
        if not self._manifest_file.exists():
            return
        try:
            data = json.loads(self._manifest_file.read_text())
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Failed to load manifest: {e}")
            return
        for tid, info in data.items():
            path = self.workdir / info.get("file", "")
            if not info.get("file") or not path.exists():
                logger.warning(f"Manifest entry {tid} points to missing file {path}")
                continue
            self._entries[tid] = TranscriptEntry(
                transcript_id=tid,
                path=path,
                seed=info.get("seed", 0),
                trial=info.get("trial"),
                accepted=info.get("accepted", False),
                records=info.get("records", 0),
                timestamp=info.get("timestamp", 0.0),
            )
            try:
                self._index = max(self._index, int(tid.split("_")[0]))
            except ValueError:
                pass
        logger.info(f"Loaded {len(self._entries)} transcripts from manifest")

    def _save_manifest(self):
        data = {
            tid: {
                "file": e.path.name,
                "seed": e.seed,
                "trial": e.trial,
                "accepted": e.accepted,
                "records": e.records,
                "timestamp": e.timestamp,
            }
            for tid, e in self._entries.items()
        }
        try:
            self._manifest_file.write_text(json.dumps(data, indent=2))
        except OSError as e:
            logger.error(f"Failed to write manifest: {e}")
