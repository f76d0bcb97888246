"""Classical messages of a protocol session and their byte codec.

Each message serializes to a transcript record ``{stage, sender, type, payload}``
with the payload as hex. Bit strings travel as a 4-byte length followed by the
packed bits; index lists as a 4-byte count followed by big-endian uint32 values.
"""
import struct
from dataclasses import dataclass
from typing import ClassVar, Dict, Tuple, Type

import numpy as np

from coset_qkd.errors import ValidationError

PARAMETER_ESTIMATION = "parameter_estimation"
ERROR_CORRECTION = "error_correction"
RECONCILIATION = "reconciliation"
PRIVACY_AMPLIFICATION = "privacy_amplification"
STAGES = (PARAMETER_ESTIMATION, ERROR_CORRECTION, RECONCILIATION, PRIVACY_AMPLIFICATION)

ALICE = "alice"
BOB = "bob"


def _pack_bits(bits) -> bytes:
    bits = np.asarray(bits, dtype=np.uint8)
    return struct.pack(">I", len(bits)) + np.packbits(bits).tobytes()


def _pack_indices(indices) -> bytes:
    return struct.pack(">I", len(indices)) + np.asarray(indices, dtype=">u4").tobytes()


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def _take(self, count: int) -> bytes:
        if self.offset + count > len(self.data):
            raise ValidationError("truncated message payload")
        chunk = self.data[self.offset:self.offset + count]
        self.offset += count
        return chunk

    def length(self) -> int:
        return struct.unpack(">I", self._take(4))[0]

    def bits(self) -> Tuple[int, ...]:
        count = self.length()
        packed = np.frombuffer(self._take((count + 7) // 8), dtype=np.uint8)
        return tuple(int(b) for b in np.unpackbits(packed)[:count])

    def indices(self) -> Tuple[int, ...]:
        count = self.length()
        return tuple(int(i) for i in np.frombuffer(self._take(4 * count), dtype=">u4"))

    def done(self):
        if self.offset != len(self.data):
            raise ValidationError("trailing bytes in message payload")


@dataclass(frozen=True)
class Message:
    TYPE: ClassVar[str] = ""
    STAGE: ClassVar[str] = ""
    SENDER: ClassVar[str] = ALICE

    @property
    def stage(self) -> str:
        return self.STAGE

    def payload(self) -> bytes:
        return b""

    @classmethod
    def from_payload(cls, data: bytes) -> "Message":
        _Reader(data).done()
        return cls()

    def to_record(self) -> Dict[str, str]:
        return {"stage": self.stage, "sender": self.SENDER, "type": self.TYPE,
                "payload": self.payload().hex()}


@dataclass(frozen=True)
class Ack(Message):
    TYPE: ClassVar[str] = "ack"
    STAGE: ClassVar[str] = PARAMETER_ESTIMATION
    SENDER: ClassVar[str] = BOB


@dataclass(frozen=True)
class BasisAndPE(Message):
    """Subspace bitmask over modes, the estimation subset and its position bins."""
    TYPE: ClassVar[str] = "basis_pe"
    STAGE: ClassVar[str] = PARAMETER_ESTIMATION
    subspace_mask: Tuple[int, ...]
    pe_subset: Tuple[int, ...]
    pe_bits: Tuple[int, ...]

    def payload(self) -> bytes:
        return _pack_bits(self.subspace_mask) + _pack_indices(self.pe_subset) + _pack_bits(self.pe_bits)

    @classmethod
    def from_payload(cls, data: bytes) -> "BasisAndPE":
        reader = _Reader(data)
        message = cls(reader.bits(), reader.indices(), reader.bits())
        reader.done()
        return message


@dataclass(frozen=True)
class Syndrome(Message):
    TYPE: ClassVar[str] = "syndrome"
    STAGE: ClassVar[str] = ERROR_CORRECTION
    bits: Tuple[int, ...]

    def payload(self) -> bytes:
        return _pack_bits(self.bits)

    @classmethod
    def from_payload(cls, data: bytes) -> "Syndrome":
        reader = _Reader(data)
        message = cls(reader.bits())
        reader.done()
        return message


@dataclass(frozen=True)
class Reconcile(Message):
    TYPE: ClassVar[str] = "reconcile"
    STAGE: ClassVar[str] = RECONCILIATION
    subset: Tuple[int, ...]
    bits: Tuple[int, ...]

    def payload(self) -> bytes:
        return _pack_indices(self.subset) + _pack_bits(self.bits)

    @classmethod
    def from_payload(cls, data: bytes) -> "Reconcile":
        reader = _Reader(data)
        message = cls(reader.indices(), reader.bits())
        reader.done()
        return message


@dataclass(frozen=True)
class HashSeed(Message):
    TYPE: ClassVar[str] = "hash_seed"
    STAGE: ClassVar[str] = PRIVACY_AMPLIFICATION
    diag: Tuple[int, ...]

    def payload(self) -> bytes:
        return _pack_bits(self.diag)

    @classmethod
    def from_payload(cls, data: bytes) -> "HashSeed":
        reader = _Reader(data)
        message = cls(reader.bits())
        reader.done()
        return message


@dataclass(frozen=True)
class Abort(Message):
    TYPE: ClassVar[str] = "abort"
    SENDER: ClassVar[str] = BOB
    at: str

    @property
    def stage(self) -> str:
        return self.at

    def payload(self) -> bytes:
        return self.at.encode("utf-8")

    @classmethod
    def from_payload(cls, data: bytes) -> "Abort":
        try:
            return cls(data.decode("utf-8"))
        except UnicodeDecodeError as e:
            raise ValidationError(f"abort stage is not UTF-8: {e}")


MESSAGE_TYPES: Dict[str, Type[Message]] = {
    cls.TYPE: cls for cls in (Ack, BasisAndPE, Syndrome, Reconcile, HashSeed, Abort)
}


def message_from_record(record: Dict[str, str]) -> Message:
    try:
        cls = MESSAGE_TYPES[record["type"]]
        data = bytes.fromhex(record["payload"])
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(f"malformed transcript record {record!r}: {e}")
    message = cls.from_payload(data)
    if message.to_record() != dict(record):
        raise ValidationError(f"transcript record does not round-trip: {record!r}")
    return message
