"""Quantum channel models between Alice and Bob.

Spec strings: ``identity``, ``agwn:x=0.001,y=0.0001`` and
``per-mode:x=..,y=..;x=..,y=..`` (one entry per mode).
"""
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from coset_qkd.cv.states import AgwnParams
from coset_qkd.errors import ValidationError

IDENTITY = "identity"
AGWN = "agwn"
PER_MODE = "per-mode"


def _parse_noise(text: str) -> AgwnParams:
    values = {"x": 0.0, "y": 0.0}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip().lower()
        if not sep or key not in values:
            raise ValidationError(f"expected x=<value> or y=<value>, got {item!r}")
        try:
            values[key] = float(value)
        except ValueError:
            raise ValidationError(f"noise value {value!r} is not a number")
    return AgwnParams(values["x"], values["y"])


def _format_noise(noise: AgwnParams) -> str:
    return f"x={noise.x!r},y={noise.y!r}"


@dataclass(frozen=True)
class ChannelModel:
    kind: str
    noise: Tuple[AgwnParams, ...] = ()

    def __post_init__(self):
        if self.kind == IDENTITY and self.noise:
            raise ValidationError("the identity channel takes no noise parameters")
        if self.kind == AGWN and len(self.noise) != 1:
            raise ValidationError("agwn takes exactly one noise setting")
        if self.kind == PER_MODE and not self.noise:
            raise ValidationError("per-mode needs at least one noise setting")
        if self.kind not in (IDENTITY, AGWN, PER_MODE):
            raise ValidationError(f"unknown channel kind {self.kind!r}")

    @classmethod
    def identity(cls) -> "ChannelModel":
        return cls(IDENTITY)

    @classmethod
    def agwn(cls, x: float = 0.0, y: float = 0.0) -> "ChannelModel":
        return cls(AGWN, (AgwnParams(x, y),))

    @classmethod
    def per_mode(cls, noise: Sequence[AgwnParams]) -> "ChannelModel":
        return cls(PER_MODE, tuple(noise))

    @classmethod
    def parse(cls, text: str) -> "ChannelModel":
        kind, _, rest = text.strip().partition(":")
        kind = kind.strip().lower()
        if kind == IDENTITY:
            if rest.strip():
                raise ValidationError("the identity channel takes no parameters")
            return cls.identity()
        if kind == AGWN:
            return cls(AGWN, (_parse_noise(rest),))
        if kind == PER_MODE:
            return cls.per_mode([_parse_noise(part) for part in rest.split(";")])
        raise ValidationError(f"unknown channel {text!r}")

    def describe(self) -> str:
        """Spec string that parse() maps back to this channel."""
        if self.kind == IDENTITY:
            return IDENTITY
        return f"{self.kind}:" + ";".join(_format_noise(nz) for nz in self.noise)

    def noise_for(self, modes: Sequence[int], n: int) -> Union[AgwnParams, List[AgwnParams]]:
        """Noise acting on ``modes`` of an n-mode transmission."""
        if self.kind == IDENTITY:
            return AgwnParams()
        if self.kind == AGWN:
            return self.noise[0]
        if len(self.noise) != n:
            raise ValidationError(f"per-mode channel has {len(self.noise)} entries for {n} modes")
        return [self.noise[i] for i in modes]
