"""Evaluated bound records."""
from dataclasses import dataclass, field
from typing import Dict, List

TRIVIAL_FLAG = "trivial bound"


@dataclass
class BoundReport:
    """One evaluated game bound.

    Bounds above 1 are kept raw and carry the ``trivial bound`` flag; callers
    that need a probability clamp explicitly.
    """
    game: str                  # "u1", "complex", "rn", ...
    params: Dict[str, object]
    bound: float
    flags: List[str] = field(default_factory=list)
    details: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.bound > 1.0 and TRIVIAL_FLAG not in self.flags:
            self.flags.append(TRIVIAL_FLAG)

    @property
    def trivial(self) -> bool:
        return TRIVIAL_FLAG in self.flags

    @property
    def clamped(self) -> float:
        return min(1.0, self.bound)

    def to_row(self) -> Dict[str, object]:
        params = ";".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return {
            "game": self.game,
            "params": params,
            "bound": self.bound,
            "flags": "|".join(self.flags),
        }


def _fmt(value) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(_fmt(v) for v in value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)
