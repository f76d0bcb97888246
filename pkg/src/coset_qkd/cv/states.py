"""Parameter records for squeezed coset states and the AGWN channel."""
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from coset_qkd.errors import ValidationError
from coset_qkd.rng import SeedLike, as_generator


def check_damping(a: float, b: float):
    if not (0.0 < a < b and math.isfinite(b)):
        raise ValidationError(f"damping parameters need b > a > 0, got a={a}, b={b}")


@dataclass(frozen=True)
class SqueezedMode:
    """|a, x0, p0⟩: Gaussian with position variance 1/(4a)."""
    a: float
    x0: float = 0.0
    p0: float = 0.0

    def __post_init__(self):
        if not self.a > 0:
            raise ValidationError(f"squeezing parameter must be positive, got {self.a}")

    @property
    def position_variance(self) -> float:
        return 1.0 / (4.0 * self.a)

    @property
    def momentum_variance(self) -> float:
        return self.a / (4.0 * math.pi ** 2)


@dataclass(frozen=True)
class RegisterSubspace:
    """Span of the coordinate modes in I, with |I| = n/2."""
    n: int
    I: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValidationError(f"mode count must be even and positive, got {self.n}")
        indices = tuple(sorted(int(i) for i in self.I))
        if len(set(indices)) != self.n // 2:
            raise ValidationError(f"I must hold {self.n // 2} distinct indices, got {len(set(indices))}")
        if indices[0] < 0 or indices[-1] >= self.n:
            raise ValidationError(f"indices must lie in [0, {self.n})")
        object.__setattr__(self, "I", indices)

    @classmethod
    def random(cls, n: int, seed: SeedLike) -> "RegisterSubspace":
        rng = as_generator(seed)
        return cls(n, tuple(rng.choice(n, size=n // 2, replace=False)))

    @property
    def complement(self) -> Tuple[int, ...]:
        members = set(self.I)
        return tuple(i for i in range(self.n) if i not in members)

    def mask(self) -> np.ndarray:
        """Boolean mask over modes, True on I."""
        m = np.zeros(self.n, dtype=bool)
        m[list(self.I)] = True
        return m


@dataclass(frozen=True, eq=False)
class DampedCosetState:
    """Damped coset state: positions q on the complement of I, momenta p on I."""
    subspace: RegisterSubspace
    q: np.ndarray
    p: np.ndarray
    a: float
    b: float

    def __post_init__(self):
        check_damping(self.a, self.b)
        half = self.subspace.n // 2
        if np.shape(self.q) != (half,) or np.shape(self.p) != (half,):
            raise ValidationError(f"q and p must each hold {half} values")

    def mode_parameters(self) -> List[SqueezedMode]:
        """Per-mode product decomposition of the state."""
        a, b = self.a, self.b
        modes: List[SqueezedMode] = [None] * self.subspace.n
        for i, q in zip(self.subspace.complement, self.q):
            modes[i] = SqueezedMode(b, float(q), 0.0)
        for i, p in zip(self.subspace.I, self.p):
            modes[i] = SqueezedMode(a * b / (a + b), 0.0, -b * float(p) / (a + b))
        return modes


@dataclass(frozen=True)
class AgwnParams:
    """Additive Gaussian white noise; the displacements have variances x²/2 and y²/2."""
    x: float = 0.0
    y: float = 0.0

    def __post_init__(self):
        if not (self.x >= 0 and self.y >= 0):
            raise ValidationError(f"noise scales must be nonnegative, got x={self.x}, y={self.y}")

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.y == 0
