"""Homodyne outcome statistics for damped coset states, with optional AGWN."""
import math
from typing import Sequence, Union

import numpy as np

from coset_qkd.cv.states import AgwnParams, check_damping
from coset_qkd.errors import ValidationError
from coset_qkd.rng import SeedLike, as_generator

POSITION = "position"
MOMENTUM = "momentum"


def outcome_distribution(kind: str, a: float, b: float):
    """(mean factor, variance) of the noiseless outcome for a unit true value."""
    check_damping(a, b)
    if kind == POSITION:
        return 1.0, 1.0 / (4.0 * b)
    if kind == MOMENTUM:
        return -1.0 / (1.0 + a / b), a * b / (4.0 * math.pi ** 2 * (a + b))
    raise ValidationError(f"measurement kind must be position or momentum, got {kind!r}")


def _noise_scales(kind: str, noise, shape):
    if isinstance(noise, AgwnParams):
        return noise.x if kind == POSITION else noise.y
    scales = np.array([nz.x if kind == POSITION else nz.y for nz in noise], dtype=float)
    if scales.shape != shape:
        raise ValidationError(f"need one noise setting per mode, got {len(scales)} for shape {shape}")
    return scales


def homodyne_measure(kind: str, true_val, a: float, b: float,
                     noise: Union[AgwnParams, Sequence[AgwnParams]], seed: SeedLike):
    """Simulated homodyne outcome(s) for position or momentum.

    ``noise`` is one channel setting for every mode or a sequence with one per mode.

    The noise draw is taken even when the channel is the identity, so a zero
    noise channel reproduces the noiseless outcomes for the same seed.
    """
    factor, variance = outcome_distribution(kind, a, b)
    rng = as_generator(seed)
    true_val = np.asarray(true_val, dtype=float)
    scale = _noise_scales(kind, noise, true_val.shape)
    signal = rng.standard_normal(true_val.shape)
    displacement = rng.standard_normal(true_val.shape)
    outcome = factor * true_val + math.sqrt(variance) * signal + (scale / math.sqrt(2.0)) * displacement
    return float(outcome) if outcome.ndim == 0 else outcome


def rescale_momentum(outcome, a: float, b: float):
    """−(1 + a/b)·outcome, the unbiased estimate of the true momentum."""
    check_damping(a, b)
    result = -(1.0 + a / b) * np.asarray(outcome, dtype=float)
    return float(result) if result.ndim == 0 else result


def expected_mismatch_position(a: float, b: float, delta: float, x: float = 0.0) -> float:
    """Bound on the expected position bin distance per mode."""
    check_damping(a, b)
    if not delta > 0 or x < 0:
        raise ValidationError("need delta > 0 and x >= 0")
    return 6.0 * math.sqrt(1.0 + 2.0 * b * x * x) / (math.sqrt(2.0 * math.pi * b) * delta)


def expected_mismatch_momentum(a: float, b: float, epsilon: float, y: float = 0.0) -> float:
    """Bound on the expected momentum bin distance per mode."""
    check_damping(a, b)
    if not epsilon > 0 or y < 0:
        raise ValidationError("need epsilon > 0 and y >= 0")
    base = 3.0 * math.sqrt(a * (1.0 + a / b)) / (math.pi ** 1.5 * epsilon)
    return base * math.sqrt(1.0 + 2.0 * math.pi ** 2 * (1.0 / a + 1.0 / b) * y * y)
