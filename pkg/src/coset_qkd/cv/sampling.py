"""Sampling coset parameters from the damped-state distribution.

The density e^{−2a‖q‖² − (2π²/(a+b))‖p‖²} factorizes into independent normals,
so resampling the whole vector until every coordinate is in range is the same
as truncating each coordinate on its own.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from coset_qkd.config import Config
from coset_qkd.cv.states import RegisterSubspace, check_damping
from coset_qkd.errors import ResourceError, ValidationError
from coset_qkd.rng import SeedLike, as_generator

logger = logging.getLogger(__name__)

MAX_BATCH = 1 << 22


@dataclass(frozen=True, eq=False)
class CosetSample:
    q: np.ndarray
    p: np.ndarray
    resamples: int     # rejected draws across both vectors


def position_sigma(a: float) -> float:
    return math.sqrt(1.0 / (4.0 * a))


def momentum_sigma(a: float, b: float) -> float:
    return math.sqrt((a + b) / (4.0 * math.pi ** 2))


def truncated_normal(rng: np.random.Generator, sigma: float, cut: float, size: int):
    """Draw ``size`` normals conditioned on |value| < cut; return (values, rejected)."""
    if not cut > 0:
        raise ValidationError(f"cutoff must be positive, got {cut}")
    acceptance = 2.0 * norm.cdf(cut / sigma) - 1.0
    if acceptance < Config.MIN_ACCEPTANCE:
        raise ResourceError(
            f"acceptance {acceptance:.3g} below {Config.MIN_ACCEPTANCE:g} (sigma={sigma:.4g}, cut={cut:.4g})")
    out = np.empty(size)
    filled = rejected = 0
    for _ in range(Config.MAX_RESAMPLE_ROUNDS):
        need = size - filled
        if need == 0:
            return out, rejected
        batch = min(MAX_BATCH, int(math.ceil(need / acceptance * 1.2)) + 16)
        draws = rng.normal(0.0, sigma, size=batch)
        ok = np.flatnonzero(np.abs(draws) < cut)[:need]
        if len(ok) == need:
            # draws beyond the last accepted one are never looked at
            rejected += int(ok[-1]) + 1 - need
        else:
            rejected += batch - len(ok)
        out[filled:filled + len(ok)] = draws[ok]
        filled += len(ok)
    if filled < size:
        raise ResourceError(f"resampling did not finish within {Config.MAX_RESAMPLE_ROUNDS} rounds")
    return out, rejected


def sample_coset_params(subspace: RegisterSubspace, a: float, b: float,
                        q_cut: float, p_cut: float, seed: SeedLike) -> CosetSample:
    """Draw (q, p) with |q_i| < q_cut and |p_i| < p_cut."""
    check_damping(a, b)
    rng = as_generator(seed)
    half = subspace.n // 2
    q, rejected_q = truncated_normal(rng, position_sigma(a), q_cut, half)
    p, rejected_p = truncated_normal(rng, momentum_sigma(a, b), p_cut, half)
    if rejected_q or rejected_p:
        logger.debug(f"coset sample: {rejected_q} position and {rejected_p} momentum redraws")
    return CosetSample(q, p, rejected_q + rejected_p)


@dataclass(frozen=True)
class ComplexCosetDistribution:
    """Damped distribution of the complex-coset game, b > a > 0."""
    a: float
    b: float

    def __post_init__(self):
        check_damping(self.a, self.b)

    @property
    def position_variance(self) -> float:
        return (self.b - self.a) / (4.0 * self.a * self.b)

    @property
    def momentum_variance(self) -> float:
        return self.b ** 2 / (4.0 * math.pi ** 2 * (self.b - self.a))

    def sample(self, size: int, seed: SeedLike):
        rng = as_generator(seed)
        q = rng.normal(0.0, math.sqrt(self.position_variance), size=size)
        p = rng.normal(0.0, math.sqrt(self.momentum_variance), size=size)
        return q, p


def complex_coset_distribution(a: float, b: float) -> ComplexCosetDistribution:
    return ComplexCosetDistribution(a, b)
