"""SO(3) coset overlaps.

H_θ is the one-parameter subgroup {Z(φ)X(θ)} reached by conjugating the
z-rotations with X(θ). The overlap of H_0 with an ε-blurred translate of H_θ
depends only on the middle Euler angle β of the translate, so the supremum
over translates is a supremum over β.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from coset_qkd.bounds.families import GameSpecSo3
from coset_qkd.config import Config
from coset_qkd.errors import ValidationError
from coset_qkd.rng import SeedLike, as_generator

TWO_PI = 2.0 * math.pi


def _check_args(theta: float, epsilon: float):
    if not 0.0 <= theta < TWO_PI:
        raise ValidationError(f"theta must lie in [0, 2pi), got {theta}")
    if not 0.0 < epsilon < 1.0:
        raise ValidationError(f"epsilon must lie in (0, 1), got {epsilon}")


def eta_from_epsilon(epsilon: float) -> float:
    """Angle η with cos(η/2) = 1 − ε²/2."""
    return 2.0 * math.acos(1.0 - epsilon * epsilon / 2.0)


def so3_coset_overlap(theta: float, epsilon: float) -> float:
    """Closed-form sup over translates of μ(H_0 ∩ R·E_ε·H_θ)."""
    _check_args(theta, epsilon)
    eta = eta_from_epsilon(epsilon)
    if abs(math.cos(theta)) > math.cos(eta):
        return 1.0
    ratio = min(1.0, math.sin(eta) ** 2 / math.sin(theta) ** 2)
    inner = max(0.0, 1.0 - math.sqrt(1.0 - ratio))
    return (2.0 / math.pi) * math.asin(math.sqrt(inner))


def so3_coset_overlap_exact(theta: float, epsilon: float) -> float:
    """Exact sup over translates of μ(H_0 ∩ R·E_ε·H_θ).

    Membership is (cos(θ−β) − cos η)/2 > sin²(φ/2)·sin θ·sin β; the closed
    form above drops the factor 1/2 and so overstates the measure.
    """
    _check_args(theta, epsilon)
    eta = eta_from_epsilon(epsilon)
    if abs(math.cos(theta)) > math.cos(eta):
        return 1.0
    ratio = min(1.0, math.sin(eta) ** 2 / math.sin(theta) ** 2)
    inner = max(0.0, 1.0 - math.sqrt(1.0 - ratio)) / 2.0
    return (2.0 / math.pi) * math.asin(math.sqrt(inner))


def bound_so3_sum(spec: GameSpecSo3) -> float:
    """(1/N)·Σ_i √overlap(2πi/N, ε); the sum that 2/N + 2√(πε) relaxes."""
    terms = [math.sqrt(so3_coset_overlap(TWO_PI * i / spec.N, spec.epsilon)) for i in range(spec.N)]
    return sum(terms) / spec.N


@dataclass(frozen=True)
class OverlapEstimate:
    estimate: float
    std_error: float
    beta: float        # maximizing middle Euler angle
    trials: int


def _best_beta(phi_quats: np.ndarray, betas: np.ndarray, epsilon: float):
    """Return (count, beta) maximizing the number of φ samples within ε of X(β)H_0."""
    flip = Rotation.from_euler("z", math.pi)
    best_count, best_beta = -1, float(betas[0])
    for beta in betas:
        rot = Rotation.from_euler("x", beta)
        a = rot.as_quat()
        b = (rot * flip).as_quat()
        # min over χ of the quaternion distance to X(β)Z(χ)
        overlap = np.sqrt((phi_quats @ a) ** 2 + (phi_quats @ b) ** 2)
        dist = np.sqrt(2.0 * np.clip(1.0 - overlap, 0.0, None))
        count = int(np.count_nonzero(dist < epsilon))
        if count > best_count:
            best_count, best_beta = count, float(beta)
    return best_count, best_beta


def so3_overlap_mc(theta: float, epsilon: float, trials: int, seed: SeedLike) -> OverlapEstimate:
    """Monte-Carlo estimate of the overlap from quaternion distances.

    Targets so3_coset_overlap_exact and stays below so3_coset_overlap up to
    sampling error.

    φ is drawn uniformly on H_0 and shared across all β, so the per-β counts
    are nested and the maximum carries no selection bias.
    """
    _check_args(theta, epsilon)
    if trials < 1000:
        raise ValidationError(f"trials must be at least 1000, got {trials}")
    rng = as_generator(seed)
    phi = rng.uniform(0.0, TWO_PI, size=int(trials))
    phi_quats = (Rotation.from_euler("z", phi) * Rotation.from_euler("x", theta)).as_quat()

    grid = np.arange(Config.SO3_BETA_GRID) * (TWO_PI / Config.SO3_BETA_GRID)
    count, beta = _best_beta(phi_quats, grid, epsilon)
    step = TWO_PI / Config.SO3_BETA_GRID
    refined = beta + np.linspace(-step, step, 2 * Config.SO3_BETA_GRID + 1)
    fine_count, fine_beta = _best_beta(phi_quats, refined, epsilon)
    if fine_count > count:
        count, beta = fine_count, fine_beta % TWO_PI

    estimate = count / trials
    std_error = math.sqrt(estimate * (1.0 - estimate) / trials)
    return OverlapEstimate(estimate, std_error, beta, int(trials))
