"""Quadrature check of the rounding-distance integral.

For a symmetric density π that is nonincreasing in |x|,
∬ |⌊x+½⌋ − ⌊y+½⌋| e^{−α(x−y)²} π(x) dx dy ≤ 6/α.
"""
import logging
import math
from typing import Callable, Optional

import numpy as np

from coset_qkd.config import Config
from coset_qkd.errors import InternalError, ValidationError

logger = logging.getLogger(__name__)

ROW_CHUNK = 256
NORMALIZATION_TOL = 1e-2


def _grid(half_width: float, points: int):
    if points < 3 or points % 2 == 0:
        raise ValidationError(f"grid needs an odd number of points >= 3, got {points}")
    step = 2.0 * half_width / (points - 1)
    # integer offsets keep the grid exactly symmetric about 0
    x = (np.arange(points) - (points - 1) // 2) * step
    weights = np.full(points, step)
    weights[[0, -1]] = step / 2.0
    return x, weights


def _check_density(x: np.ndarray, values: np.ndarray, weights: np.ndarray):
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise ValidationError("density must be finite and nonnegative")
    total = float(weights @ values)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ValidationError(f"density integrates to {total:.4f} on the grid, not 1")
    tol = 1e-9 * float(values.max())
    if np.max(np.abs(values - values[::-1])) > tol:
        raise ValidationError("density is not symmetric")
    right = values[len(values) // 2:]
    if np.any(np.diff(right) > tol):
        raise ValidationError("density is not nonincreasing in |x|")


def floor_integral_check(alpha: float, density: Callable[[np.ndarray], np.ndarray],
                         scale: float = 1.0, points: Optional[int] = None) -> float:
    """Evaluate the integral on a [−L, L]² trapezoid grid, L = max(8·scale, 8/√α).

    ``scale`` is the standard deviation (or comparable width) of the density.
    Raises InternalError if the value exceeds 6/α.
    """
    if not alpha > 0:
        raise ValidationError(f"alpha must be positive, got {alpha}")
    points = points or Config.FLOOR_GRID_POINTS
    half_width = max(8.0 * scale, 8.0 / math.sqrt(alpha))
    x, weights = _grid(half_width, points)
    values = np.asarray(density(x), dtype=float)
    _check_density(x, values, weights)

    rounded = np.floor(x + 0.5)
    total = 0.0
    for start in range(0, points, ROW_CHUNK):
        rows = slice(start, start + ROW_CHUNK)
        gap = x[rows, None] - x[None, :]
        kernel = np.abs(rounded[rows, None] - rounded[None, :]) * np.exp(-alpha * gap * gap)
        total += float((weights[rows] * values[rows]) @ (kernel @ weights))
    bound = 6.0 / alpha
    logger.debug(f"floor integral alpha={alpha:g}: {total:.6g} (bound {bound:.6g})")
    if total > bound:
        raise InternalError(f"floor integral {total:.6g} exceeds 6/alpha = {bound:.6g}")
    return total
