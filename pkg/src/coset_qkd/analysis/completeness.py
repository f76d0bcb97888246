"""Key rate under the completeness requirements, and the AGWN noise margins.

The estimation threshold γ and the code's relative distance are tied together:
γ must beat the expected position mismatch, and a GV code of relative distance γ
must beat the expected momentum mismatch per bit. The achievable rate is the
asymptotic relation evaluated at the larger of the two requirements.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from scipy.optimize import bisect

from coset_qkd.analysis.asymptotic import ROOT_XTOL, AsymptoticParams, asymptotic_lhs
from coset_qkd.cv.homodyne import expected_mismatch_momentum, expected_mismatch_position
from coset_qkd.errors import PreconditionError
from coset_qkd.qkd.analytic import (
    DISTANCE_CONSTRAINT, GAMMA_CONSTRAINT, ParamsLike, completeness_bound, completeness_bound_agwn,
)

logger = logging.getLogger(__name__)

MAX_DOUBLINGS = 60


@dataclass(frozen=True)
class ConstrainedRate:
    rate: float
    gamma: float                       # smallest admissible γ
    binding: str                       # constraint that sets γ
    violated: Optional[str] = None     # set when no positive rate is left

    @property
    def feasible(self) -> bool:
        return self.violated is None


def completeness_constrained_rate(p: AsymptoticParams, x: float = 0.0, y: float = 0.0) -> ConstrainedRate:
    gamma_floor = expected_mismatch_position(p.a, p.b, p.delta, x)
    distance_floor = expected_mismatch_momentum(p.a, p.b, p.epsilon, y) / p.n_N
    if gamma_floor >= distance_floor:
        gamma, binding = gamma_floor, GAMMA_CONSTRAINT
    else:
        gamma, binding = distance_floor, DISTANCE_CONSTRAINT
    if gamma >= 0.5:
        return ConstrainedRate(0.0, gamma, binding, binding)
    lhs = asymptotic_lhs(gamma, p)
    if lhs <= 0:
        logger.debug(f"no rate at x={x}, y={y}: {binding} requires gamma >= {gamma:.6g}")
        return ConstrainedRate(0.0, gamma, binding, binding)
    return ConstrainedRate(lhs / 2.0, gamma, binding)


def _threshold(p: AsymptoticParams, axis: str) -> float:
    def margin(value: float) -> float:
        x, y = (value, 0.0) if axis == "x" else (0.0, value)
        gamma = max(expected_mismatch_position(p.a, p.b, p.delta, x),
                    expected_mismatch_momentum(p.a, p.b, p.epsilon, y) / p.n_N)
        return asymptotic_lhs(min(gamma, 0.5), p)

    if margin(0.0) <= 0:
        return 0.0
    hi = 1e-6
    for _ in range(MAX_DOUBLINGS):
        if margin(hi) <= 0:
            break
        hi *= 2.0
    else:
        return float("inf")
    return float(bisect(margin, 0.0, hi, xtol=ROOT_XTOL * 1e-3))


def noise_thresholds(p: AsymptoticParams) -> Tuple[float, float]:
    """Largest x (with y = 0) and largest y (with x = 0) that keep a positive rate."""
    return _threshold(p, "x"), _threshold(p, "y")


def completeness_report(params: ParamsLike) -> Dict[str, object]:
    """Identity-channel and AGWN(0, 0) completeness values side by side.

    The two differ only in whether the second exponent is squared.
    """
    report: Dict[str, object] = {}
    for key, evaluate in (("identity", completeness_bound),
                          ("agwn_zero", lambda prm: completeness_bound_agwn(prm, 0.0, 0.0))):
        try:
            report[key] = evaluate(params)
        except PreconditionError as e:
            report[key] = None
            report[f"{key}_violated"] = e.constraint
    return report
