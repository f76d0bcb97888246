"""Asymptotic key-rate relation and error-tolerance curve.

With τ = θ = η = n^{−1/4} and a GV-sized code (2s/n = n_N·h(γ)) the secrecy
exponent tends to a function of γ alone; a key rate r is achievable while that
function exceeds 2r.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Mapping

import numpy as np
from scipy.optimize import bisect

from coset_qkd.bounds.entropy import binary_entropy
from coset_qkd.errors import ValidationError

logger = logging.getLogger(__name__)

ROOT_XTOL = 1e-6


@dataclass(frozen=True)
class AsymptoticParams:
    squeeze: float     # Δ
    delta: float
    epsilon: float
    n_M: int
    n_N: int

    def __post_init__(self):
        if not self.squeeze > 0:
            raise ValidationError(f"squeeze must be positive, got {self.squeeze}")
        if not (self.delta > 0 and self.epsilon > 0):
            raise ValidationError("bin widths must be positive")
        if self.n_M < 1 or self.n_N < 1:
            raise ValidationError("bit counts must be positive")
        if not self.b > self.a:
            raise ValidationError(f"squeeze {self.squeeze} gives b <= a; need squeeze < 1")

    @property
    def a(self) -> float:
        return self.squeeze ** 2 / 2.0

    @property
    def b(self) -> float:
        return 1.0 / (2.0 * self.squeeze ** 2)

    @property
    def M(self) -> int:
        return 1 << (self.n_M - 1)

    @property
    def N(self) -> int:
        return 1 << (self.n_N - 1)

    @property
    def position_cutoff(self) -> float:
        return self.M * self.delta

    @property
    def momentum_cutoff(self) -> float:
        return self.N * self.epsilon

    @classmethod
    def from_mapping(cls, values: Mapping[str, object]) -> "AsymptoticParams":
        try:
            return cls(float(values["squeeze"]), float(values["delta"]), _number(values["epsilon"]),
                       int(values["n_M"]), int(values["n_N"]))
        except KeyError as e:
            raise ValidationError(f"missing parameter {e.args[0]!r}")
        except (TypeError, ValueError) as e:
            raise ValidationError(f"invalid asymptotic parameters: {e}")


def _number(value) -> float:
    """Float that also accepts a fraction such as ``1/64``."""
    text = str(value).strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return float(num) / float(den)
    return float(text)


def _lg_one_minus(t: float, what: str) -> float:
    if not t < 1.0:
        raise ValidationError(f"{what} truncation term {t:.6g} leaves no mass")
    return math.log1p(-t) / math.log(2.0)


def truncation_terms(p: AsymptoticParams):
    """(position, momentum) lg(1 − tail) corrections; both are ≤ 0."""
    a, b = p.a, p.b
    x = a * p.position_cutoff ** 2
    position_tail = math.exp(-2.0 * x) / math.sqrt(2.0 * math.pi * x)
    y = p.momentum_cutoff ** 2
    momentum_tail = math.sqrt((a + b) / (math.pi ** 3 * y)) * math.exp(-2.0 * math.pi ** 2 * y / (a + b))
    return _lg_one_minus(position_tail, "position"), _lg_one_minus(momentum_tail, "momentum")


def asymptotic_lhs(gamma: float, p: AsymptoticParams) -> float:
    """−(1−γ)·lg(½+√(δε)) − (1+n_N)·h(γ) + both truncation corrections."""
    if not 0.0 <= gamma <= 0.5:
        raise ValidationError(f"gamma must lie in [0, 1/2], got {gamma}")
    position, momentum = truncation_terms(p)
    constant = -math.log2(0.5 + math.sqrt(p.delta * p.epsilon))
    return (1.0 - gamma) * constant - (1 + p.n_N) * binary_entropy(gamma) + position + momentum


@dataclass(frozen=True)
class CurvePoint:
    rate: float
    gamma: float


@dataclass(frozen=True)
class ToleranceCurve:
    points: List[CurvePoint]
    gamma_max: float
    r_max: float

    def to_rows(self):
        return [{"rate": pt.rate, "gamma": pt.gamma} for pt in self.points]


def gamma_max(p: AsymptoticParams) -> float:
    """Largest tolerable error rate: the root of asymptotic_lhs in [0, 1/2]."""
    lhs0 = asymptotic_lhs(0.0, p)
    if lhs0 <= 0:
        return 0.0
    return float(bisect(asymptotic_lhs, 0.0, 0.5, args=(p,), xtol=ROOT_XTOL))


def tolerance_curve(p: AsymptoticParams, grid_points: int = 101) -> ToleranceCurve:
    """Rate r(γ) = max(0, lhs(γ)/2) on an even γ grid over [0, γ_max]."""
    if int(grid_points) != grid_points or grid_points < 2:
        raise ValidationError(f"grid_points must be an integer >= 2, got {grid_points}")
    g_max = gamma_max(p)
    r_max = asymptotic_lhs(0.0, p) / 2.0
    points = [CurvePoint(max(0.0, asymptotic_lhs(float(g), p) / 2.0), float(g))
              for g in np.linspace(0.0, g_max, int(grid_points))]
    logger.info(f"tolerance curve: gamma_max={g_max:.6g}, r_max={r_max:.6g}")
    return ToleranceCurve(points, g_max, max(0.0, r_max))
