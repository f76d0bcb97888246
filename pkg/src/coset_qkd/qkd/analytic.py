"""Closed-form correctness, completeness and secrecy parameters of the protocol.

Every function accepts ProtocolParams or a bare SecrecyInputs record.
"""
import logging
import math
from typing import Union

import mpmath

from coset_qkd.cv.homodyne import expected_mismatch_momentum, expected_mismatch_position
from coset_qkd.errors import PreconditionError, ValidationError
from coset_qkd.qkd.params import ProtocolParams, SecrecyInputs

logger = logging.getLogger(__name__)

ParamsLike = Union[ProtocolParams, SecrecyInputs]

GAMMA_CONSTRAINT = "gamma"
DISTANCE_CONSTRAINT = "distance"
TAU_CONSTRAINT = "tau"

# digits used by mpmath inside secrecy_epsilon
SECRECY_DPS = 50


def _inputs(params: ParamsLike) -> SecrecyInputs:
    if isinstance(params, ProtocolParams):
        return params.secrecy_inputs()
    return params


def _require_distance(p: SecrecyInputs) -> int:
    if p.d is None:
        raise PreconditionError("the code's minimum distance is unknown", DISTANCE_CONSTRAINT)
    return p.d


def correctness_bound(params: ParamsLike) -> float:
    """(1 − 2d/(n_N·n))^{η·n_N·n/2}: chance that η-sampled reconciliation misses d errors."""
    p = _inputs(params)
    d = _require_distance(p)
    base = max(0.0, 1.0 - 2.0 * d / (p.n_N * p.n))
    return base ** (p.eta * p.block)


def correctness_bound_exact(params: ParamsLike) -> float:
    """C(B−d, ηB)/C(B, ηB): sampling ηB of B positions without replacement misses all d errors."""
    p = _inputs(params)
    d = _require_distance(p)
    block = int(round(p.block))
    picked = int(round(p.eta * p.block))
    if picked > block - d:
        return 0.0
    # ratio of binomials through log-gamma so large blocks stay finite
    log_ratio = (math.lgamma(block - d + 1) - math.lgamma(block - d - picked + 1)
                 - math.lgamma(block + 1) + math.lgamma(block - picked + 1))
    return math.exp(log_ratio)


def _completeness(p: SecrecyInputs, gamma_floor: float, distance_floor: float, squared: bool) -> float:
    d = _require_distance(p)
    if not p.gamma > gamma_floor:
        raise PreconditionError(
            f"gamma={p.gamma:.6g} must exceed {gamma_floor:.6g}", GAMMA_CONSTRAINT)
    if not d > (p.n / 2) * distance_floor:
        raise PreconditionError(
            f"d={d} must exceed (n/2)*{distance_floor:.6g} = {(p.n / 2) * distance_floor:.6g}",
            DISTANCE_CONSTRAINT)
    first = math.exp(-((p.gamma - gamma_floor) ** 2)) ** (p.theta * p.n)
    gap = 2.0 * d / (p.n * p.n_N) - distance_floor / p.n_N
    second = math.exp(-(gap ** 2 if squared else gap)) ** p.n
    return first + second


def completeness_bound(params: ParamsLike) -> float:
    """Abort probability bound under the identity channel.

    The second exponent is not squared, unlike completeness_bound_agwn.
    """
    p = _inputs(params)
    return _completeness(p, expected_mismatch_position(p.a, p.b, p.delta),
                         expected_mismatch_momentum(p.a, p.b, p.epsilon), squared=False)


def completeness_bound_agwn(params: ParamsLike, x: float, y: float) -> float:
    """Abort probability bound when every mode passes an AGWN channel with scales (x, y)."""
    p = _inputs(params)
    return _completeness(p, expected_mismatch_position(p.a, p.b, p.delta, x),
                         expected_mismatch_momentum(p.a, p.b, p.epsilon, y), squared=True)


def _lg_one_minus(value, what: str):
    if not value < 1:
        raise ValidationError(f"{what} truncation term {mpmath.nstr(value, 6)} leaves no mass")
    return mpmath.log(1 - value, 2)


def secrecy_bracket(params: ParamsLike) -> float:
    """Exponent bracket of secrecy_epsilon; ε′ < 1 needs it negative."""
    with mpmath.workdps(SECRECY_DPS):
        return float(_bracket(_inputs(params)))


def _bracket(p: SecrecyInputs):
    if p.tau is None or not p.tau > 0:
        raise PreconditionError("secrecy needs a positive tau", TAU_CONSTRAINT)
    mp = mpmath.mpf
    a, b, delta, epsilon = mp(p.a), mp(p.b), mp(p.delta), mp(p.epsilon)
    n = mp(p.n)
    M, N = mp(p.M), mp(p.N)
    shifted = p.gamma + p.tau
    if not shifted <= 0.5:
        raise ValidationError(f"gamma + tau = {shifted:.6g} exceeds 1/2")
    h = 0 if shifted == 0 else -shifted * mpmath.log(shifted, 2) - (1 - shifted) * mpmath.log(1 - shifted, 2)

    position_tail = mpmath.exp(-2 * a * M ** 2 * delta ** 2) / mpmath.sqrt(2 * mpmath.pi * a * M ** 2 * delta ** 2)
    momentum_tail = (mpmath.sqrt((a + b) / (mpmath.pi ** 3 * N ** 2 * epsilon ** 2))
                     * mpmath.exp(-2 * mpmath.pi ** 2 * N ** 2 * epsilon ** 2 / (a + b)))
    return ((1 - mp(p.gamma) - mp(p.tau)) * mpmath.log(mp(1) / 2 + mpmath.sqrt(delta * epsilon), 2)
            + h
            + mp(p.theta) * p.n_M
            + 2 * mp(p.s) / n
            + mp(p.eta) * p.n_N
            - _lg_one_minus(position_tail, "position")
            - _lg_one_minus(momentum_tail, "momentum")
            + 2 * (mp(p.key_len) - 2) / n
            + 1 / (mpmath.log(2) * n))


def secrecy_epsilon(params: ParamsLike) -> mpmath.mpf:
    """ε′ = 2^{(n/4)·bracket} + 4e^{−τ²θn}, evaluated with mpmath."""
    p = _inputs(params)
    with mpmath.workdps(SECRECY_DPS):
        bracket = _bracket(p)
        value = mpmath.power(2, mpmath.mpf(p.n) / 4 * bracket) + 4 * mpmath.exp(-mpmath.mpf(p.tau) ** 2 * p.theta * p.n)
    logger.debug(f"secrecy bracket {mpmath.nstr(bracket, 8)}, epsilon' {mpmath.nstr(value, 8)}")
    return +value
