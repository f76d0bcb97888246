"""Closed-form winning-probability bounds for the continuous and profinite games."""
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import galois
import numpy as np
from scipy.special import gammaln, logsumexp

from coset_qkd.bounds.entropy import binary_entropy
from coset_qkd.bounds.report import BoundReport
from coset_qkd.errors import PreconditionError, ValidationError

INTEGRALITY_TOL = 1e-9


def _check_ascending_primes(values: Sequence[int], name: str) -> Tuple[int, ...]:
    values = tuple(int(v) for v in values)
    if not values:
        raise ValidationError(f"{name} must be nonempty")
    for v in values:
        if v < 2 or not galois.is_prime(v):
            raise ValidationError(f"{name} must contain primes only, got {v}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValidationError(f"{name} must be strictly ascending: {values}")
    return values


def _is_integral(value: float) -> bool:
    return abs(value - round(value)) < INTEGRALITY_TOL


# =============================================================================
# Game specifications
# =============================================================================

@dataclass(frozen=True)
class GameSpecU1:
    primes: Tuple[int, ...]
    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "primes", _check_ascending_primes(self.primes, "primes"))
        if not self.epsilon > 0:
            raise ValidationError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def N(self) -> int:
        return len(self.primes)


@dataclass(frozen=True)
class GameSpecRn:
    n: int
    delta: float
    epsilon: float
    gamma: Optional[float] = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2 or self.n % 2:
            raise ValidationError(f"n must be a positive even integer, got {self.n}")
        if self.delta < 0 or self.epsilon < 0:
            raise ValidationError("delta and epsilon must be nonnegative")
        if self.gamma is not None:
            if not 0 <= self.gamma < 1:
                raise ValidationError(f"gamma must lie in [0, 1), got {self.gamma}")
            if not _is_integral(self.gamma * self.n / 2):
                raise ValidationError(f"gamma*n/2 must be an integer, got {self.gamma * self.n / 2}")

    @property
    def overlap(self) -> float:
        """√(δε), the per-mode answer-set overlap."""
        return math.sqrt(self.delta * self.epsilon)


@dataclass(frozen=True)
class GameSpecGkp:
    alphas: Tuple[int, ...]
    epsilon: float
    M: Union[float, Tuple[float, ...]]
    a: float

    def __post_init__(self):
        object.__setattr__(self, "alphas", _check_ascending_primes(self.alphas, "alphas"))
        cutoffs = self.M if isinstance(self.M, (list, tuple)) else (self.M,)
        if not cutoffs or any(m <= 0 for m in cutoffs):
            raise ValidationError(f"M must be positive, got {self.M}")
        if self.a <= 0:
            raise ValidationError(f"a must be positive, got {self.a}")
        if self.epsilon < 0:
            raise ValidationError(f"epsilon must be nonnegative, got {self.epsilon}")
        if isinstance(self.M, list):
            object.__setattr__(self, "M", tuple(self.M))

    @property
    def cutoffs(self) -> Tuple[float, ...]:
        return self.M if isinstance(self.M, tuple) else (self.M,)


@dataclass(frozen=True)
class GameSpecSo3:
    N: int
    epsilon: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2 or self.N % 2:
            raise ValidationError(f"N must be a positive even integer, got {self.N}")
        if not self.epsilon > 0:
            raise ValidationError(f"epsilon must be positive, got {self.epsilon}")


# =============================================================================
# Bounds
# =============================================================================

def bound_u1(spec: GameSpecU1) -> BoundReport:
    """1/N + 1/√p_1, proven for ε ≤ π/p_N²."""
    limit = math.pi / spec.primes[-1] ** 2
    if spec.epsilon > limit:
        raise PreconditionError(
            f"epsilon={spec.epsilon} exceeds pi/p_N^2={limit}", constraint="epsilon <= pi/p_N^2")
    value = 1.0 / spec.N + 1.0 / math.sqrt(spec.primes[0])
    return BoundReport("u1", {"primes": list(spec.primes), "epsilon": spec.epsilon}, value)


def bound_complex(n: int, delta: float, epsilon: float) -> BoundReport:
    """2/n + 4(1+1/n)√(δε) for the ℂ game with n a multiple of 4."""
    if int(n) != n or n < 4 or n % 4:
        raise ValidationError(f"n must be a positive multiple of 4, got {n}")
    if delta < 0 or epsilon < 0:
        raise ValidationError("delta and epsilon must be nonnegative")
    value = 2.0 / n + 4.0 * (1.0 + 1.0 / n) * math.sqrt(delta * epsilon)
    return BoundReport("complex", {"n": int(n), "delta": delta, "epsilon": epsilon}, value)


def _log_binom(n, k):
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def bound_rn(spec: GameSpecRn) -> BoundReport:
    """Exact binomial sum and its closed-form relaxation for the ℝⁿ game.

    ``bound`` is the exact sum; ``details`` carries both.
    """
    if spec.gamma is not None:
        raise ValidationError("bound_rn takes a spec without gamma; use bound_rn_mode_failure")
    m = spec.n // 2
    x = 2.0 * spec.overlap
    k = np.arange(m + 1)
    log_terms = 2.0 * _log_binom(m, k) - _log_binom(2 * m, m)
    if x == 0.0:
        exact = float(np.exp(log_terms[0]))
    else:
        exact = float(np.exp(logsumexp(log_terms + k * math.log(x))))
    closed = math.sqrt(math.e) * (0.5 + spec.overlap) ** m
    return BoundReport(
        "rn",
        {"n": spec.n, "delta": spec.delta, "epsilon": spec.epsilon},
        exact,
        details={"exact_sum": exact, "closed_form": closed},
    )


def rn_mode_failure_exponent(spec: GameSpecRn) -> float:
    """The bracket (1−γ)lg(½+√(δε)) + h(γ) + 1/(n ln 2)."""
    gamma = spec.gamma
    return ((1.0 - gamma) * math.log2(0.5 + spec.overlap)
            + binary_entropy(gamma) + 1.0 / (math.log(2) * spec.n))


def bound_rn_mode_failure(spec: GameSpecRn) -> BoundReport:
    """Bound with a γ fraction of failed modes; may exceed 1."""
    if spec.gamma is None:
        raise ValidationError("bound_rn_mode_failure needs gamma")
    exponent = rn_mode_failure_exponent(spec)
    value = 2.0 ** (exponent * spec.n / 2)
    return BoundReport(
        "rn-failure",
        {"n": spec.n, "delta": spec.delta, "epsilon": spec.epsilon, "gamma": spec.gamma},
        value,
        details={"exponent": exponent},
    )


def gkp_pair_overlap(alpha: int, beta: int, epsilon: float, M: float) -> float:
    """√(4α(1+2M/lcm(α,β))ε), the overlap between two distinct GKP games."""
    return math.sqrt(4.0 * alpha * (1.0 + 2.0 * M / math.lcm(alpha, beta)) * epsilon)


def _gkp_value(spec: GameSpecGkp, M: float) -> float:
    alpha_1, alpha_n = spec.alphas[0], spec.alphas[-1]
    tail = math.sqrt(math.sqrt(2.0 / (math.pi * spec.a)) / M) * math.exp(-spec.a * M * M)
    return 1.0 / len(spec.alphas) + 2.0 * math.sqrt((alpha_n + 2.0 * M / alpha_1) * spec.epsilon) + tail


def bound_gkp(spec: GameSpecGkp) -> BoundReport:
    """GKP bound, minimized over the given cutoffs M."""
    values = [(_gkp_value(spec, M), M) for M in spec.cutoffs]
    value, best_M = min(values)
    return BoundReport(
        "gkp",
        {"alphas": list(spec.alphas), "epsilon": spec.epsilon, "M": list(spec.cutoffs), "a": spec.a},
        value,
        details={"M": best_M},
    )


def bound_so3(spec: GameSpecSo3) -> BoundReport:
    """2/N + 2√(πε), proven for ε < 2 sin(π/2N)."""
    limit = 2.0 * math.sin(math.pi / (2 * spec.N))
    if spec.epsilon >= limit:
        raise PreconditionError(
            f"epsilon={spec.epsilon} must be below 2 sin(pi/2N)={limit}",
            constraint="epsilon < 2 sin(pi/2N)")
    value = 2.0 / spec.N + 2.0 * math.sqrt(math.pi * spec.epsilon)
    return BoundReport("so3", {"N": spec.N, "epsilon": spec.epsilon}, value)
