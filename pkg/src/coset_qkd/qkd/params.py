"""Protocol parameters.

Mapping keys (config files, presets, transcript headers) mirror the field
names: n, a, b, delta, epsilon, n_M, n_N, theta, gamma, eta, key_len, tau, code, d.
``squeeze`` (Δ) may replace a and b, with a = Δ²/2 and b = 1/(2Δ²).
"""
import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Optional

from coset_qkd.coding.binning import BinConfig
from coset_qkd.coding.linear_code import LinearCode, gv_syndrome_len, make_code
from coset_qkd.cv.states import check_damping
from coset_qkd.errors import ValidationError

logger = logging.getLogger(__name__)

INTEGRALITY_TOL = 1e-9


def _integral(value: float, what: str) -> int:
    rounded = round(value)
    if abs(value - rounded) > INTEGRALITY_TOL:
        raise ValidationError(f"{what} must be an integer, got {value:.12g}")
    return int(rounded)


@dataclass(frozen=True)
class SecrecyInputs:
    """Scalar parameters for the analytic formulas; needs no code object."""
    n: float
    a: float
    b: float
    delta: float
    epsilon: float
    n_M: int
    n_N: int
    theta: float
    gamma: float
    eta: float
    key_len: float
    s: float                   # syndrome length
    tau: Optional[float] = None
    d: Optional[int] = None

    def __post_init__(self):
        check_damping(self.a, self.b)
        if not self.n > 0:
            raise ValidationError(f"n must be positive, got {self.n}")
        if not (self.delta > 0 and self.epsilon > 0):
            raise ValidationError("bin widths must be positive")
        for name in ("theta", "eta"):
            if not 0.0 < getattr(self, name) <= 1.0:
                raise ValidationError(f"{name} must lie in (0, 1], got {getattr(self, name)}")
        if not 0.0 <= self.gamma < 0.5:
            raise ValidationError(f"gamma must lie in [0, 1/2), got {self.gamma}")

    @property
    def M(self) -> int:
        return 1 << (self.n_M - 1)

    @property
    def N(self) -> int:
        return 1 << (self.n_N - 1)

    @property
    def block(self) -> float:
        return self.n * self.n_N / 2

    @classmethod
    def gv_sized(cls, n: float, a: float, b: float, delta: float, epsilon: float,
                 n_M: int, n_N: int, gamma: float, rate: float,
                 theta: float = None, eta: float = None, tau: float = None) -> "SecrecyInputs":
        """Asymptotic-style inputs: s from the GV bound, ℓ = rate·n, and θ = η = τ = n^{−1/4}
        unless given."""
        scale = n ** -0.25
        s = gv_syndrome_len(int(n * n_N / 2), gamma)
        return cls(n, a, b, delta, epsilon, n_M, n_N,
                   theta if theta is not None else scale, gamma,
                   eta if eta is not None else scale, rate * n, s,
                   tau if tau is not None else scale)


@dataclass(frozen=True, eq=False)
class ProtocolParams:
    n: int
    a: float
    b: float
    delta: float
    epsilon: float
    n_M: int
    n_N: int
    theta: float
    gamma: float
    eta: float
    key_len: int
    code: LinearCode
    tau: Optional[float] = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2 or self.n % 2:
            raise ValidationError(f"n must be an even positive integer, got {self.n}")
        check_damping(self.a, self.b)
        # BinConfig validates widths and bit counts
        BinConfig(self.delta, self.n_M)
        BinConfig(self.epsilon, self.n_N)
        for name in ("theta", "eta"):
            if not 0.0 < getattr(self, name) <= 1.0:
                raise ValidationError(f"{name} must lie in (0, 1], got {getattr(self, name)}")
        if not 0.0 <= self.gamma < 0.5:
            raise ValidationError(f"gamma must lie in [0, 1/2), got {self.gamma}")
        if self.tau is not None and not self.tau > 0:
            raise ValidationError(f"tau must be positive, got {self.tau}")
        _integral(self.theta * self.n / 2, "theta*n/2")
        _integral(self.gamma * self.theta * self.n / 2, "gamma*theta*n/2")
        _integral(self.eta * self.block, "eta*n_N*n/2")
        if self.code.n != self.block:
            raise ValidationError(f"code length {self.code.n} does not match n*n_N/2 = {self.block}")
        if not 1 <= self.key_len <= self.code.k:
            raise ValidationError(f"key_len must lie in [1, {self.code.k}], got {self.key_len}")

    @property
    def pos_bins(self) -> BinConfig:
        return BinConfig(self.delta, self.n_M)

    @property
    def mom_bins(self) -> BinConfig:
        return BinConfig(self.epsilon, self.n_N)

    @property
    def block(self) -> int:
        return self.n * self.n_N // 2

    @property
    def pe_size(self) -> int:
        return _integral(self.theta * self.n / 2, "theta*n/2")

    @property
    def pe_threshold(self) -> int:
        return _integral(self.gamma * self.theta * self.n / 2, "gamma*theta*n/2")

    @property
    def reconcile_size(self) -> int:
        return _integral(self.eta * self.block, "eta*n_N*n/2")

    def secrecy_inputs(self) -> SecrecyInputs:
        return SecrecyInputs(self.n, self.a, self.b, self.delta, self.epsilon, self.n_M, self.n_N,
                             self.theta, self.gamma, self.eta, self.key_len, self.code.s,
                             self.tau, self.code.d)

    @classmethod
    def from_mapping(cls, values: Mapping[str, object]) -> "ProtocolParams":
        def get(key, cast, default=None):
            if key not in values or values[key] in (None, ""):
                if default is None:
                    raise ValidationError(f"missing parameter {key!r}")
                return default
            try:
                return cast(values[key])
            except (TypeError, ValueError):
                raise ValidationError(f"parameter {key!r} has invalid value {values[key]!r}")

        if "squeeze" in values and "a" not in values and "b" not in values:
            squeeze = get("squeeze", float)
            a, b = squeeze ** 2 / 2, 1 / (2 * squeeze ** 2)
        else:
            a, b = get("a", float), get("b", float)
        declared_d = get("d", int, -1)
        code = make_code(get("code", str), d=declared_d if declared_d >= 0 else None)
        tau = get("tau", float, -1.0)
        return cls(
            n=get("n", int), a=a, b=b,
            delta=get("delta", float), epsilon=get("epsilon", float),
            n_M=get("n_M", int), n_N=get("n_N", int),
            theta=get("theta", float), gamma=get("gamma", float), eta=get("eta", float),
            key_len=get("key_len", int), code=code,
            tau=tau if tau > 0 else None,
        )

    def to_mapping(self) -> Dict[str, str]:
        """String mapping that from_mapping turns back into equal parameters."""
        values = {
            "n": str(self.n), "a": repr(self.a), "b": repr(self.b),
            "delta": repr(self.delta), "epsilon": repr(self.epsilon),
            "n_M": str(self.n_M), "n_N": str(self.n_N),
            "theta": repr(self.theta), "gamma": repr(self.gamma), "eta": repr(self.eta),
            "key_len": str(self.key_len),
            "code": self.code.to_spec(),
        }
        if self.code.d is not None:
            values["d"] = str(self.code.d)
        if self.tau is not None:
            values["tau"] = repr(self.tau)
        return values

