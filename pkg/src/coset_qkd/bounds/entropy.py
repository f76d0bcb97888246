"""Binary entropy."""
import math

from coset_qkd.errors import ValidationError


def binary_entropy(gamma: float) -> float:
    """h(γ) = −γ·lg γ − (1−γ)·lg(1−γ) with 0·lg 0 = 0."""
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0 or math.isnan(gamma):
        raise ValidationError(f"binary_entropy needs gamma in [0, 1], got {gamma}")
    if gamma == 0.0 or gamma == 1.0:
        return 0.0
    return -gamma * math.log2(gamma) - (1.0 - gamma) * math.log2(1.0 - gamma)
