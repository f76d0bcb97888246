"""Continuous-variable primitives: damped coset states, homodyne statistics, AGWN."""
from coset_qkd.cv.floor_integral import floor_integral_check
from coset_qkd.cv.homodyne import (
    MOMENTUM,
    POSITION,
    expected_mismatch_momentum,
    expected_mismatch_position,
    homodyne_measure,
    outcome_distribution,
    rescale_momentum,
)
from coset_qkd.cv.sampling import (
    ComplexCosetDistribution,
    CosetSample,
    complex_coset_distribution,
    sample_coset_params,
)
from coset_qkd.cv.states import AgwnParams, DampedCosetState, RegisterSubspace, SqueezedMode

__all__ = [
    "MOMENTUM",
    "POSITION",
    "AgwnParams",
    "ComplexCosetDistribution",
    "CosetSample",
    "DampedCosetState",
    "RegisterSubspace",
    "SqueezedMode",
    "complex_coset_distribution",
    "expected_mismatch_momentum",
    "expected_mismatch_position",
    "floor_integral_check",
    "homodyne_measure",
    "outcome_distribution",
    "rescale_momentum",
    "sample_coset_params",
]
