"""Asymptotic key-rate analysis and data output."""
from coset_qkd.analysis.asymptotic import (
    AsymptoticParams, CurvePoint, ToleranceCurve, asymptotic_lhs, gamma_max, tolerance_curve,
    truncation_terms,
)
from coset_qkd.analysis.completeness import (
    ConstrainedRate, completeness_constrained_rate, completeness_report, noise_thresholds,
)
from coset_qkd.analysis.emit import emit, format_value

__all__ = [
    "AsymptoticParams", "ConstrainedRate", "CurvePoint", "ToleranceCurve", "asymptotic_lhs",
    "completeness_constrained_rate", "completeness_report", "emit", "format_value", "gamma_max",
    "noise_thresholds", "tolerance_curve", "truncation_terms",
]
