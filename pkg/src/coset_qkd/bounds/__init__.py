"""Monogamy-game winning-probability bounds."""
from coset_qkd.bounds.entropy import binary_entropy
from coset_qkd.bounds.families import (
    GameSpecGkp,
    GameSpecRn,
    GameSpecSo3,
    GameSpecU1,
    bound_complex,
    bound_gkp,
    bound_rn,
    bound_rn_mode_failure,
    bound_so3,
    bound_u1,
    gkp_pair_overlap,
)
from coset_qkd.bounds.permutations import (
    is_orthogonal_family,
    orthogonal_permutations,
    sum_bound_check,
)
from coset_qkd.bounds.report import BoundReport
from coset_qkd.bounds.so3 import (
    OverlapEstimate,
    bound_so3_sum,
    so3_coset_overlap,
    so3_coset_overlap_exact,
    so3_overlap_mc,
)

__all__ = [
    "BoundReport",
    "GameSpecGkp",
    "GameSpecRn",
    "GameSpecSo3",
    "GameSpecU1",
    "OverlapEstimate",
    "binary_entropy",
    "bound_complex",
    "bound_gkp",
    "bound_rn",
    "bound_rn_mode_failure",
    "bound_so3",
    "bound_so3_sum",
    "bound_u1",
    "gkp_pair_overlap",
    "is_orthogonal_family",
    "orthogonal_permutations",
    "so3_coset_overlap",
    "so3_coset_overlap_exact",
    "so3_overlap_mc",
    "sum_bound_check",
]
