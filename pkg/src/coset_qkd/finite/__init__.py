"""Finite groups, coset-state bases and finite coset monogamy games."""
from coset_qkd.finite.cosets import CosetBasis, OverlapResult, coset_basis, finite_bound, overlap_check
from coset_qkd.finite.groups import (
    GroupTable,
    Subgroup,
    all_subgroups,
    construct_group,
    cyclic,
    dihedral,
    product,
    register_subspace,
    subgroup_from_generators,
    subgroup_from_labels,
)
from coset_qkd.finite.irreps import Irrep, IrrepSet, irreps
from coset_qkd.finite.strategy import (
    FiniteStrategy,
    SeesawResult,
    naive_strategy,
    seesaw_lower_bound,
    strategy_value,
)

__all__ = [
    "CosetBasis",
    "FiniteStrategy",
    "GroupTable",
    "Irrep",
    "IrrepSet",
    "OverlapResult",
    "SeesawResult",
    "Subgroup",
    "all_subgroups",
    "construct_group",
    "coset_basis",
    "cyclic",
    "dihedral",
    "finite_bound",
    "irreps",
    "naive_strategy",
    "overlap_check",
    "product",
    "register_subspace",
    "seesaw_lower_bound",
    "strategy_value",
    "subgroup_from_generators",
    "subgroup_from_labels",
]
