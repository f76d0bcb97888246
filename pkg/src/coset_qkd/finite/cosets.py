"""Coset-state bases, the overlap lemma and the finite coset-game bound."""
import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from coset_qkd.bounds.permutations import orthogonal_permutations
from coset_qkd.bounds.report import BoundReport
from coset_qkd.errors import InternalError, ValidationError
from coset_qkd.finite.groups import GroupTable, Subgroup
from coset_qkd.finite.irreps import IrrepSet, irreps

logger = logging.getLogger(__name__)

TOL = 1e-10
OVERLAP_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class CosetBasis:
    """Columns |gH^γ_{m,n}⟩ ordered by (representative, matrix element)."""
    subgroup: Subgroup
    irrep_set: IrrepSet
    representatives: Tuple[int, ...]
    states: np.ndarray
    columns: Tuple[Tuple[int, int], ...]     # (representative position, matrix-element position)

    def gram_error(self) -> float:
        gram = self.states.conj().T @ self.states
        return float(np.abs(gram - np.eye(gram.shape[0])).max())

    def columns_for(self, element: int) -> List[int]:
        return [c for c, (_, mu) in enumerate(self.columns) if mu == element]


def _check_same_group(G: GroupTable, *subgroups: Subgroup):
    for H in subgroups:
        if H.parent is not G and not np.array_equal(H.parent.mul, G.mul):
            raise InternalError(f"subgroup of {H.parent.name} used with {G.name}")


def coset_basis(G: GroupTable, H: Subgroup) -> CosetBasis:
    _check_same_group(G, H)
    irrep_set = irreps(H)
    elements = irrep_set.matrix_elements()
    reps = []
    columns = []
    states = np.zeros((G.order, G.order), dtype=complex)
    col = 0
    for r, (g, members) in enumerate(H.cosets()):
        reps.append(g)
        for mu, (k, m, n) in enumerate(elements):
            irrep = irrep_set.irreps[k]
            scale = math.sqrt(irrep.dim / H.order)
            states[list(members), col] = scale * irrep.matrices[:, m, n]
            columns.append((r, mu))
            col += 1
    if col != G.order:
        raise InternalError(f"coset basis has {col} columns for a group of order {G.order}")
    return CosetBasis(H, irrep_set, tuple(reps), states, tuple(columns))


@dataclass(frozen=True)
class OverlapResult:
    norm: float
    bound: float


def overlap_check(G: GroupTable, H: Subgroup, K: Subgroup, element: int, q: int,
                  basis: CosetBasis = None) -> OverlapResult:
    """‖(Σ_{g∈CS(H)} |gH^γ_{m,n}⟩⟨gH^γ_{m,n}|)·Π_{qK}‖ against √(d_γ|H∩K|/|H|).

    ``element`` indexes IrrepSet.matrix_elements(); ``q`` is any element of the
    K-coset to project onto.
    """
    _check_same_group(G, H, K)
    basis = basis or coset_basis(G, H)
    elements = basis.irrep_set.matrix_elements()
    if not 0 <= element < len(elements):
        raise ValidationError(f"matrix element {element} outside 0..{len(elements) - 1}")
    if not 0 <= q < G.order:
        raise ValidationError(f"element {q} outside {G.name}")
    vecs = basis.states[:, basis.columns_for(element)]
    projector = vecs @ vecs.conj().T
    coset = [int(G.mul[q, k]) for k in K.elements]
    norm = float(np.linalg.norm(projector[:, coset], 2))
    dim = basis.irrep_set.irreps[elements[element][0]].dim
    bound = math.sqrt(dim * H.intersection_order(K) / H.order)
    if norm > bound + OVERLAP_SLACK:
        raise InternalError(f"overlap {norm:.12g} exceeds {bound:.12g}")
    return OverlapResult(norm, bound)


def finite_bound(G: GroupTable, S: Sequence[Subgroup]) -> BoundReport:
    """E_i max_{H, γ} √(d_γ|H ∩ π_i(H)|/|H|) with each term clamped at 1."""
    if not S:
        raise ValidationError("need at least one subgroup")
    _check_same_group(G, *S)
    max_dims = [max(irrep.dim for irrep in irreps(H).irreps) for H in S]
    perms = orthogonal_permutations(len(S))
    raw_terms = []
    for perm in perms:
        term = max(math.sqrt(max_dims[j] * H.intersection_order(S[perm[j]]) / H.order)
                   for j, H in enumerate(S))
        raw_terms.append(term)
    raw = sum(raw_terms) / len(raw_terms)
    bound = sum(min(1.0, t) for t in raw_terms) / len(raw_terms)
    logger.debug(f"finite bound for {G.name}: terms {raw_terms}")
    return BoundReport(
        "finite",
        {"group": G.name, "subgroups": [H.label() for H in S]},
        bound,
        details={"unclamped": raw},
    )
