"""Orthogonal permutation families.

A family {π_i} is orthogonal when π_i∘π_j⁻¹ has no fixed point for i ≠ j.
Every bound in this package averages over such a family.
"""
from typing import List, Sequence

import numpy as np
from scipy.linalg import sqrtm

from coset_qkd.errors import ValidationError


def orthogonal_permutations(m: int) -> List[List[int]]:
    """Cyclic family π_j(k) = (k + j) mod m; π_0 is the identity."""
    if int(m) != m or m < 1:
        raise ValidationError(f"orthogonal_permutations needs m >= 1, got {m}")
    m = int(m)
    return [[(k + j) % m for k in range(m)] for j in range(m)]


def is_orthogonal_family(perms: Sequence[Sequence[int]]) -> bool:
    """Exhaustively check that π_i(π_j⁻¹(k)) ≠ k for all i ≠ j and all k."""
    inverses = []
    for perm in perms:
        inv = [0] * len(perm)
        for k, image in enumerate(perm):
            inv[image] = k
        inverses.append(inv)
    for i, pi in enumerate(perms):
        for j, inv_j in enumerate(inverses):
            if i == j:
                continue
            if any(pi[inv_j[k]] == k for k in range(len(pi))):
                return False
    return True


def sum_bound_check(operators: Sequence[np.ndarray]) -> tuple:
    """Evaluate both sides of ‖Σ_j P_j‖ ≤ Σ_i max_j ‖√P_j √P_{π_i(j)}‖.

    ``operators`` are positive semidefinite matrices of equal shape.
    Returns ``(lhs, rhs)``.
    """
    if not operators:
        raise ValidationError("sum_bound_check needs at least one operator")
    roots = []
    for op in operators:
        op = np.asarray(op, dtype=complex)
        if op.shape != operators[0].shape:
            raise ValidationError("operators must share one shape")
        roots.append(sqrtm(op))
    lhs = float(np.linalg.norm(sum(np.asarray(op, dtype=complex) for op in operators), 2))
    rhs = 0.0
    for perm in orthogonal_permutations(len(roots)):
        rhs += max(float(np.linalg.norm(roots[j] @ roots[perm[j]], 2)) for j in range(len(roots)))
    return lhs, rhs
