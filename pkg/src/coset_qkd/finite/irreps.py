"""Irreducible representations of abelian and odd dihedral subgroups.

Matrix elements are enumerated irrep by irrep (trivial, then real characters,
then the rest, with two-dimensional irreps last) and row-major inside each irrep.
"""
import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from coset_qkd.errors import InternalError, UnsupportedStructureError
from coset_qkd.finite.groups import Subgroup, _closure

logger = logging.getLogger(__name__)

TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Irrep:
    name: str
    matrices: np.ndarray     # (|H|, d, d), in the order of Subgroup.elements

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]


@dataclass(frozen=True, eq=False)
class IrrepSet:
    subgroup: Subgroup
    irreps: Tuple[Irrep, ...]

    def matrix_elements(self) -> List[Tuple[int, int, int]]:
        """(irrep index, m, n) for every matrix element; Σ d² entries."""
        return [(k, m, n) for k, irrep in enumerate(self.irreps)
                for m in range(irrep.dim) for n in range(irrep.dim)]

    def check(self):
        """Verify homomorphism, unitarity, Schur orthogonality and Σ d² = |H|."""
        H = self.subgroup
        pos = {g: i for i, g in enumerate(H.elements)}
        if sum(irrep.dim ** 2 for irrep in self.irreps) != H.order:
            raise InternalError("irrep dimensions do not satisfy sum d^2 = |H|")
        for irrep in self.irreps:
            mats = irrep.matrices
            eye = np.eye(irrep.dim)
            for i, h1 in enumerate(H.elements):
                if np.abs(mats[i] @ mats[i].conj().T - eye).max() > TOL:
                    raise InternalError(f"irrep {irrep.name} is not unitary")
                for j, h2 in enumerate(H.elements):
                    product = mats[pos[int(H.parent.mul[h1, h2])]]
                    if np.abs(product - mats[i] @ mats[j]).max() > TOL:
                        raise InternalError(f"irrep {irrep.name} is not a homomorphism")
        # rows of `flat` are the functions h ↦ γ_{m,n}(h)
        flat = np.concatenate([irrep.matrices.reshape(H.order, -1).T for irrep in self.irreps])
        dims = np.concatenate([[irrep.dim] * irrep.dim ** 2 for irrep in self.irreps])
        gram = flat.conj() @ flat.T
        expected = np.diag(H.order / dims)
        if np.abs(gram - expected).max() > TOL * H.order:
            raise InternalError("Schur orthogonality fails")


def _generating_set(H: Subgroup) -> List[int]:
    gens: List[int] = []
    span = {0}
    for g in H.elements:
        if g not in span:
            gens.append(g)
            span = set(_closure(H.parent, gens))
    return gens


def _abelian_irreps(H: Subgroup) -> List[Irrep]:
    group = H.parent
    gens = _generating_set(H)
    orders = [group.element_order(g) for g in gens]
    L = math.lcm(*orders) if orders else 1
    pos = {g: i for i, g in enumerate(H.elements)}
    # spanning tree of the Cayley graph from the identity
    tree = []
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for gi, g in enumerate(gens):
            y = int(group.mul[x, g])
            tree.append((x, gi, y))
            if y not in seen:
                seen.add(y)
                queue.append(y)

    characters = []
    for ks in itertools.product(*(range(o) for o in orders)):
        step = [k * (L // o) for k, o in zip(ks, orders)]
        exponent = {0: 0}
        consistent = True
        for x, gi, y in tree:
            value = (exponent[x] + step[gi]) % L
            if y not in exponent:
                exponent[y] = value
            elif exponent[y] != value:
                consistent = False
                break
        if consistent:
            characters.append([exponent[g] for g in H.elements])
    if len(characters) != H.order:
        raise InternalError(f"found {len(characters)} characters for an abelian group of order {H.order}")

    def rank(exps):
        if not any(exps):
            return 0
        return 1 if all(2 * e % L == 0 for e in exps) else 2

    characters.sort(key=rank)
    irreps = []
    for idx, exps in enumerate(characters):
        values = np.exp(2j * math.pi * np.asarray(exps) / L)
        values[np.asarray(exps) == 0] = 1.0
        if L % 2 == 0:
            values[np.asarray(exps) == L // 2] = -1.0
        irreps.append(Irrep(f"chi{idx}", values.reshape(H.order, 1, 1)))
    return irreps


def _dihedral_irreps(H: Subgroup) -> List[Irrep]:
    group = H.parent
    p = H.order // 2
    if H.order % 2 or p % 2 == 0 or p < 3:
        raise UnsupportedStructureError(f"non-abelian subgroup of order {H.order} is not an odd dihedral group")
    c = next((g for g in H.elements if group.element_order(g) == p), None)
    s = next((g for g in H.elements if group.element_order(g) == 2), None)
    if c is None or s is None:
        raise UnsupportedStructureError(f"subgroup of order {H.order} is not dihedral")
    c_inv = int(group.inv[c])
    if int(group.mul[group.mul[s, c], s]) != c_inv:
        raise UnsupportedStructureError(f"subgroup of order {H.order} is not dihedral")

    # every element is c^j or s·c^j
    powers = [0]
    for _ in range(p - 1):
        powers.append(int(group.mul[powers[-1], c]))
    decomposition = {}
    for j, cj in enumerate(powers):
        decomposition[cj] = (0, j)
        decomposition[int(group.mul[s, cj])] = (1, j)
    if set(decomposition) != set(H.elements):
        raise UnsupportedStructureError(f"subgroup of order {H.order} is not dihedral")

    trivial = np.ones((H.order, 1, 1), dtype=complex)
    sign = np.array([[[(-1.0) ** decomposition[h][0]]] for h in H.elements], dtype=complex)
    irreps = [Irrep("trivial", trivial), Irrep("sign", sign)]
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    for k in range(1, (p - 1) // 2 + 1):
        mats = np.empty((H.order, 2, 2), dtype=complex)
        for i, h in enumerate(H.elements):
            flip, j = decomposition[h]
            theta = 2.0 * math.pi * k * j / p
            rot = np.diag([np.exp(-1j * theta), np.exp(1j * theta)])
            mats[i] = X @ rot if flip else rot
        irreps.append(Irrep(f"rho{k}", mats))
    return irreps


def irreps(H: Subgroup) -> IrrepSet:
    """Irreps of an abelian subgroup or of a dihedral subgroup of odd degree."""
    if H.is_abelian:
        result = IrrepSet(H, tuple(_abelian_irreps(H)))
    else:
        result = IrrepSet(H, tuple(_dihedral_irreps(H)))
    logger.debug(f"irreps of {H.label()}: dims {[irrep.dim for irrep in result.irreps]}")
    return result
