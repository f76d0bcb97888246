"""Finite groups as multiplication tables, and their subgroups.

Group specs:
    cyclic:n, zn          cyclic group of order n
    zn^k                  k-fold product of cyclic groups
    dihedral:N, dN        ⟨r, t | r^N = t² = (tr)² = 1⟩, order 2N
    A x B                 direct product of any of the above
"""
import logging
import math
import re
from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from coset_qkd.config import Config
from coset_qkd.errors import InternalError, ResourceError, ValidationError

logger = logging.getLogger(__name__)

EXHAUSTIVE_CHECK_ORDER = 64
SPOT_CHECK_TRIPLES = 10000


@dataclass(frozen=True, eq=False)
class GroupTable:
    name: str
    mul: np.ndarray                 # mul[i, j] = index of element i·j
    inv: np.ndarray
    labels: Tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.mul[x, g])
            k += 1
        return k

    def power(self, g: int, k: int) -> int:
        x = 0
        for _ in range(k % self.element_order(g)):
            x = int(self.mul[x, g])
        return x

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"{self.name} has no element {label!r}")

    def validate(self, seed: int = 0):
        """Check identity, inverses, closure and associativity; raise InternalError."""
        n = self.order
        idx = np.arange(n)
        if self.mul.shape != (n, n) or self.mul.min() < 0 or self.mul.max() >= n:
            raise InternalError(f"{self.name}: table is not closed")
        if not (np.array_equal(self.mul[0], idx) and np.array_equal(self.mul[:, 0], idx)):
            raise InternalError(f"{self.name}: index 0 is not the identity")
        if np.any(self.mul[idx, self.inv] != 0):
            raise InternalError(f"{self.name}: inverse table is wrong")
        for row in self.mul:
            if len(set(row.tolist())) != n:
                raise InternalError(f"{self.name}: table is not a Latin square")
        if n <= EXHAUSTIVE_CHECK_ORDER:
            a, b, c = np.meshgrid(idx, idx, idx, indexing="ij")
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, SPOT_CHECK_TRIPLES))
        if np.any(self.mul[self.mul[a, b], c] != self.mul[a, self.mul[b, c]]):
            raise InternalError(f"{self.name}: multiplication is not associative")


def _check_order(order: int):
    if order > Config.GROUP_ORDER_CAP:
        raise ResourceError(f"group order {order} exceeds cap {Config.GROUP_ORDER_CAP}")


def cyclic(n: int) -> GroupTable:
    if int(n) != n or n < 1:
        raise ValidationError(f"cyclic group order must be >= 1, got {n}")
    _check_order(n)
    idx = np.arange(n)
    return GroupTable(f"z{n}", np.add.outer(idx, idx) % n, (-idx) % n, tuple(str(i) for i in idx))


def dihedral(N: int) -> GroupTable:
    """Element t^x r^a sits at index x·N + a."""
    if int(N) != N or N < 1:
        raise ValidationError(f"dihedral degree must be >= 1, got {N}")
    _check_order(2 * N)
    idx = np.arange(2 * N)
    x, a = idx // N, idx % N
    # (t^x r^a)(t^y r^b) = t^{x+y} r^{(−1)^y a + b}
    sign = np.where(x == 0, 1, -1)
    mul = ((x[:, None] + x[None, :]) % 2) * N + (sign[None, :] * a[:, None] + a[None, :]) % N
    inv = np.where(x == 0, (-a) % N, idx)
    labels = []
    for xi, ai in zip(x, a):
        rot = "" if ai == 0 else ("r" if ai == 1 else f"r^{ai}")
        labels.append(("t" if xi else "") + rot or "e")
    return GroupTable(f"d{N}", mul, inv, tuple(labels))


def product(factors: Sequence[GroupTable]) -> GroupTable:
    """Direct product; the first factor is the most significant digit of the index."""
    if not factors:
        raise ValidationError("product needs at least one factor")
    _check_order(math.prod(f.order for f in factors))

    def pair(g1: GroupTable, g2: GroupTable) -> GroupTable:
        n1, n2 = g1.order, g2.order
        mul = (g1.mul[:, None, :, None] * n2 + g2.mul[None, :, None, :]).reshape(n1 * n2, n1 * n2)
        inv = (g1.inv[:, None] * n2 + g2.inv[None, :]).reshape(-1)
        labels = tuple(f"{l1},{l2}" for l1 in g1.labels for l2 in g2.labels)
        return GroupTable(f"{g1.name}x{g2.name}", mul, inv, labels)

    group = reduce(pair, factors)
    if all(f.name == "z2" for f in factors):
        labels = tuple(lab.replace(",", "") for lab in group.labels)
    else:
        labels = tuple(f"({lab})" for lab in group.labels) if len(factors) > 1 else group.labels
    return GroupTable(group.name, group.mul, group.inv, labels)


_FACTOR_RE = re.compile(r"^(?:(cyclic|dihedral):(\d+)|([zd])(\d+)(?:\^(\d+))?)$")


def construct_group(spec: str) -> GroupTable:
    """Build a group from a spec string such as ``dihedral:15``, ``z2^4`` or ``z2xz3``."""
    factors: List[GroupTable] = []
    for part in re.split(r"\s*[x×]\s*", spec.strip().lower()):
        match = _FACTOR_RE.match(part)
        if not match:
            raise ValidationError(f"unrecognized group spec {part!r} in {spec!r}")
        long_kind, long_n, short_kind, short_n, power = match.groups()
        if long_kind:
            kind, n, k = long_kind[0].replace("c", "z"), int(long_n), 1
        else:
            kind, n, k = short_kind, int(short_n), int(power or 1)
        if k < 1:
            raise ValidationError(f"product power must be >= 1 in {spec!r}")
        build = cyclic if kind == "z" else dihedral
        factors.extend(build(n) for _ in range(k))
    group = factors[0] if len(factors) == 1 else product(factors)
    logger.debug(f"Constructed {spec} as {group.name}, order {group.order}")
    return group


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: GroupTable
    elements: Tuple[int, ...]       # sorted, identity first

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_abelian(self) -> bool:
        sub = np.asarray(self.elements)
        block = self.parent.mul[np.ix_(sub, sub)]
        return bool(np.array_equal(block, block.T))

    def label(self) -> str:
        return "{" + ",".join(self.parent.labels[g] for g in self.elements) + "}"

    def intersection_order(self, other: "Subgroup") -> int:
        return len(set(self.elements) & set(other.elements))

    def cosets(self) -> List[Tuple[int, Tuple[int, ...]]]:
        """Left cosets gH as (representative, members); the representative is the
        smallest index in its coset."""
        covered = set()
        result = []
        for g in range(self.parent.order):
            if g in covered:
                continue
            members = tuple(int(self.parent.mul[g, h]) for h in self.elements)
            covered.update(members)
            result.append((g, members))
        return result


def _closure(group: GroupTable, gens: Iterable[int]) -> Tuple[int, ...]:
    gens = [int(g) for g in gens]
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = int(group.mul[x, g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return tuple(sorted(seen))


def subgroup_from_generators(group: GroupTable, gens: Iterable[int]) -> Subgroup:
    gens = list(gens)
    for g in gens:
        if not 0 <= int(g) < group.order:
            raise ValidationError(f"generator index {g} outside {group.name}")
    return Subgroup(group, _closure(group, gens))


def subgroup_from_labels(group: GroupTable, labels: Iterable[str]) -> Subgroup:
    return subgroup_from_generators(group, [group.index(lab) for lab in labels])


def all_subgroups(group: GroupTable) -> List[Subgroup]:
    """Every subgroup, ordered by (order, elements)."""
    found = {_closure(group, [g]) for g in range(group.order)}
    frontier = set(found)
    while frontier:
        fresh = set()
        for elements in frontier:
            for g in range(group.order):
                if g in elements:
                    continue
                joined = _closure(group, elements[1:] + (g,))
                if joined not in found:
                    fresh.add(joined)
        found |= fresh
        frontier = fresh
    return [Subgroup(group, e) for e in sorted(found, key=lambda e: (len(e), e))]


def register_subspace(group: GroupTable, coords: Iterable[int]) -> Subgroup:
    """Span of the unit vectors e_i (i in coords) inside z2^n; coordinate 0 is leftmost."""
    n = len(group.labels[0])
    if group.order != 1 << n or any(set(lab) - {"0", "1"} for lab in group.labels):
        raise ValidationError(f"{group.name} is not z2^n")
    gens = []
    for i in coords:
        if not 0 <= i < n:
            raise ValidationError(f"coordinate {i} outside 0..{n - 1}")
        gens.append(1 << (n - 1 - i))
    return subgroup_from_generators(group, gens)
