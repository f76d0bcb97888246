"""Explicit strategies for finite coset games and a see-saw search over them.

A strategy is a state on ℋ_G⊗ℬ⊗𝒞 and, for every announced subgroup, a POVM for
Bob over coset representatives and one for Charlie over matrix elements.
The see-saw alternates an exact state step (top eigenvector) with monotone
POVM updates, so every returned value is a lower bound on the game value.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from coset_qkd.errors import UnsupportedParametersError, ValidationError
from coset_qkd.finite.cosets import CosetBasis, coset_basis
from coset_qkd.finite.groups import GroupTable, Subgroup
from coset_qkd.rng import SeedLike, as_generator

logger = logging.getLogger(__name__)

TOL = 1e-10
MAX_JOINT_DIM = 4096
POVM_STEPS = 25
REGULARIZATION = 1e-9
MIXING = 1e-6


@dataclass(eq=False)
class FiniteStrategy:
    state: np.ndarray
    bob: List[np.ndarray]          # per subgroup: (|CS(H)|, d_B, d_B)
    charlie: List[np.ndarray]      # per subgroup: (|H|, d_C, d_C)
    dims: Tuple[int, int, int]     # (|G|, d_B, d_C)

    def validate(self):
        """Raise ValidationError unless the state and every POVM are valid to 1e-10."""
        total = int(np.prod(self.dims))
        if self.state.shape != (total, total):
            raise ValidationError(f"state must be {total}x{total}, got {self.state.shape}")
        _check_psd(self.state, "state")
        if abs(np.trace(self.state) - 1.0) > TOL:
            raise ValidationError("state trace is not 1")
        if len(self.bob) != len(self.charlie):
            raise ValidationError("Bob and Charlie need one POVM per subgroup")
        for name, povms, d in (("Bob", self.bob, self.dims[1]), ("Charlie", self.charlie, self.dims[2])):
            for povm in povms:
                if povm.shape[1:] != (d, d):
                    raise ValidationError(f"{name}'s POVM elements must be {d}x{d}")
                for element in povm:
                    _check_psd(element, f"{name}'s POVM element")
                if np.abs(povm.sum(axis=0) - np.eye(d)).max() > TOL:
                    raise ValidationError(f"{name}'s POVM does not sum to identity")


def _check_psd(matrix: np.ndarray, what: str):
    if np.abs(matrix - matrix.conj().T).max() > TOL:
        raise ValidationError(f"{what} is not Hermitian")
    if np.linalg.eigvalsh(matrix).min() < -TOL:
        raise ValidationError(f"{what} is not positive semidefinite")


@dataclass
class SeesawResult:
    value: float
    strategy: FiniteStrategy
    converged: bool
    naive_value: float
    history: List[float] = field(default_factory=list)


def _column_labels(basis: CosetBasis):
    reps = np.array([r for r, _ in basis.columns])
    elems = np.array([mu for _, mu in basis.columns])
    return reps, elems


def _reduced_tensors(state: np.ndarray, dims, basis: CosetBasis) -> np.ndarray:
    """T[v, b, c, y, z] = Σ_{a,x} conj(v_a) v_x ρ[(a,b,c),(x,y,z)] for every column v."""
    n, dB, dC = dims
    R = state.reshape(n, dB, dC, n, dB, dC)
    V = basis.states
    return np.einsum("av,abcxyz,xv->vbcyz", V.conj(), R, V, optimize=True)


def _subgroup_value(T: np.ndarray, bob: np.ndarray, charlie: np.ndarray, basis: CosetBasis) -> float:
    reps, elems = _column_labels(basis)
    value = np.einsum("vyb,vzc,vbcyz->", bob[reps], charlie[elems], T, optimize=True)
    return float(value.real)


def strategy_value(G: GroupTable, S: Sequence[Subgroup], strategy: FiniteStrategy,
                   bases: Optional[Sequence[CosetBasis]] = None) -> float:
    """Exact winning probability, averaged uniformly over the announced subgroup."""
    strategy.validate()
    if strategy.dims[0] != G.order:
        raise ValidationError(f"state register has dimension {strategy.dims[0]}, group order {G.order}")
    if len(strategy.bob) != len(S):
        raise ValidationError(f"strategy covers {len(strategy.bob)} subgroups, game has {len(S)}")
    bases = bases or [coset_basis(G, H) for H in S]
    total = 0.0
    for basis, bob, charlie in zip(bases, strategy.bob, strategy.charlie):
        if bob.shape[0] != len(basis.representatives) or charlie.shape[0] != basis.subgroup.order:
            raise ValidationError("POVM outcome counts do not match the coset basis")
        total += _subgroup_value(_reduced_tensors(strategy.state, strategy.dims, basis), bob, charlie, basis)
    return total / len(S)


def _naive_povm(outcomes: int, d: int) -> np.ndarray:
    povm = np.zeros((outcomes, d, d), dtype=complex)
    povm[0] = np.eye(d)
    return povm


def _inverse_sqrt(matrix: np.ndarray) -> np.ndarray:
    w, U = np.linalg.eigh((matrix + matrix.conj().T) / 2)
    w = np.clip(w, REGULARIZATION, None)
    return (U / np.sqrt(w)) @ U.conj().T


def _normalize(povm: np.ndarray) -> np.ndarray:
    povm = (povm + povm.conj().transpose(0, 2, 1)) / 2
    scale = _inverse_sqrt(povm.sum(axis=0))
    return scale @ povm @ scale


def _random_povm(rng: np.random.Generator, outcomes: int, d: int) -> np.ndarray:
    A = rng.normal(size=(outcomes, d, d)) + 1j * rng.normal(size=(outcomes, d, d))
    return _normalize(A @ A.conj().transpose(0, 2, 1))


def naive_strategy(G: GroupTable, S: Sequence[Subgroup], d_b: int = 1, d_c: int = 1) -> FiniteStrategy:
    """Product state |e,0,0⟩; Bob always names the first coset, Charlie the first matrix element."""
    total = G.order * d_b * d_c
    state = np.zeros((total, total), dtype=complex)
    state[0, 0] = 1.0
    bob = [_naive_povm(G.order // H.order, d_b) for H in S]
    charlie = [_naive_povm(H.order, d_c) for H in S]
    return FiniteStrategy(state, bob, charlie, (G.order, d_b, d_c))


def _improve_povm(povm: np.ndarray, ops: np.ndarray) -> np.ndarray:
    """Raise Σ_j Tr(B_j X_j) by fixed-point steps B_j ← Λ⁻¹ X_j B_j X_j Λ⁻¹, Λ² = Σ X_j B_j X_j."""
    d = povm.shape[1]
    ops = (ops + ops.conj().transpose(0, 2, 1)) / 2 + REGULARIZATION * np.eye(d)

    def objective(p):
        return float(np.einsum("jab,jba->", p, ops).real)

    best, best_value = povm, objective(povm)
    for _ in range(POVM_STEPS):
        sandwiched = ops @ best @ ops
        inv_root = _inverse_sqrt(sandwiched.sum(axis=0))
        # sum stays full rank
        candidate = _normalize(inv_root @ sandwiched @ inv_root + MIXING * best)
        value = objective(candidate)
        if value <= best_value + 1e-15:
            break
        best, best_value = candidate, value
    return best


def _state_step(bases, bob, charlie, dims) -> np.ndarray:
    n, dB, dC = dims
    W = np.zeros((n * dB * dC,) * 2, dtype=complex)
    for basis, B, C in zip(bases, bob, charlie):
        reps, elems = _column_labels(basis)
        V = basis.states
        W += np.einsum("xv,av,vyb,vzc->xyzabc", V, V.conj(), B[reps], C[elems],
                       optimize=True).reshape(W.shape)
    W = (W + W.conj().T) / 2
    _, vecs = np.linalg.eigh(W)
    top = vecs[:, -1]
    return np.outer(top, top.conj())


def _bob_step(T, B, C, basis):
    reps, elems = _column_labels(basis)
    per_column = np.einsum("vzc,vbcyz->vby", C[elems], T, optimize=True)
    ops = np.zeros_like(B)
    np.add.at(ops, reps, per_column)
    return _improve_povm(B, ops)


def _charlie_step(T, B, C, basis):
    reps, elems = _column_labels(basis)
    per_column = np.einsum("vyb,vbcyz->vcz", B[reps], T, optimize=True)
    ops = np.zeros_like(C)
    np.add.at(ops, elems, per_column)
    return _improve_povm(C, ops)


def seesaw_lower_bound(G: GroupTable, S: Sequence[Subgroup], seed: SeedLike,
                       iters: int = 50, restarts: int = 3,
                       dims: Optional[Tuple[int, int]] = None,
                       tol: float = 1e-10) -> SeesawResult:
    """Alternating optimization over strategies; returns the best strategy found.

    Ancilla dimensions default to d_B = d_C = |G|. The naive strategy is always a
    candidate, so the result is never below it.
    """
    if not S:
        raise ValidationError("need at least one subgroup")
    if iters < 1 or restarts < 0:
        raise ValidationError(f"need iters >= 1 and restarts >= 0, got {iters}, {restarts}")
    d_b, d_c = dims or (G.order, G.order)
    joint = G.order * d_b * d_c
    if joint > MAX_JOINT_DIM:
        raise UnsupportedParametersError(f"joint dimension {joint} exceeds {MAX_JOINT_DIM}")
    rng = as_generator(seed)
    bases = [coset_basis(G, H) for H in S]

    naive = naive_strategy(G, S, d_b, d_c)
    naive_value = strategy_value(G, S, naive, bases)
    best = SeesawResult(naive_value, naive, True, naive_value, [naive_value])

    for start in range(restarts):
        bob = [0.75 * B + 0.25 * _random_povm(rng, B.shape[0], d_b) for B in naive.bob]
        charlie = [0.75 * C + 0.25 * _random_povm(rng, C.shape[0], d_c) for C in naive.charlie]
        history: List[float] = []
        converged = False
        for _ in range(iters):
            state = _state_step(bases, bob, charlie, naive.dims)
            for i, basis in enumerate(bases):
                T = _reduced_tensors(state, naive.dims, basis)
                bob[i] = _bob_step(T, bob[i], charlie[i], basis)
                charlie[i] = _charlie_step(T, bob[i], charlie[i], basis)
            strategy = FiniteStrategy(state, list(bob), list(charlie), naive.dims)
            history.append(strategy_value(G, S, strategy, bases))
            if len(history) > 1 and abs(history[-1] - history[-2]) < tol:
                converged = True
                break
        logger.debug(f"see-saw start {start}: {history[-1] if history else naive_value:.10f} "
                     f"after {len(history)} rounds")
        if history and history[-1] > best.value:
            best = SeesawResult(history[-1], strategy, converged, naive_value, history)

    logger.info(f"see-saw on {G.name} with {len(S)} subgroups: {best.value:.10f} (naive {naive_value:.10f})")
    return best
