"""Toeplitz hashing over GF(2), a universal₂ family for privacy amplification."""
import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import toeplitz

from coset_qkd.errors import UnsupportedParametersError, ValidationError
from coset_qkd.rng import SeedLike, as_generator

MAX_ENUM_IN_LEN = 6
MAX_ENUM_OUT_LEN = 3


@dataclass(frozen=True)
class ToeplitzHash:
    """outLen × inLen Toeplitz matrix with T[i, j] = diag[i − j + inLen − 1]."""
    in_len: int
    out_len: int
    diag: tuple

    def __post_init__(self):
        if self.in_len < 1 or self.out_len < 1:
            raise ValidationError("hash lengths must be positive")
        if self.out_len > self.in_len:
            raise ValidationError(f"out_len={self.out_len} exceeds in_len={self.in_len}")
        diag = tuple(int(b) for b in self.diag)
        if len(diag) != self.in_len + self.out_len - 1 or set(diag) - {0, 1}:
            raise ValidationError(
                f"seed must be {self.in_len + self.out_len - 1} bits, got {len(diag)}")
        object.__setattr__(self, "diag", diag)

    @classmethod
    def random(cls, in_len: int, out_len: int, seed: SeedLike) -> "ToeplitzHash":
        rng = as_generator(seed)
        return cls(in_len, out_len, tuple(rng.integers(0, 2, in_len + out_len - 1)))

    def matrix(self) -> np.ndarray:
        diag = np.asarray(self.diag, dtype=np.uint8)
        first_col = diag[self.in_len - 1:]
        first_row = diag[self.in_len - 1::-1]
        return toeplitz(first_col, first_row)


def toeplitz_apply(h: ToeplitzHash, bits) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.int64)
    if bits.shape != (h.in_len,):
        raise ValidationError(f"input must be {h.in_len} bits, got shape {bits.shape}")
    return ((h.matrix().astype(np.int64) @ bits) % 2).astype(np.uint8)


def universality_check(in_len: int, out_len: int) -> Fraction:
    """max over x ≠ x′ of Pr_seed[F(x) = F(x′)], by exhaustive enumeration."""
    if in_len > MAX_ENUM_IN_LEN or out_len > MAX_ENUM_OUT_LEN:
        raise UnsupportedParametersError(
            f"enumeration limited to in_len <= {MAX_ENUM_IN_LEN}, out_len <= {MAX_ENUM_OUT_LEN}")
    if out_len > in_len or out_len < 1:
        raise ValidationError("need 1 <= out_len <= in_len")
    inputs = np.array(list(itertools.product((0, 1), repeat=in_len)), dtype=np.int64)
    n_seeds = 1 << (in_len + out_len - 1)
    collisions = np.zeros((len(inputs), len(inputs)), dtype=np.int64)
    for seed_bits in itertools.product((0, 1), repeat=in_len + out_len - 1):
        h = ToeplitzHash(in_len, out_len, seed_bits)
        outputs = (inputs @ h.matrix().astype(np.int64).T) % 2
        collisions += np.all(outputs[:, None, :] == outputs[None, :, :], axis=2)
    np.fill_diagonal(collisions, 0)
    return Fraction(int(collisions.max()), n_seeds)
