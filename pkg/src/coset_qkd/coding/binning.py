"""Binning of real outcomes and signed bin encodings."""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from coset_qkd.coding.gray import gray_encode, gray_encode_array
from coset_qkd.errors import ValidationError

OUT_OF_RANGE = -1


@dataclass(frozen=True)
class BinConfig:
    """Bins of ``width`` with ``count`` bins per sign, indexed in ``n_bits`` bits."""
    width: float
    n_bits: int

    def __post_init__(self):
        if not self.width > 0:
            raise ValidationError(f"bin width must be positive, got {self.width}")
        if int(self.n_bits) != self.n_bits or self.n_bits < 1:
            raise ValidationError(f"n_bits must be a positive integer, got {self.n_bits}")

    @property
    def count(self) -> int:
        return 1 << (self.n_bits - 1)

    @property
    def cutoff(self) -> float:
        """count·width; encodable values satisfy −cutoff ≤ x < cutoff."""
        return self.count * self.width


def bin_index(x, width: float):
    """⌊x/width + ½⌋; bins are [(m−½)w, (m+½)w). Works on scalars and arrays."""
    if not width > 0:
        raise ValidationError(f"bin width must be positive, got {width}")
    result = np.floor(np.asarray(x, dtype=float) / width + 0.5).astype(np.int64)
    return int(result) if result.ndim == 0 else result


def signed_bin_index(x, cfg: BinConfig):
    """Offset index bin_index(x) + count in [0, 2·count), or OUT_OF_RANGE.

    The half bin [(count−½)w, count·w) folds into the top index 2·count − 1.
    """
    x = np.asarray(x, dtype=float)
    index = np.floor(x / cfg.width + 0.5).astype(np.int64) + cfg.count
    index = np.minimum(index, 2 * cfg.count - 1)
    inside = (x >= -cfg.cutoff) & (x < cfg.cutoff)
    index = np.where(inside, index, OUT_OF_RANGE)
    return int(index) if index.ndim == 0 else index


def signed_bin_bits(x: float, cfg: BinConfig) -> Optional[str]:
    """Gray string of the signed bin of ``x``; None when out of range."""
    index = signed_bin_index(x, cfg)
    if index == OUT_OF_RANGE:
        return None
    return gray_encode(index, cfg.n_bits)


def signed_bin_word(values: np.ndarray, cfg: BinConfig) -> np.ndarray:
    """Concatenated Gray bits for in-range ``values`` (flat uint8 array)."""
    index = signed_bin_index(np.atleast_1d(values), cfg)
    if np.any(index == OUT_OF_RANGE):
        raise ValidationError("values outside the encodable range")
    return gray_encode_array(index, cfg.n_bits).reshape(-1)
