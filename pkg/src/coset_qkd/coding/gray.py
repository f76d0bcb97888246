"""Reflected binary Gray codes.

Consecutive integers differ in one bit, so the Hamming distance between two
codes is at most the distance between the integers.
"""
import numpy as np

from coset_qkd.errors import ValidationError


def _check_range(k: int, bits: int):
    if bits < 1:
        raise ValidationError(f"bits must be positive, got {bits}")
    if not 0 <= k < (1 << bits):
        raise ValidationError(f"{k} does not fit in {bits} bits")


def gray_encode(k: int, bits: int) -> str:
    _check_range(k, bits)
    return format(k ^ (k >> 1), f"0{bits}b")


def gray_decode(code: str) -> int:
    if not code or set(code) - {"0", "1"}:
        raise ValidationError(f"not a bit string: {code!r}")
    value = int(code, 2)
    result = 0
    while value:
        result ^= value
        value >>= 1
    return result


def gray_encode_array(values: np.ndarray, bits: int) -> np.ndarray:
    """Gray-encode nonnegative integers into a (len, bits) uint8 array, MSB first."""
    values = np.asarray(values, dtype=np.int64)
    if values.size and (values.min() < 0 or values.max() >= (1 << bits)):
        raise ValidationError(f"values do not fit in {bits} bits")
    gray = values ^ (values >> 1)
    shifts = np.arange(bits - 1, -1, -1, dtype=np.int64)
    return ((gray[:, None] >> shifts) & 1).astype(np.uint8)


def gray_decode_array(bit_rows: np.ndarray) -> np.ndarray:
    """Inverse of gray_encode_array."""
    bit_rows = np.asarray(bit_rows, dtype=np.int64)
    # prefix XOR along each row recovers the binary digits
    binary = np.bitwise_xor.accumulate(bit_rows, axis=1)
    bits = bit_rows.shape[1]
    weights = 1 << np.arange(bits - 1, -1, -1, dtype=np.int64)
    return binary @ weights
